"""Surgeries on gammoid presentations.

Each operation returns a new presentation together with a mandatory
verification that the presented matroid satisfies the operation's
defining identity on the full rank table. Verification failures raise
instead of returning, so nothing unverified ever flows downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, Presentation, is_linked, max_linking
from .errors import (
    GroundSetTooLarge,
    IsLoop,
    LabelCollision,
    NotABasis,
    NotInGround,
    NotInSAndT,
    PreconditionViolated,
    RetargetFailed,
    VerificationFailed,
)
from .matroid import MAX_GROUND


def contract_target(p: Presentation, t: str) -> Presentation:
    """Contract an element that is also a target.

    Removing the vertex from the graph, the ground set, and the targets
    presents the contraction; the identity is asserted against the rank
    table of the table-level contraction.
    """
    if t not in p.ground or t not in p.targets:
        raise NotInSAndT(f"{t!r} must be both a ground element and a target")
    result = Presentation(
        p.graph.without_vertex(t),
        tuple(g for g in p.ground if g != t),
        tuple(x for x in p.targets if x != t),
    )
    if not result.matroid.equals(p.matroid.contract([t])):
        raise VerificationFailed(f"target contraction at {t!r} did not verify")
    return result


def delete_element(p: Presentation, x: str, *, verify: bool = True) -> Presentation:
    """Delete a ground element: drop it from the ground set only.

    Exact by definition of restriction, but asserted anyway when
    ``verify`` is set.
    """
    if x not in p.ground:
        raise NotInGround(f"{x!r} is not a ground element")
    result = p.with_ground(tuple(g for g in p.ground if g != x))
    if verify and not result.matroid.equals(p.matroid.delete([x])):
        raise VerificationFailed(f"element deletion at {x!r} did not verify")
    return result


def _match_into_parts(
    elements: list[str], part_owners: list[str], part_sets: list[frozenset[str]]
) -> dict[str, str] | None:
    """Match each element to a distinct part containing it (Kuhn search)."""
    owner_of_part: list[str | None] = [None] * len(part_sets)

    def assign(e: str, seen: set[int]) -> bool:
        for k, part in enumerate(part_sets):
            if e in part and k not in seen:
                seen.add(k)
                prev = owner_of_part[k]
                if prev is None or assign(prev, seen):
                    owner_of_part[k] = e
                    return True
        return False

    for e in elements:
        if not assign(e, set()):
            return None
    out: dict[str, str] = {}
    for k, e in enumerate(owner_of_part):
        if e is not None:
            out[e] = part_owners[k]
    return out


def retarget(p: Presentation, basis) -> Presentation:
    """Re-present the same matroid with the given basis as the target set.

    Works on the strict lift: extend the basis to a basis of the full
    vertex matroid, rebuild a presentation with that target set from the
    transversal system dual to the lift, then drop the extension vertices
    and restrict back to the ground set. Full rank-table equality with the
    input matroid is verified; a mismatch raises rather than guessing.
    """
    basis = tuple(basis)
    m = p.matroid
    bset = set(basis)
    if not bset <= set(p.ground) or not m.is_basis(basis):
        raise NotABasis(f"{sorted(basis)} is not a basis inside the ground set")
    if bset == set(p.targets):
        return p

    graph = p.graph
    verts = graph.vertices
    idx = graph.index
    targets = p.targets

    # extend to a basis of the strict lift, in vertex order; the ground
    # set is already spanned by the basis, so extensions stay outside it
    lift_rank = max_linking(graph, verts, targets).size
    t_prime = sorted(bset, key=idx.__getitem__)
    for v in verts:
        if len(t_prime) == lift_rank:
            break
        if v not in bset and is_linked(graph, t_prime + [v], targets):
            t_prime.append(v)
    if len(t_prime) != lift_rank:
        raise RetargetFailed("could not extend the basis through the strict lift")
    tp = set(t_prime)

    # the lift's dual is the transversal system with one part per vertex
    # outside the current targets: the vertex plus its out-neighbors
    t0 = set(targets)
    part_owners = [v for v in verts if v not in t0]
    part_sets = [frozenset((v,) + graph.out_neighbors(v)) for v in part_owners]
    tails = [v for v in verts if v not in tp]
    assignment = _match_into_parts(tails, part_owners, part_sets)
    if assignment is None or len(assignment) != len(tails):
        raise RetargetFailed("dual transversal system admitted no full matching")

    owner_index = {v: k for k, v in enumerate(part_owners)}
    arcs = []
    for b in tails:
        part = part_sets[owner_index[assignment[b]]]
        for u in sorted(part - {b}, key=idx.__getitem__):
            arcs.append((b, u))
    rebuilt = Digraph(verts, arcs)
    for t in t_prime:
        if t not in bset:
            rebuilt = rebuilt.without_vertex(t)

    result = Presentation(
        rebuilt,
        p.ground,
        tuple(g for g in p.ground if g in bset),
    )
    if not result.matroid.equals(m):
        raise RetargetFailed("re-targeted presentation does not reproduce the matroid")
    return result


def contract_any(p: Presentation, x: str) -> Presentation:
    """Contract an arbitrary non-loop element.

    Routes through a greedy basis containing the element: retarget so the
    basis is the target set, then contract the element as a target. Both
    steps carry their own verification.
    """
    if x not in p.ground:
        raise NotInGround(f"{x!r} is not a ground element")
    m = p.matroid
    if m.is_loop(x):
        raise IsLoop(f"{x!r} is a loop; delete it instead of contracting")
    basis = m.greedy_basis(containing=(x,))
    return contract_target(retarget(p, basis), x)


def free_extension(p: Presentation, x: str) -> Presentation:
    """Add a new element in generic position (rank preserved).

    Requires the target set to be a basis of the presented matroid; the
    new vertex gets one arc to every target. Verifies that the element is
    freely placed and that deleting it restores the input.
    """
    if x in p.graph.index:
        raise LabelCollision(f"{x!r} already names a vertex")
    m = p.matroid
    tset = set(p.targets)
    gset = set(p.ground)
    if tset <= gset:
        if not m.is_basis(p.targets):
            raise PreconditionViolated("targets must form a basis of the matroid")
    elif tset.isdisjoint(gset):
        if len(p.targets) != m.rank:
            raise PreconditionViolated("target count must equal the rank")
    else:
        raise PreconditionViolated("targets must lie inside or outside the ground set")
    graph = p.graph.with_vertices([x]).with_arcs([(x, t) for t in p.targets])
    result = Presentation(graph, p.ground + (x,), p.targets)
    rm = result.matroid
    if (
        rm.rank != m.rank
        or not rm.is_freely_placed(x)
        or not rm.delete([x]).equals(m)
    ):
        raise VerificationFailed(f"free extension by {x!r} did not verify")
    return result


def add_coloop(p: Presentation, x: str) -> Presentation:
    """Add a new element as a coloop via a private target vertex."""
    if x in p.graph.index:
        raise LabelCollision(f"{x!r} already names a vertex")
    star = "tstar"
    if star in p.graph.index or star == x:
        raise LabelCollision(f"{star!r} already names a vertex")
    m = p.matroid
    graph = p.graph.with_vertices([x, star]).with_arcs([(x, star)])
    result = Presentation(graph, p.ground + (x,), p.targets + (star,))
    rm = result.matroid
    if (
        rm.rank != m.rank + 1
        or not rm.is_freely_placed(x)
        or not rm.delete([x]).equals(m)
    ):
        raise VerificationFailed(f"coloop extension by {x!r} did not verify")
    return result


@dataclass(frozen=True)
class TwoBasesEmbedding:
    """Result of embedding a gammoid into one whose ground splits into two bases."""

    presentation: Presentation
    basis_one: tuple[str, ...]
    basis_two: tuple[str, ...]
    delete_back: tuple[str, ...]
    contract_back: tuple[str, ...]


def two_bases_embedding(p: Presentation) -> TwoBasesEmbedding:
    """Embed the presented matroid into one partitioned into two bases.

    Requires the target set to be a basis inside the ground set. For each
    non-target element outside a greedy maximum independent set, a private
    target ``t#k`` is attached; ``u#k`` vertices with arcs onto every
    target pad the second basis to full rank. The input is recovered by
    deleting the ``u#k`` and contracting the ``t#k``, which is verified,
    along with the two-bases partition itself.
    """
    m = p.matroid
    tset = set(p.targets)
    if not tset <= set(p.ground) or not m.is_basis(p.targets):
        raise PreconditionViolated("targets must form a basis inside the ground set")
    rest = [g for g in p.ground if g not in tset]
    independent = m.greedy_max_independent(within=rest)
    iset = set(independent)
    attached = [g for g in rest if g not in iset]
    pad = len(p.targets) - len(independent)
    t_labels = tuple(f"t#{k + 1}" for k in range(len(attached)))
    u_labels = tuple(f"u#{k + 1}" for k in range(pad))
    for label in t_labels + u_labels:
        if label in p.graph.index:
            raise LabelCollision(f"{label!r} already names a vertex")
    if len(p.ground) + len(t_labels) + len(u_labels) > MAX_GROUND:
        raise GroundSetTooLarge("embedded ground set would exceed the cap")

    arcs = [(v, t) for v, t in zip(attached, t_labels)]
    arcs += [(u, t) for u in u_labels for t in p.targets]
    graph = p.graph.with_vertices(t_labels + u_labels).with_arcs(arcs)
    result = Presentation(
        graph, p.ground + t_labels + u_labels, p.targets + t_labels
    )
    embedded = result.matroid

    basis_one = tuple(g for g in result.ground if g in tset or g in set(attached))
    basis_two = tuple(
        g for g in result.ground if g in iset or g in set(t_labels) or g in set(u_labels)
    )
    # the counting identity behind the second basis
    assert len(independent) + len(attached) + pad == len(basis_two) == len(basis_one)
    if set(basis_one) | set(basis_two) != set(result.ground) or set(basis_one) & set(
        basis_two
    ):
        raise VerificationFailed("two-bases partition does not cover the ground set")
    if not embedded.is_basis(basis_one) or not embedded.is_basis(basis_two):
        raise VerificationFailed("two-bases partition contains a non-basis")

    recovered = result
    for u in u_labels:
        recovered = delete_element(recovered, u)
    for t in t_labels:
        recovered = contract_target(recovered, t)
    if not recovered.matroid.equals(m):
        raise VerificationFailed("recovery from the embedding did not verify")

    return TwoBasesEmbedding(result, basis_one, basis_two, u_labels, t_labels)

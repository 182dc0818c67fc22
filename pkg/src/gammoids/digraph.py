"""Directed graphs, vertex-disjoint linkings, and linkage matroids.

A linking from X to T is a family of pairwise vertex-disjoint directed
paths, one per element of X, each starting in X and ending in T; a vertex
lying in both X and T may serve as its own single-vertex path. Linkings
are computed by max-flow on the vertex-split network: each vertex becomes
an in/out pair joined by a unit-capacity internal arc, graph arcs get
capacity ``|V|``, and a super-source/super-sink attach outside the
splitting. Augmenting paths are found by BFS scanning vertices in index
order, so every result is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GraphTooLarge, GroundSetTooLarge, NotStrict
from .matroid import MAX_GROUND, Matroid

MAX_BRUTE_VERTICES = 10


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph with labeled vertices and no self-loops."""

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]

    def __init__(self, vertices: Iterable[str], arcs: Iterable[Sequence[str]] = ()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex labels")
        index = {v: i for i, v in enumerate(vertices)}
        seen = set()
        for u, v in arcs:
            if u not in index or v not in index:
                raise ValueError(f"arc ({u!r}, {v!r}) uses an undeclared vertex")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            seen.add((u, v))
        canon = tuple(sorted(seen, key=lambda a: (index[a[0]], index[a[1]])))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", canon)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        idx = self.index
        out: list[list[int]] = [[] for _ in self.vertices]
        for u, v in self.arcs:
            out[idx[u]].append(idx[v])
        return tuple(tuple(o) for o in out)

    def out_neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(self.vertices[w] for w in self._out[self.index[v]])

    def with_vertices(self, new: Iterable[str]) -> "Digraph":
        return Digraph(self.vertices + tuple(new), self.arcs)

    def with_arcs(self, extra: Iterable[Sequence[str]]) -> "Digraph":
        return Digraph(self.vertices, list(self.arcs) + [tuple(a) for a in extra])

    def without_vertex(self, v: str) -> "Digraph":
        if v not in self.index:
            raise ValueError(f"no vertex {v!r}")
        return Digraph(
            tuple(w for w in self.vertices if w != v),
            [a for a in self.arcs if v not in a],
        )

    def relabeled(self, mapping: dict[str, str]) -> "Digraph":
        ren = lambda x: mapping.get(x, x)  # noqa: E731
        return Digraph(
            tuple(ren(v) for v in self.vertices),
            [(ren(u), ren(v)) for u, v in self.arcs],
        )


@dataclass(frozen=True)
class Linking:
    """A family of pairwise vertex-disjoint directed paths."""

    paths: tuple[tuple[str, ...], ...]

    @property
    def size(self) -> int:
        return len(self.paths)

    def check_valid(self, graph: Digraph, targets: Iterable[str]) -> None:
        """Assert disjointness, arc membership, and target endpoints."""
        tset = set(targets)
        used: set[str] = set()
        arcs = set(graph.arcs)
        for path in self.paths:
            assert path, "empty path"
            assert path[-1] in tset, f"path {path} does not end in the targets"
            for v in path:
                assert v not in used, f"vertex {v} reused across paths"
                used.add(v)
            for u, v in zip(path, path[1:]):
                assert (u, v) in arcs, f"missing arc ({u}, {v})"


@dataclass(frozen=True)
class Presentation:
    """A gammoid presentation: a digraph with ground and target vertex sets."""

    graph: Digraph
    ground: tuple[str, ...]
    targets: tuple[str, ...]

    def __init__(self, graph: Digraph, ground: Iterable[str], targets: Iterable[str]):
        ground = tuple(ground)
        targets = tuple(targets)
        index = graph.index
        for name, part in (("ground", ground), ("targets", targets)):
            if len(set(part)) != len(part):
                raise ValueError(f"duplicate labels in {name}")
            for v in part:
                if v not in index:
                    raise ValueError(f"{name} label {v!r} is not a vertex")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "targets", targets)

    @cached_property
    def matroid(self) -> Matroid:
        return linkage_matroid(self)

    def with_ground(self, ground: Iterable[str]) -> "Presentation":
        return Presentation(self.graph, ground, self.targets)

    def to_doc(self) -> dict:
        return {
            "vertices": list(self.graph.vertices),
            "arcs": [list(a) for a in self.graph.arcs],
            "ground": list(self.ground),
            "targets": list(self.targets),
        }


class _FlowNetwork:
    """Unit-vertex-capacity flow network for one (graph, targets) pair.

    Node numbering: vertex i splits into in-node 2i and out-node 2i+1;
    the super-source and super-sink sit at 2n and 2n+1. Arc k and its
    residual twin are stored at positions 2k and 2k+1 of the capacity
    array, so one bytearray fully describes a flow state.
    """

    __slots__ = ("n_nodes", "src", "snk", "heads", "adj", "base", "src_arc")

    def __init__(self, graph: Digraph, targets: Iterable[str]):
        idx = graph.index
        n = len(graph.vertices)
        self.src = 2 * n
        self.snk = 2 * n + 1
        self.n_nodes = 2 * n + 2
        heads: list[int] = []
        caps = bytearray()
        adj: list[list[int]] = [[] for _ in range(self.n_nodes)]

        def add(u: int, v: int, c: int) -> int:
            a = len(heads)
            heads.append(v)
            caps.append(c)
            adj[u].append(a)
            heads.append(u)
            caps.append(0)
            adj[v].append(a + 1)
            return a

        # source arcs for every vertex, disabled until a query opens them
        self.src_arc = [add(self.src, 2 * i, 0) for i in range(n)]
        for i in range(n):
            add(2 * i, 2 * i + 1, 1)
        arc_cap = max(n, 1)
        for u, v in graph.arcs:
            add(2 * idx[u] + 1, 2 * idx[v], arc_cap)
        for t in sorted(targets, key=idx.__getitem__):
            add(2 * idx[t] + 1, self.snk, 1)
        self.heads = heads
        self.base = bytes(caps)
        self.adj = adj

    def fresh(self) -> bytearray:
        return bytearray(self.base)

    def augment(self, caps: bytearray) -> bool:
        """Push one unit along a BFS-shortest residual path if any exists."""
        heads = self.heads
        adj = self.adj
        snk = self.snk
        prev = [-1] * self.n_nodes
        prev[self.src] = -2
        queue = [self.src]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for a in adj[u]:
                if caps[a]:
                    v = heads[a]
                    if prev[v] == -1:
                        prev[v] = a
                        if v == snk:
                            while v != self.src:
                                a = prev[v]
                                caps[a] -= 1
                                caps[a ^ 1] += 1
                                v = heads[a ^ 1]
                            return True
                        queue.append(v)
        return False

    def route(self, caps: bytearray, source_indices: Iterable[int]) -> int:
        """Open the given sources in index order, augmenting after each."""
        pushed = 0
        for i in sorted(source_indices):
            caps[self.src_arc[i]] = 1
            if self.augment(caps):
                pushed += 1
        return pushed

    def linking_paths(self, caps: bytearray, graph: Digraph) -> list[tuple[str, ...]]:
        heads = self.heads
        base = self.base
        verts = graph.vertices
        paths = []
        for i, a in enumerate(self.src_arc):
            if caps[a ^ 1]:  # a unit entered vertex i from the source
                path = [verts[i]]
                node = i
                while True:
                    nxt = -1
                    for b in self.adj[2 * node + 1]:
                        if b % 2 == 0 and caps[b ^ 1]:
                            nxt = b
                            break
                    assert nxt >= 0, "flow decomposition lost a unit"
                    if heads[nxt] == self.snk:
                        break
                    node = heads[nxt] // 2
                    path.append(verts[node])
                paths.append(tuple(path))
        return paths


def max_linking(graph: Digraph, sources: Iterable[str], targets: Iterable[str]) -> Linking:
    """A maximum family of vertex-disjoint paths from ``sources`` into ``targets``."""
    idx = graph.index
    src_idx = [idx[v] for v in sources]
    for t in targets:
        if t not in idx:
            raise ValueError(f"target {t!r} is not a vertex")
    net = _FlowNetwork(graph, targets)
    caps = net.fresh()
    net.route(caps, src_idx)
    return Linking(tuple(net.linking_paths(caps, graph)))


def is_linked(graph: Digraph, sources: Iterable[str], targets: Iterable[str]) -> bool:
    sources = tuple(sources)
    return max_linking(graph, sources, targets).size == len(sources)


class _IncrementalLinkageOracle:
    """Independence oracle over subsets of the ground set.

    Answers are pure functions of (graph, targets, subset). When queried
    in ascending mask order, each answer warm-starts from a stored flow of
    an independent sub-subset, so one BFS decides each mask. Out-of-order
    queries fall back to routing from scratch.
    """

    def __init__(self, graph: Digraph, ground: Sequence[str], targets: Iterable[str]):
        self._net = _FlowNetwork(graph, targets)
        idx = graph.index
        self._vertex_of_bit = [idx[g] for g in ground]
        self._flows: dict[int, bytearray] = {0: self._net.fresh()}
        self._dependent: set[int] = set()

    def __call__(self, mask: int) -> bool:
        if mask == 0:
            return True
        if mask in self._dependent:
            return False
        if mask in self._flows:
            return True
        net = self._net
        vert = self._vertex_of_bit
        remaining = mask
        b = 0
        while remaining:
            if remaining & 1:
                parent = mask ^ (1 << b)
                state = self._flows.get(parent)
                if state is not None:
                    caps = bytearray(state)
                    caps[net.src_arc[vert[b]]] = 1
                    if net.augment(caps):
                        self._flows[mask] = caps
                        return True
                    self._dependent.add(mask)
                    return False
                if parent not in self._dependent:
                    break  # unknown parent: cold query below
            remaining >>= 1
            b += 1
        else:
            # every one-smaller subset is dependent, so this one is too
            self._dependent.add(mask)
            return False
        caps = net.fresh()
        sources = [vert[b] for b in range(mask.bit_length()) if mask >> b & 1]
        if net.route(caps, sources) == len(sources):
            self._flows[mask] = caps
            return True
        self._dependent.add(mask)
        return False


def linkage_matroid(presentation: Presentation) -> Matroid:
    """The matroid on the ground set whose independent sets are linked to T."""
    if len(presentation.ground) > MAX_GROUND:
        raise GroundSetTooLarge(
            f"{len(presentation.ground)} ground elements exceeds cap {MAX_GROUND}"
        )
    oracle = _IncrementalLinkageOracle(
        presentation.graph, presentation.ground, presentation.targets
    )
    return Matroid.from_independence_oracle(presentation.ground, oracle)


def brute_force_linking_oracle(
    graph: Digraph, sources: Iterable[str], targets: Iterable[str]
) -> int:
    """Maximum linking size by exhaustive search over path families.

    Shares no machinery with the flow solver; used as its test oracle.
    """
    if len(graph.vertices) > MAX_BRUTE_VERTICES:
        raise GraphTooLarge(
            f"{len(graph.vertices)} vertices exceeds cap {MAX_BRUTE_VERTICES}"
        )
    idx = graph.index
    out = graph._out
    tset = {idx[t] for t in targets}
    srcs = sorted(idx[s] for s in sources)

    def best(k: int, used: frozenset[int]) -> int:
        if k == len(srcs):
            return 0
        top = best(k + 1, used)  # leave source k unrouted
        v = srcs[k]
        if v in used:
            return top

        def walk(node: int, path: tuple[int, ...]) -> int:
            score = 0
            if node in tset:
                score = 1 + best(k + 1, used | frozenset(path))
            for w in out[node]:
                if w not in used and w not in path:
                    score = max(score, walk(w, path + (w,)))
            return score

        return max(top, walk(v, (v,)))

    return best(0, frozenset())


def _matchable(element_bits: Sequence[int], part_masks: Sequence[int]) -> bool:
    """Can the elements be matched into distinct parts that contain them?"""
    owner = [-1] * len(part_masks)

    def assign(e: int, seen: set[int]) -> bool:
        for p, pm in enumerate(part_masks):
            if pm >> e & 1 and p not in seen:
                seen.add(p)
                if owner[p] < 0 or assign(owner[p], seen):
                    owner[p] = e
                    return True
        return False

    return all(assign(e, set()) for e in element_bits)


def transversal_duality_check(presentation: Presentation) -> bool:
    """Cross-check a strict presentation against transversal-matroid duality.

    Reads the bipartite system off the presentation (one part per vertex
    outside the targets, containing the vertex and its out-neighbors),
    builds its transversal matroid by a matching oracle, dualizes it, and
    compares against the linkage matroid. Used purely as a test oracle.
    """
    if set(presentation.ground) != set(presentation.graph.vertices):
        raise NotStrict("duality check requires ground = all vertices")
    gidx = {g: i for i, g in enumerate(presentation.ground)}
    tset = set(presentation.targets)
    graph = presentation.graph
    part_masks = []
    for v in graph.vertices:
        if v not in tset:
            mask = 1 << gidx[v]
            for w in graph.out_neighbors(v):
                mask |= 1 << gidx[w]
            part_masks.append(mask)

    def oracle(mask: int) -> bool:
        bits = [b for b in range(mask.bit_length()) if mask >> b & 1]
        return _matchable(bits, part_masks)

    transversal = Matroid.from_independence_oracle(presentation.ground, oracle)
    return transversal.dual().equals(presentation.matroid)

"""Finite matroids with fully materialized rank tables.

Subsets of the ground set are encoded as integer bitmasks over the fixed
ground ordering: bit ``i`` stands for ``ground[i]``. Every operation is
exact and backed by exhaustive enumeration over all ``2**n`` subsets,
which caps ground sets at :data:`MAX_GROUND` elements. Subset-valued
results are always listed in ascending mask order so that repeated runs
are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, GroundSetTooLarge, NotACircuitHyperplane

MAX_GROUND = 24

# popcount tables per ground size, built once
_PC: dict[int, np.ndarray] = {}


def _popcounts(n: int) -> np.ndarray:
    table = _PC.get(n)
    if table is None:
        table = np.zeros(1, dtype=np.uint8)
        for _ in range(n):
            table = np.concatenate([table, table + 1])
        table.setflags(write=False)
        _PC[n] = table
    return table


def _remap(table: np.ndarray, positions: Sequence[int]) -> np.ndarray:
    """Index ``table`` by masks whose bit k is the old bit positions[k]."""
    size = 1 << len(positions)
    new = np.arange(size, dtype=np.int64)
    old = np.zeros(size, dtype=np.int64)
    for k, p in enumerate(positions):
        old |= ((new >> k) & 1) << p
    return table[old]


@dataclass(frozen=True)
class IngletonCheck:
    """Outcome of one Ingleton inequality evaluation."""

    lhs: int
    rhs: int
    holds: bool


class Matroid:
    """A matroid given by its ordered ground labels and full rank table."""

    __slots__ = ("ground", "table", "_index")

    def __init__(self, ground: Iterable[str], table: np.ndarray):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise ValueError("duplicate ground labels")
        if len(ground) > MAX_GROUND:
            raise GroundSetTooLarge(f"{len(ground)} elements exceeds cap {MAX_GROUND}")
        table = np.ascontiguousarray(table, dtype=np.uint8)
        if table.shape != (1 << len(ground),):
            raise ValueError("rank table has wrong length")
        table.setflags(write=False)
        self.ground = ground
        self.table = table
        self._index = {label: i for i, label in enumerate(ground)}

    # -- construction ----------------------------------------------------

    @classmethod
    def from_independence_oracle(
        cls,
        ground: Iterable[str],
        oracle: Callable[[int], bool],
        *,
        verify: bool = True,
    ) -> "Matroid":
        """Materialize a matroid by querying ``oracle`` on every subset mask.

        The oracle is called once per mask, in ascending mask order. The
        rank of a subset is the size of its largest oracle-independent
        subset; the resulting table is then checked against the rank
        axioms, so an oracle that is not genuinely a matroid independence
        predicate raises :class:`AxiomViolation`.
        """
        ground = tuple(ground)
        n = len(ground)
        if n > MAX_GROUND:
            raise GroundSetTooLarge(f"{n} elements exceeds cap {MAX_GROUND}")
        size = 1 << n
        indep = np.zeros(size, dtype=bool)
        for mask in range(size):
            indep[mask] = bool(oracle(mask))
        if not indep[0]:
            raise AxiomViolation("oracle rejects the empty set")
        table = cls._table_from_independence(indep, n)
        m = cls(ground, table)
        if verify:
            m.verify_axioms()
            if not np.array_equal(indep, table == _popcounts(n)):
                # only possible if the oracle is not downward closed
                bad = int(np.nonzero(indep != (table == _popcounts(n)))[0][0])
                raise AxiomViolation(
                    f"oracle is not downward closed at {m.labels_of(bad)}"
                )
        return m

    @classmethod
    def from_bases(
        cls,
        ground: Iterable[str],
        bases: Iterable[Iterable[str]],
        *,
        verify: bool = True,
    ) -> "Matroid":
        """Rebuild a matroid from its basis family (certificate decoding)."""
        ground = tuple(ground)
        n = len(ground)
        if n > MAX_GROUND:
            raise GroundSetTooLarge(f"{n} elements exceeds cap {MAX_GROUND}")
        index = {label: i for i, label in enumerate(ground)}
        if len(index) != n:
            raise ValueError("duplicate ground labels")
        masks = []
        for basis in bases:
            mask = 0
            for label in basis:
                if label not in index:
                    raise ValueError(f"basis label {label!r} not in ground set")
                mask |= 1 << index[label]
            masks.append(mask)
        if not masks:
            raise ValueError("at least one basis is required")
        pc = _popcounts(n)
        size = 1 << n
        table = np.zeros(size, dtype=np.uint8)
        ar = np.arange(size, dtype=np.int64)
        for mask in masks:
            np.maximum(table, pc[ar & mask], out=table)
        m = cls(ground, table)
        if verify:
            m.verify_axioms()
        return m

    @staticmethod
    def _table_from_independence(indep: np.ndarray, n: int) -> np.ndarray:
        pc = _popcounts(n)
        table = np.where(indep, pc, np.uint8(0)).astype(np.uint8)
        if n == 0:
            return table
        # rank(X) = max(own value, rank(X - e)); children are one layer down
        layers = [np.nonzero(pc == k)[0] for k in range(n + 1)]
        for k in range(1, n + 1):
            masks = layers[k]
            for b in range(n):
                bit = 1 << b
                sel = masks[(masks & bit) != 0]
                if sel.size:
                    table[sel] = np.maximum(table[sel], table[sel ^ bit])
        return table

    # -- basic queries ----------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def rank(self) -> int:
        return int(self.table[-1])

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            try:
                mask |= 1 << self._index[label]
            except KeyError:
                raise ValueError(f"label {label!r} not in ground set") from None
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(g for i, g in enumerate(self.ground) if mask >> i & 1)

    def rank_of(self, labels: Iterable[str]) -> int:
        return int(self.table[self.mask_of(labels)])

    def is_independent(self, labels: Iterable[str]) -> bool:
        mask = self.mask_of(labels)
        return int(self.table[mask]) == mask.bit_count()

    def is_basis(self, labels: Iterable[str]) -> bool:
        mask = self.mask_of(labels)
        return mask.bit_count() == self.rank and int(self.table[mask]) == self.rank

    def is_loop(self, label: str) -> bool:
        return self.rank_of([label]) == 0

    def basis_masks(self) -> list[int]:
        pc = _popcounts(self.size)
        hits = np.nonzero((pc == self.rank) & (self.table == self.rank))[0]
        return [int(h) for h in hits]

    def bases(self) -> list[tuple[str, ...]]:
        return [self.labels_of(m) for m in self.basis_masks()]

    # -- circuits ---------------------------------------------------------

    def circuit_masks(self) -> list[int]:
        """Minimal dependent subsets, ascending mask order."""
        pc = _popcounts(self.size)
        table = self.table
        out = []
        for mask in np.nonzero(table == pc - 1)[0]:
            mask = int(mask)
            m = mask
            while m:
                bit = m & -m
                child = mask ^ bit
                if int(table[child]) != child.bit_count():
                    break
                m ^= bit
            else:
                out.append(mask)
        return out

    def circuits(self) -> list[tuple[str, ...]]:
        return [self.labels_of(m) for m in self.circuit_masks()]

    def nonspanning_circuit_masks(self) -> list[int]:
        rank = self.rank
        return [m for m in self.circuit_masks() if int(self.table[m]) < rank]

    def nonspanning_circuits(self) -> list[tuple[str, ...]]:
        return [self.labels_of(m) for m in self.nonspanning_circuit_masks()]

    def is_freely_placed(self, label: str) -> bool:
        """True iff the element lies in no non-spanning circuit."""
        bit = 1 << self._index[label]
        return not any(m & bit for m in self.nonspanning_circuit_masks())

    # -- minors, dual, relaxation ------------------------------------------

    def delete(self, labels: Iterable[str]) -> "Matroid":
        gone = self.mask_of(labels)
        keep = [i for i in range(self.size) if not gone >> i & 1]
        return Matroid(
            [self.ground[i] for i in keep], _remap(np.asarray(self.table), keep)
        )

    def contract(self, labels: Iterable[str]) -> "Matroid":
        gone = self.mask_of(labels)
        keep = [i for i in range(self.size) if not gone >> i & 1]
        base = int(self.table[gone])
        size = 1 << len(keep)
        new = np.arange(size, dtype=np.int64)
        old = np.full(size, gone, dtype=np.int64)
        for k, p in enumerate(keep):
            old |= ((new >> k) & 1) << p
        return Matroid(
            [self.ground[i] for i in keep],
            (self.table[old].astype(np.int16) - base).astype(np.uint8),
        )

    def dual(self) -> "Matroid":
        pc = _popcounts(self.size).astype(np.int16)
        # full ^ mask == (2**n - 1) - mask, so the complement table is a reversal
        co = self.table[::-1].astype(np.int16)
        return Matroid(self.ground, (pc + co - self.rank).astype(np.uint8))

    def is_circuit_hyperplane(self, labels: Iterable[str]) -> bool:
        mask = self.mask_of(labels)
        k = mask.bit_count()
        rank = self.rank
        table = self.table
        if int(table[mask]) != k - 1 or int(table[mask]) != rank - 1:
            return False
        m = mask
        while m:  # every proper child independent, so the set is a circuit
            bit = m & -m
            if int(table[mask ^ bit]) != k - 1:
                return False
            m ^= bit
        full = (1 << self.size) - 1
        m = full ^ mask
        while m:  # adding any outside element reaches full rank, so a flat
            bit = m & -m
            if int(table[mask | bit]) != rank:
                return False
            m ^= bit
        return True

    def relax(self, labels: Iterable[str]) -> "Matroid":
        """Declare a circuit-hyperplane to be a basis.

        Only the relaxed set changes rank (by exactly one); all other
        subsets keep their rank, which the relaxation identities in the
        test suite re-check.
        """
        if not self.is_circuit_hyperplane(labels):
            raise NotACircuitHyperplane(f"{sorted(labels)} is not a circuit-hyperplane")
        mask = self.mask_of(labels)
        table = self.table.copy()
        table[mask] += 1
        return Matroid(self.ground, table)

    # -- comparisons -------------------------------------------------------

    def equals(self, other: "Matroid") -> bool:
        """Label-sensitive equality: same label set, same rank on every subset."""
        if set(self.ground) != set(other.ground):
            return False
        if self.ground == other.ground:
            return bool(np.array_equal(self.table, other.table))
        positions = [other._index[g] for g in self.ground]
        return bool(np.array_equal(self.table, _remap(np.asarray(other.table), positions)))

    def ingleton_check(
        self,
        a: Iterable[str],
        b: Iterable[str],
        c: Iterable[str],
        d: Iterable[str],
    ) -> IngletonCheck:
        t = self.table
        am, bm, cm, dm = (self.mask_of(x) for x in (a, b, c, d))
        lhs = int(t[am]) + int(t[bm]) + int(t[am | bm | cm]) + int(t[am | bm | dm]) + int(t[cm | dm])
        rhs = (
            int(t[am | bm])
            + int(t[am | cm])
            + int(t[am | dm])
            + int(t[bm | cm])
            + int(t[bm | dm])
        )
        return IngletonCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs)

    # -- greedy helpers ----------------------------------------------------

    def greedy_max_independent(
        self,
        within: Iterable[str] | None = None,
        start: Iterable[str] = (),
    ) -> tuple[str, ...]:
        """Largest independent subset of ``within``, grown in ground order."""
        chosen = self.mask_of(start)
        if int(self.table[chosen]) != chosen.bit_count():
            raise ValueError("start set is dependent")
        allowed = (1 << self.size) - 1 if within is None else self.mask_of(within)
        table = self.table
        for i in range(self.size):
            bit = 1 << i
            if allowed & bit and not chosen & bit:
                cand = chosen | bit
                if int(table[cand]) == cand.bit_count():
                    chosen = cand
        return self.labels_of(chosen)

    def greedy_basis(self, containing: Iterable[str] = ()) -> tuple[str, ...]:
        basis = self.greedy_max_independent(start=containing)
        if len(basis) != self.rank:
            raise ValueError("greedy extension fell short of a basis")
        return basis

    # -- verification and serialization -------------------------------------

    def verify_axioms(self, *, seed: int = 0, samples: int = 20000) -> None:
        """Check the rank axioms on the table.

        Normalization, unit increase, and local submodularity are checked
        on every subset, which together are equivalent to the full rank
        axioms. Pairwise submodularity is additionally checked on all
        subset pairs for ground sets of at most 12 elements, and on a
        seeded sample of pairs above that.
        """
        n = self.size
        table = self.table
        if int(table[0]) != 0:
            raise AxiomViolation("rank of the empty set is not 0")
        if n == 0:
            return
        ar = np.arange(1 << n, dtype=np.int64)
        for b in range(n):
            bit = 1 << b
            lo_masks = ar[(ar & bit) == 0]
            lo = table[lo_masks].astype(np.int16)
            hi = table[lo_masks | bit].astype(np.int16)
            bad = np.nonzero((hi < lo) | (hi > lo + 1))[0]
            if bad.size:
                x = int(lo_masks[bad[0]])
                raise AxiomViolation(
                    f"unit increase fails at {self.labels_of(x)} + {self.ground[b]}"
                )
        for b in range(n):
            for f in range(b + 1, n):
                bits = (1 << b) | (1 << f)
                base = ar[(ar & bits) == 0]
                r0 = table[base].astype(np.int16)
                rb = table[base | (1 << b)].astype(np.int16)
                rf = table[base | (1 << f)].astype(np.int16)
                rbf = table[base | bits].astype(np.int16)
                bad = np.nonzero(rb + rf < rbf + r0)[0]
                if bad.size:
                    x = int(base[bad[0]])
                    raise AxiomViolation(
                        f"submodularity fails at {self.labels_of(x)} with "
                        f"{self.ground[b]}, {self.ground[f]}"
                    )
        if n <= 12:
            size = 1 << n
            t16 = table.astype(np.int16)
            for x in range(size):
                ys = ar
                lhs = int(t16[x]) + t16
                rhs = t16[x | ys] + t16[x & ys]
                bad = np.nonzero(lhs < rhs)[0]
                if bad.size:
                    y = int(bad[0])
                    raise AxiomViolation(
                        f"submodularity fails for {self.labels_of(x)}, {self.labels_of(y)}"
                    )
        else:
            rng = np.random.default_rng(seed)
            xs = rng.integers(0, 1 << n, size=samples, dtype=np.int64)
            ys = rng.integers(0, 1 << n, size=samples, dtype=np.int64)
            t16 = table.astype(np.int16)
            bad = np.nonzero(t16[xs] + t16[ys] < t16[xs | ys] + t16[xs & ys])[0]
            if bad.size:
                raise AxiomViolation(
                    f"submodularity fails for {self.labels_of(int(xs[bad[0]]))}, "
                    f"{self.labels_of(int(ys[bad[0]]))}"
                )

    def to_doc(self) -> dict:
        """Ground labels in order plus the basis family as sorted label lists."""
        return {
            "ground": list(self.ground),
            "bases": [list(self.labels_of(m)) for m in self.basis_masks()],
        }

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Matroid(rank {self.rank} on {self.size} elements)"

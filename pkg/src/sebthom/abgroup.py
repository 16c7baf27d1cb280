"""Finitely generated abelian groups in invariant-factor form.

A group is stored as ``Z^r + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``
and every ``di >= 2``, so two groups are isomorphic exactly when their
fields are equal.

>>> tensor(cyclic(4), cyclic(6))
FgAbGroup(free_rank=0, torsion=(2,))
>>> direct_sum(cyclic(2), cyclic(3))
FgAbGroup(free_rank=0, torsion=(6,))
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError, ValidationError

__all__ = [
    "FgAbGroup",
    "ZERO",
    "Z",
    "cyclic",
    "free",
    "invariant_factors",
    "snf",
    "from_presentation",
    "direct_sum",
    "tensor",
    "tor",
]


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical divisor chain of ``Z/o1 + Z/o2 + ...`` (orders >= 1).

    Uses ``Z/a + Z/b = Z/gcd(a,b) + Z/lcm(a,b)``; after the sweep each entry
    divides every later one. Units are dropped.
    """
    chain = [abs(o) for o in orders]
    if any(o == 0 for o in chain):
        raise ValueError("order 0 is a free summand, not torsion")
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            a, b = chain[i], chain[j]
            if b % a:
                g = gcd(a, b)
                chain[i], chain[j] = g, a // g * b
    return tuple(d for d in chain if d > 1)


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank`` plus the cyclic groups listed in ``torsion``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValidationError(f"free_rank must be >= 0, got {self.free_rank}")
        for d in self.torsion:
            if d < 2:
                raise ValidationError(f"torsion invariants must be >= 2, got {list(self.torsion)}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValidationError(
                    f"torsion {list(self.torsion)} is not a divisor chain; "
                    f"canonical form is {list(invariant_factors(self.torsion))}"
                )

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> FgAbGroup:
        """Build from arbitrary cyclic orders, canonicalizing them."""
        return cls(free_rank, invariant_factors(orders))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order_of_torsion(self) -> int:
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, doc) -> FgAbGroup:
        if not isinstance(doc, dict):
            raise ValidationError("group must be an object with free_rank and torsion")
        free_rank = doc.get("free_rank", 0)
        torsion = doc.get("torsion", [])
        if not isinstance(free_rank, int) or isinstance(free_rank, bool):
            raise ValidationError(f"free_rank must be an integer, got {free_rank!r}")
        if not isinstance(torsion, list) or not all(
            isinstance(d, int) and not isinstance(d, bool) for d in torsion
        ):
            raise ValidationError(f"torsion must be a list of integers, got {torsion!r}")
        return cls(free_rank, tuple(torsion))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


ZERO = FgAbGroup()
Z = FgAbGroup(1)


def free(rank: int) -> FgAbGroup:
    return FgAbGroup(rank)


def cyclic(order: int) -> FgAbGroup:
    """``Z/order``; order 0 gives ``Z`` and order 1 the trivial group."""
    if order == 0:
        return Z
    return FgAbGroup.from_orders(0, [order])


def snf(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Smith normal form diagonal of an integer matrix given as a list of rows.

    Returns ``min(rows, cols)`` non-negative integers: the nonzero invariants
    in divisor-chain order followed by zeros. Pivots are chosen with minimal
    absolute value; the matrix is held sparsely so presentation matrices with
    Kronecker structure stay cheap.
    """
    if not matrix:
        return []
    ncols = len(matrix[0])
    for row in matrix:
        if len(row) != ncols:
            raise DimensionError("ragged matrix: rows have different lengths")
    size = min(len(matrix), ncols)
    rows = [{j: int(v) for j, v in enumerate(row) if v} for row in matrix]
    rows = [r for r in rows if r]
    diagonal = []
    while rows:
        i, j = min(
            ((k, c) for k, r in enumerate(rows) for c in r),
            key=lambda kc: abs(rows[kc[0]][kc[1]]),
        )
        while True:
            pivot_row = rows[i]
            p = pivot_row[j]
            # row operations: clear column j below/above the pivot
            column_clean = True
            for k, r in enumerate(rows):
                if k == i or j not in r:
                    continue
                q = r[j] // p
                for c, v in pivot_row.items():
                    nv = r.get(c, 0) - q * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
                if j in r:
                    column_clean = False
            if not column_clean:
                i = min(
                    (k for k, r in enumerate(rows) if j in r),
                    key=lambda k: abs(rows[k][j]),
                )
                continue
            # column j now holds only the pivot, so column ops touch row i only
            row_clean = True
            for c in list(pivot_row):
                if c == j:
                    continue
                nv = pivot_row[c] % p
                if nv:
                    pivot_row[c] = nv
                    row_clean = False
                else:
                    del pivot_row[c]
            if not row_clean:
                j = min(pivot_row, key=lambda c: abs(pivot_row[c]))
                continue
            break
        diagonal.append(abs(p))
        del rows[i]
        rows = [r for r in rows if r]
    chain = list(invariant_factors(diagonal))
    ones = len(diagonal) - len(chain)
    return [1] * ones + chain + [0] * (size - len(diagonal))


def from_presentation(relations: Sequence[Sequence[int]], generators: int) -> FgAbGroup:
    """Cokernel of the relation matrix: one row per relation on ``generators``."""
    for row in relations:
        if len(row) != generators:
            raise DimensionError(
                f"relation {list(row)} has {len(row)} entries, expected {generators}"
            )
    invariants = snf(relations)
    nonzero = [d for d in invariants if d]
    return FgAbGroup(generators - len(nonzero), tuple(d for d in nonzero if d > 1))


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    return FgAbGroup.from_orders(
        sum(g.free_rank for g in groups),
        [d for g in groups for d in g.torsion],
    )


def tensor(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """``g ⊗ h`` by distributing over cyclic summands."""
    orders = [d for d in g.torsion for _ in range(h.free_rank)]
    orders += [e for e in h.torsion for _ in range(g.free_rank)]
    orders += [gcd(d, e) for d in g.torsion for e in h.torsion]
    return FgAbGroup.from_orders(g.free_rank * h.free_rank, orders)


def tor(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """``Tor_1(g, h)``; only torsion pairs contribute."""
    return FgAbGroup.from_orders(0, [gcd(d, e) for d in g.torsion for e in h.torsion])

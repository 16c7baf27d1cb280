"""Independent checks for the join computation.

None of these call :func:`sebthom.graded.join` or the gcd formulas of
:mod:`sebthom.abgroup`:

* :func:`pham_enumerate` lists every eigenvalue of a Brieskorn-Pham sum
  one tuple at a time.
* :func:`tensor_tor_resolution` computes ``g ⊗ h`` and ``Tor(g, h)`` as the
  homology of a tensored free resolution.
* :func:`milnor_groebner` counts the rank from the Jacobian ideal.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Sequence

from .abgroup import FgAbGroup, snf
from .errors import DomainError, ResourceError
from .graded import GradedPiece, VanishingData
from .groebner import check_isolated, groebner_basis, milnor_groebner  # noqa: F401

DEFAULT_MAX_ENUM = 10**6


def pham_enumerate(exponents: Sequence[int], max_enum: int = DEFAULT_MAX_ENUM) -> VanishingData:
    """Eigenvalues ``sum k_i/a_i mod 1`` over all ``1 <= k_i < a_i``, in degree ``n``."""
    exponents = list(exponents)
    if not exponents or any(
        isinstance(a, bool) or not isinstance(a, int) or a < 2 for a in exponents
    ):
        raise DomainError(f"exponents must be a non-empty list of integers >= 2, got {exponents}")
    rank = prod(a - 1 for a in exponents)
    if rank > max_enum:
        raise ResourceError(
            f"enumeration of {rank} eigenvalues exceeds the bound {max_enum} (see --max-enum)"
        )
    den = lcm(*exponents)
    steps = [range(den // a, den, den // a) for a in exponents]
    counts = Counter(sum(t) % den for t in product(*steps))
    eigenvalues = {Fraction(n, den): c for n, c in counts.items()}
    return VanishingData({len(exponents): GradedPiece(FgAbGroup(rank), eigenvalues)})


def _resolution(g: FgAbGroup) -> tuple[int, int, list[list[int]]]:
    """``0 -> Z^k -> Z^(r+k) -> g -> 0``: returns (rank P1, rank P0, matrix P1 -> P0).

    The matrix is stored as one row per generator of ``P1`` (its image in ``P0``).
    """
    k, n = len(g.torsion), g.free_rank + len(g.torsion)
    rows = []
    for i, d in enumerate(g.torsion):
        row = [0] * n
        row[g.free_rank + i] = d
        rows.append(row)
    return k, n, rows


def _kron_rows(a_rows, b_rows, sign=1):
    """Rows of ``A ⊗ B`` where each operand is given as image rows."""
    out = []
    for ra in a_rows:
        for rb in b_rows:
            out.append([sign * x * y for x in ra for y in rb])
    return out


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def tensor_tor_resolution(g: FgAbGroup, h: FgAbGroup) -> tuple[FgAbGroup, FgAbGroup]:
    """``(H_0, H_1)`` of ``P ⊗ Q`` for free resolutions ``P -> g`` and ``Q -> h``.

    With ``d_P: P1 -> P0`` and ``d_Q: Q1 -> Q0`` the tensored complex is

        P1⊗Q1 --d2--> P1⊗Q0 ⊕ P0⊗Q1 --d1--> P0⊗Q0

    ``H_0`` is the cokernel of ``d1``. Since ``C1 / ker d1`` embeds in the free
    module ``C0``, the torsion of ``H_1`` is the torsion of ``coker d2`` and its
    rank is ``dim C1 - rank d1 - rank d2``.
    """
    p1, p0, dp = _resolution(g)
    q1, q0, dq = _resolution(h)
    ip0, ip1, iq0, iq1 = _identity(p0), _identity(p1), _identity(q0), _identity(q1)
    c0, c1 = p0 * q0, p1 * q0 + p0 * q1

    # d1 on the P1⊗Q0 block is d_P ⊗ 1, on the P0⊗Q1 block 1 ⊗ d_Q
    d1 = _kron_rows(dp, iq0) + _kron_rows(ip0, dq)
    inv1 = [d for d in snf(d1) if d]
    rank_d1 = len(inv1)
    tensor_group = FgAbGroup(c0 - rank_d1, tuple(d for d in inv1 if d > 1))

    # d2 = (d_P ⊗ 1, -1 ⊗ d_Q) into the two blocks of C1 (order matches d1's rows)
    d2 = [
        left + right
        for left, right in zip(
            _kron_rows(ip1, dq, sign=-1), _kron_rows(dp, iq1)
        )
    ]
    invariants = [d for d in snf(d2) if d] if d2 else []
    rank_d2 = len(invariants)
    tor_group = FgAbGroup(c1 - rank_d1 - rank_d2, tuple(d for d in invariants if d > 1))
    return tensor_group, tor_group

"""Graded vanishing cohomology with monodromy eigenvalues.

Degree ``i`` of a :class:`VanishingData` holds the reduced integral cohomology
``H~^{i-1}`` of the Milnor fibre, i.e. degrees are shifted up by one relative
to the fibre. An eigenvalue ``exp(2*pi*i*k/m)`` of the monodromy is stored as
the reduced fraction ``k/m`` in ``[0, 1)``; ``0`` stands for the eigenvalue 1.

Monodromy is recorded on free parts only. Torsion summands carry no action.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import re
from typing import Iterable, Mapping

from . import abgroup
from .abgroup import FgAbGroup
from .errors import DomainError, ValidationError

RootOfUnity = Fraction

_ROOT_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


def root(k: int, m: int = 1) -> Fraction:
    """The root of unity ``exp(2*pi*i*k/m)`` as a reduced fraction mod 1."""
    if m <= 0:
        raise DomainError(f"denominator must be positive, got {m}")
    return Fraction(k % m, m)


def parse_root(text: str) -> Fraction:
    """Parse a strict ``"k/m"`` string: reduced, ``0 <= k < m``, ``"0/1"`` for 1."""
    if not isinstance(text, str):
        raise ValidationError(f"eigenvalue must be a string 'k/m', got {text!r}")
    match = _ROOT_RE.match(text)
    if not match:
        raise ValidationError(
            f"eigenvalue {text!r} is not a root of unity written as 'k/m' "
            "(only finite-order monodromy is supported)"
        )
    k, m = int(match.group(1)), int(match.group(2))
    if m == 0 or k >= m:
        raise ValidationError(f"eigenvalue {text!r} is out of range: need 0 <= k < m")
    if gcd(k, m) != 1 or (k == 0 and m != 1):
        raise ValidationError(f"eigenvalue {text!r} is not a reduced fraction")
    return Fraction(k, m)


def format_root(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def root_sort_key(value: Fraction) -> tuple[int, int]:
    return (value.denominator, value.numerator)


def _as_multiset(eigenvalues) -> Counter:
    if isinstance(eigenvalues, Mapping):
        items = eigenvalues.items()
    else:
        items = Counter(eigenvalues).items()
    out = Counter()
    for value, count in items:
        if count < 0:
            raise ValidationError(f"negative multiplicity for eigenvalue {value}")
        if count:
            out[Fraction(value) % 1] += count
    return out


@dataclass(frozen=True)
class GradedPiece:
    """One degree: a group plus the monodromy eigenvalues on its free part."""

    group: FgAbGroup
    eigenvalues: Counter = field(default_factory=Counter)

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _as_multiset(self.eigenvalues))
        count = sum(self.eigenvalues.values())
        if count != self.group.free_rank:
            raise ValidationError(
                f"eigenvalues: {count} given but free_rank is {self.group.free_rank}"
            )

    __hash__ = None

    @property
    def is_trivial(self) -> bool:
        return self.group.is_trivial

    def sorted_eigenvalues(self) -> list[Fraction]:
        return sorted(self.eigenvalues.elements(), key=root_sort_key)


@dataclass(frozen=True)
class VanishingData:
    """Sparse map from degree to :class:`GradedPiece`, trivial pieces removed."""

    pieces: Mapping[int, GradedPiece] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {
            int(d): p for d, p in sorted(self.pieces.items()) if not p.is_trivial
        }
        object.__setattr__(self, "pieces", cleaned)

    __hash__ = None

    def __getitem__(self, degree: int) -> GradedPiece:
        return self.pieces.get(degree, GradedPiece(abgroup.ZERO))

    def degrees(self) -> list[int]:
        return list(self.pieces)

    @property
    def has_torsion(self) -> bool:
        return any(p.group.torsion for p in self.pieces.values())

    def to_json(self) -> dict:
        return {
            "pieces": [
                {
                    "degree": d,
                    "group": p.group.to_json(),
                    "eigenvalues": [format_root(e) for e in p.sorted_eigenvalues()],
                }
                for d, p in self.pieces.items()
            ]
        }

    @classmethod
    def from_json(cls, doc) -> VanishingData:
        """Validate a ``{"pieces": [...]}`` document; errors name degree and field."""
        if not isinstance(doc, dict) or not isinstance(doc.get("pieces"), list):
            raise ValidationError("pieces: expected a list of piece objects")
        pieces = {}
        for n, item in enumerate(doc["pieces"]):
            if not isinstance(item, dict):
                raise ValidationError(f"pieces[{n}]: expected an object")
            degree = item.get("degree")
            if not isinstance(degree, int) or isinstance(degree, bool):
                raise ValidationError(f"pieces[{n}]: degree must be an integer, got {degree!r}")
            if degree in pieces:
                raise ValidationError(f"degree {degree}: duplicate piece")
            try:
                group = FgAbGroup.from_json(item.get("group"))
                raw = item.get("eigenvalues", [])
                if not isinstance(raw, list):
                    raise ValidationError("eigenvalues: expected a list of 'k/m' strings")
                eigenvalues = []
                for text in raw:
                    try:
                        eigenvalues.append(parse_root(text))
                    except ValidationError as exc:
                        raise ValidationError(f"eigenvalues: {exc}") from None
                piece = GradedPiece(group, eigenvalues)
            except ValidationError as exc:
                msg = str(exc)
                if not msg.startswith(("eigenvalues", "torsion", "free_rank", "group")):
                    msg = f"group: {msg}"
                raise ValidationError(f"degree {degree}: {msg}") from None
            pieces[degree] = piece
        return cls(pieces)

    def __str__(self) -> str:
        if not self.pieces:
            return "0"
        return "; ".join(
            f"H^{d}: {p.group} {{{', '.join(map(format_root, p.sorted_eigenvalues()))}}}"
            for d, p in self.pieces.items()
        )


EMPTY = VanishingData()


def piece(degree: int, group: FgAbGroup, eigenvalues: Iterable = ()) -> VanishingData:
    """Single-degree data, handy for atoms and tests."""
    return VanishingData({degree: GradedPiece(group, eigenvalues)})


def convolve(u: Counter, v: Counter) -> Counter:
    """Multiset ``{a + b mod 1}`` over all pairs, with multiplicity."""
    if not u or not v:
        return Counter()
    den = lcm(*(x.denominator for x in u), *(y.denominator for y in v))
    left = Counter()
    for x, c in u.items():
        left[x.numerator * (den // x.denominator)] += c
    right = Counter()
    for y, c in v.items():
        right[y.numerator * (den // y.denominator)] += c
    sums = Counter()
    for a, ca in left.items():
        for b, cb in right.items():
            sums[(a + b) % den] += ca * cb
    return Counter({Fraction(n, den): c for n, c in sums.items()})


def join(v: VanishingData, w: VanishingData) -> VanishingData:
    """Vanishing data of ``f(x) + g(y)`` from that of ``f`` and ``g``.

    Degree ``i`` receives ``v[a] ⊗ w[b]`` for ``a + b = i`` and
    ``Tor(v[c], w[d])`` for ``c + d = i + 1``; eigenvalues on the free part
    are all sums ``alpha + beta`` with ``alpha`` from ``v[a]`` and ``beta``
    from ``w[b]``.
    """
    groups = defaultdict(list)
    eigenvalues = defaultdict(Counter)
    for a, p in v.pieces.items():
        for b, q in w.pieces.items():
            groups[a + b].append(abgroup.tensor(p.group, q.group))
            groups[a + b - 1].append(abgroup.tor(p.group, q.group))
            eigenvalues[a + b] += convolve(p.eigenvalues, q.eigenvalues)
    return VanishingData(
        {i: GradedPiece(abgroup.direct_sum(*gs), eigenvalues[i]) for i, gs in groups.items()}
    )


def suspend(v: VanishingData, m: int) -> VanishingData:
    """Add ``y1^2 + ... + ym^2``: shift degrees by ``m``, multiply monodromy by ``(-1)^m``."""
    if m < 1:
        raise DomainError(f"suspend needs m >= 1, got {m}")
    shift = Fraction(m, 2)
    return VanishingData(
        {
            d + m: GradedPiece(
                p.group, Counter({(e + shift) % 1: c for e, c in p.eigenvalues.items()})
            )
            for d, p in v.pieces.items()
        }
    )


def total_rank(v: VanishingData) -> int:
    """Sum of free ranks; the Milnor number for an isolated singularity."""
    return sum(p.group.free_rank for p in v.pieces.values())


def equal(v: VanishingData, w: VanishingData) -> bool:
    return v.pieces == w.pieces


# -- cyclotomic bookkeeping ---------------------------------------------------


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divexact(p: list[int], q: list[int]) -> list[int]:
    """Exact division of integer polynomials, ``q`` monic (ascending coefficients)."""
    p = list(p)
    out = [0] * (len(p) - len(q) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(q) - 1]
        out[i] = c
        for j, b in enumerate(q):
            p[i + j] -= c * b
    if any(p):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {n}")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, list(cyclotomic(d)))
    return tuple(p)


def _totient_residues(m: int) -> list[int]:
    return [k for k in range(m) if gcd(k, m) == 1] if m > 1 else [0]


def _format_poly(coeffs: list[int], var: str = "t", ascending: bool = False) -> str:
    terms = [(i, c) for i, c in enumerate(coeffs) if c]
    if not ascending:
        terms.reverse()
    if not terms:
        return "0"
    out = []
    for n, (i, c) in enumerate(terms):
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


@dataclass(frozen=True)
class CycloFactorization:
    """``prod_d Phi_d(t)^e_d`` times linear factors for the ``residual`` roots.

    ``residual`` is ``None`` when the eigenvalue multiset is Galois-closed,
    so the product lies in ``Z[t]``.
    """

    factors: Mapping[int, int] = field(default_factory=dict)
    residual: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "factors", {d: e for d, e in sorted(self.factors.items()) if e}
        )

    __hash__ = None

    @classmethod
    def from_eigenvalues(cls, eigenvalues) -> CycloFactorization:
        """Group a multiset of roots by order; leftovers form the residual."""
        counts = _as_multiset(eigenvalues)
        by_order = defaultdict(dict)
        for value, c in counts.items():
            by_order[value.denominator][value.numerator] = c
        factors = {}
        residual = Counter()
        for m, numerators in by_order.items():
            primitive = _totient_residues(m)
            e = min(numerators.get(k, 0) for k in primitive)
            if e:
                factors[m] = e
            for k, c in numerators.items():
                if c > e:
                    residual[Fraction(k, m)] += c - e
        rest = tuple(sorted(residual.elements(), key=root_sort_key))
        return cls(factors, rest or None)

    @property
    def is_integral(self) -> bool:
        return self.residual is None

    @property
    def degree(self) -> int:
        deg = sum(len(_totient_residues(d)) * e for d, e in self.factors.items())
        return deg + len(self.residual or ())

    def coefficients(self) -> list[int]:
        """Ascending coefficients of the monic polynomial; integral case only."""
        if self.residual is not None:
            raise ValueError("polynomial with residual roots is not in Z[t]")
        out = [1]
        for d, e in self.factors.items():
            for _ in range(e):
                out = _poly_mul(out, list(cyclotomic(d)))
        return out

    def expanded(self) -> str:
        """``prod (t - zeta)`` written out, e.g. ``t^2 - t + 1``."""
        if self.residual is None:
            return _format_poly(self.coefficients())
        return str(self)

    def factor_string(self) -> str:
        parts = [f"Φ{d}" + (f"^{e}" if e > 1 else "") for d, e in self.factors.items()]
        parts += [f"(t - e^(2πi·{format_root(r)}))" for r in self.residual or ()]
        return "·".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.factor_string()

    def to_json(self) -> dict:
        doc = {
            "factors": [{"d": d, "e": e} for d, e in self.factors.items()],
            "residual": None
            if self.residual is None
            else [format_root(r) for r in self.residual],
        }
        if self.residual is None:
            doc["polynomial"] = self.coefficients()
        return doc


def char_poly(v: VanishingData, degree: int) -> CycloFactorization:
    """Characteristic polynomial of the monodromy on the free part of ``v[degree]``."""
    return CycloFactorization.from_eigenvalues(v[degree].eigenvalues)


@dataclass(frozen=True)
class Zeta:
    """Monodromy zeta function as a ratio of products of ``det(1 - t*h)`` factors.

    Each side's :class:`CycloFactorization` lists the roots ``zeta`` of the
    factors ``(1 - zeta*t)``; factor ``d`` is ``Phi_d(t)`` for ``d >= 2`` and
    ``1 - t`` for ``d = 1``.
    """

    numerator: CycloFactorization
    denominator: CycloFactorization

    __hash__ = None

    @staticmethod
    def _side(c: CycloFactorization) -> str:
        parts = []
        for d, e in c.factors.items():
            body = "(" + _format_poly(list(reversed(cyclotomic(d))) if d > 1 else [1, -1], ascending=True) + ")"
            parts.append(body + (f"^{e}" if e > 1 else ""))
        parts += [f"(1 - e^(2πi·{format_root(r)})·t)" for r in c.residual or ()]
        return "".join(parts) if parts else "1"

    def __str__(self) -> str:
        num = self._side(self.numerator)
        if not self.denominator.factors and not self.denominator.residual:
            return num
        den = self._side(self.denominator)
        if len(self.denominator.factors) + len(self.denominator.residual or ()) > 1 or "^" in den:
            den = f"[{den}]"
        return f"{num} / {den}"

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
            "text": str(self),
        }


def zeta(v: VanishingData) -> Zeta:
    """``prod_i det(1 - t*h | H^i(F; Q))^((-1)^(i+1))`` over unreduced cohomology.

    Unreduced ``H^i`` is ``v[i + 1]`` plus one eigenvalue 1 when ``i == 0``.
    Pieces in degrees <= 0 are included with the same sign rule.
    """
    signed = Counter()
    signed[Fraction(0)] -= 1
    for d, p in v.pieces.items():
        sign = 1 if d % 2 == 0 else -1  # (-1)^((d-1)+1)
        for e, c in p.eigenvalues.items():
            signed[e] += sign * c
    numerator = {e: c for e, c in signed.items() if c > 0}
    denominator = {e: -c for e, c in signed.items() if c < 0}
    return Zeta(
        CycloFactorization.from_eigenvalues(numerator),
        CycloFactorization.from_eigenvalues(denominator),
    )

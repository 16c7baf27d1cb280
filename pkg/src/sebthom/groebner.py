"""Buchberger's algorithm over Q and Milnor numbers from Jacobian ideals.

The Milnor algebra is taken globally, ``Q[x]/(df/dx1, ..., df/dxn)``. It agrees
with the local algebra at the origin when the origin is the only critical
point of ``f``; otherwise the count covers every critical point in C^n.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DomainError, NonIsolatedError
from .poly import Exponent, Poly, degrevlex_key

_Terms = dict  # Exponent -> Fraction, nonzero coefficients only


def _lead(f: _Terms) -> Exponent:
    return max(f, key=degrevlex_key)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(f: _Terms, g: _Terms, c: Fraction, shift: Exponent) -> None:
    """In place: ``f -= c * x^shift * g``."""
    for exp, v in g.items():
        e = tuple(a + b for a, b in zip(exp, shift))
        nv = f.get(e, 0) - c * v
        if nv:
            f[e] = nv
        else:
            f.pop(e, None)


def _normal_form(f: _Terms, basis: list[tuple[Exponent, _Terms]]) -> _Terms:
    """Full reduction of ``f`` by ``basis`` (pairs of lead exponent and terms)."""
    f = dict(f)
    remainder: _Terms = {}
    while f:
        lm = _lead(f)
        lc = f[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                _sub_scaled(f, g, lc / g[glm], shift)
                break
        else:
            remainder[lm] = lc
            del f[lm]
    return remainder


def _monic(f: _Terms) -> _Terms:
    lc = f[_lead(f)]
    return {e: c / lc for e, c in f.items()}


def _spoly(f: _Terms, g: _Terms, flm: Exponent, glm: Exponent) -> _Terms:
    m = _lcm(flm, glm)
    s: _Terms = {}
    _sub_scaled(s, f, Fraction(-1) / f[flm], tuple(a - b for a, b in zip(m, flm)))
    _sub_scaled(s, g, Fraction(1) / g[glm], tuple(a - b for a, b in zip(m, glm)))
    return s


def _buchberger(polys: list[_Terms]) -> list[_Terms]:
    basis: list[tuple[Exponent, _Terms]] = []
    pairs: set[tuple[int, int]] = set()

    def add(f: _Terms) -> None:
        f = _monic(f)
        k = len(basis)
        basis.append((_lead(f), f))
        pairs.update((i, k) for i in range(k))

    for f in polys:
        if f:
            add(f)
    while pairs:
        # smallest lcm first keeps intermediate degrees low
        i, j = min(
            pairs,
            key=lambda ij: (degrevlex_key(_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij),
        )
        pairs.discard((i, j))
        lmi, fi = basis[i]
        lmj, fj = basis[j]
        m = _lcm(lmi, lmj)
        # coprime leading monomials: the S-polynomial reduces to zero
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        # chain criterion
        if any(
            k not in (i, j)
            and _divides(basis[k][0], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        r = _normal_form(_spoly(fi, fj, lmi, lmj), basis)
        if r:
            add(r)
    return [f for _, f in basis]


def _reduce_basis(polys: list[_Terms]) -> list[_Terms]:
    polys = [_monic(f) for f in polys if f]
    leads = [_lead(f) for f in polys]
    minimal = []
    for n, (lm, f) in enumerate(zip(leads, polys)):
        dominated = any(
            _divides(other, lm) and (other != lm or m < n)
            for m, other in enumerate(leads)
            if m != n
        )
        if not dominated:
            minimal.append(f)
    reduced = []
    for n, f in enumerate(minimal):
        others = [(_lead(g), g) for m, g in enumerate(minimal) if m != n]
        lm = _lead(f)
        tail = _normal_form({e: c for e, c in f.items() if e != lm}, others)
        tail[lm] = Fraction(1)
        reduced.append(tail)
    reduced.sort(key=lambda f: degrevlex_key(_lead(f)), reverse=True)
    return reduced


def groebner_basis(ideal: Sequence[Poly]) -> list[Poly]:
    """Reduced degrevlex Groebner basis with monic elements.

    All inputs must share one variable list. The empty ideal (or one made
    only of zeros) gives an empty basis.
    """
    if not ideal:
        return []
    variables = ideal[0].variables
    for f in ideal:
        if f.variables != variables:
            raise ValueError("all generators must share one variable list")
    basis = _reduce_basis(_buchberger([dict(f.terms) for f in ideal]))
    return [Poly(variables, f) for f in basis]


def normal_form(f: Poly, basis: Sequence[Poly]) -> Poly:
    return Poly(
        f.variables,
        _normal_form(dict(f.terms), [(_lead(dict(g.terms)), dict(g.terms)) for g in basis]),
    )


def _pure_power_bounds(leads: list[Exponent], n: int) -> list[int] | None:
    """Per variable, the smallest ``e`` with ``x_i^e`` a lead monomial, if all exist."""
    bounds = []
    for i in range(n):
        powers = [
            lm[i] for lm in leads if all(e == 0 for k, e in enumerate(lm) if k != i)
        ]
        if not powers:
            return None
        bounds.append(min(powers))
    return bounds


def _jacobian_basis(f: Poly) -> list[Poly]:
    if f.constant_term:
        raise DomainError(f"{f} does not vanish at the origin")
    if not f.variables:
        raise DomainError("polynomial has no variables")
    return groebner_basis(f.jacobian())


def check_isolated(f: Poly) -> bool:
    """True iff the Jacobian ideal of ``f`` is zero-dimensional."""
    basis = _jacobian_basis(f)
    leads = [_lead(dict(g.terms)) for g in basis]
    return _pure_power_bounds(leads, len(f.variables)) is not None


def milnor_groebner(f: Poly) -> int:
    """``dim_Q Q[x]/J(f)`` counted as standard monomials of the Jacobian basis."""
    basis = _jacobian_basis(f)
    leads = [_lead(dict(g.terms)) for g in basis]
    bounds = _pure_power_bounds(leads, len(f.variables))
    if bounds is None:
        raise NonIsolatedError(f)
    return sum(
        1
        for exp in product(*(range(b) for b in bounds))
        if not any(_divides(lm, exp) for lm in leads)
    )

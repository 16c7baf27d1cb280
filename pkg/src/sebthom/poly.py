"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import re
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


def natural_key(name: str):
    """Sort ``x2`` before ``x10``."""
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def degrevlex_key(exponent: Exponent):
    """Sort key realizing degree-reverse-lexicographic order (larger is bigger)."""
    return (sum(exponent), tuple(-e for e in reversed(exponent)))


@dataclass(frozen=True)
class Poly:
    """``terms`` maps exponent vectors (aligned with ``variables``) to coefficients."""

    variables: tuple[str, ...]
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        n = len(variables)
        terms = {}
        for exp, c in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"exponent {exp} does not fit variables {variables}")
            c = Fraction(c)
            if c:
                terms[exp] = terms.get(exp, Fraction(0)) + c
                if not terms[exp]:
                    del terms[exp]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(
            self,
            "terms",
            dict(sorted(terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)),
        )

    __hash__ = None

    @classmethod
    def from_monomials(cls, monomials: Iterable[tuple[Fraction, Mapping[str, int]]]) -> Poly:
        """Build from ``(coefficient, {var: power})`` pairs.

        Variables are those occurring in nonzero terms, in natural order.
        """
        collected: dict[tuple[tuple[str, int], ...], Fraction] = {}
        for coeff, powers in monomials:
            key = tuple(sorted((v, e) for v, e in powers.items() if e))
            collected[key] = collected.get(key, Fraction(0)) + Fraction(coeff)
        collected = {k: c for k, c in collected.items() if c}
        names = sorted({v for k in collected for v, _ in k}, key=natural_key)
        index = {v: i for i, v in enumerate(names)}
        terms = {}
        for key, c in collected.items():
            exp = [0] * len(names)
            for v, e in key:
                exp[index[v]] += e
            terms[tuple(exp)] = c
        return cls(tuple(names), terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def used_variables(self) -> set[str]:
        return {v for exp in self.terms for v, e in zip(self.variables, exp) if e}

    def monomials(self) -> list[Poly]:
        return [Poly(self.variables, {exp: c}) for exp, c in self.terms.items()]

    def restrict(self, variables: Iterable[str]) -> Poly:
        """Re-express over ``variables`` (must cover every used variable)."""
        variables = tuple(variables)
        missing = self.used_variables() - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in {variables}")
        index = {v: i for i, v in enumerate(self.variables)}
        terms = {}
        for exp, c in self.terms.items():
            terms[tuple(exp[index[v]] if v in index else 0 for v in variables)] = c
        return Poly(variables, terms)

    def derivative(self, var: str) -> Poly:
        i = self.variables.index(var)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                d = list(exp)
                d[i] -= 1
                terms[tuple(d)] = c * exp[i]
        return Poly(self.variables, terms)

    def jacobian(self) -> list[Poly]:
        return [self.derivative(v) for v in self.variables]

    def __add__(self, other: Poly) -> Poly:
        if self.variables != other.variables:
            raise ValueError("variable lists differ")
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return Poly(self.variables, terms)

    def __neg__(self) -> Poly:
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if self.variables != other.variables:
            raise ValueError("variable lists differ")
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Poly(self.variables, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for n, (exp, c) in enumerate(self.terms.items()):
            factors = [
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag), *factors])
            sign = "-" if c < 0 else "+"
            if n == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)


def variable(name: str, variables: Iterable[str]) -> Poly:
    variables = tuple(variables)
    exp = tuple(1 if v == name else 0 for v in variables)
    return Poly(variables, {exp: Fraction(1)})

from collections import Counter
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sebthom import atoms, graded
from sebthom.abgroup import ZERO, FgAbGroup, cyclic, free, tensor, tor
from sebthom.errors import DomainError, NonIsolatedError, ResourceError
from sebthom.expr import parse
from sebthom.oracle import (
    check_isolated,
    groebner_basis,
    milnor_groebner,
    pham_enumerate,
    tensor_tor_resolution,
)
from sebthom.poly import Poly

from .corpus import all_groups, data


XY = ("x", "y")


def P(text):
    return parse(text).poly


def over(poly, variables):
    return poly.restrict(variables)


def sympy_reduced_basis(polys, variables):
    gens = sympy.symbols(variables)
    exprs = [sympy.sympify(str(p).replace("^", "**")) for p in polys]
    basis = sympy.groebner(exprs, *gens, order="grevlex", domain="QQ")
    out = []
    for g in basis.exprs:
        terms = sympy.Poly(g, *gens).terms()
        out.append({tuple(e): Fraction(int(c.p), int(c.q)) for e, c in terms})
    return out


def as_term_sets(polys):
    return sorted(sorted(p.terms.items()) for p in polys)


class TestPhamEnumerate:
    def test_two_three(self):
        assert pham_enumerate([2, 3]) == data((2, 2, [], [(5, 6), (1, 6)]))

    def test_single(self):
        assert pham_enumerate([2]) == data((1, 1, [], [(1, 2)]))

    def test_three_threes(self):
        v = pham_enumerate([3, 3, 3])
        assert v.degrees() == [3] and v[3].group == free(8)

    def test_bound(self):
        with pytest.raises(ResourceError):
            pham_enumerate([11, 11, 11], max_enum=999)
        assert graded.total_rank(pham_enumerate([11, 11, 11], max_enum=1000)) == 1000

    def test_domain(self):
        with pytest.raises(DomainError):
            pham_enumerate([])
        with pytest.raises(DomainError):
            pham_enumerate([3, 1])

    def test_does_not_use_join(self, monkeypatch):
        def boom(*_):
            raise AssertionError("join called")

        monkeypatch.setattr(graded, "join", boom)
        monkeypatch.setattr(atoms, "join", boom)
        assert graded.total_rank(pham_enumerate([3, 4, 5])) == 24

    def test_brute_force_small(self):
        # literal tuple listing with Fractions, no common denominator
        for exps in [(2, 3), (3, 4), (2, 2, 3), (4, 6)]:
            counts = Counter(
                sum(Fraction(k, a) for k, a in zip(ks, exps)) % 1
                for ks in product(*(range(1, a) for a in exps))
            )
            assert pham_enumerate(exps)[len(exps)].eigenvalues == counts


class TestResolution:
    def test_cyclic(self):
        assert tensor_tor_resolution(cyclic(4), cyclic(6)) == (cyclic(2), cyclic(2))

    def test_free_left(self):
        for h in all_groups(max_rank=2, max_d=6, max_len=2):
            assert tensor_tor_resolution(free(1), h) == (h, ZERO)

    def test_klein(self):
        v4 = FgAbGroup(0, (2, 2))
        assert tensor_tor_resolution(v4, cyclic(2)) == (v4, v4)

    def test_agrees_with_formulas_sample(self, rng):
        groups = all_groups()
        for _ in range(2000):
            g, h = rng.choice(groups), rng.choice(groups)
            assert tensor_tor_resolution(g, h) == (tensor(g, h), tor(g, h))


class TestGroebner:
    def test_monomial_ideal(self):
        ideal = [over(P("x^2"), XY), over(P("y^2"), XY)]
        assert as_term_sets(groebner_basis(ideal)) == as_term_sets(ideal)

    def test_already_basis(self):
        # S(x + y, y^2) = y^3, which reduces to 0 by y^2
        ideal = [P("x + y"), over(P("y^2"), XY)]
        assert as_term_sets(groebner_basis(ideal)) == as_term_sets(ideal)

    def test_two_conics(self):
        # S(x^2 - y, y^2 - x) = x^3 - y^3 -> xy - xy = 0, so the input is reduced
        ideal = [P("x^2 - y"), P("y^2 - x")]
        basis = groebner_basis(ideal)
        assert as_term_sets(basis) == as_term_sets(ideal)
        assert as_term_sets(basis) == sorted(sorted(d.items()) for d in sympy_reduced_basis(ideal, XY))
        # the gradient of x^3/3 - xy + y^3/3 generates this ideal; V(x^4 = x) has 4 points
        assert milnor_groebner(P("1/3*x^3 - x*y + 1/3*y^3")) == 4

    def test_empty(self):
        assert groebner_basis([]) == []
        assert groebner_basis([Poly(("x",), {})]) == []

    def test_unit_ideal(self):
        basis = groebner_basis([P("x + 1"), P("x")])
        assert [p.terms for p in basis] == [{(0,): 1}]

    @settings(max_examples=60)
    @given(
        st.lists(
            st.dictionaries(
                st.tuples(st.integers(0, 3), st.integers(0, 3)),
                st.integers(-3, 3).filter(bool),
                min_size=1,
                max_size=3,
            ),
            min_size=1,
            max_size=3,
        ),
        st.randoms(use_true_random=False),
    )
    def test_matches_sympy_and_input_order(self, specs, rnd):
        polys = [Poly(("x", "y"), {e: Fraction(c) for e, c in s.items()}) for s in specs]
        polys = [p for p in polys if not p.is_zero]
        if not polys:
            return
        basis = groebner_basis(polys)
        expected = sympy_reduced_basis(polys, ("x", "y"))
        assert as_term_sets(basis) == sorted(sorted(d.items()) for d in expected)
        shuffled = list(polys)
        rnd.shuffle(shuffled)
        assert as_term_sets(groebner_basis(shuffled)) == as_term_sets(basis)


class TestMilnor:
    @pytest.mark.parametrize(
        "text, mu",
        [
            ("x^3 + y^3", 4),
            ("x^2 + y^2 + z^2", 1),
            ("x^2 + y^2", 1),
            ("x^3 + x*y^3", 7),  # E7
            ("x^2*y + y^4", 5),  # D5
            ("x^2 + y^3 + z^5", 8),  # E8
            ("x + y^2", 0),
        ],
    )
    def test_values(self, text, mu):
        assert milnor_groebner(P(text)) == mu

    def test_e7_via_sympy_basis(self):
        x, y = sympy.symbols("x y")
        f = x**3 + x * y**3
        basis = sympy.groebner([f.diff(x), f.diff(y)], x, y, order="grevlex")
        leads = [sympy.Poly(sympy.LM(g, x, y, order="grevlex"), x, y).monoms()[0] for g in basis.exprs]
        standard = [
            (i, j)
            for i in range(10)
            for j in range(10)
            if not any(i >= a and j >= b for a, b in leads)
        ]
        assert len(standard) == 7

    @pytest.mark.parametrize("text", ["x^2*y", "x^2*y^2", "x^3*y + x^2*y^2"])
    def test_non_isolated(self, text):
        with pytest.raises(NonIsolatedError, match="non-isolated critical locus"):
            milnor_groebner(P(text))
        assert not check_isolated(P(text))

    @pytest.mark.parametrize("text", ["x^2 + y^3", "x^3 + x*y^3", "x^2*y + y^4"])
    def test_isolated(self, text):
        assert check_isolated(P(text))

    def test_constant_term(self):
        with pytest.raises(DomainError):
            milnor_groebner(P("x^2 + 1"))

    def test_brieskorn_matches_rank(self):
        for n in (1, 2, 3):
            for exps in product(range(2, 7), repeat=n):
                poly = " + ".join(f"x{i}^{a}" for i, a in enumerate(exps))
                assert milnor_groebner(P(poly)) == graded.total_rank(atoms.pham(exps))

    def test_thom_sebastiani_multiplicative(self):
        pieces = {
            "cusp": ("{0}^3", 2),
            "e7": ("{0}^3 + {0}*{1}^3", 7),
            "d5": ("{0}^2*{1} + {1}^4", 5),
            "a3": ("{0}^4", 3),
        }
        names = list(pieces)
        for a in names:
            for b in names:
                fa, mua = pieces[a]
                fb, mub = pieces[b]
                f = fa.format("u1", "u2") + " + " + fb.format("v1", "v2")
                assert milnor_groebner(P(f)) == mua * mub

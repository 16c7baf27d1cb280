from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sebthom import atoms
from sebthom.errors import DomainError, ParseError, UnknownAtomError, UnsupportedSummandError
from sebthom.expr import (
    AtomRef,
    Join,
    Pham,
    PolyLiteral,
    Pow,
    Quad,
    Suspend,
    brieskorn_exponents,
    evaluate,
    parse,
    serialize,
    split_disjoint,
)
from sebthom.graded import EMPTY, equal
from sebthom.poly import Poly

from .corpus import registry


def summand_strings(text):
    return [str(p) for p in split_disjoint(parse(text).poly).summands]


class TestParse:
    def test_join(self):
        assert parse("join(pow(2), pow(3))") == Join(Pow(2), Pow(3))

    def test_poly(self):
        e = parse("x^2 + y^3 + z^5")
        assert isinstance(e, PolyLiteral)
        assert e.poly.variables == ("x", "y", "z")

    def test_trailing_comma(self):
        with pytest.raises(ParseError) as info:
            parse("pham(2,3,)")
        assert info.value.offset == 9
        assert "integer" in info.value.expected

    def test_whitespace_insensitive(self):
        assert parse(" suspend ( quad( 2 ) ,3 ) ") == Suspend(Quad(2), 3)
        assert parse("pham(2, 3,5)") == Pham((2, 3, 5))

    def test_atom_quotes(self):
        assert parse('atom("torsion-demo")') == AtomRef("torsion-demo")
        assert parse("atom('x y')") == AtomRef("x y")
        assert parse(r'atom("a\"b")') == AtomRef('a"b')

    @pytest.mark.parametrize(
        "source, offset",
        [
            ("pow(1)", 4),
            ("quad(0)", 5),
            ("pham(2, 1)", 8),
            ("suspend(pow(2), 0)", 16),
            ("pow(2, 3)", 5),
            ("join(pow(2))", 11),
            ("x^2 y", 4),
            ("x^", 2),
            ("x + ", 4),
            ("atom(name)", 5),
            ("x % y", 2),
            ("", 0),
            ("1/0*x", 2),
        ],
    )
    def test_error_offsets(self, source, offset):
        with pytest.raises(ParseError) as info:
            parse(source)
        assert info.value.offset == offset

    def test_offsets_are_bytes(self):
        with pytest.raises(ParseError) as info:
            parse('join(atom("é"), )')
        assert info.value.offset == 17

    def test_rational_coefficients(self):
        p = parse("3/2*x^2 - x*y + 2*y*3").poly
        assert p.terms == {(2, 0): Fraction(3, 2), (1, 1): -1, (0, 1): 6}

    def test_function_name_as_variable(self):
        p = parse("pow^2 + quad").poly
        assert p.variables == ("pow", "quad")


def exprs():
    leaf = st.one_of(
        st.integers(2, 9).map(Pow),
        st.integers(1, 4).map(Quad),
        st.lists(st.integers(2, 9), min_size=1, max_size=4).map(lambda xs: Pham(tuple(xs))),
        st.text(alphabet='ab-_ "\\é', min_size=1, max_size=6).map(AtomRef),
        polys().map(PolyLiteral),
    )
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            st.tuples(kids, kids).map(lambda t: Join(*t)),
            st.tuples(kids, st.integers(1, 4)).map(lambda t: Suspend(*t)),
        ),
        max_leaves=6,
    )


def polys():
    names = st.sampled_from(["x", "y", "z", "x1", "x10", "w_2"])
    monomial = st.tuples(
        st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool),
        st.dictionaries(names, st.integers(0, 4), max_size=3),
    )
    return st.lists(monomial, min_size=1, max_size=4).map(Poly.from_monomials)


@given(exprs())
def test_round_trip(e):
    assert parse(serialize(e)) == e


class TestSplit:
    def test_disjoint(self):
        assert summand_strings("x^2 + y^3") == ["x^2", "y^3"]

    def test_shared(self):
        assert summand_strings("x^2 + x*y + y^3") == ["y^3 + x^2 + x*y"]

    def test_components(self):
        assert summand_strings("x1^2 + x2^3 + y*z + y^2") == ["x1^2", "x2^3", "y^2 + y*z"]

    def test_constant(self):
        with pytest.raises(DomainError, match="not vanishing at origin"):
            split_disjoint(parse("x^2 + 1").poly)

    def test_zero(self):
        with pytest.raises(DomainError):
            split_disjoint(parse("x - x").poly)

    @given(st.permutations(["a^2", "b*c", "c^3", "d^4", "e*f*a"]), st.permutations(["p", "q", "r", "s", "t", "u"]))
    def test_invariant_under_reorder_and_rename(self, monomials, names):
        original = " + ".join(["a^2", "b*c", "c^3", "d^4", "e*f*a"])
        rename = dict(zip("abcdef", names))
        shuffled = " + ".join(monomials)
        renamed = "".join(rename.get(ch, ch) for ch in shuffled)

        def classes(text, mapping=None):
            out = set()
            for s in split_disjoint(parse(text).poly).summands:
                vs = s.used_variables()
                out.add(frozenset(mapping[v] if mapping else v for v in vs))
            return out

        inverse = {v: k for k, v in rename.items()}
        assert classes(renamed, inverse) == classes(original) == {
            frozenset("aef"), frozenset("bc"), frozenset("d")
        }

    def test_partition_covers_variables(self):
        p = parse("x1^2 + x2^3 + y*z + y^2").poly
        parts = split_disjoint(p).summands
        used = [s.used_variables() for s in parts]
        assert set().union(*used) == p.used_variables()
        assert sum(len(u) for u in used) == len(p.used_variables())


class TestEvaluate:
    def test_brieskorn_poly(self):
        assert evaluate(parse("x^2+y^3")) == atoms.pham([2, 3])

    def test_join_quads(self):
        assert evaluate(parse("join(quad(1), quad(1))")) == atoms.quad(2)

    def test_unsupported(self):
        with pytest.raises(UnsupportedSummandError, match=r"x\^2 \+ x\*y"):
            evaluate(parse("x^2 + x*y"))

    def test_coefficients_ignored(self):
        assert evaluate(parse("-3*x^2 + 1/5*y^3")) == atoms.pham([2, 3])

    def test_linear_summand_is_smooth(self):
        assert evaluate(parse("x + y^2")) == EMPTY

    def test_atoms(self):
        reg = registry()
        v = evaluate(parse('suspend(atom("z4-deg2"), 1)'), reg)
        assert v.degrees() == [3]
        with pytest.raises(UnknownAtomError):
            evaluate(parse('atom("missing")'), reg)

    @given(
        st.lists(st.integers(2, 7), min_size=1, max_size=4),
        st.permutations(["x", "y", "z", "w"]),
        st.randoms(use_true_random=False),
    )
    def test_brieskorn_independent_of_names_and_order(self, exps, names, rnd):
        terms = [f"{c}*{v}^{a}" for a, v, c in zip(exps, names, ["1", "2", "3/4", "7"])]
        rnd.shuffle(terms)
        text = "".join(rnd.choice([" + ", " - "]) + t for t in terms)
        assert equal(evaluate(parse(text)), atoms.pham(sorted(exps)))

    def test_brieskorn_exponents(self):
        assert brieskorn_exponents(parse("join(pow(3), suspend(quad(1), 2))")) == [3, 2, 2, 2]
        assert brieskorn_exponents(parse("x^2 + y^5")) == [2, 5]
        assert brieskorn_exponents(parse("x^2 + x*y")) is None
        assert brieskorn_exponents(parse('join(atom("a"), pow(2))')) is None

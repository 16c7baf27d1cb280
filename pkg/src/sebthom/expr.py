"""Expression language: atom combinators and raw polynomials.

Grammar (whitespace insensitive)::

    expr  := func | poly
    func  := "join(" expr "," expr ")" | "suspend(" expr "," int ")"
           | "pow(" int ")" | "quad(" int ")" | "pham(" int ("," int)* ")"
           | "atom(" quoted-name ")"
    poly  := ["+" | "-"] term (("+" | "-") term)*
    term  := factor ("*" factor)*
    factor:= int ["/" int] | ident ["^" int]

Error offsets count bytes of the UTF-8 encoded source.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
import json
import re
from typing import Union

from . import atoms
from .atoms import AtomRegistry
from .errors import DomainError, ParseError, UnsupportedSummandError
from .graded import EMPTY, VanishingData, join, suspend
from .poly import Poly, natural_key

# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Join:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Suspend:
    child: Expr
    m: int


@dataclass(frozen=True)
class Pow:
    a: int


@dataclass(frozen=True)
class Quad:
    m: int


@dataclass(frozen=True)
class Pham:
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class AtomRef:
    name: str


@dataclass(frozen=True)
class PolyLiteral:
    poly: Poly

    __hash__ = None


Expr = Union[Join, Suspend, Pow, Quad, Pham, AtomRef, PolyLiteral]

# -- lexer ----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<string>"(?:[^"\\]|\\.)*"|'[^']*')
  | (?P<punct>[(),+\-*/^])
    """,
    re.VERBOSE,
)

_FUNCTIONS = {"join", "suspend", "pow", "quad", "pham", "atom"}


@dataclass(frozen=True)
class _Token:
    kind: str  # ident, int, string, punct, end
    text: str
    offset: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    byte = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if not m:
            raise ParseError(f"unexpected character {source[pos]!r}", byte)
        text = m.group()
        if m.lastgroup != "ws":
            kind = m.lastgroup
            tokens.append(_Token(kind, text, byte))
        byte += len(text.encode("utf-8"))
        pos = m.end()
    tokens.append(_Token("end", "", byte))
    return tokens


# -- parser ---------------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, expected, token: _Token | None = None):
        token = token or self.tok
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ParseError(f"unexpected {found}", token.offset, expected)

    def punct(self, text: str) -> _Token:
        if self.tok.kind == "punct" and self.tok.text == text:
            tok = self.tok
            self.i += 1
            return tok
        self.fail([repr(text)])

    def at_punct(self, *texts: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text in texts

    def integer(self, what: str, minimum: int) -> int:
        tok = self.tok
        if tok.kind != "int":
            self.fail(["integer"])
        self.i += 1
        value = int(tok.text)
        if value < minimum:
            raise ParseError(f"{what} must be >= {minimum}, got {value}", tok.offset)
        return value

    def parse(self) -> Expr:
        expr = self.expr()
        if self.tok.kind != "end":
            self.fail(["end of input", "'+'", "'-'", "'*'"])
        return expr

    def expr(self) -> Expr:
        tok = self.tok
        if tok.kind == "ident" and tok.text in _FUNCTIONS and self.peek().text == "(":
            return self.func()
        return PolyLiteral(self.poly())

    def func(self) -> Expr:
        name = self.tok.text
        self.i += 1
        self.punct("(")
        if name == "join":
            left = self.expr()
            self.punct(",")
            right = self.expr()
            node = Join(left, right)
        elif name == "suspend":
            child = self.expr()
            self.punct(",")
            node = Suspend(child, self.integer("suspend shift", 1))
        elif name == "pow":
            node = Pow(self.integer("pow exponent", 2))
        elif name == "quad":
            node = Quad(self.integer("quad dimension", 1))
        elif name == "pham":
            exponents = [self.integer("pham exponent", 2)]
            while self.at_punct(","):
                self.i += 1
                exponents.append(self.integer("pham exponent", 2))
            node = Pham(tuple(exponents))
        else:
            tok = self.tok
            if tok.kind != "string":
                self.fail(["quoted atom name"])
            self.i += 1
            name_text = json.loads(tok.text) if tok.text[0] == '"' else tok.text[1:-1]
            if not name_text:
                raise ParseError("atom name is empty", tok.offset)
            node = AtomRef(name_text)
        if not self.at_punct(")"):
            expected = {"','", "')'"} if name == "pham" else {"')'"}
            self.fail(expected)
        self.i += 1
        return node

    def poly(self) -> Poly:
        monomials = []
        sign = 1
        if self.at_punct("+", "-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        while True:
            coeff, powers = self.term()
            monomials.append((sign * coeff, powers))
            if self.at_punct("+", "-"):
                sign = -1 if self.tok.text == "-" else 1
                self.i += 1
                continue
            break
        return Poly.from_monomials(monomials)

    def term(self):
        coeff = Fraction(1)
        powers: dict[str, int] = {}
        while True:
            tok = self.tok
            if tok.kind == "int":
                self.i += 1
                value = Fraction(int(tok.text))
                if self.at_punct("/"):
                    self.i += 1
                    den_tok = self.tok
                    if den_tok.kind != "int":
                        self.fail(["integer"])
                    self.i += 1
                    if int(den_tok.text) == 0:
                        raise ParseError("division by zero", den_tok.offset)
                    value /= int(den_tok.text)
                coeff *= value
            elif tok.kind == "ident":
                self.i += 1
                power = 1
                if self.at_punct("^"):
                    self.i += 1
                    exp_tok = self.tok
                    if exp_tok.kind != "int":
                        self.fail(["integer"])
                    self.i += 1
                    power = int(exp_tok.text)
                powers[tok.text] = powers.get(tok.text, 0) + power
            else:
                self.fail(["integer", "identifier", "function"])
            if self.at_punct("*"):
                self.i += 1
                continue
            return coeff, powers


def parse(source: str) -> Expr:
    """Parse an expression; raises :class:`ParseError` with a byte offset."""
    return _Parser(source).parse()


def serialize(e: Expr) -> str:
    """Inverse of :func:`parse` up to whitespace."""
    if isinstance(e, Join):
        return f"join({serialize(e.left)}, {serialize(e.right)})"
    if isinstance(e, Suspend):
        return f"suspend({serialize(e.child)}, {e.m})"
    if isinstance(e, Pow):
        return f"pow({e.a})"
    if isinstance(e, Quad):
        return f"quad({e.m})"
    if isinstance(e, Pham):
        return f"pham({', '.join(map(str, e.exponents))})"
    if isinstance(e, AtomRef):
        return f"atom({json.dumps(e.name, ensure_ascii=False)})"
    if isinstance(e, PolyLiteral):
        return str(e.poly)
    raise TypeError(f"not an expression node: {e!r}")


# -- splitting and evaluation ---------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    summands: tuple[Poly, ...]

    __hash__ = None


def split_disjoint(p: Poly) -> SplitResult:
    """Group monomials by connected components of the variable-sharing graph."""
    if p.is_zero:
        raise DomainError("cannot split the zero polynomial")
    if p.constant_term:
        raise DomainError(f"{p} is not vanishing at origin (constant term present)")
    parent = {v: v for v in p.variables}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for exp in p.terms:
        used = [v for v, e in zip(p.variables, exp) if e]
        for v in used[1:]:
            parent[find(v)] = find(used[0])
    components: dict[str, list[str]] = {}
    for v in p.variables:
        if v in p.used_variables():
            components.setdefault(find(v), []).append(v)
    summands = []
    for names in sorted(components.values(), key=lambda vs: natural_key(vs[0])):
        names = sorted(names, key=natural_key)
        index = [p.variables.index(v) for v in names]
        terms = {
            tuple(exp[i] for i in index): c
            for exp, c in p.terms.items()
            if any(exp[i] for i in index)
        }
        summands.append(Poly(tuple(names), terms))
    return SplitResult(tuple(summands))


def pure_power_exponent(summand: Poly) -> int | None:
    """``a`` if the summand is ``c*x^a`` in one variable, else ``None``."""
    if len(summand.variables) != 1 or len(summand.terms) != 1:
        return None
    ((exp, _),) = summand.terms.items()
    return exp[0]


def poly_exponents(p: Poly) -> list[int]:
    """Exponents of a Brieskorn-Pham polynomial; raises on any other summand."""
    out = []
    for summand in split_disjoint(p).summands:
        a = pure_power_exponent(summand)
        if a is None:
            raise UnsupportedSummandError(summand)
        out.append(a)
    return out


def evaluate(e: Expr, registry: AtomRegistry | None = None) -> VanishingData:
    """Vanishing data of an expression tree.

    A polynomial literal must split into summands ``c*x^a``; ``c`` is ignored
    and a linear summand (``a == 1``) is smooth, so it contributes no vanishing
    cohomology and the whole join is zero.
    """
    if isinstance(e, Join):
        return join(evaluate(e.left, registry), evaluate(e.right, registry))
    if isinstance(e, Suspend):
        return suspend(evaluate(e.child, registry), e.m)
    if isinstance(e, Pow):
        return atoms.pow(e.a)
    if isinstance(e, Quad):
        return atoms.quad(e.m)
    if isinstance(e, Pham):
        return atoms.pham(e.exponents)
    if isinstance(e, AtomRef):
        return (registry or AtomRegistry()).get(e.name).data
    if isinstance(e, PolyLiteral):
        exponents = poly_exponents(e.poly)
        if any(a == 1 for a in exponents):
            return EMPTY
        return reduce(join, (atoms.pow(a) for a in exponents))
    raise TypeError(f"not an expression node: {e!r}")


def brieskorn_exponents(e: Expr) -> list[int] | None:
    """Flatten an atom-free tree to the exponent list of an equivalent Brieskorn sum.

    ``quad(m)`` and ``suspend(_, m)`` contribute ``m`` copies of 2. Returns
    ``None`` when the tree references a custom atom or a non-Brieskorn
    polynomial, or when some summand is linear.
    """
    if isinstance(e, Join):
        left, right = brieskorn_exponents(e.left), brieskorn_exponents(e.right)
        return None if left is None or right is None else left + right
    if isinstance(e, Suspend):
        child = brieskorn_exponents(e.child)
        return None if child is None else child + [2] * e.m
    if isinstance(e, Pow):
        return [e.a]
    if isinstance(e, Quad):
        return [2] * e.m
    if isinstance(e, Pham):
        return list(e.exponents)
    if isinstance(e, PolyLiteral):
        try:
            exponents = poly_exponents(e.poly)
        except (UnsupportedSummandError, DomainError):
            return None
        return exponents if all(a >= 2 for a in exponents) else None
    return None


def atom_refs(e: Expr) -> list[str]:
    if isinstance(e, Join):
        return atom_refs(e.left) + atom_refs(e.right)
    if isinstance(e, Suspend):
        return atom_refs(e.child)
    if isinstance(e, AtomRef):
        return [e.name]
    return []

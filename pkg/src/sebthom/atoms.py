"""Vanishing data of the basic building blocks, plus user-defined atoms.

>>> from sebthom.graded import total_rank
>>> total_rank(pham([2, 3, 5]))
8
>>> print(quad(2))
H^2: Z {0/1}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Iterable

from .abgroup import FgAbGroup
from .errors import DomainError, UnknownAtomError, ValidationError
from .graded import VanishingData, join, piece

ATOM_SUFFIX = ".atom.json"


def pow(a: int) -> VanishingData:  # noqa: A001 - mirrors the expression syntax
    """``x^a``: the fibre is ``a`` points permuted cyclically."""
    if isinstance(a, bool) or not isinstance(a, int) or a < 2:
        raise DomainError(f"pow needs an integer a >= 2, got {a!r}")
    return piece(1, FgAbGroup(a - 1), [Fraction(k, a) for k in range(1, a)])


def quad(m: int) -> VanishingData:
    """``y1^2 + ... + ym^2``: rank one in degree ``m``, monodromy ``(-1)^m``."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DomainError(f"quad needs an integer m >= 1, got {m!r}")
    return piece(m, FgAbGroup(1), [Fraction(m, 2) % 1])


def pham(exponents: Iterable[int]) -> VanishingData:
    """Brieskorn-Pham ``x1^a1 + ... + xn^an`` as an iterated join of powers."""
    exponents = list(exponents)
    if not exponents:
        raise DomainError("pham needs at least one exponent")
    return reduce(join, (pow(a) for a in exponents))


@dataclass(frozen=True)
class AtomDef:
    name: str
    data: VanishingData

    __hash__ = None

    def to_json(self) -> dict:
        return {"name": self.name, **self.data.to_json()}


def load_atom(document: str | dict) -> AtomDef:
    """Parse and validate an atom document.

    Besides ``{"name": ..., "pieces": [...]}`` this accepts a report produced by
    ``sebthom eval --format json``; the echoed input becomes the name unless a
    ``name`` is present.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ValidationError("atom document must be a JSON object")
    if "pieces" not in document and isinstance(document.get("data"), dict):
        body = document["data"]
        name = document.get("name", document.get("input"))
    else:
        body = document
        name = document.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError("name: expected a non-empty string")
    return AtomDef(name, VanishingData.from_json(body))


def dump_atom(atom: AtomDef) -> str:
    return json.dumps(atom.to_json(), indent=2) + "\n"


class AtomRegistry:
    """Named atoms available to ``atom("name")`` references."""

    def __init__(self, atoms: Iterable[AtomDef] = ()):
        self._atoms: dict[str, AtomDef] = {}
        self._sources: dict[str, str] = {}
        for atom in atoms:
            self.add(atom)

    def add(self, atom: AtomDef, source: str = "<memory>") -> None:
        if atom.name in self._atoms:
            raise ValidationError(
                f"name: atom {atom.name!r} already defined in {self._sources[atom.name]}"
            )
        self._atoms[atom.name] = atom
        self._sources[atom.name] = source

    def load_file(self, path: str | Path) -> AtomDef:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"{path}: cannot read: {exc.strerror}") from None
        try:
            atom = load_atom(text)
            self.add(atom, str(path))
        except ValidationError as exc:
            raise ValidationError(f"{path}: {exc}") from None
        return atom

    def load_path(self, path: str | Path) -> list[AtomDef]:
        """Load one file, or every ``*.atom.json`` in a directory."""
        path = Path(path)
        if path.is_dir():
            return [self.load_file(p) for p in sorted(path.glob(f"*{ATOM_SUFFIX}"))]
        return [self.load_file(path)]

    def get(self, name: str) -> AtomDef:
        try:
            return self._atoms[name]
        except KeyError:
            raise UnknownAtomError(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._atoms

    def __iter__(self):
        return iter(sorted(self._atoms.values(), key=lambda a: a.name))

    def __len__(self) -> int:
        return len(self._atoms)

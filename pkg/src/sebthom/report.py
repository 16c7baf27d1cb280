"""Reports: the invariants of one expression, optionally with oracle checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
import json
import random

from . import abgroup
from .atoms import AtomRegistry
from .expr import Expr, Join, PolyLiteral, Suspend, brieskorn_exponents, evaluate, parse
from .graded import (
    CycloFactorization,
    VanishingData,
    Zeta,
    char_poly,
    equal,
    format_root,
    root_sort_key,
    total_rank,
    zeta,
)
from .oracle import DEFAULT_MAX_ENUM, check_isolated, milnor_groebner, pham_enumerate, tensor_tor_resolution
from .errors import NonIsolatedError

MAX_TORSION_SPOT_CHECKS = 32


@dataclass(frozen=True)
class Check:
    oracle: str
    subject: str
    match: bool
    expected: str = ""
    actual: str = ""

    def to_json(self) -> dict:
        doc = {"oracle": self.oracle, "subject": self.subject, "match": self.match}
        if not self.match:
            doc["expected"] = self.expected
            doc["actual"] = self.actual
        return doc


@dataclass
class Report:
    input: str
    data: VanishingData
    verification: list[Check] | None = None
    seed: int | None = None

    @property
    def milnor(self) -> int:
        return total_rank(self.data)

    @property
    def char_polys(self) -> dict[int, CycloFactorization]:
        return {
            d: char_poly(self.data, d)
            for d, p in self.data.pieces.items()
            if p.group.free_rank
        }

    @property
    def zeta(self) -> Zeta:
        return zeta(self.data)

    @property
    def ok(self) -> bool:
        return all(c.match for c in self.verification or ())

    def to_json(self) -> dict:
        doc = {
            "input": self.input,
            "milnor": self.milnor,
            "data": self.data.to_json(),
            "char_polys": [
                {"degree": d, **c.to_json(), "text": str(c)} for d, c in self.char_polys.items()
            ],
            "zeta": self.zeta.to_json(),
        }
        if self.verification is not None:
            doc["verification"] = {
                "seed": self.seed,
                "checks": [c.to_json() for c in self.verification],
            }
        return doc

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [
            f"input   {self.input}",
            f"μ       {self.milnor}",
            f"ζ(t)    {self.zeta}",
            "",
        ]
        rows = [("degree", "group", "eigenvalues", "char poly")]
        polys = self.char_polys
        for d, p in self.data.pieces.items():
            counts = Counter(p.eigenvalues)
            eig = ", ".join(
                format_root(e) + (f" (x{counts[e]})" if counts[e] > 1 else "")
                for e in sorted(counts, key=root_sort_key)
            )
            cp = polys.get(d)
            cp_text = "" if cp is None else f"{cp}" + (
                f" = {cp.expanded()}" if cp.is_integral else ""
            )
            rows.append((str(d), str(p.group), eig or "-", cp_text or "-"))
        if len(rows) == 1:
            lines.append("vanishing cohomology is zero")
        else:
            widths = [max(len(r[i]) for r in rows) for i in range(3)]
            for r in rows:
                lines.append(
                    "  ".join([r[0].rjust(widths[0]), r[1].ljust(widths[1]), r[2].ljust(widths[2]), r[3]]).rstrip()
                )
        if self.verification is not None:
            lines += ["", f"verification (seed {self.seed})"]
            if not self.verification:
                lines.append("  no applicable oracle")
            for c in self.verification:
                status = "match" if c.match else "MISMATCH"
                lines.append(f"  {c.oracle:<22} {status:<9} {c.subject}")
                if not c.match:
                    lines.append(f"    expected {c.expected}")
                    lines.append(f"    actual   {c.actual}")
        return "\n".join(lines) + "\n"


def _join_nodes(e: Expr) -> list[Join]:
    if isinstance(e, Join):
        return [e, *_join_nodes(e.left), *_join_nodes(e.right)]
    if isinstance(e, Suspend):
        return _join_nodes(e.child)
    return []


def run_checks(
    e: Expr,
    data: VanishingData,
    registry: AtomRegistry | None = None,
    max_enum: int = DEFAULT_MAX_ENUM,
    seed: int = 0,
) -> list[Check]:
    """Every oracle that applies to ``e``, compared against ``data``."""
    checks = []
    exponents = brieskorn_exponents(e)
    if exponents is not None:
        expected = pham_enumerate(exponents, max_enum)
        checks.append(
            Check(
                "pham_enumerate",
                f"exponents {exponents}",
                equal(expected, data),
                str(expected),
                str(data),
            )
        )
    if isinstance(e, PolyLiteral):
        mu = milnor_groebner(e.poly)
        checks.append(
            Check("milnor_groebner", str(e.poly), mu == total_rank(data), str(mu), str(total_rank(data)))
        )
    pairs = []
    for node in _join_nodes(e):
        left, right = evaluate(node.left, registry), evaluate(node.right, registry)
        for a, p in left.pieces.items():
            for b, q in right.pieces.items():
                if p.group.torsion or q.group.torsion:
                    pairs.append((p.group, q.group))
    unique = list(dict.fromkeys(pairs))
    if len(unique) > MAX_TORSION_SPOT_CHECKS:
        unique = random.Random(seed).sample(unique, MAX_TORSION_SPOT_CHECKS)
    for g, h in unique:
        expected = tensor_tor_resolution(g, h)
        actual = (abgroup.tensor(g, h), abgroup.tor(g, h))
        checks.append(
            Check(
                "tensor_tor_resolution",
                f"({g}) ⊗ ({h})",
                expected == actual,
                f"tensor {expected[0]}, tor {expected[1]}",
                f"tensor {actual[0]}, tor {actual[1]}",
            )
        )
    return checks


def build_report(
    source: str,
    registry: AtomRegistry | None = None,
    verify: bool = False,
    max_enum: int = DEFAULT_MAX_ENUM,
    seed: int = 0,
) -> Report:
    e = parse(source)
    if verify and isinstance(e, PolyLiteral) and not e.poly.is_zero:
        if not check_isolated(e.poly):
            raise NonIsolatedError(e.poly)
    data = evaluate(e, registry)
    if not verify:
        return Report(source, data)
    return Report(source, data, run_checks(e, data, registry, max_enum, seed), seed)

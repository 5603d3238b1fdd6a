"""Canonical bases as coefficient tables.

A table holds the full matrix h_{y,x} expressing each canonical basis
element through the standard basis.  The characteristic-0 table (the
Kazhdan-Lusztig basis in Soergel's normalization) is computed here by
induction on length; tables for positive characteristic are inputs,
loaded from files and checked against the axioms they must satisfy:
unitriangularity with Bruhat support, nonnegative coefficients, and
symmetry under the anti-involution fixing the generators.  At
characteristic 0 bar-invariance of every column and the strict positive
degree bound are mandatory as well; for p > 0 bar-invariance is only
reported, never enforced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from .coxeter import (
    CoxeterElement,
    CoxeterError,
    CoxeterSystem,
    PRESETS,
    bruhat_leq,
    load_system,
    minimal_reps,
    multiply,
    parse_word,
    preset_system,
    word_to_str,
)
from .hecke import HeckeElement, bar_involution, mult_gen_left
from .laurent import LaurentPolynomial, ONE, V, ZERO, format_poly, parse_poly

__all__ = [
    "CanonicalTable",
    "TableError",
    "ValidationReport",
    "InvarianceReport",
    "kl_table",
    "validate_table",
    "change_basis",
    "check_parabolic_invariance",
    "extract_subtable",
    "save_table",
    "load_table",
]


class TableError(ValueError):
    """Malformed or axiom-violating table input."""


class CanonicalTable:
    """The matrix (h_{y,x}) of a canonical basis over a finite group.

    columns maps x to the dict {y: h_{y,x}} of nonzero entries of the
    column of x, always including the diagonal h_{x,x} = 1.  Instances
    are immutable once built; ``caches`` holds derived data only.
    """

    def __init__(
        self,
        system: CoxeterSystem,
        p: int,
        columns: Mapping[CoxeterElement, Mapping[CoxeterElement, LaurentPolynomial]],
    ):
        self.system = system
        self.p = int(p)
        self._columns = {
            x: {y: c for y, c in col.items() if not c.is_zero}
            for x, col in columns.items()
        }
        self.domain = tuple(sorted(self._columns, key=lambda x: x.sort_key()))
        self.caches: dict[str, dict] = {}

    def column(self, x: CoxeterElement) -> Mapping[CoxeterElement, LaurentPolynomial]:
        try:
            return self._columns[x]
        except KeyError:
            raise TableError(f"element {x} is outside the table domain") from None

    def entry(self, y: CoxeterElement, x: CoxeterElement) -> LaurentPolynomial:
        """h_{y,x}; zero when absent."""
        return self.column(x).get(y, ZERO)

    def canonical_element(self, x: CoxeterElement) -> HeckeElement:
        """The canonical basis element of x expanded in the standard basis."""
        cache = self.caches.setdefault("canonical_std", {})
        found = cache.get(x)
        if found is None:
            found = HeckeElement(self.system, self.column(x))
            cache[x] = found
        return found

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CanonicalTable):
            return (
                self.system == other.system
                and self.p == other.p
                and self._columns == other._columns
            )
        return NotImplemented

    def __repr__(self) -> str:
        return f"CanonicalTable(p={self.p}, |domain|={len(self.domain)})"


def kl_table(system: CoxeterSystem) -> CanonicalTable:
    """The characteristic-0 canonical basis of a finite system.

    Column recursion on length: for a left descent s of x with z = s x,
    the product of the canonical generator of s with the column of z
    equals the column of x plus mu(y, z) corrections over the y with
    s y < y, where mu(y, z) is the coefficient of v in h_{y,z}.
    """
    elements = system.elements()
    columns: dict[CoxeterElement, dict[CoxeterElement, LaurentPolynomial]] = {}
    for x in elements:
        if x.is_identity:
            columns[x] = {x: ONE}
            continue
        s = x.descents("left")[0]
        z = x.gen_times(s)
        col_z = HeckeElement(system, columns[z])
        product = mult_gen_left(col_z, s) + col_z.scale(V)
        data = dict(product._coeffs)
        for y, h in columns[z].items():
            mu = h.coeff(1)
            if mu and y.gen_times(s).length < y.length:
                correction = HeckeElement(system, columns[y]).scale(
                    LaurentPolynomial.monomial(-mu)
                )
                for u, c in correction._coeffs.items():
                    new = data.get(u, ZERO) + c
                    if new.is_zero:
                        data.pop(u, None)
                    else:
                        data[u] = new
        columns[x] = data
    return CanonicalTable(system, 0, columns)


# -- validation -----------------------------------------------------------------

MANDATORY_CHECKS = ("diagonal", "bruhat_support", "positivity", "iota_symmetry")


@dataclass
class ValidationReport:
    """Per-axiom violation lists; advisory checks never block acceptance."""

    p: int
    violations: dict[str, list[str]] = field(default_factory=dict)

    @property
    def advisory_checks(self) -> tuple[str, ...]:
        return ("bar_invariance",) if self.p > 0 else ()

    def mandatory_ok(self) -> bool:
        return not any(
            msgs for check, msgs in self.violations.items()
            if check not in self.advisory_checks
        )

    def all_ok(self) -> bool:
        return not any(self.violations.values())

    def summary(self) -> str:
        lines = []
        for check in sorted(self.violations):
            msgs = self.violations[check]
            tag = " (advisory)" if check in self.advisory_checks else ""
            status = "ok" if not msgs else f"{len(msgs)} violation(s)"
            lines.append(f"{check}{tag}: {status}")
            lines.extend(f"  {m}" for m in msgs)
        return "\n".join(lines)


def validate_table(table: CanonicalTable) -> ValidationReport:
    """Check every axiom; violations are report entries, never exceptions."""
    report = ValidationReport(p=table.p)
    checks = ["diagonal", "bruhat_support", "positivity", "iota_symmetry", "bar_invariance"]
    if table.p == 0:
        checks.append("degree_bound")
    for name in checks:
        report.violations[name] = []

    def fail(check: str, message: str) -> None:
        report.violations[check].append(message)

    for x in table.domain:
        col = table.column(x)
        diag = col.get(x, ZERO)
        if diag != ONE:
            fail("diagonal", f"h({x},{x}) = {format_poly(diag)} instead of 1")
        for y, h in col.items():
            if y != x and not bruhat_leq(y, x):
                fail("bruhat_support", f"h({y},{x}) = {format_poly(h)} but {y} is not Bruhat-below {x}")
            if not h.is_nonnegative():
                fail("positivity", f"h({y},{x}) = {format_poly(h)} has a negative coefficient")
            if table.p == 0 and y != x and any(e < 1 for e, _ in h.items()):
                fail("degree_bound", f"h({y},{x}) = {format_poly(h)} is not in vZ[v]")
    # iota symmetry: h_{y,x} = h_{y^-1, x^-1}
    for x in table.domain:
        xi = x.inverse()
        col = table.column(x)
        col_i = table.column(xi) if xi in set(table.domain) else {}
        keys = set(col) | {y.inverse() for y in col_i}
        for y in keys:
            lhs = col.get(y, ZERO)
            rhs = col_i.get(y.inverse(), ZERO) if col_i else ZERO
            if lhs != rhs:
                fail(
                    "iota_symmetry",
                    f"h({y},{x}) = {format_poly(lhs)} but h({y.inverse()},{xi}) = {format_poly(rhs)}",
                )
    for x in table.domain:
        el = table.canonical_element(x)
        if bar_involution(el) != el:
            fail("bar_invariance", f"column of {x} is not bar-invariant")
    return report


# -- base change ------------------------------------------------------------------


def to_standard(
    coeffs: Mapping[CoxeterElement, LaurentPolynomial],
    table: CanonicalTable,
) -> HeckeElement:
    """Substitute each canonical generator by its standard expansion."""
    total = HeckeElement.zero(table.system)
    for x, c in coeffs.items():
        total = total + table.canonical_element(x).scale(c)
    return total


def to_canonical(
    a: HeckeElement,
    table: CanonicalTable,
) -> dict[CoxeterElement, LaurentPolynomial]:
    """Triangular solve along decreasing (length, ShortLex)."""
    if a.system != table.system:
        raise TableError("element and table use different systems")
    remaining = dict(a._coeffs)
    out: dict[CoxeterElement, LaurentPolynomial] = {}
    while remaining:
        x = max(remaining, key=lambda el: el.sort_key())
        c = remaining.pop(x)
        out[x] = c
        for y, h in table.column(x).items():
            if y == x:
                continue
            new = remaining.get(y, ZERO) - c * h
            if new.is_zero:
                remaining.pop(y, None)
            else:
                remaining[y] = new
    return out


def change_basis(a, table: CanonicalTable, direction: str):
    """Dispatch between the two coordinate changes; round trips are exact."""
    if direction == "to_canonical":
        return to_canonical(a, table)
    if direction == "to_standard":
        return to_standard(a, table)
    raise TableError(f"direction must be 'to_canonical' or 'to_standard', not {direction!r}")


# -- parabolic invariance -----------------------------------------------------------


@dataclass
class InvarianceReport:
    I: tuple[int, ...]
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        head = f"parabolic invariance for I={self.I}: "
        if self.passed:
            return head + "ok"
        return head + f"{len(self.violations)} violation(s)\n" + "\n".join(
            f"  {m}" for m in self.violations
        )


def check_parabolic_invariance(table: CanonicalTable, I: Iterable[int]) -> InvarianceReport:
    """Verify h_{yz,xz} = h_{y,x} for x, y in W_I and z minimal.

    At characteristic 0 the extracted subgroup block is also compared to
    the intrinsically computed table of the parabolic subsystem.
    """
    system = table.system
    I = tuple(sorted(set(int(s) for s in I)))
    report = InvarianceReport(I)
    sub = system.subsystem(I)
    sub_elements = [system._intern(u.word) for u in sub.elements()]
    reps = minimal_reps(system, I, "left")
    for x in sub_elements:
        for y in sub_elements:
            base = table.entry(y, x)
            for z in reps:
                lhs = table.entry(multiply(y, z), multiply(x, z))
                if lhs != base:
                    report.violations.append(
                        f"h({y}*{z},{x}*{z}) = {format_poly(lhs)} "
                        f"but h({y},{x}) = {format_poly(base)}"
                    )
    if table.p == 0:
        intrinsic = kl_table(sub)
        extracted = extract_subtable(table, I)
        if intrinsic != extracted:
            report.violations.append(
                "subgroup block differs from the intrinsic characteristic-0 table"
            )
    return report


def extract_subtable(table: CanonicalTable, I: Iterable[int]) -> CanonicalTable:
    """Entries with both indices in W_I, relabeled into the parabolic subsystem."""
    system = table.system
    I = tuple(sorted(set(int(s) for s in I)))
    sub = system.subsystem(I)
    allowed = set(I)
    columns: dict[CoxeterElement, dict[CoxeterElement, LaurentPolynomial]] = {}
    for u in sub.elements():
        ambient_x = system._intern(u.word)
        col = {}
        for y, h in table.column(ambient_x).items():
            if set(y.word) <= allowed:
                col[sub._intern(y.word)] = h
        columns[u] = col
    return CanonicalTable(sub, table.p, columns)


# -- file i/o -------------------------------------------------------------------


def _system_ref(system: CoxeterSystem) -> Optional[str]:
    for name in PRESETS:
        if preset_system(name) == system:
            return name
    return None


def table_text(table: CanonicalTable, system_ref: Optional[str] = None) -> str:
    """The line-oriented table format (always including diagonals)."""
    if system_ref is None:
        system_ref = _system_ref(table.system)
        if system_ref is None:
            raise TableError(
                "system is not a named preset; pass system_ref explicitly"
            )
    lines = [f"p = {table.p}", f"system = {system_ref}"]
    for x in table.domain:
        col = table.column(x)
        for y in sorted(col, key=lambda el: el.sort_key()):
            lines.append(
                f"{word_to_str(x.word)}\t{word_to_str(y.word)}\t{format_poly(col[y])}"
            )
    return "\n".join(lines) + "\n"


def save_table(
    table: CanonicalTable,
    path: Union[str, Path],
    system_ref: Optional[str] = None,
) -> None:
    Path(path).write_text(table_text(table, system_ref))


def _resolve_system(ref: str, base_dir: Path) -> CoxeterSystem:
    if ref.strip().upper() in PRESETS:
        return preset_system(ref)
    candidate = Path(ref)
    if not candidate.is_absolute():
        candidate = base_dir / candidate
    return load_system(candidate)


def load_table(
    path: Union[str, Path],
    system: Optional[CoxeterSystem] = None,
    force: bool = False,
) -> CanonicalTable:
    """Parse, resolve the system, check domain coverage, and validate.

    Mandatory axiom violations raise TableError unless force is set;
    advisory findings never block.  A group element that never appears as
    a column is reported as a missing diagonal, since its implied-1
    diagonal cannot be distinguished from an absent column.
    """
    path = Path(path)
    p: Optional[int] = None
    ref: Optional[str] = None
    entries: list[tuple[int, str, str, str]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line and "\t" not in line:
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key == "p":
                try:
                    p = int(value)
                except ValueError:
                    raise TableError(f"{path}:{lineno}: invalid p value {value!r}")
            elif key == "system":
                ref = value
            else:
                raise TableError(f"{path}:{lineno}: unknown header field {key!r}")
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise TableError(
                f"{path}:{lineno}: expected '<x>\\t<y>\\t<poly>', got {raw!r}"
            )
        entries.append((lineno, parts[0].strip(), parts[1].strip(), parts[2].strip()))
    if p is None:
        raise TableError(f"{path}: missing 'p =' header")
    if p < 0:
        raise TableError(f"{path}: p must be 0 or a positive characteristic")
    if system is None:
        if ref is None:
            raise TableError(f"{path}: missing 'system =' header")
        system = _resolve_system(ref, path.parent)
    if not system.is_finite():
        raise TableError(f"{path}: tables require a finite system")

    columns: dict[CoxeterElement, dict[CoxeterElement, LaurentPolynomial]] = {}
    for lineno, x_text, y_text, poly_text in entries:
        try:
            x = system.element(parse_word(system, x_text))
            y = system.element(parse_word(system, y_text))
        except CoxeterError as exc:
            raise TableError(f"{path}:{lineno}: {exc}") from None
        try:
            h = parse_poly(poly_text)
        except ValueError as exc:
            raise TableError(f"{path}:{lineno}: {exc}") from None
        col = columns.setdefault(x, {})
        if y in col:
            raise TableError(f"{path}:{lineno}: duplicate entry for ({y_text},{x_text})")
        if not h.is_zero:
            col[y] = h
    missing = [x for x in system.elements() if x not in columns]
    if missing:
        raise TableError(
            f"{path}: missing diagonal for {word_to_str(missing[0].word)}"
            + (f" (and {len(missing) - 1} more)" if len(missing) > 1 else "")
        )
    for x, col in columns.items():
        col.setdefault(x, ONE)
    table = CanonicalTable(system, p, columns)
    report = validate_table(table)
    if not report.mandatory_ok() and not force:
        raise TableError(
            f"{path}: table violates mandatory axioms\n{report.summary()}"
        )
    return table

"""The hybrid basis attached to a standard parabolic subgroup.

For a finitary subset I the products (canonical element of x) * H_y with
x in W_I and y minimal in W_I\\W form a basis of the algebra.  This
module computes those elements, expands arbitrary elements in them by a
triangular solve on the leading standard term, decides the hybrid
preorder, and verifies three facts about the base change from the
canonical basis: nonnegativity of all coefficients, unitriangularity
with respect to the hybrid preorder, and the coefficient identity tying
the base change to the subgroup's canonical table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .canonical import CanonicalTable, extract_subtable, kl_table, validate_table
from .cells import CellPartition, cell_partition
from .coxeter import (
    CoxeterElement,
    CoxeterError,
    CoxeterSystem,
    bruhat_leq,
    coset_decompose,
    minimal_reps,
    multiply,
    word_to_str,
)
from .hecke import HeckeElement, mult_gen_right, parabolic_embed
from .laurent import LaurentPolynomial, ONE, ZERO, format_poly

__all__ = [
    "HybridContext",
    "HybridCoefficients",
    "HybridViolation",
    "HybridReport",
    "hybrid_element",
    "hybrid_expand",
    "hybrid_leq",
    "verify_hybrid_theorems",
]


class HybridContext:
    """Everything needed to work with the hybrid basis of one pair (W, I).

    The subgroup table comes from the ambient table: recomputed at
    characteristic 0, extracted as the W_I block otherwise (recorded in
    ``subtable_source`` so downstream reports can flag the extraction).
    """

    def __init__(
        self,
        table: CanonicalTable,
        I: Iterable[int],
        subtable: Optional[CanonicalTable] = None,
    ):
        system = table.system
        self.table = table
        self.I = tuple(sorted(set(int(s) for s in I)))
        for s in self.I:
            system._check_letter(s)
        self.subsystem = system.subsystem(self.I)
        if not self.subsystem.is_finite():
            raise CoxeterError(f"I={self.I} is not finitary")
        if subtable is not None:
            if subtable.system != self.subsystem:
                raise CoxeterError("supplied subgroup table has the wrong system")
            self.subtable = subtable
            self.subtable_source = "supplied"
        elif table.p == 0:
            self.subtable = kl_table(self.subsystem)
            self.subtable_source = "computed"
        else:
            self.subtable = extract_subtable(table, self.I)
            self.subtable_source = "extracted"
        report = validate_table(self.subtable)
        if not report.mandatory_ok():
            raise CoxeterError(
                "subgroup table violates mandatory axioms:\n" + report.summary()
            )
        self.reps = minimal_reps(system, self.I, "left")
        self.rep_set = frozenset(self.reps)
        self.subgroup_cells: CellPartition = cell_partition(self.subtable, "right")
        self._sub_elements = tuple(
            system._intern(u.word) for u in self.subsystem.elements()
        )
        self._sub_set = frozenset(self._sub_elements)

    @property
    def system(self) -> CoxeterSystem:
        return self.table.system

    @property
    def p(self) -> int:
        return self.table.p

    def subgroup_elements(self) -> tuple[CoxeterElement, ...]:
        """W_I as ambient elements, sorted."""
        return self._sub_elements

    def contains_pair(self, x: CoxeterElement, y: CoxeterElement) -> bool:
        return x in self._sub_set and y in self.rep_set

    def as_subgroup(self, x: CoxeterElement) -> CoxeterElement:
        """Relabel an ambient element of W_I into the subsystem."""
        if x not in self._sub_set:
            raise CoxeterError(f"{x} is not in the parabolic subgroup on {self.I}")
        return self.subsystem._intern(x.word)

    def decompose(self, w: CoxeterElement) -> tuple[CoxeterElement, CoxeterElement]:
        d = coset_decompose(self.system, self.I, w, "left")
        return d.left_factor, d.right_factor

    def sub_leq_r(self, a: CoxeterElement, b: CoxeterElement) -> bool:
        """a <=_R b inside W_I (arguments are ambient elements of W_I)."""
        return self.subgroup_cells.leq_elements(self.as_subgroup(a), self.as_subgroup(b))


@dataclass
class HybridCoefficients:
    """Base change coefficients of one target element in the hybrid basis."""

    target: CoxeterElement
    coeffs: dict[tuple[CoxeterElement, CoxeterElement], LaurentPolynomial]

    def items(self):
        return sorted(
            self.coeffs.items(),
            key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key()),
        )


def hybrid_element(
    ctx: HybridContext, x: CoxeterElement, y: CoxeterElement
) -> HeckeElement:
    """(canonical element of x) * H_y in the standard basis."""
    if x not in ctx._sub_set:
        raise CoxeterError(f"x={x} is not in the parabolic subgroup on {ctx.I}")
    if y not in ctx.rep_set:
        raise CoxeterError(f"y={y} is not a minimal representative for {ctx.I}")
    cache = ctx.table.caches.setdefault(("hybrid_std", ctx.I), {})
    found = cache.get((x, y))
    if found is None:
        base = parabolic_embed(
            ctx.subtable.canonical_element(ctx.as_subgroup(x)), ctx.system
        )
        for s in y.word:
            base = mult_gen_right(base, s)
        cache[(x, y)] = base
        found = base
    return found


def hybrid_expand(ctx: HybridContext, a: HeckeElement) -> HybridCoefficients:
    """Expand in the hybrid basis by peeling leading standard terms.

    Each hybrid element is its leading standard term plus strictly
    Bruhat-lower ones, so solving along decreasing (length, ShortLex)
    terminates with the unique coefficient family.
    """
    if a.system != ctx.system:
        raise CoxeterError("element and context use different systems")
    remaining = dict(a._coeffs)
    out: dict[tuple[CoxeterElement, CoxeterElement], LaurentPolynomial] = {}
    target = None
    if remaining:
        target = max(remaining, key=lambda el: el.sort_key())
    while remaining:
        w = max(remaining, key=lambda el: el.sort_key())
        c = remaining.pop(w)
        x, y = ctx.decompose(w)
        out[(x, y)] = c
        for u, d in hybrid_element(ctx, x, y)._coeffs.items():
            if u == w:
                continue
            new = remaining.get(u, ZERO) - c * d
            if new.is_zero:
                remaining.pop(u, None)
            else:
                remaining[u] = new
    return HybridCoefficients(target, out)


def hybrid_leq(
    ctx: HybridContext,
    pair_a: tuple[CoxeterElement, CoxeterElement],
    pair_b: tuple[CoxeterElement, CoxeterElement],
) -> bool:
    """The hybrid preorder: equality, or (x below u in W_I and y Bruhat-below w)."""
    x, y = pair_a
    u, w = pair_b
    for el, ok in ((x, ctx._sub_set), (u, ctx._sub_set)):
        if el not in ok:
            raise CoxeterError(f"{el} is not in the parabolic subgroup on {ctx.I}")
    for el in (y, w):
        if el not in ctx.rep_set:
            raise CoxeterError(f"{el} is not a minimal representative for {ctx.I}")
    if x == u and y == w:
        return True
    return ctx.sub_leq_r(x, u) and y != w and bruhat_leq(y, w)


@dataclass(frozen=True)
class HybridViolation:
    check: str
    target: CoxeterElement
    detail: str


@dataclass
class HybridReport:
    I: tuple[int, ...]
    p: int
    subtable_source: str
    targets_checked: int = 0
    violations: list[HybridViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        head = (
            f"hybrid basis checks for I={self.I}, p={self.p} "
            f"(subgroup table {self.subtable_source}): "
        )
        if self.passed:
            return head + f"ok on {self.targets_checked} targets"
        lines = [head + f"{len(self.violations)} violation(s)"]
        for v in self.violations:
            lines.append(f"  [{v.check}] target {v.target}: {v.detail}")
        return "\n".join(lines)


def verify_hybrid_theorems(ctx: HybridContext) -> HybridReport:
    """Check positivity, unitriangular support, and the coefficient identity.

    For every target w = x y the expansion r of the canonical element of w
    must satisfy: every r value has nonnegative coefficients; the leading
    coefficient r[(x, y)] is 1 and every other nonzero position is
    strictly below (x, y) in the hybrid preorder; and for all z in W_I
    and minimal w' the table entry h(z w', w) equals
    sum_u r[(u, w')] h(z, u) over u in W_I.

    Targets are streamed one at a time; the full coefficient matrix is
    never materialized.
    """
    report = HybridReport(ctx.I, ctx.p, ctx.subtable_source)
    sub_elements = ctx.subgroup_elements()
    for w in ctx.table.domain:
        report.targets_checked += 1
        x, y = ctx.decompose(w)
        r = hybrid_expand(ctx, ctx.table.canonical_element(w))
        by_rep: dict[CoxeterElement, dict[CoxeterElement, LaurentPolynomial]] = {}
        for (u, w_rep), poly in r.coeffs.items():
            by_rep.setdefault(w_rep, {})[u] = poly
            if not poly.is_nonnegative():
                report.violations.append(
                    HybridViolation(
                        "positivity",
                        w,
                        f"r[({u},{w_rep})] = {format_poly(poly)}",
                    )
                )
            if (u, w_rep) == (x, y):
                if poly != ONE:
                    report.violations.append(
                        HybridViolation(
                            "support",
                            w,
                            f"leading coefficient r[({x},{y})] = {format_poly(poly)} instead of 1",
                        )
                    )
            elif not (ctx.sub_leq_r(u, x) and w_rep != y and bruhat_leq(w_rep, y)):
                report.violations.append(
                    HybridViolation(
                        "support",
                        w,
                        f"r[({u},{w_rep})] = {format_poly(poly)} is not strictly "
                        f"below ({x},{y}) in the hybrid preorder",
                    )
                )
        for w_rep in ctx.reps:
            row = by_rep.get(w_rep, {})
            for z in sub_elements:
                lhs = ctx.table.entry(multiply(z, w_rep), w)
                rhs = ZERO
                for u, poly in row.items():
                    rhs = rhs + poly * ctx.subtable.entry(
                        ctx.as_subgroup(z), ctx.as_subgroup(u)
                    )
                if lhs != rhs:
                    report.violations.append(
                        HybridViolation(
                            "coefficient_identity",
                            w,
                            f"h({multiply(z, w_rep)},{w}) = {format_poly(lhs)} but "
                            f"sum over W_I gives {format_poly(rhs)} "
                            f"(z={z}, w'={w_rep})",
                        )
                    )
    return report

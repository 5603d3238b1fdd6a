"""Command line surface.

Commands: klpolys, cells, hasse, hybrid, verify, validate-table and
paper-c3.  Exit status is 0 when everything requested passed or was
skipped, 1 on any verification violation or golden-file mismatch, and 2
on usage or input errors.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import difflib
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Sequence

from .canonical import (
    CanonicalTable,
    TableError,
    extract_subtable,
    kl_table,
    load_table,
    table_text,
    validate_table,
)
from .cells import CellPartition, cell_partition, hasse_export, partition_text, two_sided
from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    InfiniteSystemError,
    PRESETS,
    build_system,
    minimal_reps,
    parse_word,
    preset_system,
    word_to_str,
)
from .hybrid import HybridContext, hybrid_expand, verify_hybrid_theorems
from .induction import (
    TheoremReport,
    ideal_check,
    verify_induction,
    verify_preorder_compat,
    verify_restriction,
)
from .laurent import format_poly

B2_FIXTURE_NAME = "b2-p2-fixture"


class UsageError(ValueError):
    pass


def _fixture_path(name: str) -> Path:
    return Path(str(resources.files("heckecells").joinpath("fixtures", name)))


def _load_labels(name: str) -> dict[str, str]:
    labels = {}
    for line in _fixture_path(name).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("\t")
        labels[key] = value
    return labels


def _thread_cap() -> int:
    raw = os.environ.get("HECKE_CELLS_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _run_tasks(tasks: Sequence[Callable[[], TheoremReport]]) -> list[TheoremReport]:
    cap = _thread_cap()
    if cap <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [f.result() for f in futures]


def _resolve_system(ns) -> CoxeterSystem:
    if not ns.system:
        raise UsageError("--system is required")
    return build_system(ns.system)


def _resolve_table(ns, system: Optional[CoxeterSystem] = None) -> CanonicalTable:
    """Table from --table (path or the shipped fixture name) or computed at p=0."""
    table_ref = getattr(ns, "table", None)
    p = getattr(ns, "p", None)
    if table_ref:
        if table_ref == B2_FIXTURE_NAME:
            table = load_table(_fixture_path("b2_p2_table.txt"))
        else:
            table = load_table(Path(table_ref))
        if system is not None and table.system != system:
            raise UsageError(
                f"table system does not match --system {ns.system}"
            )
        if p is not None and table.p != p:
            raise UsageError(f"table declares p={table.p} but --p {p} was given")
        return table
    if p not in (None, 0):
        raise UsageError(f"p={p} requires --table (or --table {B2_FIXTURE_NAME})")
    if system is None:
        raise UsageError("--system is required")
    if not system.is_finite():
        raise UsageError("canonical tables require a finite system")
    return kl_table(system)


def _parse_I(ns) -> tuple[int, ...]:
    raw = getattr(ns, "I", None)
    if raw is None or raw == "":
        return ()
    try:
        return tuple(sorted({int(tok) for tok in raw.replace(",", " ").split()}))
    except ValueError:
        raise UsageError(f"cannot parse --I value {raw!r}")


def _emit(ns, text: str) -> None:
    if getattr(ns, "out", None):
        Path(ns.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _display_labels(system: CoxeterSystem, table: CanonicalTable, side: str) -> Optional[dict]:
    if side != "right":
        return None
    if system == preset_system("C3"):
        if table.p == 0:
            return _load_labels("c3_p0_cell_labels.txt")
        if table.p == 2:
            return _load_labels("c3_p2_cell_labels.txt")
    return None


def _partition_for(ns, table: CanonicalTable, side: str) -> CellPartition:
    if side == "two-sided":
        return two_sided(cell_partition(table, "right"), cell_partition(table, "left"))
    return cell_partition(table, side)


# -- commands -------------------------------------------------------------------


def _cmd_klpolys(ns) -> int:
    system = _resolve_system(ns)
    table = _resolve_table(ns, system)
    _emit(ns, table_text(table, system_ref=ns.system))
    return 0


def _cmd_cells(ns) -> int:
    system = _resolve_system(ns)
    table = _resolve_table(ns, system)
    partition = _partition_for(ns, table, ns.side)
    labels = _display_labels(system, table, ns.side)
    _emit(ns, partition_text(partition, labels))
    return 0


def _cmd_hasse(ns) -> int:
    system = _resolve_system(ns)
    table = _resolve_table(ns, system)
    partition = _partition_for(ns, table, ns.side)
    labels = _display_labels(system, table, ns.side)
    if ns.format == "dot":
        _emit(ns, hasse_export(partition, labels))
    else:
        def name(i):
            if labels:
                key = word_to_str(partition.min_member(i).word)
                if key in labels:
                    return labels[key]
            return f"C{i}"

        lines = [f"{name(i)} -> {name(j)}" for i, j in partition.hasse_edges()]
        _emit(ns, "\n".join(lines))
    return 0


def _cmd_hybrid(ns) -> int:
    system = _resolve_system(ns)
    table = _resolve_table(ns, system)
    ctx = HybridContext(table, _parse_I(ns))
    lines = []
    if ns.target:
        w = system.element(parse_word(system, ns.target))
        r = hybrid_expand(ctx, table.canonical_element(w))
        for (x, y), poly in r.items():
            lines.append(f"{word_to_str(x.word)}\t{word_to_str(y.word)}\t{format_poly(poly)}")
    else:
        for w in table.domain:
            lines.append(f"# target {word_to_str(w.word)}")
            r = hybrid_expand(ctx, table.canonical_element(w))
            for (x, y), poly in r.items():
                lines.append(
                    f"{word_to_str(x.word)}\t{word_to_str(y.word)}\t{format_poly(poly)}"
                )
    _emit(ns, "\n".join(lines))
    return 0


VERIFY_CHECKS = ("hybrid-theorems", "preorder-compat", "ideal", "induction", "restriction")


def _hybrid_as_theorem_report(ctx: HybridContext) -> TheoremReport:
    report = verify_hybrid_theorems(ctx)
    params = {
        "system": str(ctx.system.labels),
        "I": word_to_str(ctx.I),
        "p": str(ctx.p),
        "subtable": ctx.subtable_source,
    }
    witnesses = [f"[{v.check}] target {v.target}: {v.detail}" for v in report.violations]
    verdict = "verified" if report.passed else "violated"
    return TheoremReport("hybrid-theorems", params, verdict, witnesses)


def _cmd_verify(ns) -> int:
    system = _resolve_system(ns)
    table = _resolve_table(ns, system)
    checks = list(ns.checks)
    if ns.all:
        checks = list(VERIFY_CHECKS)
    if not checks:
        raise UsageError("verify needs at least one check name or --all")
    for check in checks:
        if check not in VERIFY_CHECKS:
            raise UsageError(
                f"unknown check {check!r} (available: {', '.join(VERIFY_CHECKS)})"
            )
    I = _parse_I(ns)
    ctx = HybridContext(table, I)
    ambient = cell_partition(table, "right")
    tasks: list[Callable[[], TheoremReport]] = []
    for check in checks:
        if check == "hybrid-theorems":
            tasks.append(lambda ctx=ctx: _hybrid_as_theorem_report(ctx))
        elif check == "preorder-compat":
            tasks.append(lambda: verify_preorder_compat(table, I))
        elif check == "ideal":
            down_closures = []
            seen = set()
            for cell in ctx.subgroup_cells.cells:
                rep = next(iter(cell))
                ambient_rep = ctx.system._intern(rep.word)
                J = frozenset(
                    u for u in ctx.subgroup_elements() if ctx.sub_leq_r(u, ambient_rep)
                )
                if J not in seen:
                    seen.add(J)
                    down_closures.append(J)
            down_closures.append(frozenset())
            for J in down_closures:
                tasks.append(lambda J=J: ideal_check(ctx, J))
        elif check == "induction":
            for cell in ctx.subgroup_cells.cells:
                tasks.append(
                    lambda cell=cell: verify_induction(ctx, cell, ambient)
                )
        elif check == "restriction":
            for cell in ambient.cells:
                tasks.append(
                    lambda cell=cell: verify_restriction(table, I, cell, ambient)
                )
    reports = _run_tasks(tasks)
    blocks = [r.to_text(ns.format if ns.format in ("text", "machine") else "text") for r in reports]
    violated = sum(1 for r in reports if r.verdict == "violated")
    summary = f"verify: {len(reports)} report(s), {violated} violated"
    _emit(ns, ("\n\n" if ns.format != "machine" else "\n").join(blocks) + "\n" + summary)
    return 1 if violated else 0


def _cmd_validate_table(ns) -> int:
    if not ns.table:
        raise UsageError("validate-table requires --table")
    system = build_system(ns.system) if ns.system else None
    if ns.table == B2_FIXTURE_NAME:
        path = _fixture_path("b2_p2_table.txt")
    else:
        path = Path(ns.table)
    table = load_table(path, system=system, force=True)
    report = validate_table(table)
    _emit(ns, report.summary() + f"\nmandatory: {'ok' if report.mandatory_ok() else 'VIOLATED'}")
    return 0 if report.mandatory_ok() else 1


# -- the worked example ------------------------------------------------------------


def _system_block(system: CoxeterSystem) -> str:
    lines = ["labels: " + " ".join(str(s) for s in system.labels), "cartan:"]
    for row in system.cartan:
        lines.append(" ".join(str(a) for a in row))
    lines.append("coxeter:")
    for row in system.coxeter:
        lines.append(" ".join("inf" if m == float("inf") else str(int(m)) for m in row))
    lines.append(f"order: {system.order()}")
    return "\n".join(lines)


def _labeled_cells_block(partition: CellPartition, labels: dict[str, str]) -> str:
    rows = []
    for i in range(len(partition.cells)):
        key = word_to_str(partition.min_member(i).word)
        label = labels.get(key, f"C{i}")
        members = " ".join(word_to_str(x.word) for x in partition.members_sorted(i))
        rows.append((label, members))
    return "\n".join(f"{label}: {members}" for label, members in sorted(rows))


def _labeled_hasse_block(partition: CellPartition, labels: dict[str, str]) -> str:
    def name(i):
        key = word_to_str(partition.min_member(i).word)
        return labels.get(key, f"C{i}")

    edges = sorted(f"{name(i)} -> {name(j)}" for i, j in partition.hasse_edges())
    return "\n".join(edges)


def _induced_block(
    ctx: HybridContext,
    ambient_partition: CellPartition,
    cell_members: Sequence,
    labels: dict[str, str],
) -> str:
    union = sorted(
        {a * y for a in cell_members for y in ctx.reps}, key=lambda e: e.sort_key()
    )
    rows = []
    seen = set()
    for w in union:
        i = ambient_partition.cell_of(w)
        if i in seen:
            continue
        seen.add(i)
        key = word_to_str(ambient_partition.min_member(i).word)
        label = labels.get(key, f"C{i}")
        members = " ".join(word_to_str(x.word) for x in ambient_partition.members_sorted(i))
        rows.append(f"{label}: {members}")
    head = "set: " + " ".join(word_to_str(w.word) for w in union)
    return "\n".join([head] + sorted(rows))


def _kl_union_block(system, ctx: HybridContext) -> str:
    kl_cells = cell_partition(kl_table(system), "right")
    lines = []
    for name, base_word in (("C", "2"), ("C'", "21")):
        base = system.element(base_word)
        sub_cell = ctx.subgroup_cells.cells[
            ctx.subgroup_cells.cell_of(ctx.as_subgroup(base))
        ]
        members = [system._intern(u.word) for u in sub_cell]
        union = {a * y for a in members for y in ctx.reps}
        is_union = all(
            not (cell & union) or (cell & union) == cell for cell in kl_cells.cells
        )
        lines.append(
            f"{name}.IW union of characteristic-0 cells: {'yes' if is_union else 'no'}"
        )
    return "\n".join(lines)


def _paper_c3_blocks(table_path: Optional[str]) -> list[tuple[str, Optional[str]]]:
    c3 = preset_system("C3")
    t0 = kl_table(c3)
    p0_labels = _load_labels("c3_p0_cell_labels.txt")
    partition = cell_partition(t0, "right")
    blocks: list[tuple[str, Optional[str]]] = []
    blocks.append(("system", _system_block(c3)))
    reps = minimal_reps(c3, (1, 2), "left")
    blocks.append(("minimal-reps", " ".join(word_to_str(y.word) for y in reps)))
    blocks.append(("kl-cells", _labeled_cells_block(partition, p0_labels)))
    blocks.append(("kl-hasse", _labeled_hasse_block(partition, p0_labels)))
    b2 = preset_system("B2")
    b2_part = cell_partition(kl_table(b2), "right")
    blocks.append(("b2-kl-cells", partition_text(b2_part)))
    fixture = load_table(_fixture_path("b2_p2_table.txt"))
    fixture_part = cell_partition(fixture, "right")
    split_members = sorted(
        (x for x in fixture.domain if word_to_str(x.word) in ("2", "21", "212")),
        key=lambda e: e.sort_key(),
    )
    split_cells = sorted(
        {fixture_part.cell_of(x) for x in split_members}
    )
    split = " ".join(
        "{" + " ".join(word_to_str(x.word) for x in fixture_part.members_sorted(i)) + "}"
        for i in split_cells
    )
    blocks.append(
        ("b2-p2-cells", partition_text(fixture_part) + f"\nsplit of {{2 21 212}}: {split}")
    )
    if table_path is None:
        blocks.extend(
            (name, None)
            for name in ("p2-cells", "p2-induced-from-2", "p2-induced-from-21", "p2-kl-union")
        )
        return blocks
    p2 = load_table(Path(table_path))
    if p2.system != c3:
        raise UsageError("paper-c3 --table must be a table over the C3 preset")
    if p2.p == 0:
        raise UsageError("paper-c3 --table must declare a positive characteristic")
    p2_labels = _load_labels("c3_p2_cell_labels.txt")
    p2_partition = cell_partition(p2, "right")
    blocks.append(("p2-cells", _labeled_cells_block(p2_partition, p2_labels)))
    ctx = HybridContext(p2, (1, 2))
    for name, word in (("p2-induced-from-2", "2"), ("p2-induced-from-21", "21")):
        base = c3.element(word)
        sub_cell = ctx.subgroup_cells.cells[
            ctx.subgroup_cells.cell_of(ctx.as_subgroup(base))
        ]
        members = [c3._intern(u.word) for u in sub_cell]
        blocks.append((name, _induced_block(ctx, p2_partition, members, p2_labels)))
    blocks.append(("p2-kl-union", _kl_union_block(c3, ctx)))
    return blocks


def _normalize_block(text: str) -> str:
    return "\n".join(line.rstrip() for line in text.strip().splitlines())


def _parse_golden(text: str) -> dict[str, str]:
    blocks: dict[str, list[str]] = {}
    current: Optional[str] = None
    for line in text.splitlines():
        if line.startswith("== ") and line.rstrip().endswith(" =="):
            current = line.strip()[3:-3].strip()
            blocks[current] = []
        elif current is not None:
            blocks[current].append(line)
    return {name: _normalize_block("\n".join(lines)) for name, lines in blocks.items()}


def _cmd_paper_c3(ns) -> int:
    golden_path = Path(ns.golden) if ns.golden else _fixture_path("paper_c3_golden.txt")
    golden = _parse_golden(golden_path.read_text())
    blocks = _paper_c3_blocks(ns.table)
    out_lines: list[str] = []
    failures = 0
    for name, text in blocks:
        if text is None:
            out_lines.append(f"== {name} == skipped (no p>0 table supplied)")
            continue
        computed = _normalize_block(text)
        expected = golden.get(name)
        if expected is None:
            failures += 1
            out_lines.append(f"== {name} == DIFF (missing from golden file)")
            out_lines.append(computed)
            continue
        if computed == expected:
            out_lines.append(f"== {name} == ok")
            out_lines.append(computed)
        else:
            failures += 1
            out_lines.append(f"== {name} == DIFF")
            diff = difflib.unified_diff(
                expected.splitlines(), computed.splitlines(),
                fromfile=f"golden/{name}", tofile=f"computed/{name}", lineterm="",
            )
            out_lines.extend(diff)
    out_lines.append(
        f"paper-c3: {failures} mismatching block(s)" if failures else "paper-c3: all compared blocks match"
    )
    _emit(ns, "\n".join(out_lines))
    return 1 if failures else 0


def emit_golden(path: Optional[str] = None) -> str:
    """Render the golden text for the worked example (development helper)."""
    c3 = preset_system("C3")
    blocks = _paper_c3_blocks(None)
    p2_labels = _load_labels("c3_p2_cell_labels.txt")
    published = {
        "2C0": ["e"], "2C1": ["1", "12", "121", "123"],
        "2C2'": ["2", "23"], "2C2''": ["21", "212", "2123"],
        "2C3'": ["3", "32"], "2C3''": ["321", "3212", "32123"],
        "2C4": ["13", "132", "1321"], "2C5": ["213", "2132", "21321"],
        "2C6": ["232"], "2C6/12": ["2321", "23212", "232123"],
        "2C7": ["2121", "21213", "212132", "2121321", "21213212"],
        "2C8": ["1213", "12132", "121321"], "2C9": ["1232", "12321", "123212"],
        "2C10": ["13212", "132123", "1213212", "1232123", "12132123"],
        "2C11": ["21232", "212321", "2123212"],
        "2C12": ["232121", "2321213", "23212132"], "2C13": ["121232123"],
    }
    norm = {
        name: sorted((c3.element(w) for w in ws), key=lambda e: e.sort_key())
        for name, ws in published.items()
    }
    cell_lines = sorted(
        f"{name}: " + " ".join(word_to_str(x.word) for x in members)
        for name, members in norm.items()
    )
    p2_cells_block = "\n".join(cell_lines)

    def induced(names: list[str]) -> str:
        union = sorted(
            (x for name in names for x in norm[name]), key=lambda e: e.sort_key()
        )
        head = "set: " + " ".join(word_to_str(w.word) for w in union)
        rows = sorted(
            f"{name}: " + " ".join(word_to_str(x.word) for x in norm[name])
            for name in names
        )
        return "\n".join([head] + rows)

    extra = [
        ("p2-cells", p2_cells_block),
        ("p2-induced-from-2", induced(["2C2'", "2C6", "2C6/12"])),
        ("p2-induced-from-21", induced(["2C2''", "2C5", "2C11", "2C12"])),
        ("p2-kl-union", "C.IW union of characteristic-0 cells: no\nC'.IW union of characteristic-0 cells: no"),
    ]
    parts = []
    for name, text in blocks:
        if text is not None:
            parts.append(f"== {name} ==\n{_normalize_block(text)}\n")
    for name, text in extra:
        parts.append(f"== {name} ==\n{_normalize_block(text)}\n")
    content = "\n".join(parts)
    if path:
        Path(path).write_text(content)
    return content


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hecke-cells",
        description="Exact canonical-basis cells and parabolic induction checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, table=True, side=False):
        p.add_argument("--system", help="preset name (A1 A2 A3 B2 C3 G2) or a system file path")
        p.add_argument("--I", help="comma separated generator labels")
        p.add_argument("--p", type=int, default=None, help="characteristic (default 0)")
        if table:
            p.add_argument("--table", help=f"table file path or {B2_FIXTURE_NAME}")
        if side:
            p.add_argument("--side", choices=["right", "left", "two-sided"], default="right")
        p.add_argument("--format", choices=["text", "machine", "dot"], default="text")
        p.add_argument("--out", help="write output to a file instead of stdout")

    common(sub.add_parser("klpolys", help="print the canonical table"))
    common(sub.add_parser("cells", help="print the cell partition"), side=True)
    p_hasse = sub.add_parser("hasse", help="print the Hasse diagram of the cell preorder")
    common(p_hasse, side=True)
    p_hasse.set_defaults(format="dot")
    p_hybrid = sub.add_parser("hybrid", help="print hybrid base change coefficients")
    common(p_hybrid)
    p_hybrid.add_argument("--target", help="restrict to a single target word")
    p_verify = sub.add_parser("verify", help="run theorem verifications")
    common(p_verify)
    p_verify.add_argument("checks", nargs="*", help=f"any of: {', '.join(VERIFY_CHECKS)}")
    p_verify.add_argument("--all", action="store_true", help="run every check")
    p_vt = sub.add_parser("validate-table", help="validate a table file")
    common(p_vt)
    p_paper = sub.add_parser("paper-c3", help="reproduce the type-C3 worked example")
    common(p_paper)
    p_paper.add_argument("--golden", help="override the golden fixture file")
    return parser


_DISPATCH = {
    "klpolys": _cmd_klpolys,
    "cells": _cmd_cells,
    "hasse": _cmd_hasse,
    "hybrid": _cmd_hybrid,
    "verify": _cmd_verify,
    "validate-table": _cmd_validate_table,
    "paper-c3": _cmd_paper_c3,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _DISPATCH[ns.command](ns)
    except (UsageError, CoxeterError, InfiniteSystemError, TableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

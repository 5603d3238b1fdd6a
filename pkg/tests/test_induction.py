import itertools

import pytest

from heckecells.canonical import CanonicalTable, load_table
from heckecells.cells import cell_partition
from heckecells.cli import _fixture_path
from heckecells.coxeter import CoxeterError
from heckecells.hybrid import HybridContext
from heckecells.induction import (
    TheoremReport,
    ideal_check,
    verify_induction,
    verify_preorder_compat,
    verify_restriction,
)
from heckecells.laurent import ZERO


def finitary_subsets(system):
    out = []
    for size in range(0, system.rank + 1):
        out.extend(itertools.combinations(system.labels, size))
    return out


def test_theorem_report_consistency():
    with pytest.raises(ValueError):
        TheoremReport("x", {}, "verified", ["oops"])
    with pytest.raises(ValueError):
        TheoremReport("x", {}, "violated", [])
    report = TheoremReport("x", {"a": "1"}, "violated", ["w1", "w2"])
    machine = report.to_text("machine")
    assert machine.count("\n") == 1 and machine.splitlines()[0].endswith("w1")
    text = TheoremReport("x", {"a": "1"}, "skipped").to_text()
    assert "verdict: skipped" in text


def test_ideal_check_examples(tables):
    ctx = HybridContext(tables["C3"], (1, 2))
    target = ctx.system.element("212")
    J = [u for u in ctx.subgroup_elements() if ctx.sub_leq_r(u, target)]
    assert ideal_check(ctx, J).verdict == "verified"
    assert ideal_check(ctx, []).verdict == "verified"
    assert ideal_check(ctx, ctx.subgroup_elements()).verdict == "verified"
    with pytest.raises(CoxeterError, match="downward closed"):
        ideal_check(ctx, [target])


def test_preorder_compat_examples(tables):
    assert verify_preorder_compat(tables["C3"], (1, 2)).verdict == "verified"
    assert verify_preorder_compat(tables["A2"], ()).verdict == "verified"
    fixture = load_table(_fixture_path("b2_p2_table.txt"))
    assert verify_preorder_compat(fixture, (2,)).verdict == "verified"
    assert verify_preorder_compat(fixture, (1,)).verdict == "verified"


def test_induction_a2_examples(tables):
    table = tables["A2"]
    a2 = table.system
    ctx = HybridContext(table, (1,))
    partition = cell_partition(table, "right")
    report = verify_induction(ctx, [a2.element("1")], partition)
    assert report.verdict == "verified"
    induced = {a2.element(w) for w in ("1", "12", "121")}
    hit = [cell for cell in partition.cells if cell <= induced]
    assert len(hit) == 2 and frozenset.union(*hit) == induced
    report = verify_induction(ctx, [a2.identity], partition)
    assert report.verdict == "verified"
    induced = {a2.element(w) for w in ("e", "2", "21")}
    hit = [cell for cell in partition.cells if cell <= induced]
    assert len(hit) == 2 and frozenset.union(*hit) == induced
    with pytest.raises(CoxeterError):
        verify_induction(ctx, [a2.element("2"), a2.element("1")], partition)


def test_restriction_a2_examples(tables):
    table = tables["A2"]
    a2 = table.system
    # {2, 21} = 2*{e} union 2*{1}: two subgroup cells over the same representative
    assert verify_restriction(table, (1,), {a2.element("2"), a2.element("21")}).verdict == "verified"
    assert verify_restriction(table, (1,), {a2.element("121")}).verdict == "verified"
    assert verify_restriction(table, (1,), {a2.identity}).verdict == "verified"
    with pytest.raises(CoxeterError):
        verify_restriction(table, (1,), {a2.element("2")})


def test_b2_p2_fixture_as_ambient(tables):
    fixture = load_table(_fixture_path("b2_p2_table.txt"))
    partition = cell_partition(fixture, "right")
    for I in ((), (1,), (2,)):
        ctx = HybridContext(fixture, I)
        for cell in ctx.subgroup_cells.cells:
            assert verify_induction(ctx, cell, partition).verdict == "verified"
        for cell in partition.cells:
            assert verify_restriction(fixture, I, cell, partition).verdict == "verified"


def test_violated_report_path(tables):
    # the axiom-passing impostor from the derivation search breaks induction
    b2 = tables["B2"].system
    base = tables["B2"]
    cols = {u: dict(base.column(u)) for u in base.domain}
    for z in ("1", "2"):
        for y, h in base.column(b2.element(z)).items():
            cols[b2.element("212")][y] = cols[b2.element("212")].get(y, ZERO) + h
    impostor = CanonicalTable(b2, 2, cols)
    ctx = HybridContext(impostor, (2,))
    partition = cell_partition(impostor, "right")
    verdicts = {
        verify_induction(ctx, cell, partition).verdict
        for cell in ctx.subgroup_cells.cells
    }
    assert "violated" in verdicts


def test_set_level_agrees_with_preorder_compat(tables):
    # whenever preorder compatibility holds, induced sets are unions of cells
    for name in ("A2", "B2", "G2"):
        table = tables[name]
        partition = cell_partition(table, "right")
        for I in finitary_subsets(table.system):
            assert verify_preorder_compat(table, I).verdict == "verified"
            ctx = HybridContext(table, I)
            for cell in ctx.subgroup_cells.cells:
                members = [table.system._intern(u.word) for u in cell]
                induced = {c * y for c in members for y in ctx.reps}
                for ambient_cell in partition.cells:
                    overlap = ambient_cell & induced
                    assert not overlap or overlap == ambient_cell

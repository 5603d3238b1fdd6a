import random

import pytest

from heckecells.canonical import (
    CanonicalTable,
    TableError,
    change_basis,
    check_parabolic_invariance,
    extract_subtable,
    kl_table,
    load_table,
    save_table,
    to_canonical,
    to_standard,
    validate_table,
)
from heckecells.coxeter import preset_system
from heckecells.hecke import HeckeElement
from heckecells.laurent import LaurentPolynomial, ONE, V, ZERO, parse_poly

from oracles import kl_table_by_bar_solve, random_element


def test_generator_column(tables):
    for name, table in tables.items():
        system = table.system
        for s in system.labels:
            col = table.column(system.generator(s))
            assert col == {system.generator(s): ONE, system.identity: V}


def test_identity_column(tables):
    for table in tables.values():
        assert table.column(table.system.identity) == {table.system.identity: ONE}


def test_a2_longest_column(tables):
    a2 = tables["A2"].system
    col = tables["A2"].column(a2.element("121"))
    for y, h in col.items():
        assert h == LaurentPolynomial({3 - y.length: 1})
    assert len(col) == 6


@pytest.mark.parametrize("name", ["A2", "B2", "A3", "C3"])
def test_kl_oracle_equivalence(name, tables):
    table = tables[name]
    oracle = kl_table_by_bar_solve(table.system)
    for x in table.domain:
        assert table.column(x) == oracle[x], f"column {x} differs"


def test_validate_kl_tables(tables):
    for name, table in tables.items():
        report = validate_table(table)
        assert report.all_ok(), f"{name}: {report.summary()}"


def test_validate_seeded_defects(tables):
    b2 = tables["B2"].system
    base = tables["B2"]
    x = b2.element("21")
    # negative coefficient
    cols = {u: dict(base.column(u)) for u in base.domain}
    cols[x][b2.element("2")] = -V
    report = validate_table(CanonicalTable(b2, 0, cols))
    assert report.violations["positivity"]
    assert not report.mandatory_ok()
    # support outside the Bruhat interval
    cols = {u: dict(base.column(u)) for u in base.domain}
    cols[b2.element("1")][b2.element("2")] = V
    report = validate_table(CanonicalTable(b2, 0, cols))
    assert report.violations["bruhat_support"]
    # iota asymmetry is caught
    cols = {u: dict(base.column(u)) for u in base.domain}
    cols[b2.element("212")][b2.element("12")] = V + ONE
    report = validate_table(CanonicalTable(b2, 0, cols))
    assert report.violations["iota_symmetry"]
    # broken diagonal
    cols = {u: dict(base.column(u)) for u in base.domain}
    cols[x][x] = V
    report = validate_table(CanonicalTable(b2, 0, cols))
    assert report.violations["diagonal"]
    # characteristic-0 degree bound
    cols = {u: dict(base.column(u)) for u in base.domain}
    cols[x][b2.element("2")] = ONE
    report = validate_table(CanonicalTable(b2, 0, cols))
    assert report.violations["degree_bound"]


def test_change_basis_examples(tables):
    a2 = tables["A2"].system
    table = tables["A2"]
    coeffs = to_canonical(HeckeElement.std(a2.element("1")), table)
    assert coeffs == {a2.element("1"): ONE, a2.identity: -V}
    expanded = to_standard({a2.element("12"): ONE}, table)
    assert expanded == HeckeElement(
        a2,
        {
            a2.element("12"): ONE,
            a2.element("1"): V,
            a2.element("2"): V,
            a2.identity: V * V,
        },
    )
    assert change_basis(expanded, table, "to_canonical") == {a2.element("12"): ONE}
    with pytest.raises(TableError):
        change_basis(expanded, table, "sideways")


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "C3"])
def test_change_basis_round_trip_random(name, tables):
    table = tables[name]
    rng = random.Random(len(name) * 31)
    for _ in range(50):
        coeffs = {
            x: poly
            for x, poly in (
                (rng.choice(table.domain), random_element(rng, table.system).coeff(table.system.identity))
                for _ in range(3)
            )
            if not poly.is_zero
        }
        back = to_canonical(to_standard(coeffs, table), table)
        assert back == coeffs


def test_parabolic_invariance(tables):
    assert check_parabolic_invariance(tables["C3"], (1, 2)).passed
    assert check_parabolic_invariance(tables["A2"], (1,)).passed
    # seeded defect: break one entry h(y*z, x*z)
    c3 = tables["C3"].system
    cols = {u: dict(tables["C3"].column(u)) for u in tables["C3"].domain}
    x, z = c3.element("21"), c3.element("3")
    cols[x * z][c3.element("1") * z] = V + ONE
    bad = CanonicalTable(c3, 0, cols)
    report = check_parabolic_invariance(bad, (1, 2))
    assert not report.passed
    assert any("h(" in line for line in report.violations)


def test_positivity_at_one_smoke(tables):
    table = tables["C3"]
    for x in table.domain:
        for y, h in table.column(x).items():
            assert sum(c for _, c in h.items()) > 0


def test_table_io_round_trip(tmp_path, tables):
    path = tmp_path / "b2.tbl"
    save_table(tables["B2"], path)
    loaded = load_table(path)
    assert loaded == tables["B2"]
    assert loaded.p == 0


def test_table_io_missing_diagonal(tmp_path):
    path = tmp_path / "broken.tbl"
    path.write_text("p = 0\nsystem = A1\n1\te\tv\n1\t1\t1\n")  # no column for e
    with pytest.raises(TableError, match="missing diagonal"):
        load_table(path)


def test_table_io_implied_diagonal(tmp_path):
    path = tmp_path / "ok.tbl"
    path.write_text("p = 0\nsystem = A1\ne\te\t1\n1\te\tv\n")  # 1's diagonal implied
    table = load_table(path)
    assert table.entry(table.system.element("1"), table.system.element("1")) == ONE


def test_table_io_parse_errors(tmp_path):
    path = tmp_path / "bad.tbl"
    path.write_text("p = 0\nsystem = A1\n1\te\n")
    with pytest.raises(TableError, match="bad.tbl:3"):
        load_table(path)
    path.write_text("system = A1\ne\te\t1\n1\te\tv\n1\t1\t1\n")
    with pytest.raises(TableError, match="missing 'p ='"):
        load_table(path)
    path.write_text("p = 0\nsystem = A1\ne\te\t1\n1\te\tv@\n")
    with pytest.raises(TableError, match="bad.tbl:4"):
        load_table(path)


def test_table_io_rejects_axiom_violations(tmp_path):
    path = tmp_path / "neg.tbl"
    path.write_text("p = 0\nsystem = A1\ne\te\t1\n1\te\t-v\n1\t1\t1\n")
    with pytest.raises(TableError, match="mandatory"):
        load_table(path)
    table = load_table(path, force=True)
    assert not validate_table(table).mandatory_ok()


def test_bar_invariance_advisory_for_positive_characteristic(tmp_path):
    # a p=5 table that is not bar-invariant still loads, with the finding reported
    a1 = preset_system("A1")
    base = kl_table(a1)
    cols = {u: dict(base.column(u)) for u in base.domain}
    cols[a1.element("1")][a1.identity] = V + V * V  # breaks bar-invariance, keeps axioms
    bad = CanonicalTable(a1, 5, cols)
    report = validate_table(bad)
    assert report.violations["bar_invariance"]
    assert report.mandatory_ok()
    path = tmp_path / "p5.tbl"
    save_table(bad, path, system_ref="A1")
    loaded = load_table(path)
    assert loaded == bad
    # the same columns at p=0 are refused
    bad0 = CanonicalTable(a1, 0, cols)
    assert not validate_table(bad0).mandatory_ok()


def test_b2_p2_fixture_loads(tables):
    from heckecells.cli import _fixture_path

    table = load_table(_fixture_path("b2_p2_table.txt"))
    assert table.p == 2
    report = validate_table(table)
    assert report.mandatory_ok()
    # equal to the characteristic-0 table except in the column of 212
    b2 = table.system
    base = tables["B2"]
    for x in table.domain:
        if str(x) == "212":
            extra = {
                y: table.entry(y, x) - base.entry(y, x) for y in table.domain
            }
            extra = {y: d for y, d in extra.items() if not d.is_zero}
            assert extra == dict(base.column(b2.element("2")))
        else:
            assert table.column(x) == base.column(x)


def test_extract_subtable_matches_intrinsic(tables):
    sub = extract_subtable(tables["C3"], (1, 2))
    assert sub == kl_table(tables["C3"].system.subsystem((1, 2)))


def test_every_diagonal_is_exactly_one(tables):
    for table in tables.values():
        for x in table.domain:
            assert table.entry(x, x) == ONE

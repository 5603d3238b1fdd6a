import pytest

from heckecells.canonical import CanonicalTable, load_table
from heckecells.cells import (
    cell_module,
    cell_partition,
    hasse_export,
    partition_text,
    two_sided,
)
from heckecells.cli import _fixture_path
from heckecells.coxeter import CoxeterError, preset_system
from heckecells.laurent import ONE, V, V_INV


@pytest.fixture(scope="module")
def b2_p2():
    return load_table(_fixture_path("b2_p2_table.txt"))


def cells_as_words(partition):
    return {frozenset(str(x) for x in cell) for cell in partition.cells}


def test_a1_partition(tables):
    partition = cell_partition(tables["A1"], "right")
    assert cells_as_words(partition) == {frozenset({"e"}), frozenset({"1"})}
    assert partition.hasse_edges() == ((0, 1),)
    dot = hasse_export(partition)
    assert '"e" -> "1";' in dot


def test_a2_partitions_and_two_sided(tables):
    right = cell_partition(tables["A2"], "right")
    assert cells_as_words(right) == {
        frozenset({"e"}),
        frozenset({"1", "12"}),
        frozenset({"2", "21"}),
        frozenset({"121"}),
    }
    left = cell_partition(tables["A2"], "left")
    assert cells_as_words(left) == {
        frozenset({"e"}),
        frozenset({"1", "21"}),
        frozenset({"2", "12"}),
        frozenset({"121"}),
    }
    both = two_sided(right, left)
    assert cells_as_words(both) == {
        frozenset({"e"}),
        frozenset({"1", "2", "12", "21"}),
        frozenset({"121"}),
    }


def test_b2_p2_fixture_cells(b2_p2):
    partition = cell_partition(b2_p2, "right")
    assert cells_as_words(partition) == {
        frozenset({"e"}),
        frozenset({"1", "12", "121"}),
        frozenset({"2"}),
        frozenset({"21", "212"}),
        frozenset({"1212"}),
    }


def test_identity_and_longest_cells_are_extreme(tables, b2_p2):
    for table in list(tables.values()) + [b2_p2]:
        partition = cell_partition(table, "right")
        system = table.system
        top = partition.cell_of(system.identity)
        bottom = partition.cell_of(system.longest_element())
        assert partition.cells[top] == frozenset({system.identity})
        assert partition.cells[bottom] == frozenset({system.longest_element()})
        count = len(partition.cells)
        # every cell is reachable from the identity's, and reaches the longest's
        assert partition.reach[top] == frozenset(range(count))
        assert all(bottom in partition.reach[i] for i in range(count))


def test_left_right_duality(tables, b2_p2):
    for table in list(tables.values()) + [b2_p2]:
        right = cell_partition(table, "right")
        left = cell_partition(table, "left")
        for x in table.domain:
            for y in table.domain:
                assert left.same_cell(x, y) == right.same_cell(x.inverse(), y.inverse())


def test_partition_independent_of_generator_order(tables):
    table = tables["C3"]
    reference = cell_partition(table, "right")
    relabeled = {w: tuple(sorted(ts, key=lambda x: x.sort_key(), reverse=True))
                 for w, ts in reference.edges.items()}
    from heckecells.cells import _build_partition

    shuffled = _build_partition(table, "right", relabeled)
    assert shuffled.as_sets() == reference.as_sets()
    assert shuffled.cells == reference.cells  # topological order is canonical


def test_edge_convention_via_canonical_generators(tables, b2_p2):
    for table in list(tables.values()) + [b2_p2]:
        plain = cell_partition(table, "right")
        canonical = cell_partition(table, "right", canonical_gens=True)
        assert plain.edges == canonical.edges
        left_plain = cell_partition(table, "left")
        left_canonical = cell_partition(table, "left", canonical_gens=True)
        assert left_plain.edges == left_canonical.edges


def test_cell_module_extreme_cells(tables):
    table = tables["C3"]
    system = table.system
    partition = cell_partition(table, "right")
    bottom = cell_module(table, {system.longest_element()}, partition)
    assert all(mat == ((V_INV,),) for mat in bottom.action.values())
    top = cell_module(table, {system.identity}, partition)
    assert all(mat == ((-V,),) for mat in top.action.values())


def test_cell_module_singleton_unfolding(b2_p2):
    system = b2_p2.system
    partition = cell_partition(b2_p2, "right")
    module = cell_module(b2_p2, {system.element("2")}, partition)
    # 2*1 is longer, so the action entry is the coefficient of the basis element itself
    from heckecells.canonical import to_canonical
    from heckecells.hecke import mult_gen_right

    coeffs = to_canonical(mult_gen_right(b2_p2.canonical_element(system.element("2")), 1), b2_p2)
    from heckecells.laurent import ZERO

    assert module.action[1] == ((coeffs.get(system.element("2"), ZERO),),)


def test_cell_modules_satisfy_relations_everywhere(tables, b2_p2):
    for table in list(tables.values()) + [b2_p2]:
        partition = cell_partition(table, "right")
        for cell in partition.cells:
            cell_module(table, cell, partition)  # raises on any relation failure


def test_cell_module_rejects_non_cells(tables):
    table = tables["A2"]
    with pytest.raises(CoxeterError):
        cell_module(table, {table.system.element("1")})


def test_hasse_export_one_cell():
    a1 = preset_system("A1")
    from heckecells.canonical import kl_table

    table = kl_table(a1.subsystem(()))
    partition = cell_partition(table, "right")
    assert len(partition.cells) == 1
    assert partition.hasse_edges() == ()
    assert "->" not in hasse_export(partition)


def test_partition_text_and_labels(tables):
    partition = cell_partition(tables["A2"], "right")
    text = partition_text(partition)
    assert text.splitlines()[0] == "C0: e"
    labeled = partition_text(partition, {"e": "TOP"})
    assert labeled.splitlines()[0] == "TOP: e"

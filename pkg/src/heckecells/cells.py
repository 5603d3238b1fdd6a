"""Cell preorders, cell partitions and cell modules for a canonical table.

The right preorder is the reflexive-transitive closure of the single
generator edges: w -> x whenever the canonical element of x appears with
nonzero coefficient in (canonical element of w) * H_s.  Cells are the
strongly connected components; the quotient DAG points from larger to
smaller, so the cell of the identity is the unique source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .canonical import CanonicalTable, to_canonical
from .coxeter import CoxeterElement, CoxeterError, word_to_str
from .hecke import HeckeElement, mult_gen_left, mult_gen_right, std_multiply
from .laurent import LaurentPolynomial, ONE, V, V_INV, ZERO

__all__ = [
    "CellPartition",
    "CellModule",
    "cell_partition",
    "two_sided",
    "cell_module",
    "hasse_export",
    "partition_text",
]


def _element_edges(
    table: CanonicalTable,
    side: str,
    canonical_gens: bool = False,
) -> dict[CoxeterElement, tuple[CoxeterElement, ...]]:
    """Single generator edges w -> x of the chosen preorder.

    canonical_gens switches the multiplier from H_s to the canonical
    element of s; both must generate identical edge sets.
    """
    if side not in ("right", "left"):
        raise CoxeterError(f"side must be 'right' or 'left', not {side!r}")
    system = table.system
    edges: dict[CoxeterElement, tuple[CoxeterElement, ...]] = {}
    for w in table.domain:
        base = table.canonical_element(w)
        targets: set[CoxeterElement] = {w}
        for s in system.labels:
            if canonical_gens:
                gen = table.canonical_element(system.generator(s))
                prod = (
                    std_multiply(base, gen)
                    if side == "right"
                    else std_multiply(gen, base)
                )
            else:
                prod = (
                    mult_gen_right(base, s) if side == "right" else mult_gen_left(base, s)
                )
            targets.update(to_canonical(prod, table))
        edges[w] = tuple(sorted(targets, key=lambda x: x.sort_key()))
    return edges


def _tarjan_scc(n: int, succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Iterative Tarjan; components are emitted sinks-first."""
    index: list[Optional[int]] = [None] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, start = work[-1]
            if start == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = True
            descended = False
            for i in range(start, len(succ[v])):
                w = succ[v][i]
                if index[w] is None:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if onstack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    component.append(w)
                    if w == v:
                        break
                sccs.append(component)
    return sccs


@dataclass
class CellPartition:
    """Cells in topological order together with the reachability preorder.

    reach[i] is the set of cell indices weakly below cell i, so
    "a is below b" is cell(a) in reach[cell(b)].
    """

    table: CanonicalTable
    side: str
    cells: tuple[frozenset[CoxeterElement], ...]
    element_to_cell: dict[CoxeterElement, int] = field(repr=False)
    reach: tuple[frozenset[int], ...] = field(repr=False)
    edges: dict[CoxeterElement, tuple[CoxeterElement, ...]] = field(repr=False)

    def cell_of(self, x: CoxeterElement) -> int:
        return self.element_to_cell[x]

    def min_member(self, i: int) -> CoxeterElement:
        return min(self.cells[i], key=lambda x: x.sort_key())

    def members_sorted(self, i: int) -> tuple[CoxeterElement, ...]:
        return tuple(sorted(self.cells[i], key=lambda x: x.sort_key()))

    def cell_leq(self, i: int, j: int) -> bool:
        """Whether cell i is weakly below cell j in the preorder."""
        return i in self.reach[j]

    def leq_elements(self, a: CoxeterElement, b: CoxeterElement) -> bool:
        """Whether a is weakly below b (for side "right": a <=_R b)."""
        return self.cell_leq(self.element_to_cell[a], self.element_to_cell[b])

    def same_cell(self, a: CoxeterElement, b: CoxeterElement) -> bool:
        return self.element_to_cell[a] == self.element_to_cell[b]

    def hasse_edges(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction of the cell DAG, edges from larger to smaller."""
        out = []
        count = len(self.cells)
        for i in range(count):
            below = self.reach[i] - {i}
            for j in sorted(below):
                if not any(
                    k != i and k != j and k in below and j in self.reach[k]
                    for k in below
                ):
                    out.append((i, j))
        return tuple(sorted(out))

    def as_sets(self) -> set[frozenset[CoxeterElement]]:
        return set(self.cells)


def _build_partition(
    table: CanonicalTable,
    side: str,
    edges: dict[CoxeterElement, tuple[CoxeterElement, ...]],
) -> CellPartition:
    nodes = list(table.domain)
    node_index = {x: i for i, x in enumerate(nodes)}
    succ = [[node_index[x] for x in edges[w]] for w in nodes]
    raw_components = _tarjan_scc(len(nodes), succ)
    comp_of = {}
    for ci, comp in enumerate(raw_components):
        for v in comp:
            comp_of[v] = ci
    count = len(raw_components)
    comp_succ: list[set[int]] = [set() for _ in range(count)]
    for v in range(len(nodes)):
        for w in succ[v]:
            if comp_of[v] != comp_of[w]:
                comp_succ[comp_of[v]].add(comp_of[w])
    # deterministic topological order, sources (the identity's cell) first
    indegree = [0] * count
    for ci in range(count):
        for cj in comp_succ[ci]:
            indegree[cj] += 1
    min_key = {
        ci: min(nodes[v].sort_key() for v in comp) for ci, comp in enumerate(raw_components)
    }
    available = [ci for ci in range(count) if indegree[ci] == 0]
    topo: list[int] = []
    while available:
        ci = min(available, key=lambda c: min_key[c])
        available.remove(ci)
        topo.append(ci)
        for cj in sorted(comp_succ[ci]):
            indegree[cj] -= 1
            if indegree[cj] == 0:
                available.append(cj)
    rank = {ci: i for i, ci in enumerate(topo)}
    cells = tuple(
        frozenset(nodes[v] for v in raw_components[ci]) for ci in topo
    )
    element_to_cell = {
        nodes[v]: rank[comp_of[v]] for v in range(len(nodes))
    }
    reach_raw: dict[int, frozenset[int]] = {}
    for ci in reversed(topo):
        acc = {rank[ci]}
        for cj in comp_succ[ci]:
            acc |= reach_raw[cj]
        reach_raw[ci] = frozenset(acc)
    reach = tuple(reach_raw[ci] for ci in topo)
    return CellPartition(table, side, cells, element_to_cell, reach, edges)


def cell_partition(
    table: CanonicalTable,
    side: str = "right",
    canonical_gens: bool = False,
) -> CellPartition:
    """Cells and preorder of the chosen side."""
    cache_key = (side, canonical_gens)
    cache = table.caches.setdefault("partitions", {})
    found = cache.get(cache_key)
    if found is None:
        edges = _element_edges(table, side, canonical_gens)
        found = _build_partition(table, side, edges)
        cache[cache_key] = found
    return found


def two_sided(right: CellPartition, left: CellPartition) -> CellPartition:
    """Combine the one-sided partitions.

    Cells are the classes of the equivalence generated by the two cell
    relations; the preorder is generated by both preorders.  Strongly
    connected components of the combined edge relation are checked to
    agree with the generated equivalence, which keeps the quotient a DAG.
    """
    if right.table is not left.table and right.table != left.table:
        raise CoxeterError("the two partitions come from different tables")
    if {right.side, left.side} != {"right", "left"}:
        raise CoxeterError("two_sided needs one right and one left partition")
    table = right.table
    combined: dict[CoxeterElement, tuple[CoxeterElement, ...]] = {}
    for w in table.domain:
        combined[w] = tuple(
            sorted(set(right.edges[w]) | set(left.edges[w]), key=lambda x: x.sort_key())
        )
    partition = _build_partition(table, "two-sided", combined)
    # the SCC classes must coincide with the union-generated equivalence
    parent = {x: x for x in table.domain}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra is not rb:
            parent[ra] = rb

    for source in (right, left):
        for cell in source.cells:
            members = sorted(cell, key=lambda x: x.sort_key())
            for other in members[1:]:
                union(members[0], other)
    generated: dict[CoxeterElement, set[CoxeterElement]] = {}
    for x in table.domain:
        generated.setdefault(find(x), set()).add(x)
    if set(map(frozenset, generated.values())) != partition.as_sets():
        raise AssertionError(
            "two-sided classes generated by the one-sided cells do not match "
            "the strongly connected components of the combined preorder"
        )
    return partition


@dataclass
class CellModule:
    """Right action matrices on the images of the canonical basis of one cell.

    action[s][i][j] is the coefficient of basis[j] in basis[i] * H_s after
    discarding the part supported in strictly lower cells.
    """

    table: CanonicalTable
    cell: frozenset[CoxeterElement]
    basis: tuple[CoxeterElement, ...]
    action: dict[int, tuple[tuple[LaurentPolynomial, ...], ...]]


def _mat_mul(a, b):
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    return tuple(
        tuple(
            sum((a[i][t] * b[t][j] for t in range(k)), ZERO) for j in range(m)
        )
        for i in range(n)
    )


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def _mat_identity(n):
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def _check_module_relations(system, action) -> None:
    quad = V_INV - V
    for s, mat in action.items():
        n = len(mat)
        lhs = _mat_mul(mat, mat)
        rhs = _mat_add(_mat_scale(mat, quad), _mat_identity(n))
        if lhs != rhs:
            raise CoxeterError(f"cell module violates the quadratic relation at s={s}")
    labels = system.labels
    for i, s in enumerate(labels):
        for t in labels[i + 1 :]:
            m = system.bond(s, t)
            if m == float("inf"):
                continue
            a, b = action[s], action[t]
            left = right = _mat_identity(len(a))
            for k in range(int(m)):
                left = _mat_mul(left, a if k % 2 == 0 else b)
                right = _mat_mul(right, b if k % 2 == 0 else a)
            if left != right:
                raise CoxeterError(
                    f"cell module violates the braid relation for ({s},{t})"
                )


def cell_module(
    table: CanonicalTable,
    C: Iterable[CoxeterElement],
    partition: Optional[CellPartition] = None,
) -> CellModule:
    """The subquotient action of the algebra on the span of one right cell."""
    if partition is None:
        partition = cell_partition(table, "right")
    cell = frozenset(C)
    if cell not in partition.as_sets():
        raise CoxeterError("C is not a cell of the right partition")
    basis = tuple(sorted(cell, key=lambda x: x.sort_key()))
    pos = {x: i for i, x in enumerate(basis)}
    ci = partition.element_to_cell[basis[0]]
    action: dict[int, tuple[tuple[LaurentPolynomial, ...], ...]] = {}
    for s in table.system.labels:
        rows = []
        for w in basis:
            coeffs = to_canonical(
                mult_gen_right(table.canonical_element(w), s), table
            )
            row = [ZERO] * len(basis)
            for u, c in coeffs.items():
                if u in pos:
                    row[pos[u]] = c
                elif not partition.cell_leq(partition.element_to_cell[u], ci):
                    raise AssertionError(
                        f"product left the downward closure of the cell at {u}"
                    )
            rows.append(tuple(row))
        action[s] = tuple(rows)
    _check_module_relations(table.system, action)
    return CellModule(table, cell, basis, action)


def _cell_label(partition: CellPartition, i: int, labels: Optional[Mapping[str, str]]) -> str:
    if labels:
        key = word_to_str(partition.min_member(i).word)
        if key in labels:
            return labels[key]
    return f"C{i}"


def partition_text(
    partition: CellPartition,
    labels: Optional[Mapping[str, str]] = None,
) -> str:
    """One line per cell in topological order: label, then sorted members."""
    lines = []
    for i in range(len(partition.cells)):
        members = " ".join(word_to_str(x.word) for x in partition.members_sorted(i))
        lines.append(f"{_cell_label(partition, i, labels)}: {members}")
    return "\n".join(lines)


def hasse_export(
    partition: CellPartition,
    labels: Optional[Mapping[str, str]] = None,
) -> str:
    """The transitive reduction in DOT form.

    Nodes are named by the ShortLex-minimal member of each cell and
    labeled with all member words; edges point from larger to smaller.
    """
    lines = ["digraph cells {"]
    for i in range(len(partition.cells)):
        name = word_to_str(partition.min_member(i).word)
        members = " ".join(word_to_str(x.word) for x in partition.members_sorted(i))
        lines.append(f'  "{name}" [label="{members}"];')
    for i, j in partition.hasse_edges():
        a = word_to_str(partition.min_member(i).word)
        b = word_to_str(partition.min_member(j).word)
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines)

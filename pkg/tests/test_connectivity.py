from itertools import combinations

import pytest
from hypothesis import given, settings

from constraint_minors.catalog import K4_EDGES, PRISM_EDGES
from constraint_minors.canon import is_isomorphic
from constraint_minors.connectivity import (
    BondContext,
    bixby_step,
    block_tree,
    connected_without,
    contractible_edges,
    delete_with_map,
    four_contractible,
    is_3_connected,
    is_3connected_along,
    is_connected,
    is_k_connected,
    leaf_blocks,
    make_bond_context,
    serial_suppress,
    two_separations,
)
from constraint_minors.enumeration import enumerate_graphs
from constraint_minors.errors import InvariantViolation, PreconditionError
from constraint_minors.graph import ConstraintGraph, build, contract
from constraint_minors.realizer import circuits

from conftest import two_four_cycles
from strategies import constraint_graphs

K4 = build(4, K4_EDGES)
PRISM = build(6, PRISM_EDGES)
C4 = build(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C5 = build(5, [(i, (i + 1) % 5) for i in range(5)])
TRIANGLE = build(3, [(0, 1), (1, 2), (0, 2)])


def test_k_connectivity_examples():
    assert is_k_connected(K4, 3)
    assert is_k_connected(PRISM, 3)
    assert not is_k_connected(C4, 3)
    assert is_k_connected(C4, 2)
    assert not is_k_connected(TRIANGLE, 3)  # too few vertices


def test_block_tree_examples():
    bowtie = build(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    t = block_tree(bowtie)
    assert len(t.blocks) == 2 and t.cutvertices == (2,)
    assert sorted(blk for blk, _ in leaf_blocks(t)) == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
    assert all(cut == 2 for _, cut in leaf_blocks(t))

    t = block_tree(PRISM)
    assert len(t.blocks) == 1 and t.cutvertices == ()
    assert leaf_blocks(t) == [(PRISM.labels, None)]

    p4 = build(4, [(0, 1), (1, 2), (2, 3)])
    t = block_tree(p4)
    assert len(t.blocks) == 3 and sorted(t.cutvertices) == [1, 2]


def test_block_tree_rejects_disconnected():
    with pytest.raises(PreconditionError):
        block_tree(build(4, [(0, 1), (2, 3)]))


def _same_block_oracle(g, e, f):
    return e == f or any(e in c and f in c for c in circuits(g))


@given(constraint_graphs(min_n=2, max_n=6))
@settings(max_examples=120, deadline=None)
def test_block_tree_partition_matches_cycle_oracle(g):
    if not is_connected(g):
        return
    t = block_tree(g)
    union = frozenset().union(*t.blocks)
    assert union == g.labels and sum(len(b) for b in t.blocks) == g.m
    where = {lab: i for i, blk in enumerate(t.blocks) for lab in blk}
    for e, f in combinations(sorted(g.labels), 2):
        assert (where[e] == where[f]) == _same_block_oracle(g, e, f)


def test_serial_suppress_examples():
    # deleting a triangle edge of the prism leaves two degree-2 vertices
    h, vmap = delete_with_map(PRISM, 0)
    s, ops = serial_suppress(h, (vmap[0], vmap[1]))
    assert len(ops) == 2 and is_isomorphic(s, K4) is not None
    assert serial_suppress(K4, (0, 1)) == (K4, [])


def test_serial_suppress_keeps_non_x_edge_of_mixed_class():
    g = build(6, PRISM_EDGES, [1])  # X = {12}; the class at vertex 1 is {01, 12}
    h, vmap = delete_with_map(g, 7)  # delete 14 (labels 0..8 = 01 12 02 34 45 35 03 14 25)
    s, ops = serial_suppress(h, (vmap[1], vmap[4]))
    assert ops[0].label == 1 and 0 in s.labels


def test_serial_suppress_rejects_foreign_degree_two_vertex():
    h, vmap = delete_with_map(PRISM, 0)
    with pytest.raises(PreconditionError):
        serial_suppress(h, (vmap[0], 5))


def test_bixby_step_examples(cat):
    # the prism is not K4, every step returns a 3-connected graph
    contracted = bixby_step(PRISM, 6)
    assert contracted.kind == "contracted" and is_3_connected(contracted.graph)
    deleted = bixby_step(PRISM, 0)
    assert deleted.kind == "deleted" and is_isomorphic(deleted.graph, K4) is not None
    w = cat.weird_prism
    for e in w.non_x:
        assert is_3_connected(bixby_step(w, e).graph)
    with pytest.raises(PreconditionError):
        bixby_step(K4, 0)
    with pytest.raises(PreconditionError):
        bixby_step(w, 6)


def test_bixby_step_always_3_connected_small():
    for n in (5, 6):
        for g in enumerate_graphs(n, is_3_connected):
            for e in sorted(g.labels):
                assert is_3_connected(bixby_step(g, e).graph)


def test_two_separations_examples():
    assert two_separations(K4) == []
    g = two_four_cycles()
    seps = two_separations(g)
    assert {s.separator for s in seps} == {(0, 1)}
    # four s-t paths of two edges each: 2^3 - 1 groupings with two edges on both sides
    assert len(seps) == 7
    assert len(two_separations(C5)) == 5
    for s in two_separations(C5):
        a, b = s.separator
        assert not C5.has_edge(a, b)
    with pytest.raises(PreconditionError):
        two_separations(build(3, [(0, 1), (1, 2)]))


def test_two_separations_really_separate():
    g = two_four_cycles()
    for sep in two_separations(g):
        a, b = sep.parts
        va = {v for lab in a for v in g.endpoints[lab]}
        vb = {v for lab in b for v in g.endpoints[lab]}
        assert va & vb <= set(sep.separator) and a | b == g.labels


def test_bond_context_special_pairs(cat):
    assert is_3connected_along(cat.special_k4)
    sp = cat.special_prism
    assert is_3connected_along(sp)
    assert len(sp.d) == 3
    for e in sp.d:
        g = ConstraintGraph(sp.graph.graph.subgraph_edges(sp.graph.labels - {e}))
        assert not is_3connected_along(BondContext(g, sp.left, sp.right))


def test_three_connected_along_uses_cross_pairs():
    # C4 with the two sides being opposite edges: a cross pair separates
    b = make_bond_context(C4, {0, 1})
    assert not is_3connected_along(b)
    assert not connected_without(C4, (0, 2))


def test_make_bond_context_rejects_non_bond():
    with pytest.raises(PreconditionError):
        make_bond_context(C4, {0, 2})
    with pytest.raises(PreconditionError):
        make_bond_context(C4, set())


def test_contractible_edges_examples():
    assert contractible_edges(C4) == C4.labels
    assert contractible_edges(K4) == K4.labels
    assert contractible_edges(TRIANGLE) == TRIANGLE.labels
    a, b, c, d = four_contractible(C4)
    assert not set(C4.endpoints[a]) & set(C4.endpoints[b])
    assert len({a, b, c, d}) == 4
    with pytest.raises(PreconditionError):
        four_contractible(TRIANGLE)


def test_contractible_means_2_connected_after_contraction():
    g = two_four_cycles()
    good = contractible_edges(g)
    for lab in g.labels:
        assert (lab in good) == is_k_connected(contract(g, lab), 2)


def test_four_contractible_up_to_six_vertices():
    for n in range(3, 7):
        for g in enumerate_graphs(n, lambda h: is_k_connected(h, 2)):
            if g.n == 3:
                continue
            try:
                four_contractible(g)
            except InvariantViolation:  # pragma: no cover - would refute the claim
                pytest.fail(f"no four contractible edges in {g}")

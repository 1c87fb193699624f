import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constraint_minors.canon import canonical_form, is_isomorphic
from constraint_minors.errors import GraphInputError, PreconditionError, TooLargeError
from constraint_minors.graph import (
    MinorCertificate,
    build,
    contract,
    contract_op,
    delete_non_x,
    delete_op,
    is_constraint_connected,
    is_witness,
    replay,
    x_components,
)

from strategies import constraint_graphs, relabel

K4_PAIRS = [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)]


def test_build_assigns_labels_in_input_order():
    g = build(3, [(0, 1), (1, 2), (2, 0)], [0, 1])
    assert g.endpoints == {0: (0, 1), 1: (1, 2), 2: (0, 2)}
    assert g.x == {0, 1}


def test_build_constraint_k4_candidate_matches_catalog(cat):
    g = build(4, K4_PAIRS, [0, 1])
    assert is_isomorphic(g, cat.constraint_k4) is not None


@pytest.mark.parametrize("pairs, x", [
    ([(0, 1), (0, 1)], []),
    ([(0, 1), (1, 0)], []),
    ([(1, 1)], []),
    ([(0, 5)], []),
    ([(0, 1)], [1]),
])
def test_build_rejects_bad_input(pairs, x):
    with pytest.raises(GraphInputError) as info:
        build(3, pairs, x)
    assert info.value.item is not None


def test_x_components_examples():
    tri = build(3, [(0, 1), (1, 2), (0, 2)], [0, 1, 2])
    assert x_components(tri) == [frozenset({0, 1, 2})]
    k4 = build(4, K4_PAIRS, [0, 1])
    assert x_components(k4) == [frozenset({0}), frozenset({1})]
    empty = build(4, K4_PAIRS)
    assert x_components(empty) == []
    assert is_constraint_connected(empty)


def test_is_constraint_connected_examples(cat):
    assert not is_constraint_connected(cat.weird_prism)
    assert is_constraint_connected(build(3, [(0, 1), (1, 2)], [0, 1]))


def test_contract_weird_prism_x_edge_gives_wheel(cat):
    for lab in cat.weird_prism.x:
        assert is_isomorphic(contract(cat.weird_prism, lab), cat.constraint_wheel) is not None


def test_contract_keeps_x_member_of_parallel_class():
    tri = build(3, [(0, 1), (1, 2), (2, 0)], [0])
    h = contract(tri, 1)
    assert h.n == 2 and h.labels == {0} and h.x == {0}


def test_contract_prefers_least_label_without_x():
    tri = build(3, [(0, 1), (1, 2), (2, 0)], [])
    assert contract(tri, 1).labels == {0}


def test_contract_wagner_x_edge_gives_wheel(cat):
    g = cat.constraint_wagner
    assert is_isomorphic(contract(g, min(g.x)), cat.constraint_wheel) is not None


def test_contract_unknown_label():
    with pytest.raises(GraphInputError):
        contract(build(2, [(0, 1)]), 7)


def test_delete_non_x():
    k4 = build(4, K4_PAIRS, [0, 1])
    h = delete_non_x(k4, 2)
    assert h.m == 5 and h.x == {0, 1}
    with pytest.raises(PreconditionError):
        delete_non_x(k4, 0)
    c4 = build(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [0, 2])
    path = delete_non_x(c4, 1)
    assert path.m == 3 and len(x_components(path)) == 2


def test_delete_drops_isolated_vertex():
    g = build(3, [(0, 1), (1, 2)])
    h = delete_non_x(g, 0)
    assert h.n == 2 and h.labels == {1}


def test_canonical_form_examples(cat):
    k4 = cat.constraint_k4
    other = build(4, [(0, 2), (1, 3), (0, 1), (0, 3), (1, 2), (2, 3)], [0, 1])
    assert canonical_form(k4) == canonical_form(other)
    mapping = is_isomorphic(other, k4)
    assert mapping is not None and is_witness(other, k4, mapping)
    adjacent = build(4, K4_PAIRS, [0, 2])
    assert is_isomorphic(k4, adjacent) is None
    assert is_isomorphic(cat.weird_prism, cat.wagner_prism) is None


def test_canonical_form_cap():
    big = build(11, [(i, i + 1) for i in range(10)])
    with pytest.raises(TooLargeError):
        canonical_form(big)


def test_certificate_json_round_trip(cat):
    g = cat.weird_prism
    cert = MinorCertificate((contract_op(6),), "constraint_wheel",
                            tuple(is_isomorphic(contract(g, 6), cat.constraint_wheel)))
    again = MinorCertificate.from_json(cert.to_json())
    assert again == cert
    assert again.check(g, cat.constraint_wheel)
    assert not MinorCertificate((delete_op(6),), "constraint_wheel", cert.witness).check(g, cat.constraint_wheel)


@given(constraint_graphs(), st.data())
@settings(max_examples=150, deadline=None)
def test_operations_commute_with_relabeling(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    h = relabel(g, perm)
    assert canonical_form(g) == canonical_form(h)
    for lab in g.labels:
        assert canonical_form(contract(g, lab)) == canonical_form(contract(h, lab))
        if lab not in g.x:
            assert canonical_form(delete_non_x(g, lab)) == canonical_form(delete_non_x(h, lab))


@given(constraint_graphs())
@settings(max_examples=150, deadline=None)
def test_contraction_keeps_x_in_every_parallel_class(g):
    for lab in g.labels:
        keep, gone = g.endpoints[lab]
        h = contract(g, lab)
        classes = {}
        for other, u, v in g.edges:
            if other == lab:
                continue
            u, v = (keep if u == gone else u), (keep if v == gone else v)
            if u != v:
                classes.setdefault(frozenset((u, v)), set()).add(other)
        assert len(classes) == h.m
        for members in classes.values():
            (survivor,) = members & h.labels
            meets_x = bool(members & g.x)
            assert (survivor in h.x) == meets_x
            pool = members & g.x if meets_x else members
            assert survivor == min(pool)


@given(constraint_graphs())
@settings(max_examples=150, deadline=None)
def test_minor_operations_preserve_connected_x(g):
    if not is_constraint_connected(g):
        return
    for lab in g.labels:
        assert is_constraint_connected(contract(g, lab))
        if lab not in g.x:
            assert is_constraint_connected(delete_non_x(g, lab))


def test_replay_composes_operations(cat):
    g = cat.constraint_wagner
    assert replay(g, [contract_op(0), contract_op(3)]) == contract(contract(g, 0), 3)

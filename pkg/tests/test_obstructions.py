import pytest

from constraint_minors.canon import is_isomorphic
from constraint_minors.catalog import OBSTRUCTION_NAMES, PRISM_EDGES
from constraint_minors.connectivity import is_3_connected
from constraint_minors.errors import PreconditionError, ResourceLimitError
from constraint_minors.graph import build, contract_op, is_constraint_connected, replay, x_components
from constraint_minors.obstructions import (
    clear_caches,
    find_forbidden_minor,
    has_constraint_minor,
    is_essential,
    match_catalog,
    minimal_obstructions,
    one_step_minors,
)


def test_catalog_obstructions_are_3_connected_and_disconnected(cat):
    for name, g in cat.named_graphs().items():
        assert is_3_connected(g), name
        assert not is_constraint_connected(g), name
    assert len(x_components(cat.weird_prism)) == 3


def test_catalog_names_are_pairwise_distinct(cat):
    named = cat.named_graphs()
    for a in named:
        assert match_catalog(named[a]) == a


def test_prisms_use_triangle_edges_meeting_both_triangles(cat):
    triangles = ({0, 1, 2}, {3, 4, 5})  # labels of the two triangles in PRISM_EDGES
    for i in range(1, 5):
        x = getattr(cat, f"constraint_prism_{i}").x
        assert x <= triangles[0] | triangles[1]
        assert x & triangles[0] and x & triangles[1]


def test_has_constraint_minor_examples(cat):
    cert = has_constraint_minor(cat.weird_prism, cat.constraint_wheel, "constraint_wheel")
    assert len(cert.ops) == 1 and cert.check(cat.weird_prism, cat.constraint_wheel)
    cert = has_constraint_minor(cat.constraint_wagner, cat.constraint_k4, "constraint_k4")
    assert cert is not None and cert.check(cat.constraint_wagner, cat.constraint_k4)
    assert has_constraint_minor(cat.constraint_k4, cat.constraint_k4).ops == ()


def test_has_constraint_minor_negative(cat):
    # X connected is inherited by minors, so no obstruction lies below a connected graph
    g = build(6, PRISM_EDGES, [0, 1, 2])
    for name in OBSTRUCTION_NAMES:
        assert has_constraint_minor(g, cat[name]) is None
    # K4 is too small to contain the wheel
    assert has_constraint_minor(cat.constraint_k4, cat.constraint_wheel) is None


def test_has_constraint_minor_is_transitive_on_catalog(cat):
    # Wagner prism > (Wagner prism / 14) > constraint K4
    top = cat.wagner_prism
    middle = replay(top, [contract_op(7)])
    assert has_constraint_minor(top, middle) is not None
    assert has_constraint_minor(middle, cat.constraint_k4) is not None
    assert has_constraint_minor(top, cat.constraint_k4) is not None
    # the wheel is minimal, so K4 is not below it
    assert has_constraint_minor(cat.constraint_wheel, cat.constraint_k4) is None


def test_search_cap_is_an_error_not_a_no(cat):
    clear_caches()
    with pytest.raises(ResourceLimitError):
        has_constraint_minor(cat.constraint_wagner, cat.constraint_k4, cap=1)
    clear_caches()


def test_find_forbidden_minor_examples(cat):
    name, cert = find_forbidden_minor(cat.constraint_k4)
    assert name == "constraint_k4" and cert.ops == ()
    assert find_forbidden_minor(build(6, PRISM_EDGES, [0, 1, 2, 6])) is None
    name, cert = find_forbidden_minor(cat.weird_prism)
    assert name == "constraint_wheel" and len(cert.ops) == 1


def test_essential_edges(cat):
    k4 = cat.constraint_k4
    assert all(is_essential(k4, e).essential for e in k4.non_x)
    for name in ("constraint_wagner", "wagner_prism"):
        g = cat[name]
        reports = [is_essential(g, e) for e in g.non_x]
        assert any(not r.essential for r in reports), name
        for r in reports:
            if not r.essential:
                assert r.witness[0].label == r.edge
                h = replay(g, r.witness)
                assert is_3_connected(h) and not is_constraint_connected(h)
    w = cat.weird_prism
    assert all(is_essential(w, e).essential for e in w.non_x)


def test_is_essential_preconditions(cat):
    with pytest.raises(PreconditionError):
        is_essential(cat.constraint_k4, min(cat.constraint_k4.x))


def test_minimal_obstructions_small(cat):
    found = minimal_obstructions(4)
    assert len(found) == 1 and is_isomorphic(found[0], cat.constraint_k4) is not None
    names = sorted(match_catalog(g) for g in minimal_obstructions(5))
    assert names == ["constraint_k4", "constraint_wheel"]


def test_one_step_minors_lists_deletions_first(cat):
    ops = [op for op, _ in one_step_minors(cat.constraint_k4)]
    kinds = [op.kind.value for op in ops]
    assert kinds == ["delete"] * 4 + ["contract"] * 6

from itertools import combinations, permutations

import pytest

from constraint_minors.canon import canonical_form
from constraint_minors.catalog import PRISM_EDGES
from constraint_minors.connectivity import is_2_connected, is_3_connected
from constraint_minors.enumeration import (
    automorphisms,
    brute_force_graphs,
    enumerate_graphs,
    x_orbit_representatives,
)
from constraint_minors.errors import TooLargeError
from constraint_minors.graph import ConstraintGraph, Graph, build

# graphs on n unlabelled vertices (OEIS A000088)
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}


@pytest.mark.parametrize("n, count", sorted(ALL_COUNTS.items()))
def test_counts_of_all_graphs(n, count):
    assert len(list(enumerate_graphs(n))) == count


def test_connectivity_classes():
    # A002218 (2-connected) and A006290 (3-connected)
    assert [len(list(enumerate_graphs(n, is_2_connected))) for n in range(3, 7)] == [1, 3, 10, 56]
    assert [len(list(enumerate_graphs(n, is_3_connected))) for n in range(4, 7)] == [1, 3, 17]
    (k4,) = enumerate_graphs(4, is_3_connected)
    assert k4.m == 6


def test_prism_among_3_connected_six_vertex_graphs():
    prism = canonical_form(build(6, PRISM_EDGES))
    assert prism in {canonical_form(g) for g in enumerate_graphs(6, is_3_connected)}


@pytest.mark.parametrize("n", [4, 5])
def test_brute_force_recount(n):
    fast = {canonical_form(g) for g in enumerate_graphs(n, is_2_connected)}
    slow = {canonical_form(g) for g in brute_force_graphs(n, is_2_connected)}
    assert fast == slow


def _permutation_code(g):
    """Independent canonical code: minimum over every vertex permutation."""
    best = None
    for perm in permutations(range(g.n)):
        code = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v]), lab in g.x)
                            for lab, u, v in g.edges))
        if best is None or code < best:
            best = code
    return best


def test_canonical_form_agrees_with_permutation_oracle():
    graphs = []
    for g in enumerate_graphs(5):
        for x in x_orbit_representatives(g)[:6]:
            graphs.append(ConstraintGraph(g, x))
    fast = [canonical_form(g) for g in graphs]
    slow = [_permutation_code(g) for g in graphs]
    for i, j in combinations(range(len(graphs)), 2):
        assert (fast[i] == fast[j]) == (slow[i] == slow[j])


def test_automorphisms_of_prism():
    assert len(automorphisms(build(6, PRISM_EDGES))) == 12


def test_x_orbit_representatives_cover_every_class():
    g = build(6, PRISM_EDGES).graph
    reps = x_orbit_representatives(g)
    codes = {canonical_form(ConstraintGraph(g, frozenset(x)))
             for k in range(g.m + 1) for x in combinations(sorted(g.labels), k)}
    assert len(reps) == len(codes)
    assert {canonical_form(ConstraintGraph(g, x)) for x in reps} == codes


def test_enumeration_cap():
    with pytest.raises(TooLargeError):
        next(enumerate_graphs(9))


def test_enumerated_graphs_are_valid():
    for g in enumerate_graphs(5):
        assert isinstance(g, Graph)
        g.validate()

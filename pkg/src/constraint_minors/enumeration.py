"""Graphs up to isomorphism, automorphisms, and constraint sets up to symmetry."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .canon import canonical_labeling
from .errors import TooLargeError
from .graph import ConstraintGraph, Graph

ENUM_CAP = 8


def _relabel_canonical(g: Graph) -> Graph:
    form, pos = canonical_labeling(g)
    pairs = sorted(tuple(sorted((pos[u], pos[v]))) for _, u, v in g.edges)
    return Graph(g.n, tuple((i, a, b) for i, (a, b) in enumerate(pairs)))


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple:
    """Every graph on exactly ``n`` vertices up to isomorphism, canonically labelled.

    Built by adding a vertex with every possible neighbourhood to each graph
    on ``n - 1`` vertices: deleting any vertex of a graph lands in the smaller
    list, so nothing is missed.
    """
    if n > ENUM_CAP:
        raise TooLargeError(f"enumeration cap is {ENUM_CAP} vertices")
    if n <= 0:
        return (Graph(0, ()),)
    if n == 1:
        return (Graph(1, ()),)
    found = {}
    for small in all_graphs(n - 1):
        base = [(u, v) for _, u, v in small.edges]
        for mask in range(2 ** (n - 1)):
            pairs = base + [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
            g = Graph(n, tuple((i, a, b) for i, (a, b) in enumerate(pairs)))
            form = canonical_labeling(g)[0]
            if form not in found:
                found[form] = g
    return tuple(_relabel_canonical(found[f]) for f in sorted(found))


def enumerate_graphs(n: int, predicate=None, cap: int = ENUM_CAP):
    """Yield the graphs on ``n`` vertices (up to isomorphism) satisfying ``predicate``."""
    if n > cap:
        raise TooLargeError(f"n={n} exceeds the enumeration cap {cap}")
    for g in all_graphs(n):
        if predicate is None or predicate(g):
            yield g


def brute_force_graphs(n: int, predicate=None) -> list:
    """Independent recount: canonical dedup over all 2^C(n,2) edge subsets."""
    pairs = list(combinations(range(n), 2))
    found = {}
    for mask in range(2 ** len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        g = Graph(n, tuple((i, a, b) for i, (a, b) in enumerate(chosen)))
        if predicate is not None and not predicate(g):
            continue
        form = canonical_labeling(g)[0]
        found.setdefault(form, g)
    return [found[f] for f in sorted(found)]


def automorphisms(g) -> list:
    """All vertex permutations preserving edges (and X membership for constraint graphs)."""
    x = getattr(g, "x", frozenset())
    n = g.n
    color = {}
    for lab, u, v in g.edges:
        c = 2 if lab in x else 1
        color[(u, v)] = color[(v, u)] = c
    deg = [(len(g.adj[v]), sum(1 for w in g.adj[v] if color[(v, w)] == 2)) for v in range(n)]
    out = []
    image = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            out.append(tuple(image))
            return
        for cand in range(n):
            if used[cand] or deg[cand] != deg[i]:
                continue
            ok = True
            for j in range(i):
                if color.get((i, j), 0) != color.get((cand, image[j]), 0):
                    ok = False
                    break
            if ok:
                image[i] = cand
                used[cand] = True
                extend(i + 1)
                used[cand] = False
        image[i] = None

    extend(0)
    return out


def x_orbit_representatives(g: Graph) -> list:
    """One constraint set X per orbit of the automorphism group on edge subsets."""
    labels = [lab for lab, _, _ in g.edges]
    index = {lab: i for i, lab in enumerate(labels)}
    pair_label = g.pair_label
    edge_perms = []
    for a in automorphisms(g):
        perm = []
        for lab, u, v in g.edges:
            x, y = a[u], a[v]
            perm.append(index[pair_label[(min(x, y), max(x, y))]])
        edge_perms.append(perm)
    m = len(labels)
    seen = bytearray(2 ** m)
    reps = []
    for mask in range(2 ** m):
        if seen[mask]:
            continue
        reps.append(frozenset(labels[i] for i in range(m) if mask >> i & 1))
        for perm in edge_perms:
            img = 0
            for i in range(m):
                if mask >> i & 1:
                    img |= 1 << perm[i]
            seen[img] = 1
    return reps


def constraint_graphs_up_to_iso(g: Graph) -> list:
    return [ConstraintGraph(g, x) for x in x_orbit_representatives(g)]

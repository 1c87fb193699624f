"""Exact canonical forms for small constraint graphs.

Individualization-refinement: an ordered partition of the vertices is refined
until equitable with respect to both edge colours (X and non-X), then every
non-singleton cell is branched on.  The canonical code is the least edge code
over all leaves of the search tree.  Refinement only looks at colours and
cell positions, never at vertex names, so the code is an isomorphism
invariant, and two graphs share a code iff they are isomorphic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TooLargeError
from .graph import ConstraintGraph, as_constraint

CANON_CAP = 10

_NONX, _X = 1, 2


@dataclass(frozen=True, order=True)
class CanonicalForm:
    code: tuple

    @property
    def n(self) -> int:
        return self.code[0]


def _refine(cells, nbr):
    # nbr[v] = (set of non-X neighbours, set of X neighbours)
    while True:
        where = {}
        for i, cell in enumerate(cells):
            for v in cell:
                where[v] = i
        k = len(cells)
        out = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups = {}
            for v in cell:
                sig = [0] * (2 * k)
                for w in nbr[v][0]:
                    sig[2 * where[w]] += 1
                for w in nbr[v][1]:
                    sig[2 * where[w] + 1] += 1
                groups.setdefault(tuple(sig), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                for sig in sorted(groups):
                    out.append(groups[sig])
        cells = out
        if not split:
            return cells


def _leaf_code(cells, colored_edges):
    pos = {}
    for i, cell in enumerate(cells):
        pos[cell[0]] = i
    code = []
    for u, v, c in colored_edges:
        a, b = pos[u], pos[v]
        code.append((a, b, c) if a < b else (b, a, c))
    code.sort()
    return tuple(code), pos


def _same_orbit(v, explored, prefix, autos):
    # orbit of v under the automorphisms found so far that fix the prefix pointwise
    gens = [a for a in autos if all(a[p] == p for p in prefix)]
    if not gens:
        return False
    orbit = {v}
    frontier = [v]
    while frontier:
        w = frontier.pop()
        for a in gens:
            u = a[w]
            if u not in orbit:
                orbit.add(u)
                frontier.append(u)
    return any(e in orbit for e in explored)


def canonical_labeling(g, cap: int = CANON_CAP):
    """Return ``(CanonicalForm, position)`` where ``position[v]`` is v's canonical index."""
    g = as_constraint(g)
    n = g.n
    if n > cap:
        raise TooLargeError(f"graph has {n} vertices; canonicalization cap is {cap}")
    nbr = [(set(), set()) for _ in range(n)]
    colored = []
    for lab, u, v in g.edges:
        c = _X if lab in g.x else _NONX
        nbr[u][c - 1].add(v)
        nbr[v][c - 1].add(u)
        colored.append((u, v, c))
    if n == 0:
        return CanonicalForm((0, ())), {}
    best = [None, None]
    autos = []  # automorphisms discovered as pairs of leaves with equal codes

    def search(cells, prefix):
        cells = _refine(cells, nbr)
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            code, pos = _leaf_code(cells, colored)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, pos
            elif code == best[0]:
                inv = {i: w for w, i in best[1].items()}
                autos.append([inv[pos[v]] for v in range(n)])
            return
        cell = cells[idx]
        done = []
        for v in cell:
            if done and _same_orbit(v, done, prefix, autos):
                continue
            done.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:], prefix + (v,))

    search([list(range(n))], ())
    return CanonicalForm((n, best[0])), best[1]


def canonical_form(g, cap: int = CANON_CAP) -> CanonicalForm:
    return canonical_labeling(g, cap)[0]


def is_isomorphic(g, h, cap: int = CANON_CAP):
    """Vertex bijection ``f`` (as a list, ``f[v]`` in h) preserving edges and X, or None."""
    cg, pg = canonical_labeling(g, cap)
    ch, ph = canonical_labeling(h, cap)
    if cg != ch:
        return None
    inv = {i: v for v, i in ph.items()}
    return [inv[pg[v]] for v in range(as_constraint(g).n)]


def graph_key(g: ConstraintGraph) -> tuple:
    """Cheap exact key for memo tables: the canonical code."""
    return canonical_form(g).code

"""Connectivity predicates and decompositions.

Everything here is brute force over vertex subsets; graphs in this package
have at most a dozen vertices, and the simple code doubles as an oracle for
the cleverer routines elsewhere.

Conventions: a graph is k-connected when it has at least k+1 vertices and
stays connected after removing any k-1 of them, so K4 is 3-connected, the
triangle is 2-connected and a single edge is only 1-connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import InvariantViolation, PreconditionError
from .graph import (
    ConstraintGraph,
    Graph,
    as_constraint,
    contract_op,
    contract_with_map,
    delete_op,
    delete_with_map,
)


def connected_without(g, removed: Iterable[int] = ()) -> bool:
    """Are the vertices of ``g`` outside ``removed`` connected (and nonempty)?"""
    removed = set(removed)
    rest = [v for v in range(g.n) if v not in removed]
    if not rest:
        return False
    adj = g.adj
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(rest)


def is_connected(g) -> bool:
    return connected_without(g)


def is_k_connected(g, k: int) -> bool:
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if g.n < k + 1:
        return False
    if not connected_without(g):
        return False
    for size in range(1, k):
        for cut in combinations(range(g.n), size):
            if not connected_without(g, cut):
                return False
    return True


def is_2_connected(g) -> bool:
    return is_k_connected(g, 2)


def is_3_connected(g) -> bool:
    return is_k_connected(g, 3)


def is_cycle(g) -> bool:
    return g.n >= 3 and g.m == g.n and all(len(a) == 2 for a in g.adj) and connected_without(g)


def is_triangle(g) -> bool:
    return g.n == 3 and g.m == 3


def is_k4(g) -> bool:
    return g.n == 4 and g.m == 6


# ---------------------------------------------------------------- blocks

@dataclass(frozen=True)
class BlockTree:
    """Blocks (edge sets) of a connected graph and the cutvertices between them.

    ``incidence[i]`` lists the cutvertices contained in block ``i``.
    """

    blocks: tuple
    cutvertices: tuple
    incidence: tuple

    def block_vertices(self, i: int, g) -> frozenset:
        ends = g.endpoints
        return frozenset(v for lab in self.blocks[i] for v in ends[lab])


def _edge_graph_vertices(g, labels):
    ends = g.endpoints
    return {v for lab in labels for v in ends[lab]}


def block_tree(g, labels: Iterable[int] | None = None) -> BlockTree:
    """Block decomposition of the subgraph formed by ``labels`` (default: all edges).

    Only vertices incident with the chosen edges take part; that subgraph must
    be connected.
    """
    ends = g.endpoints
    labels = sorted(ends) if labels is None else sorted(labels)
    verts = _edge_graph_vertices(g, labels)
    inc = {v: [] for v in verts}
    for lab in labels:
        a, b = ends[lab]
        inc[a].append((b, lab))
        inc[b].append((a, lab))
    if not labels:
        return BlockTree((), (), ())
    # connectivity check
    start = ends[labels[0]][0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w, _ in inc[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != verts:
        raise PreconditionError("block_tree needs a connected graph")

    # iterative Hopcroft-Tarjan with an edge stack
    disc, low = {}, {}
    blocks = []
    estack = []
    counter = 0
    disc[start] = low[start] = counter
    it_stack = [(start, None, iter(sorted(inc[start])))]
    while it_stack:
        v, parent_edge, it = it_stack[-1]
        advanced = False
        for w, lab in it:
            if lab == parent_edge:
                continue
            if w not in disc:
                counter += 1
                disc[w] = low[w] = counter
                estack.append(lab)
                it_stack.append((w, lab, iter(sorted(inc[w]))))
                advanced = True
                break
            if disc[w] < disc[v]:
                estack.append(lab)
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        it_stack.pop()
        if it_stack:
            u = it_stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                comp = []
                while True:
                    e = estack.pop()
                    comp.append(e)
                    if e == parent_edge:
                        break
                blocks.append(frozenset(comp))
    blocks.sort(key=min)
    count = {}
    for blk in blocks:
        for v in _edge_graph_vertices(g, blk):
            count[v] = count.get(v, 0) + 1
    cuts = tuple(sorted(v for v, c in count.items() if c > 1))
    cutset = set(cuts)
    incidence = tuple(tuple(sorted(_edge_graph_vertices(g, blk) & cutset)) for blk in blocks)
    return BlockTree(tuple(blocks), cuts, incidence)


def leaf_blocks(t: BlockTree) -> list:
    """``(block, attaching cutvertex)`` pairs; the cutvertex is None for a one-block tree."""
    if len(t.blocks) == 1:
        return [(t.blocks[0], None)]
    return [(blk, cuts[0]) for blk, cuts in zip(t.blocks, t.incidence) if len(cuts) == 1]


# ------------------------------------------------------ Bixby reductions

def serial_classes(g, ends: tuple) -> list:
    """Nontrivial serial classes at the degree-2 vertices of ``g``.

    Every degree-2 vertex must be one of ``ends`` (the endpoints of an edge
    just deleted from a 3-connected graph), which forces each class to be the
    two edges at such a vertex.
    """
    classes = []
    for v in range(g.n):
        if len(g.adj[v]) <= 1:
            raise PreconditionError(f"vertex {v} has degree {len(g.adj[v])}")
        if len(g.adj[v]) == 2:
            if v not in ends:
                raise PreconditionError(
                    f"degree-2 vertex {v} is not an endvertex of the removed edge")
            classes.append(tuple(sorted(g.incident[v])))
    return classes


def _default_contracted(g: ConstraintGraph, cls: tuple) -> int:
    a, b = cls
    ax, bx = a in g.x, b in g.x
    if ax != bx:
        return a if ax else b  # the non-X edge survives
    return b  # keep the least label


def serial_suppress(g: ConstraintGraph, ends: tuple, choice=None):
    """Contract all but one edge of every nontrivial serial class.

    ``ends`` are the endpoints (in ``g``'s numbering) of the removed edge.
    ``choice`` optionally overrides which label of each class is contracted;
    by default a class mixing X and non-X contracts its X edge.  Returns the
    suppressed graph and the contraction ops applied.
    """
    g = as_constraint(g)
    classes = serial_classes(g, ends)
    ops = []
    for i, cls in enumerate(classes):
        lab = choice[i] if choice is not None else _default_contracted(g, cls)
        if lab not in cls:
            raise PreconditionError(f"label {lab} is not in serial class {cls}")
        if lab in g.endpoints:
            g = contract_with_map(g, lab)[0]
            ops.append(contract_op(lab))
    return g, ops


def suppression_choices(g: ConstraintGraph, ends: tuple) -> list:
    """Every way of picking the contracted edge in each serial class."""
    classes = serial_classes(g, ends)
    out = [[]]
    for cls in classes:
        out = [c + [lab] for c in out for lab in cls]
    return out


@dataclass(frozen=True)
class BixbyResult:
    kind: str  # "contracted" or "deleted"
    graph: ConstraintGraph
    ops: tuple


def bixby_step(g, e: int) -> BixbyResult:
    """One step of Bixby's lemma at the non-X edge ``e`` of a 3-connected graph.

    Tries the contraction first; if ``g/e`` is not 3-connected, deletes ``e``
    and suppresses the resulting serial pairs.
    """
    g = as_constraint(g)
    if e in g.x:
        raise PreconditionError(f"edge {e} is in X")
    if e not in g.endpoints:
        raise PreconditionError(f"unknown edge {e}")
    if is_k4(g):
        raise PreconditionError("bixby_step is undefined on K4")
    if not is_3_connected(g):
        raise PreconditionError("bixby_step needs a 3-connected graph")
    h = contract_with_map(g, e)[0]
    if is_3_connected(h):
        return BixbyResult("contracted", h, (contract_op(e),))
    u, v = g.endpoints[e]
    h, vmap = delete_with_map(g, e)
    h, ops = serial_suppress(h, (vmap[u], vmap[v]))
    if not is_3_connected(h):
        raise InvariantViolation(f"Bixby's lemma failed at edge {e} of {g}")
    return BixbyResult("deleted", h, (delete_op(e),) + tuple(ops))


def reduction_children(g: ConstraintGraph):
    """All one-step 3-connected reductions at non-X edges, as (graph, ops).

    Contractions that stay 3-connected, and deletions followed by every choice
    of serial suppression that ends 3-connected.
    """
    for e in g.non_x:
        h = contract_with_map(g, e)[0]
        if is_3_connected(h):
            yield h, (contract_op(e),)
        u, v = g.endpoints[e]
        d, vmap = delete_with_map(g, e)
        ends = (vmap[u], vmap[v])
        try:
            choices = suppression_choices(d, ends)
        except PreconditionError:
            continue
        seen = set()
        for choice in choices:
            s, ops = serial_suppress(d, ends, choice)
            key = tuple(op.label for op in ops)
            if key in seen:
                continue
            seen.add(key)
            if is_3_connected(s):
                yield s, (delete_op(e),) + tuple(ops)


# ------------------------------------------------------- 2-separations

@dataclass(frozen=True)
class TwoSeparation:
    parts: tuple  # (A, B) frozensets of labels
    separator: tuple  # (s, t)


def bridges_at(g, s: int, t: int) -> list:
    """Edge sets of the bridges of ``{s, t}``: components of G - s - t with
    their attaching edges, plus the edge ``st`` on its own if present."""
    adj = g.adj
    comp = {}
    for start in range(g.n):
        if start in (s, t) or start in comp:
            continue
        comp[start] = start
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in (s, t) and w not in comp:
                    comp[w] = start
                    stack.append(w)
    groups = {}
    direct = []
    for lab, u, v in g.edges:
        if {u, v} == {s, t}:
            direct.append(lab)
            continue
        inner = u if u not in (s, t) else v
        groups.setdefault(comp[inner], set()).add(lab)
    out = [frozenset(grp) for grp in groups.values()]
    out.extend(frozenset([lab]) for lab in direct)
    out.sort(key=min)
    return out


def separation_pairs(g) -> list:
    """Vertex pairs that carry a non-trivial 2-separation of a 2-connected graph."""
    pairs = []
    for s, t in combinations(range(g.n), 2):
        br = bridges_at(g, s, t)
        big = [b for b in br if len(b) >= 2]
        if len(br) >= 3 or (len(br) == 2 and len(big) == 2):
            pairs.append((s, t))
    return pairs


def two_separations(g) -> list:
    """All non-trivial 2-separations (A, B), each listed once.

    For every vertex pair the bridges are grouped in every way that leaves at
    least two edges on both sides.
    """
    if not is_2_connected(g):
        raise PreconditionError("two_separations needs a 2-connected graph")
    out = []
    for s, t in combinations(range(g.n), 2):
        br = bridges_at(g, s, t)
        if len(br) < 2:
            continue
        k = len(br)
        # fix the first bridge on side A to avoid listing (B, A)
        for mask in range(2 ** (k - 1)):
            side_a = set(br[0])
            side_b = set()
            for i in range(1, k):
                (side_a if mask >> (i - 1) & 1 else side_b).update(br[i])
            if len(side_a) >= 2 and len(side_b) >= 2:
                out.append(TwoSeparation((frozenset(side_a), frozenset(side_b)), (s, t)))
    return out


# ---------------------------------------------------------------- bonds

@dataclass(frozen=True)
class BondContext:
    """A graph with a bond ``d`` given by its two (connected) vertex sides."""

    graph: ConstraintGraph
    left: frozenset
    right: frozenset

    @property
    def d(self) -> frozenset:
        return frozenset(lab for lab, u, v in self.graph.edges if (u in self.left) != (v in self.left))

    @property
    def L(self) -> frozenset:
        return frozenset(lab for lab, u, v in self.graph.edges if u in self.left and v in self.left)

    @property
    def R(self) -> frozenset:
        return frozenset(lab for lab, u, v in self.graph.edges if u in self.right and v in self.right)

    def side_graph(self, side: str) -> Graph:
        """``Q[L]`` or ``Q[R]`` as a graph on renumbered vertices."""
        labels = self.L if side == "L" else self.R
        return induced_by_edges(self.graph, labels)

    def swapped(self) -> "BondContext":
        return BondContext(self.graph, self.right, self.left)


def induced_by_edges(g, labels) -> Graph:
    """``G[Z]``: vertices incident with ``labels``, renumbered in order; labels kept."""
    ends = g.endpoints
    labels = sorted(labels)
    verts = sorted({v for lab in labels for v in ends[lab]})
    new = {v: i for i, v in enumerate(verts)}
    return Graph(len(verts), tuple((lab, new[ends[lab][0]], new[ends[lab][1]]) for lab in labels))


def _side_connected(g, side) -> bool:
    side = set(side)
    start = next(iter(side))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in side and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == side


def make_bond_context(g, left_vertices) -> BondContext:
    g = as_constraint(g)
    left = frozenset(left_vertices)
    right = frozenset(range(g.n)) - left
    if not left or not right:
        raise PreconditionError("both sides of a bond must be nonempty")
    if not left <= frozenset(range(g.n)):
        raise PreconditionError("left side contains unknown vertices")
    if not _side_connected(g, left) or not _side_connected(g, right):
        raise PreconditionError("a side is not connected, so the cut is not a bond")
    return BondContext(g, left, right)


def is_3connected_along(b: BondContext) -> bool:
    """2-connected, and no pair made of one vertex from each side separates."""
    g = b.graph
    if not is_2_connected(g):
        return False
    for x in b.left:
        for y in b.right:
            if not connected_without(g, (x, y)):
                return False
    return True


# --------------------------------------------------- contractible edges

def contractible_edges(g) -> frozenset:
    """Edges whose contraction leaves a 2-connected graph.

    A contraction down to a single edge (only possible from a triangle) counts
    as 2-connected here, so every edge of a triangle is contractible.
    """
    if not is_2_connected(g):
        raise PreconditionError("contractible_edges needs a 2-connected graph")
    g = as_constraint(g)
    out = set()
    for lab in g.endpoints:
        h = contract_with_map(g, lab)[0]
        if is_2_connected(h) or (h.n == 2 and h.m == 1):
            out.add(lab)
    return frozenset(out)


def four_contractible(g) -> tuple:
    """Four contractible edges, the first two sharing no endvertex."""
    if is_triangle(g):
        raise PreconditionError("the triangle has only three edges")
    good = sorted(contractible_edges(g))
    ends = g.endpoints
    for a, b in combinations(good, 2):
        if not set(ends[a]) & set(ends[b]):
            rest = [c for c in good if c not in (a, b)]
            if len(rest) >= 2:
                return (a, b, rest[0], rest[1])
    raise InvariantViolation(f"no four contractible edges with a disjoint pair in {g}")

"""Realizing graphic constraint matroids: find a graph with the same cycle
matroid in which X is connected, or exhibit a forbidden constraint minor.

Two graphs on the same edge labels have the same cycle matroid exactly when
one is obtained from the other by Whitney flips (for 2-connected graphs) and
by regluing blocks at cutvertices.  The realizer works block by block.  For a
2-connected block it builds the Tutte decomposition (cycles, bonds and
3-connected pieces joined by virtual edges) and runs an exact dynamic
program over it: for every subtree it records which *profiles* its X can
take relative to the two attachment vertices, over all 2-isomorphic
rearrangements of the subtree.

Profiles of a subtree hanging at the virtual edge ``st``:

* ``E``: no X edge.
* ``P``: X is connected and contains both ``s`` and ``t``.
* ``S``: X is connected and contains exactly one of ``s``, ``t``
  (which one can be chosen by flipping the subtree).
* ``T``: X has two components, one containing ``s`` and one containing ``t``.
* ``A``: X is connected and avoids ``s`` and ``t``.

Any other shape can never become part of a connected X and is dropped.  A
successful choice is turned into actual :func:`whitney_flip` calls on the
input block, so the returned graph is reached by logged flips.

When no realization exists, the certificate comes from :func:`bonds.certify`
for a 3-connected block; otherwise from a greedy descent through constraint
minors that stay non-realizable, or from an exhaustive search for the six
obstructions.  Some unrealizable series-parallel instances contain none of
the six; they are reported with the minimal unrealizable minor instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .bonds import certify
from .canon import is_isomorphic
from .catalog import OBSTRUCTION_NAMES, catalog
from .connectivity import block_tree, is_2_connected, is_3_connected
from .errors import InvariantViolation, PreconditionError, ResourceLimitError
from .graph import (
    ConstraintGraph,
    Graph,
    MinorCertificate,
    as_constraint,
    contract,
    contract_op,
    delete_non_x,
    delete_op,
    is_constraint_connected,
    replay,
    strip_isolated,
)

REALIZATION_SCHEMA = 1
CHOICE_CAP = 2_000_000


# -------------------------------------------------------------- flips and sums

def _rebuild(g, edges, n=None):
    graph = Graph(g.n if n is None else n, tuple(sorted((lab, min(u, v), max(u, v)) for lab, u, v in edges)))
    if isinstance(g, ConstraintGraph):
        return ConstraintGraph(graph, g.x)
    return graph


def separates(g, sep, part) -> bool:
    """Does ``{s, t}`` separate the edge set ``part`` from the remaining edges?"""
    s, t = sep
    part = frozenset(part)
    inside = {v for lab, u, w in g.edges if lab in part for v in (u, w)}
    outside = {v for lab, u, w in g.edges if lab not in part for v in (u, w)}
    return not ((inside & outside) - {s, t})


def whitney_flip(g, sep, part):
    """Reattach the edges of ``part`` with the separator vertices exchanged."""
    s, t = sep
    part = frozenset(part)
    labels = g.labels if hasattr(g, "labels") else frozenset(lab for lab, _, _ in g.edges)
    if not part or not part < labels:
        raise PreconditionError("part must be a nonempty proper subset of the edges")
    if s == t or not separates(g, sep, part):
        raise PreconditionError(f"{sep} does not separate the part from the rest")
    swap = {s: t, t: s}
    edges = []
    for lab, u, v in g.edges:
        if lab in part:
            u, v = swap.get(u, u), swap.get(v, v)
        edges.append((lab, u, v))
    return _rebuild(g, edges)


def circuits(g) -> frozenset:
    """Edge sets of all cycles, by depth-first search from each least vertex."""
    adj = [[] for _ in range(g.n)]
    for lab, u, v in g.edges:
        adj[u].append((v, lab))
        adj[v].append((u, lab))
    found = set()
    for start in range(g.n):
        stack = [(start, (), frozenset([start]))]
        while stack:
            v, path, seen = stack.pop()
            for w, lab in adj[v]:
                if w == start and len(path) >= 2 and lab != path[-1]:
                    found.add(frozenset(path + (lab,)))
                elif w > start and w not in seen:
                    stack.append((w, path + (lab,), seen | {w}))
    return frozenset(found)


def cycle_matroid_equal(g, h) -> bool:
    """Same labels and the same family of cycles."""
    gl = frozenset(lab for lab, _, _ in g.edges)
    hl = frozenset(lab for lab, _, _ in h.edges)
    if gl != hl:
        raise PreconditionError("graphs have different edge labels")
    return circuits(g) == circuits(h)


def two_sum_glue(g1, g2, virtual: int) -> Graph:
    """2-sum along ``virtual``: identify its ends (first with first), then drop it."""
    e1 = {lab: (u, v) for lab, u, v in g1.edges}
    e2 = {lab: (u, v) for lab, u, v in g2.edges}
    if virtual not in e1 or virtual not in e2:
        raise PreconditionError(f"virtual edge {virtual} is missing from a summand")
    if (set(e1) & set(e2)) - {virtual}:
        raise PreconditionError("summands share labels other than the virtual edge")
    a, b = e1[virtual]
    c, d = e2[virtual]
    new = {c: a, d: b}
    nxt = g1.n
    for v in range(g2.n):
        if v not in new:
            new[v] = nxt
            nxt += 1
    edges = [(lab, u, v) for lab, u, v in g1.edges if lab != virtual]
    edges += [(lab, new[u], new[v]) for lab, u, v in g2.edges if lab != virtual]
    g = Graph(nxt, tuple(sorted((lab, min(u, v), max(u, v)) for lab, u, v in edges)))
    g.validate()
    return g


# -------------------------------------------------------- Tutte decomposition

@dataclass
class DecompositionNode:
    """A piece of the decomposition: a cycle (S), a bond (P) or a 3-connected graph (R).

    ``edges`` are ``(label, u, v)`` on the block's vertex ids and include the
    virtual edges; ``anchor`` is the virtual edge to the parent (for the root:
    a real edge chosen as reference).
    """

    kind: str
    edges: tuple
    virtual_labels: frozenset
    anchor: int
    children: list = field(default_factory=list)

    def ends(self, label):
        for lab, u, v in self.edges:
            if lab == label:
                return u, v
        raise KeyError(label)

    def subtree_labels(self) -> frozenset:
        out = {lab for lab, _, _ in self.edges if lab not in self.virtual_labels}
        for c in self.children:
            out |= c.subtree_labels()
        return frozenset(out)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def _bridges(edges, s, t):
    adj = {}
    for lab, u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    comp = {}
    for start in adj:
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
    out = []
    for lab, u, v in edges:
        if {u, v} == {s, t}:
            out.append([(lab, u, v)])
            continue
        inner = u if u not in (s, t) else v
        groups.setdefault(comp[inner], []).append((lab, u, v))
    out.extend(groups.values())
    out.sort(key=lambda b: min(e[0] for e in b))
    return out


def _kind(edges) -> str | None:
    verts = {v for _, u, w in edges for v in (u, w)}
    if len(verts) == 2:
        return "P"
    deg = {}
    for _, u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if all(d == 2 for d in deg.values()):
        return "S"
    return None


def _split(edges):
    """A 2-separation ``(A, B, s, t)`` of a multigraph piece, or None."""
    verts = sorted({v for _, u, w in edges for v in (u, w)})
    for s, t in combinations(verts, 2):
        bridges = _bridges(edges, s, t)
        if len(bridges) < 2:
            continue
        # a non-trivial split exists iff the largest bridge leaves at least two edges
        big = max(bridges, key=lambda b: (len(b), -min(e[0] for e in b)))
        side_a = list(big)
        side_b = [e for b in bridges if b is not big for e in b]
        if len(side_a) >= 2 and len(side_b) >= 2:
            return side_a, side_b, s, t
    return None


def decompose(g) -> DecompositionNode:
    """Tutte decomposition of a 2-connected graph with at least three edges."""
    if g.m < 3 or not is_2_connected(g):
        raise PreconditionError("decompose needs a 2-connected graph with at least three edges")
    next_virtual = max(lab for lab, _, _ in g.edges) + 1
    done = []
    todo = [list(g.edges)]
    virtual = set()
    while todo:
        piece = todo.pop()
        kind = _kind(piece)
        cut = None if kind else _split(piece)
        if cut is None:
            done.append([kind or "R", piece])
            continue
        side_a, side_b, s, t = cut
        e = (next_virtual, s, t)
        virtual.add(next_virtual)
        next_virtual += 1
        todo += [side_a + [e], side_b + [e]]
    # merge neighbouring cycles and neighbouring bonds
    merged = True
    while merged:
        merged = False
        where = {}
        for i, (_, piece) in enumerate(done):
            for lab, _, _ in piece:
                if lab in virtual:
                    where.setdefault(lab, []).append(i)
        for lab, (i, j) in sorted(where.items()):
            if done[i][0] == done[j][0] and done[i][0] in "SP":
                piece = [e for e in done[i][1] + done[j][1] if e[0] != lab]
                done[i] = [done[i][0], piece]
                del done[j]
                virtual.discard(lab)
                merged = True
                break
    for d in done:
        if d[0] == "R":
            plain_edges = [(lab, u, v) for lab, u, v in d[1]]
            pairs = {frozenset((u, v)) for _, u, v in plain_edges}
            if len(pairs) != len(plain_edges):
                raise InvariantViolation("3-connected piece has parallel edges")
    root_label = min(lab for lab, _, _ in g.edges)
    where = {}
    for i, (_, piece) in enumerate(done):
        for lab, _, _ in piece:
            where.setdefault(lab, []).append(i)
    vset = frozenset(virtual)

    def build_node(i, anchor, parent):
        kind, piece = done[i]
        node = DecompositionNode(kind, tuple(sorted(piece)), frozenset(lab for lab, _, _ in piece if lab in vset), anchor)
        for lab, _, _ in sorted(piece):
            if lab in vset and lab != anchor:
                (j,) = [k for k in where[lab] if k != i]
                node.children.append(build_node(j, lab, i))
        return node

    return build_node(where[root_label][0], root_label, None)


# ---------------------------------------------------------- profile algebra

PROFILES = ("E", "P", "S", "T", "A")


def _shape(items, anchor):
    """Profile of the union of ``items`` relative to the anchor ends, or None.

    Items are ``(profile, u, v, at)``; ``at`` is the touched vertex of an S item.
    Returns ``(profile, touched anchor end or None)``.
    """
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    touched = set()
    floating = 0
    for prof, u, v, at in items:
        if prof == "P":
            parent[find(u)] = find(v)
            touched.update((u, v))
        elif prof == "S":
            touched.add(at)
        elif prof == "T":
            touched.update((u, v))
        elif prof == "A":
            floating += 1
    groups = {find(x) for x in touched}
    count = len(groups) + floating
    a, b = anchor
    if count == 0:
        return "E", None
    if count == 1:
        if floating:
            return "A", None
        if a in touched and b in touched:
            return "P", None
        if a in touched:
            return "S", a
        if b in touched:
            return "S", b
        return "A", None
    if count == 2 and not floating and a in touched and b in touched and find(a) != find(b):
        return "T", None
    return None


def _root_ok(profile: str, anchor_in_x: bool) -> bool:
    return profile in ("E", "P", "S", "T") if anchor_in_x else profile in ("E", "P", "S", "A")


@dataclass
class _Table:
    """Achievable profiles of a subtree: profile -> (flips, touched end for S, choice).

    ``flips`` is the number of Whitney flips the stored choice costs inside
    the subtree; among all choices giving a profile the cheapest is kept.
    """

    entries: dict


def _target_order(assign, seq):
    """Element order and wanted tokens for an arrangement of a cycle piece.

    ``assign`` lists ``(label, profile, touched)`` in current cycle order.
    Elements of one profile keep their relative order; elements dropped by
    the E/P capping sit next to the first token of their kind.
    """
    pools = {}
    for lab, prof, _ in assign:
        pools.setdefault(prof, []).append(lab)
    target, want = [], []
    first = {}
    for tok in seq:
        prof = "S" if tok in ("Sn", "Sf") else tok
        first.setdefault(prof, len(target))
        target.append(pools[prof].pop(0))
        want.append(tok)
    for prof in ("E", "P"):
        while pools.get(prof):
            i = first[prof] + 1
            target.insert(i, pools[prof].pop(0))
            want.insert(i, prof)
    return target, want


def _arrangement_flips(assign, seq, path) -> int:
    """Flips used by the greedy reversal procedure plus the S re-orientations."""
    target, want = _target_order(assign, seq)
    cur = [lab for lab, _, _ in assign]
    side = {lab: ("n" if touched == path[i] else "f") for i, (lab, prof, touched) in enumerate(assign)
            if prof == "S"}
    flips = 0
    for i in range(len(target)):
        j = cur.index(target[i])
        if j > i:
            seg = cur[i:j + 1]
            cur[i:j + 1] = seg[::-1]
            for lab in seg:
                if lab in side:
                    side[lab] = "f" if side[lab] == "n" else "n"
            flips += 1
    for lab, tok in zip(target, want):
        if tok in ("Sn", "Sf") and side[lab] != tok[1]:
            flips += 1
    return flips


class _Solver:
    def __init__(self, g: ConstraintGraph, root: DecompositionNode, cap: int = CHOICE_CAP):
        self.g = g
        self.root = root
        self.cap = cap
        self.tables = {}

    def element_options(self, node, lab):
        """Options ``(profile, touched, flips)`` for one non-anchor element."""
        if lab not in node.virtual_labels:
            return [("P" if lab in self.g.x else "E", None, 0)]
        table = self.solve(self.child_of(node, lab))
        return [(prof, table.entries[prof][1], table.entries[prof][0])
                for prof in PROFILES if prof in table.entries]

    def child_of(self, node, lab):
        for c in node.children:
            if c.anchor == lab:
                return c
        raise KeyError(lab)

    def solve(self, node) -> _Table:
        key = id(node)
        if key not in self.tables:
            self.tables[key] = self.solve_cycle(node) if node.kind == "S" else self.solve_fixed(node)
        return self.tables[key]

    @staticmethod
    def _offer(entries, prof, flips, end, choice):
        if prof not in entries or flips < entries[prof][0]:
            entries[prof] = (flips, end, choice)

    def solve_fixed(self, node) -> _Table:
        """R and P pieces: the skeleton is rigid; choose profiles and S sides."""
        anchor = node.ends(node.anchor)
        elems = [(lab, u, v) for lab, u, v in node.edges if lab != node.anchor]
        choice_lists = []
        size = 1
        for lab, u, v in elems:
            opts = []
            for prof, touched, flips in self.element_options(node, lab):
                if prof == "S":
                    other = v if touched == u else u
                    opts += [(prof, touched, flips), (prof, other, flips + 1)]
                else:
                    opts.append((prof, None, flips))
            choice_lists.append(opts)
            size *= len(opts)
        if size > self.cap:
            raise ResourceLimitError(f"{size} profile combinations in one piece exceed the cap")
        entries = {}
        for combo in product(*choice_lists):
            items = [(prof, u, v, at) for (lab, u, v), (prof, at, _) in zip(elems, combo)]
            res = _shape(items, anchor)
            if res is not None:
                flips = sum(c[2] for c in combo)
                choice = tuple((e[0], (prof, at)) for e, (prof, at, _) in zip(elems, combo))
                self._offer(entries, res[0], flips, res[1], choice)
        return _Table(entries)

    def cycle_order(self, node):
        """Non-anchor elements of a cycle piece in order from the anchor's first end."""
        a, b = node.ends(node.anchor)
        rest = [e for e in node.edges if e[0] != node.anchor]
        order, path = [], [a]
        cur = a
        while rest:
            i = next(i for i, e in enumerate(rest) if cur in e[1:])
            e = rest.pop(i)
            order.append(e[0])
            cur = e[2] if e[1] == cur else e[1]
            path.append(cur)
        if cur != b:
            raise InvariantViolation("cycle piece does not close at the anchor")
        return order, path

    def solve_cycle(self, node) -> _Table:
        order, path = self.cycle_order(node)
        anchor = (path[0], path[-1])
        # count vectors over (E, P, S, T, A) -> cheapest profile assignment
        states = {(0, 0, 0, 0, 0): (0, ())}
        for lab in order:
            opts = self.element_options(node, lab)
            nxt = {}
            for vec, (flips, assign) in states.items():
                for prof, touched, cost in opts:
                    i = PROFILES.index(prof)
                    v2 = vec[:i] + (vec[i] + 1,) + vec[i + 1:]
                    if v2 not in nxt or flips + cost < nxt[v2][0]:
                        nxt[v2] = (flips + cost, assign + ((lab, prof, touched),))
            states = nxt
        entries = {}
        for vec, (flips, assign) in states.items():
            for prof, res, seq in self._arrangements(vec, assign, path):
                end = None if res is None else anchor[res]
                total = flips + _arrangement_flips(assign, seq, path)
                self._offer(entries, prof, total, end, (assign, seq))
        return _Table(entries)

    def _arrangements(self, vec, assign, path):
        """Yield ``(profile, touched end index, token sequence)`` for arrangements.

        Tokens are E, P, Sn (X at the end nearer the anchor's first vertex),
        Sf, T and A.
        """
        counts = dict(zip(PROFILES, vec))
        # consecutive E's (or P's) act like a single one
        for _ in range(2):
            for k in ("E", "P"):
                others = sum(counts.values()) - counts[k]
                counts[k] = min(counts[k], others + 1)
        seen = 0
        for near in range(counts["S"] + 1):
            bag = {"E": counts["E"], "P": counts["P"], "Sn": near, "Sf": counts["S"] - near,
                   "T": counts["T"], "A": counts["A"]}
            for seq in _multiset_permutations(bag):
                seen += 1
                if seen > self.cap:
                    raise ResourceLimitError("too many cycle arrangements")
                yield from self._eval_seq(seq)

    @staticmethod
    def _eval_seq(seq):
        items = []
        for i, tok in enumerate(seq):
            if tok in ("E", "P", "T", "A"):
                items.append((tok, i, i + 1, None))
            else:
                items.append(("S", i, i + 1, i if tok == "Sn" else i + 1))
        res = _shape(items, (0, len(seq)))
        if res is not None:
            prof, end = res
            yield prof, (None if end is None else 0 if end == 0 else 1), tuple(seq)


def _multiset_permutations(bag):
    keys = [k for k in bag if bag[k] > 0]
    total = sum(bag.values())
    out = []

    def rec(prefix):
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for k in keys:
            if bag[k]:
                bag[k] -= 1
                prefix.append(k)
                yield from rec(prefix)
                prefix.pop()
                bag[k] += 1

    yield from rec(out)


# ------------------------------------------------------------ reconstruction

def _attachments(h, labels):
    labels = frozenset(labels)
    inside = {v for lab, u, w in h.edges if lab in labels for v in (u, w)}
    outside = {v for lab, u, w in h.edges if lab not in labels for v in (u, w)}
    return inside & outside


def _x_touches(h, x, labels):
    return {v for lab, u, w in h.edges if lab in labels and lab in x for v in (u, w)}


class _Builder:
    """Applies the solver's choices to the block through logged Whitney flips."""

    def __init__(self, solver: _Solver, block: ConstraintGraph):
        self.solver = solver
        self.h = block
        self.x = block.x
        self.flips = []

    def flip(self, sep, part):
        self.h = whitney_flip(self.h, tuple(sorted(sep)), part)
        self.flips.append((tuple(sorted(sep)), frozenset(part)))

    def element_labels(self, node, lab):
        if lab in node.virtual_labels:
            return self.solver.child_of(node, lab).subtree_labels()
        return frozenset([lab])

    def orient(self, node, lab, want):
        """Flip the subtree behind ``lab`` so that its X meets vertex ``want``."""
        labels = self.element_labels(node, lab)
        ends = _attachments(self.h, labels)
        if len(ends) != 2 or want not in ends:
            raise InvariantViolation("subtree does not attach at the expected pair")
        if want not in _x_touches(self.h, self.x, labels):
            self.flip(ends, labels)

    def realize(self, node, profile):
        choice = self.solver.solve(node).entries[profile][2]
        if node.kind == "S":
            self.realize_cycle(node, choice)
        else:
            for lab, (prof, at) in choice:
                if lab in node.virtual_labels:
                    self.realize(self.solver.child_of(node, lab), prof)
            for lab, (prof, at) in choice:
                if prof == "S" and lab in node.virtual_labels:
                    self.orient(node, lab, at)

    def current_cycle(self, node, elements):
        """Elements of a cycle piece in their current order, and the path vertices."""
        anchor_labels = frozenset(self.h.labels) - frozenset().union(
            *(self.element_labels(node, lab) for lab in elements))
        a, b = node.ends(node.anchor)
        att = {lab: _attachments(self.h, self.element_labels(node, lab)) if lab in node.virtual_labels
               else set(self.h.endpoints[lab]) for lab in elements}
        order, path = [], [a]
        cur = a
        rest = set(elements)
        while rest:
            (lab,) = [lab for lab in sorted(rest) if cur in att[lab]][:1]
            rest.discard(lab)
            order.append(lab)
            (cur,) = att[lab] - {cur}
            path.append(cur)
        if cur != b or not anchor_labels:
            raise InvariantViolation("cycle piece lost its shape while flipping")
        return order, path

    def realize_cycle(self, node, choice):
        assign, seq = choice
        for lab, prof, _ in assign:
            if lab in node.virtual_labels:
                self.realize(self.solver.child_of(node, lab), prof)
        elements = [lab for lab, _, _ in assign]
        target, want = _target_order(assign, seq)
        # reorder by segment reversals
        for i in range(len(target)):
            order, path = self.current_cycle(node, elements)
            j = order.index(target[i])
            if j > i:
                part = frozenset().union(*(self.element_labels(node, lab) for lab in order[i:j + 1]))
                self.flip((path[i], path[j + 1]), part)
        order, path = self.current_cycle(node, elements)
        if order != target:
            raise InvariantViolation("cycle reordering failed")
        for i, (lab, tok) in enumerate(zip(order, want)):
            if tok == "Sn":
                self.orient(node, lab, path[i])
            elif tok == "Sf":
                self.orient(node, lab, path[i + 1])


# ------------------------------------------------------------------ realize

@dataclass(frozen=True)
class Realization:
    """A graph with the input's labels and cycle matroid in which X is connected."""

    result: ConstraintGraph
    flips_applied: tuple = ()  # ((s, t), part labels) in the block's vertex ids
    reglued: bool = False  # blocks were rejoined at a common vertex

    def to_json(self) -> dict:
        return {
            "schema": REALIZATION_SCHEMA,
            "result": "realization",
            "n": self.result.n,
            "edges": [[lab, u, v] for lab, u, v in self.result.edges],
            "X": sorted(self.result.x),
            "flips": [{"separator": list(sep), "part": sorted(part)} for sep, part in self.flips_applied],
            "reglued": self.reglued,
        }


@dataclass(frozen=True)
class Forbidden:
    """No realization exists.

    Normally ``name`` is one of the six obstructions and ``certificate``
    replays to it.  If the input has none of the six as a constraint minor,
    ``name`` is None and the certificate replays to ``minor``, a constraint
    minor that is not realizable although all its one-step minors are.
    """

    name: str | None
    certificate: MinorCertificate
    minor: ConstraintGraph | None = None

    @property
    def listed(self) -> bool:
        return self.name is not None

    def to_json(self) -> dict:
        out = {"schema": REALIZATION_SCHEMA, "result": "forbidden", "obstruction": self.name,
               "certificate": self.certificate.to_json()}
        if self.minor is not None:
            out["minimal_minor"] = {"n": self.minor.n, "edges": [[lab, u, v] for lab, u, v in self.minor.edges],
                                    "X": sorted(self.minor.x)}
        return out


def _block_graph(g: ConstraintGraph, labels):
    """The block as its own constraint graph plus the map back to ``g``'s vertices."""
    ends = g.endpoints
    verts = sorted({v for lab in labels for v in ends[lab]})
    new = {v: i for i, v in enumerate(verts)}
    edges = tuple(sorted((lab, new[ends[lab][0]], new[ends[lab][1]]) for lab in labels))
    x = frozenset(lab for lab in labels if lab in g.x)
    return ConstraintGraph(Graph(len(verts), edges), x), verts


def _blocks(g: ConstraintGraph) -> list:
    """Edge sets of the blocks of ``g`` (any number of components)."""
    ends = g.endpoints
    seen = set()
    out = []
    for lab in sorted(ends):
        if lab in seen:
            continue
        comp = {lab}
        verts = set(ends[lab])
        grew = True
        while grew:
            grew = False
            for other, u, v in g.edges:
                if other not in comp and (u in verts or v in verts):
                    comp.add(other)
                    verts.update((u, v))
                    grew = True
        seen |= comp
        out.extend(block_tree(g, comp).blocks)
    return sorted(out, key=min)


def solve_block(block: ConstraintGraph, cap: int = CHOICE_CAP):
    """``(solver, root, profile)`` for a 2-connected block, profile None if unrealizable."""
    root = decompose(block)
    solver = _Solver(block, root, cap)
    table = solver.solve(root)
    anchor_in_x = root.anchor in block.x
    ok = [(table.entries[p][0], i, p) for i, p in enumerate(PROFILES)
          if p in table.entries and _root_ok(p, anchor_in_x)]
    return solver, root, (min(ok)[2] if ok else None)


def block_realizable(block: ConstraintGraph, cap: int = CHOICE_CAP) -> bool:
    if block.m < 3 or is_constraint_connected(block):
        return True
    return solve_block(block, cap)[2] is not None


def is_realizable(g, cap: int = CHOICE_CAP) -> bool:
    """Does some graph with the same cycle matroid have X connected?"""
    g = strip_isolated(as_constraint(g))
    for labels in _blocks(g):
        block, _ = _block_graph(g, labels)
        if not block_realizable(block, cap):
            return False
    return True


def _realize_block(block: ConstraintGraph, cap: int):
    """Realized block (same vertex ids) and its flips, or None if impossible."""
    if block.m < 3 or is_constraint_connected(block):
        return block, []
    solver, root, prof = solve_block(block, cap)
    if prof is None:
        return None
    builder = _Builder(solver, block)
    builder.realize(root, prof)
    if len(builder.flips) != solver.solve(root).entries[prof][0]:
        raise InvariantViolation("flip count differs from the planned count")
    return builder.h, builder.flips


def _check_realization(g: ConstraintGraph, rz: Realization) -> Realization:
    if not cycle_matroid_equal(g, rz.result) or not is_constraint_connected(rz.result):
        raise InvariantViolation("realization failed its cycle-matroid or connectivity check")
    return rz


def realize(g, cap: int = CHOICE_CAP):
    """A :class:`Realization` of ``(M(G), X)``, or :class:`Forbidden` with a certificate."""
    g = as_constraint(g)
    g.validate()
    if is_constraint_connected(g):
        return _check_realization(g, Realization(g))
    work = strip_isolated(g)
    blocks = _blocks(work)
    realized = []
    flips = []
    for labels in blocks:
        block, verts = _block_graph(work, labels)
        out = _realize_block(block, cap)
        if out is None:
            return _forbidden(work, g, labels, block, cap)
        h, fl = out
        realized.append((h, verts))
        flips += [((verts[s], verts[t]), part) for (s, t), part in fl]
    # put the realized blocks back where they were
    edges = [(lab, verts[u], verts[v]) for h, verts in realized for lab, u, v in h.edges]
    back = ConstraintGraph(Graph(work.n, tuple(sorted(edges))), work.x)
    if is_constraint_connected(back):
        result = _restore_isolated(g, work, back)
        return _check_realization(g, Realization(result, tuple(flips)))
    # otherwise join every block at one hub vertex, X blocks at an X vertex
    edges = []
    hub = 0
    nxt = 1
    for h, _ in realized:
        xv = sorted(v for lab, u, w in h.edges if lab in h.x for v in (u, w))
        pick = xv[0] if xv else 0
        new = {}
        for v in range(h.n):
            if v == pick:
                new[v] = hub
            else:
                new[v] = nxt
                nxt += 1
        edges += [(lab, new[u], new[v]) for lab, u, v in h.edges]
    glued = ConstraintGraph(Graph(nxt, tuple(sorted((lab, min(u, v), max(u, v)) for lab, u, v in edges))), g.x)
    return _check_realization(g, Realization(glued, tuple(flips), reglued=True))


def _restore_isolated(g, work, back):
    if work.n == g.n:
        return back
    used = sorted({v for _, a, b in g.edges for v in (a, b)})
    edges = tuple((lab, used[u], used[v]) for lab, u, v in back.edges)
    return ConstraintGraph(Graph(g.n, edges), g.x)


# ------------------------------------------------------------- certificates

def _lift_ops(work: ConstraintGraph, labels) -> list:
    """Contract every edge outside a block; what remains is the block itself."""
    ops = []
    h = work
    for lab in sorted(work.labels - frozenset(labels)):
        if lab in h.endpoints:
            h = contract(h, lab)
            ops.append(contract_op(lab))
    return ops


def shrink_unrealizable(g: ConstraintGraph, cap: int = CHOICE_CAP):
    """Descend through one-step constraint minors while realizability keeps failing.

    Returns the ops and the final graph, all of whose one-step minors are
    realizable.
    """
    g = strip_isolated(g)
    if is_realizable(g, cap):
        raise PreconditionError("graph is realizable")
    ops = []
    while True:
        for lab in g.non_x:
            child = strip_isolated(delete_non_x(g, lab))
            if not is_realizable(child, cap):
                g, op = child, delete_op(lab)
                break
        else:
            for lab in sorted(g.labels):
                child = strip_isolated(contract(g, lab))
                if not is_realizable(child, cap):
                    g, op = child, contract_op(lab)
                    break
            else:
                return ops, g
        ops.append(op)


def _named(h):
    cat = catalog()
    return next((nm for nm in OBSTRUCTION_NAMES if is_isomorphic(h, getattr(cat, nm)) is not None), None)


def _forbidden(work, g, labels, block, cap) -> Forbidden:
    from .obstructions import find_forbidden_minor

    lift = _lift_ops(work, labels)
    minor = None
    if is_3_connected(block):
        outcome = certify(block)
        if outcome.connected:
            raise InvariantViolation("3-connected block with disconnected X certified as connected")
        tail, name = list(outcome.certificate.ops), outcome.name
        stages = list(outcome.certificate.stages)
    else:
        tail, final = shrink_unrealizable(block, cap)
        name = _named(final)
        stages = ["shrink"] * len(tail)
        if name is None:
            # the greedy path missed; search all constraint minors of the block
            found = find_forbidden_minor(block)
            if found is not None:
                name, cert = found
                tail, stages = list(cert.ops), ["search"] * len(cert.ops)
            else:
                minor = final
    ops = tuple(lift + tail)
    stages = ["lift"] * len(lift) + stages
    target = getattr(catalog(), name) if name else minor
    result = replay(g, ops)
    witness = is_isomorphic(result, target)
    cert = MinorCertificate(ops, name or "minimal_unrealizable", tuple(witness or ()), tuple(stages))
    if witness is None or not cert.check(g, target):
        raise InvariantViolation("realizer certificate failed its replay check")
    if minor is not None and is_realizable(result, cap):
        raise InvariantViolation("minimal unrealizable minor is realizable")
    return Forbidden(name, cert, minor)


# ------------------------------------------------------------------ oracles

def _star_key(g) -> frozenset:
    stars = {}
    for lab, u, v in g.edges:
        stars.setdefault(u, set()).add(lab)
        stars.setdefault(v, set()).add(lab)
    return frozenset(frozenset(s) for s in stars.values())


def flip_closure(g, limit: int = 100_000) -> list:
    """Every graph reachable from a 2-connected ``g`` by Whitney flips, up to vertex names."""
    from .connectivity import two_separations

    g = as_constraint(g)
    seen = {_star_key(g): g}
    queue = [g]
    while queue:
        h = queue.pop()
        for sep in two_separations(h):
            for part in sep.parts:
                f = whitney_flip(h, sep.separator, part)
                key = _star_key(f)
                if key not in seen:
                    seen[key] = f
                    queue.append(f)
                    if len(seen) > limit:
                        raise ResourceLimitError("flip closure too large")
    return list(seen.values())


def bonds_of(g) -> list:
    """Minimal edge cuts of a connected graph, via both-sides-connected bipartitions."""
    from .connectivity import connected_without

    n = g.n
    out = set()
    for mask in range(1, 2 ** (n - 1)):
        side = {v for v in range(n) if mask >> v & 1}
        other = set(range(n)) - side
        if not connected_without(g, other) or not connected_without(g, side):
            continue
        out.add(frozenset(lab for lab, u, v in g.edges if (u in side) != (v in side)))
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def matroid_realizations(g) -> list:
    """All 2-connected graphs with the cycle matroid of ``g``, found independently of
    flips: choose ``n`` bonds covering every edge exactly twice as vertex stars."""
    g = as_constraint(g)
    if not is_2_connected(g):
        raise PreconditionError("matroid_realizations needs a 2-connected graph")
    cuts = bonds_of(g)
    labels = sorted(g.labels)
    target = circuits(g)
    found = {}
    n = g.n

    def rec(chosen, cover):
        if len(chosen) == n:
            if all(cover[lab] == 2 for lab in labels):
                yield list(chosen)
            return
        # the least edge not yet covered twice must be covered by the next star
        need = [lab for lab in labels if cover[lab] < 2]
        if not need:
            return
        lab0 = need[0]
        for c in cuts:
            if lab0 not in c or c in chosen or any(cover[lab] >= 2 for lab in c):
                continue
            for lab in c:
                cover[lab] += 1
            chosen.append(c)
            yield from rec(chosen, cover)
            chosen.pop()
            for lab in c:
                cover[lab] -= 1

    cover = {lab: 0 for lab in labels}
    for stars in rec([], cover):
        inc = {lab: [] for lab in labels}
        for v, star in enumerate(stars):
            for lab in star:
                inc[lab].append(v)
        edges = tuple(sorted((lab, min(a), max(a)) for lab, a in ((lab, inc[lab]) for lab in labels)))
        pairs = {(u, v) for _, u, v in edges}
        if len(pairs) != len(edges):
            continue
        h = ConstraintGraph(Graph(n, edges), g.x)
        if circuits(h) == target:
            found.setdefault(_star_key(h), h)
    return list(found.values())


def realizable_by_closure(g) -> bool:
    """Brute-force answer: some graph in the flip closure has X connected."""
    g = as_constraint(g)
    return any(is_constraint_connected(h) for h in flip_closure(g))

"""Simple graphs with persistent edge labels, constraint sets and minor operations.

Vertices are the integers ``0..n-1``.  Every edge carries a label (an integer
element id) that survives contractions: when a contraction creates a parallel
class, one member of the class keeps its label and the others disappear.
Within a constraint graph ``(G, X)`` the survivor of a class that meets ``X``
is always an ``X`` edge, so contracting never disconnects ``X``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import GraphInputError, PreconditionError

Edge = tuple  # (label, u, v) with u < v


@dataclass(frozen=True)
class Graph:
    """A simple graph; ``edges`` holds ``(label, u, v)`` triples sorted by label, ``u < v``."""

    n: int
    edges: tuple = ()

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]], labels: Iterable[int] | None = None) -> "Graph":
        pairs = [tuple(p) for p in pairs]
        labels = list(range(len(pairs))) if labels is None else list(labels)
        if len(labels) != len(pairs):
            raise GraphInputError("label count does not match edge count")
        edges = []
        for lab, p in zip(labels, pairs):
            if len(p) != 2:
                raise GraphInputError(f"edge {p!r} is not a vertex pair", item=p)
            u, v = int(p[0]), int(p[1])
            edges.append((int(lab), min(u, v), max(u, v)))
        g = cls(n, tuple(sorted(edges)))
        g.validate()
        return g

    def validate(self) -> None:
        if self.n < 0:
            raise GraphInputError("negative vertex count")
        seen_pairs = {}
        seen_labels = set()
        for lab, u, v in self.edges:
            if u == v:
                raise GraphInputError(f"loop at vertex {u} (edge {lab})", item=(u, v))
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInputError(f"edge {lab} = {u}{v} has an endpoint outside 0..{self.n - 1}", item=(u, v))
            if u > v:
                raise GraphInputError(f"edge {lab} is not normalized", item=(u, v))
            if (u, v) in seen_pairs:
                raise GraphInputError(
                    f"duplicate edge {u}{v} (labels {seen_pairs[(u, v)]} and {lab})", item=(u, v))
            if lab in seen_labels:
                raise GraphInputError(f"duplicate label {lab}", item=lab)
            seen_pairs[(u, v)] = lab
            seen_labels.add(lab)
        if list(self.edges) != sorted(self.edges):
            raise GraphInputError("edges are not sorted by label")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def endpoints(self) -> dict:
        return {lab: (u, v) for lab, u, v in self.edges}

    @cached_property
    def labels(self) -> frozenset:
        return frozenset(lab for lab, _, _ in self.edges)

    @cached_property
    def adj(self) -> list:
        adj = [set() for _ in range(self.n)]
        for _, u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @cached_property
    def incident(self) -> list:
        inc = [[] for _ in range(self.n)]
        for lab, u, v in self.edges:
            inc[u].append(lab)
            inc[v].append(lab)
        return inc

    @cached_property
    def pair_label(self) -> dict:
        return {(u, v): lab for lab, u, v in self.edges}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_between(self, u: int, v: int):
        return self.pair_label.get((min(u, v), max(u, v)))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.pair_label

    def subgraph_edges(self, labels: Iterable[int]) -> "Graph":
        """Edge-induced subgraph on the same vertex ids (isolated vertices kept)."""
        keep = set(labels)
        return Graph(self.n, tuple(e for e in self.edges if e[0] in keep))


@dataclass(frozen=True)
class ConstraintGraph:
    """A pair ``(G, X)``; ``x`` is a set of edge labels of ``graph``."""

    graph: Graph
    x: frozenset = field(default_factory=frozenset)

    def validate(self) -> None:
        self.graph.validate()
        missing = set(self.x) - self.graph.labels
        if missing:
            raise GraphInputError(f"X contains unknown labels {sorted(missing)}", item=sorted(missing))

    # delegation so connectivity helpers accept either kind of graph
    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def edges(self) -> tuple:
        return self.graph.edges

    @property
    def endpoints(self) -> dict:
        return self.graph.endpoints

    @property
    def labels(self) -> frozenset:
        return self.graph.labels

    @property
    def adj(self) -> list:
        return self.graph.adj

    @property
    def incident(self) -> list:
        return self.graph.incident

    def edge_between(self, u, v):
        return self.graph.edge_between(u, v)

    def has_edge(self, u, v) -> bool:
        return self.graph.has_edge(u, v)

    def degree(self, v) -> int:
        return self.graph.degree(v)

    @cached_property
    def non_x(self) -> tuple:
        return tuple(lab for lab, _, _ in self.graph.edges if lab not in self.x)

    def x_vertices(self) -> frozenset:
        """Vertex set of ``G[X]``."""
        ends = self.graph.endpoints
        return frozenset(v for lab in self.x for v in ends[lab])

    def with_x(self, x: Iterable[int]) -> "ConstraintGraph":
        return ConstraintGraph(self.graph, frozenset(x))

    def __repr__(self) -> str:
        pairs = " ".join(f"{u}{v}{'*' if lab in self.x else ''}" for lab, u, v in self.graph.edges)
        return f"ConstraintGraph(n={self.n}: {pairs})"


def build(n: int, edge_list: Sequence[Sequence[int]], x_indices: Iterable[int] = ()) -> ConstraintGraph:
    """Construct a constraint graph; labels are assigned 0..m-1 in input order."""
    g = Graph.from_pairs(n, edge_list)
    x = set()
    for i in x_indices:
        if not (isinstance(i, int) and 0 <= i < len(edge_list)):
            raise GraphInputError(f"X index {i!r} out of range 0..{len(edge_list) - 1}", item=i)
        x.add(i)
    return ConstraintGraph(g, frozenset(x))


def as_constraint(g) -> ConstraintGraph:
    return g if isinstance(g, ConstraintGraph) else ConstraintGraph(g, frozenset())


def plain(g) -> Graph:
    return g.graph if isinstance(g, ConstraintGraph) else g


def _components(n: int, pairs: Iterable[tuple]) -> list:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return [find(v) for v in range(n)]


def x_components(g: ConstraintGraph) -> list:
    """Partition of X into the edge sets of the components of ``G[X]``."""
    ends = g.endpoints
    root = _components(g.n, (ends[lab] for lab in g.x))
    parts = {}
    for lab in g.x:
        parts.setdefault(root[ends[lab][0]], set()).add(lab)
    return sorted((frozenset(p) for p in parts.values()), key=min)


def is_constraint_connected(g: ConstraintGraph) -> bool:
    return len(x_components(g)) <= 1


def strip_isolated(g: ConstraintGraph) -> ConstraintGraph:
    """Drop isolated vertices and renumber the rest in increasing order."""
    used = sorted({v for _, a, b in g.edges for v in (a, b)})
    if len(used) == g.n:
        return g
    new = {v: i for i, v in enumerate(used)}
    edges = tuple((lab, new[a], new[b]) for lab, a, b in g.edges)
    return ConstraintGraph(Graph(len(used), edges), g.x)


def contract_with_map(g: ConstraintGraph, label: int):
    """Contract ``label``; return the simplified result and the old-to-new vertex map.

    Parallel classes created by the contraction keep a single edge: the least
    X label in the class if the class meets X, else the least label.  Vertices
    left without edges are dropped, so the map sends them to ``None``.
    """
    ends = g.endpoints
    if label not in ends:
        raise GraphInputError(f"unknown edge label {label}", item=label)
    keep, gone = ends[label]
    x = g.x
    best = {}
    for lab, a, b in g.edges:
        if lab == label:
            continue
        if a == gone:
            a = keep
        if b == gone:
            b = keep
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        cur = best.get(key)
        if cur is None:
            best[key] = lab
        else:
            cin, lin = cur in x, lab in x
            if lin and not cin or (lin == cin and lab < cur):
                best[key] = lab
    used = sorted({v for key in best for v in key})
    new = {v: i for i, v in enumerate(used)}
    edges = tuple(sorted((lab, new[a], new[b]) for (a, b), lab in best.items()))
    survivors = set(best.values())
    vmap = {}
    for v in range(g.n):
        w = keep if v == gone else v
        vmap[v] = new.get(w)
    return ConstraintGraph(Graph(len(used), edges), x & survivors), vmap


def contract(g: ConstraintGraph, label: int) -> ConstraintGraph:
    return contract_with_map(g, label)[0]


def delete_with_map(g: ConstraintGraph, label: int, *, allow_x: bool = False):
    if label not in g.endpoints:
        raise GraphInputError(f"unknown edge label {label}", item=label)
    if label in g.x and not allow_x:
        raise PreconditionError(f"edge {label} is in X; deleting it is not a constraint-minor step")
    rest = [e for e in g.edges if e[0] != label]
    used = sorted({v for _, a, b in rest for v in (a, b)})
    new = {v: i for i, v in enumerate(used)}
    edges = tuple((lab, new[a], new[b]) for lab, a, b in rest)
    vmap = {v: new.get(v) for v in range(g.n)}
    return ConstraintGraph(Graph(len(used), edges), g.x - {label}), vmap


def delete_non_x(g: ConstraintGraph, label: int) -> ConstraintGraph:
    """Delete an edge outside X and drop any vertex it leaves isolated."""
    return delete_with_map(g, label)[0]


class OpKind(str, enum.Enum):
    CONTRACT = "contract"
    DELETE = "delete"


@dataclass(frozen=True)
class MinorOp:
    kind: OpKind
    label: int

    def to_json(self) -> dict:
        return {"op": self.kind.value, "label": self.label}

    @classmethod
    def from_json(cls, data: Mapping) -> "MinorOp":
        return cls(OpKind(data["op"]), int(data["label"]))

    def __repr__(self) -> str:
        sym = "/" if self.kind is OpKind.CONTRACT else "-"
        return f"{sym}{self.label}"


def contract_op(label: int) -> MinorOp:
    return MinorOp(OpKind.CONTRACT, label)


def delete_op(label: int) -> MinorOp:
    return MinorOp(OpKind.DELETE, label)


def apply_op(g: ConstraintGraph, op: MinorOp) -> ConstraintGraph:
    if op.kind is OpKind.CONTRACT:
        return contract(g, op.label)
    return delete_non_x(g, op.label)


def replay(source: ConstraintGraph, ops: Iterable[MinorOp]) -> ConstraintGraph:
    g = strip_isolated(source)
    for op in ops:
        g = apply_op(g, op)
    return g


@dataclass(frozen=True)
class MinorCertificate:
    """Replayable evidence that ``target`` is a constraint minor of some source graph.

    ``witness`` maps each vertex of the replayed result to a vertex of the
    named target graph.  ``stages`` optionally tags each op with the pipeline
    stage that produced it.
    """

    ops: tuple
    target: str
    witness: tuple  # witness[v] = target vertex of result vertex v
    stages: tuple = ()

    def replay(self, source: ConstraintGraph) -> ConstraintGraph:
        return replay(source, self.ops)

    def check(self, source: ConstraintGraph, target_graph: ConstraintGraph) -> bool:
        try:
            result = self.replay(source)
        except (GraphInputError, PreconditionError):
            return False
        return is_witness(result, target_graph, self.witness)

    def to_json(self) -> dict:
        ops = []
        for i, op in enumerate(self.ops):
            entry = op.to_json()
            if self.stages:
                entry["stage"] = self.stages[i]
            ops.append(entry)
        return {"target": self.target, "ops": ops, "witness": list(self.witness)}

    @classmethod
    def from_json(cls, data: Mapping) -> "MinorCertificate":
        ops = tuple(MinorOp.from_json(o) for o in data["ops"])
        stages = tuple(o["stage"] for o in data["ops"] if "stage" in o)
        if len(stages) != len(ops):
            stages = ()
        return cls(ops, data["target"], tuple(data["witness"]), stages)


def is_witness(g: ConstraintGraph, h: ConstraintGraph, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` is a bijection V(g)->V(h) carrying edges and X-membership exactly."""
    if g.n != h.n or g.m != h.m or len(g.x) != len(h.x) or len(mapping) != g.n:
        return False
    if sorted(mapping) != list(range(h.n)):
        return False
    hpairs = {(u, v): lab in h.x for lab, u, v in h.edges}
    for lab, u, v in g.edges:
        a, b = mapping[u], mapping[v]
        key = (a, b) if a < b else (b, a)
        if key not in hpairs or hpairs[key] != (lab in g.x):
            return False
    return True

"""Reducing a graph that is 3-connected along a bond to the special K4 or prism,
and the resulting certificate pipeline for 3-connected constraint graphs.

All reductions contract edges outside the bond ``d`` only.  Contractions go
through :func:`graph.contract_with_map`, so when the context carries a
constraint set the X-preferring simplification rule applies and the
recorded op lists replay exactly on the constraint graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .canon import is_isomorphic
from .catalog import catalog
from .connectivity import (
    BondContext,
    block_tree,
    contractible_edges,
    induced_by_edges,
    is_2_connected,
    is_3_connected,
    is_3connected_along,
    is_k4,
    is_triangle,
    leaf_blocks,
    reduction_children,
)
from .errors import InvariantViolation, PreconditionError
from .graph import (
    ConstraintGraph,
    MinorCertificate,
    as_constraint,
    contract,
    contract_op,
    contract_with_map,
    is_witness,
    replay,
    x_components,
)

SPECIAL_K4 = "special_k4"
SPECIAL_PRISM = "special_prism"


@dataclass(frozen=True)
class Step:
    context: BondContext
    ops: tuple


@dataclass(frozen=True)
class SpecialMinor:
    kind: str  # SPECIAL_K4 or SPECIAL_PRISM
    ops: tuple
    final: BondContext


# ------------------------------------------------------------- helpers

def _contract(b: BondContext, label: int, track=()):
    g, vmap = contract_with_map(b.graph, label)
    left = frozenset(vmap[v] for v in b.left if vmap[v] is not None)
    right = frozenset(vmap[v] for v in b.right if vmap[v] is not None)
    return BondContext(g, left, right), [vmap[v] for v in track]


def _collapse(b: BondContext, vertices, track=()):
    """Contract edges inside ``vertices`` until they form a single vertex."""
    group = set(vertices)
    track = list(track)
    ops = []
    while True:
        inside = [lab for lab, u, v in b.graph.edges if u in group and v in group]
        if not inside:
            return b, ops, track
        lab = min(inside)
        g, vmap = contract_with_map(b.graph, lab)
        b = BondContext(g, frozenset(vmap[v] for v in b.left if vmap[v] is not None),
                        frozenset(vmap[v] for v in b.right if vmap[v] is not None))
        group = {vmap[v] for v in group}
        track = [None if t is None else vmap[t] for t in track]
        ops.append(contract_op(lab))


def _side_vertices(b: BondContext, labels) -> set:
    ends = b.graph.endpoints
    return {v for lab in labels for v in ends[lab]}


def side_shape(b: BondContext, side: str) -> str:
    labels = b.L if side == "L" else b.R
    if not labels:
        return "empty"
    q = induced_by_edges(b.graph, labels)
    if len(labels) == 1:
        return "edge"
    if is_triangle(q):
        return "triangle"
    if is_2_connected(q):
        return "2-connected"
    return "separable"


def _valid(b: BondContext) -> bool:
    return bool(b.L) and bool(b.R) and is_3connected_along(b)


def _mirror(fn, b: BondContext, side: str):
    if side == "L":
        return fn(b)
    step = fn(b.swapped())
    ctx = step.context.swapped() if isinstance(step, Step) else step
    return Step(ctx, step.ops)


# ---------------------------------------------------------- reductions

def reduce_leaf_block(b: BondContext, side: str = "L") -> Step:
    """Shrink a separable side with at least two edges (the leaf-block argument)."""
    return _mirror(_reduce_leaf_block_left, b, side)


def _reduce_leaf_block_left(b: BondContext) -> Step:
    if not _valid(b):
        raise PreconditionError("context is not 3-connected along its bond with both sides nonempty")
    if side_shape(b, "L") != "separable":
        raise PreconditionError("Q[L] must be separable with at least two edges")
    m0 = b.graph.m
    tree = block_tree(b.graph, b.L)
    leaf, v = leaf_blocks(tree)[0]
    inner = _side_vertices(b, leaf) - {v}
    # contract all of Q[L] outside the leaf block onto v
    rest = set(b.left) - inner
    b, ops, track = _collapse(b, rest, [v, *sorted(inner)])
    v, inner = track[0], set(track[1:])
    # then contract right leaf blocks that see nothing of the leaf block
    changed = True
    while changed:
        changed = False
        if len(b.R) < 2:
            break
        rtree = block_tree(b.graph, b.R)
        for blk, cut in leaf_blocks(rtree):
            if cut is None:
                continue
            others = _side_vertices(b, blk) - {cut}
            if any(w in inner for u in others for w in b.graph.adj[u]):
                continue
            b, more, track = _collapse(b, others | {cut}, [v, *sorted(inner)])
            v, inner = track[0], set(track[1:])
            ops += more
            changed = True
            break
    if not _valid(b) or b.graph.m >= m0:
        raise InvariantViolation("leaf-block reduction did not give a smaller valid context")
    return Step(b, tuple(ops))


def reduce_2connected_side(b: BondContext, side: str = "L") -> Step:
    """Shrink a 2-connected side that is not a triangle."""
    return _mirror(_reduce_2connected_left, b, side)


def _reduce_2connected_left(b: BondContext) -> Step:
    if not _valid(b):
        raise PreconditionError("context is not 3-connected along its bond with both sides nonempty")
    if side_shape(b, "L") != "2-connected":
        raise PreconditionError("Q[L] must be 2-connected and not a triangle")
    if side_shape(b, "R") not in ("edge", "triangle", "2-connected"):
        raise PreconditionError("Q[R] must be 2-connected or a single edge")
    q = induced_by_edges(b.graph, b.L)
    candidates = sorted(contractible_edges(q))
    for lab in candidates:
        nb, _ = _contract(b, lab)
        if _valid(nb):
            return Step(nb, (contract_op(lab),))
    # Q[L] - v - w may see only v and w: contract it away instead
    ends = b.graph.endpoints
    for lab in candidates:
        v, w = ends[lab]
        others = set(b.left) - {v, w}
        for anchor in (v, w):
            if not any(u in others for u in b.graph.adj[anchor]):
                continue
            nb, ops, _ = _collapse(b, others | {anchor})
            if _valid(nb):
                return Step(nb, tuple(ops))
    raise InvariantViolation(f"no reducing contraction on a 2-connected side in {b.graph}")


def is_special_k4(b: BondContext) -> bool:
    ref = catalog().special_k4
    return _same_bond_pair(b, ref)


def is_special_prism(b: BondContext) -> bool:
    return _same_bond_pair(b, catalog().special_prism)


def _same_bond_pair(b: BondContext, ref: BondContext) -> bool:
    if b.graph.n != ref.graph.n or b.graph.m != ref.graph.m:
        return False
    mine = ConstraintGraph(b.graph.graph, b.d)
    theirs = ConstraintGraph(ref.graph.graph, ref.d)
    return is_isomorphic(mine, theirs) is not None


def finalize(b: BondContext) -> SpecialMinor:
    """Finish when each side is a single edge or a triangle."""
    shapes = (side_shape(b, "L"), side_shape(b, "R"))
    if any(s not in ("edge", "triangle") for s in shapes) or not _valid(b):
        raise PreconditionError(f"finalize needs edge/triangle sides, got {shapes}")
    if shapes == ("edge", "edge"):
        if not is_special_k4(b):
            raise InvariantViolation("two single-edge sides must form the special K4")
        return SpecialMinor(SPECIAL_K4, (), b)
    if shapes == ("triangle", "triangle"):
        if len(b.d) == 3:
            if not is_special_prism(b):
                raise InvariantViolation("three cross edges between triangles must be a matching")
            return SpecialMinor(SPECIAL_PRISM, (), b)
        return _two_triangles_to_k4(b)
    if shapes == ("triangle", "edge"):
        res = _edge_triangle_to_k4(b.swapped())
        return SpecialMinor(res.kind, res.ops, res.final.swapped())
    return _edge_triangle_to_k4(b)


def _cross_neighbours(b: BondContext, v: int) -> set:
    other = b.right if v in b.left else b.left
    return {w for w in b.graph.adj[v] if w in other}


def _two_triangles_to_k4(b: BondContext) -> SpecialMinor:
    ell = min(v for v in b.left if len(_cross_neighbours(b, v)) >= 2)
    r = min(v for v in b.right if len(_cross_neighbours(b, v)) >= 2)
    ends = b.graph.endpoints
    cross = sorted(lab for lab in b.d if ell not in ends[lab] and r not in ends[lab])
    if not cross:
        raise InvariantViolation("no cross edge avoiding l and r")
    lp, rp = ends[cross[0]] if ends[cross[0]][0] in b.left else ends[cross[0]][::-1]
    skip_l = b.graph.edge_between(ell, lp)
    skip_r = b.graph.edge_between(r, rp)
    for a in sorted(b.L - {skip_l}):
        b1, (r1, ell1) = _contract(b, a, (r, ell))
        if not all(w in b1.graph.adj[r1] for w in b1.left):
            continue
        for c in sorted(b1.R - {skip_r}):
            b2, _ = _contract(b1, c)
            if is_special_k4(b2) and _valid(b2):
                return SpecialMinor(SPECIAL_K4, (contract_op(a), contract_op(c)), b2)
    raise InvariantViolation(f"two-triangle case did not reach the special K4 in {b.graph}")


def _edge_triangle_to_k4(b: BondContext) -> SpecialMinor:
    (lab,) = b.L
    v, w = b.graph.endpoints[lab]
    common = sorted(_cross_neighbours(b, v) & _cross_neighbours(b, w))
    if not common:
        raise InvariantViolation("no right vertex adjacent to both ends of the left edge")
    x = common[0]
    ends = b.graph.endpoints
    (far,) = [e for e in b.R if x not in ends[e]]
    nb, _ = _contract(b, far)
    if not (is_special_k4(nb) and _valid(nb)):
        raise InvariantViolation("edge-triangle case did not reach the special K4")
    return SpecialMinor(SPECIAL_K4, (contract_op(far),), nb)


def reduce_to_special(b: BondContext) -> SpecialMinor:
    """Contract edges outside the bond until the special K4 or the special prism remains."""
    if not _valid(b):
        raise PreconditionError("context is not 3-connected along its bond with both sides nonempty")
    d0 = b.d
    ops = []
    while True:
        shapes = {s: side_shape(b, s) for s in ("L", "R")}
        if all(v in ("edge", "triangle") for v in shapes.values()):
            res = finalize(b)
            ops += res.ops
            break
        for side in ("L", "R"):
            if shapes[side] == "separable":
                step = reduce_leaf_block(b, side)
                break
        else:
            for side in ("L", "R"):
                if shapes[side] == "2-connected":
                    step = reduce_2connected_side(b, side)
                    break
            else:
                raise InvariantViolation(f"no reduction rule applies to sides {shapes}")
        b = step.context
        ops += step.ops
    if res.final.d != d0 & res.final.graph.labels:
        raise InvariantViolation("bond of the special minor is not d restricted to the survivors")
    return SpecialMinor(res.kind, tuple(ops), res.final)


# ------------------------------------------------------------- certify

@dataclass(frozen=True)
class CertifyOutcome:
    connected: bool
    name: str | None = None
    certificate: MinorCertificate | None = None

    def to_json(self) -> dict:
        if self.connected:
            return {"result": "connected"}
        return {"result": "forbidden", "obstruction": self.name, "certificate": self.certificate.to_json()}


def _descend(g: ConstraintGraph):
    """Follow one-step 3-connected reductions while X stays disconnected."""
    ops = []
    while not is_k4(g):
        for child, child_ops in reduction_children(g):
            if len(x_components(child)) > 1:
                g = child
                ops += child_ops
                break
        else:
            break
    return g, ops


def _contract_pair_to_k4(g: ConstraintGraph):
    target = catalog().constraint_k4
    for a, c in combinations(g.non_x, 2):
        if set(g.endpoints[a]) & set(g.endpoints[c]):
            continue
        h = contract(g, a)
        if c not in h.endpoints:
            continue
        h = contract(h, c)
        if is_isomorphic(h, target) is not None:
            return [contract_op(a), contract_op(c)]
    raise InvariantViolation("no two contractions reach the constraint K4")


def _terminal(g: ConstraintGraph):
    """``(ops, obstruction name, stage)`` from a reduction-minimal graph."""
    cat = catalog()
    if is_isomorphic(g, cat.constraint_wheel) is not None:
        return [], "constraint_wheel", "terminal"
    if is_isomorphic(g, cat.constraint_k4) is not None:
        return [], "constraint_k4", "terminal"
    if is_isomorphic(g, cat.weird_prism) is not None:
        return [contract_op(min(g.x))], "constraint_wheel", "terminal"
    if g.n == 6 and any(is_isomorphic(g, h) is not None
                             for h in (cat.wagner_prism, cat.constraint_wagner)):
        return _contract_pair_to_k4(g), "constraint_k4", "terminal"
    comps = x_components(g)
    if len(comps) != 2:
        raise InvariantViolation(f"terminal graph has {len(comps)} X components: {g}")
    ends = g.endpoints
    left = {v for lab in comps[0] for v in ends[lab]}
    right = {v for lab in comps[1] for v in ends[lab]}
    if left | right != set(range(g.n)):
        raise InvariantViolation(f"non-X edge leaves V(X) in terminal graph: {g}")
    b = BondContext(g, frozenset(left), frozenset(right))
    if not is_3connected_along(b):
        raise InvariantViolation("3-connected graph is not 3-connected along the X bond")
    special = reduce_to_special(b)
    result = special.final.graph
    if special.kind == SPECIAL_K4:
        names = ("constraint_k4",)
    else:
        names = tuple(f"constraint_prism_{i}" for i in range(1, 5))
    for name in names:
        if is_isomorphic(result, getattr(cat, name)) is not None:
            return list(special.ops), name, "bond-reduction"
    raise InvariantViolation(f"{special.kind} outcome {result} is not a cataloged obstruction")


def certify(g) -> CertifyOutcome:
    """Connected, or a replay-checked certificate for one of the six obstructions."""
    g = as_constraint(g)
    if not is_3_connected(g):
        raise PreconditionError("certify needs a 3-connected constraint graph")
    if len(x_components(g)) <= 1:
        return CertifyOutcome(True)
    h, descent = _descend(g)
    tail, name, stage = _terminal(h)
    stages = ["descent"] * len(descent) + [stage] * len(tail)
    ops = tuple(descent + tail)
    target = getattr(catalog(), name)
    result = replay(g, ops)
    witness = is_isomorphic(result, target)
    if witness is None or not is_witness(result, target, witness):
        raise InvariantViolation(f"certificate for {name} does not replay")
    cert = MinorCertificate(ops, name, tuple(witness), tuple(stages))
    if not cert.check(g, target):
        raise InvariantViolation("certificate failed its replay check")
    return CertifyOutcome(False, name, cert)

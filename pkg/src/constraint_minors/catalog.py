"""Named constraint graphs: the six obstructions and the auxiliary examples."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .connectivity import BondContext, is_3_connected, make_bond_context
from .errors import InvariantViolation
from .graph import ConstraintGraph, build, is_constraint_connected, x_components

OBSTRUCTION_NAMES = (
    "constraint_k4",
    "constraint_wheel",
    "constraint_prism_1",
    "constraint_prism_2",
    "constraint_prism_3",
    "constraint_prism_4",
)

K4_EDGES = [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)]
# rim 0-1-2-3-0, hub 4
WHEEL_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)]
# triangles 012 and 345, matching 03 14 25
PRISM_EDGES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
# six-cycle 0-1-2-3-4-5-0 plus its three long diagonals (the 6-vertex Moebius ladder, K3,3);
# X is the complement of the six-cycle
WAGNER_EDGES = [(i, (i + 1) % 6) for i in range(6)] + [(i, i + 3) for i in range(3)]
WAGNER_X = [6, 7, 8]
# the 8-vertex Wagner graph (8-cycle plus long diagonals), kept for larger checks
WAGNER8_EDGES = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]


@dataclass(frozen=True)
class ObstructionCatalog:
    constraint_k4: ConstraintGraph
    constraint_wheel: ConstraintGraph
    constraint_prism_1: ConstraintGraph
    constraint_prism_2: ConstraintGraph
    constraint_prism_3: ConstraintGraph
    constraint_prism_4: ConstraintGraph
    weird_prism: ConstraintGraph
    constraint_wagner: ConstraintGraph
    wagner_prism: ConstraintGraph
    special_k4: BondContext
    special_prism: BondContext

    @property
    def obstructions(self) -> dict:
        return {name: getattr(self, name) for name in OBSTRUCTION_NAMES}

    def named_graphs(self) -> dict:
        out = dict(self.obstructions)
        out["weird_prism"] = self.weird_prism
        out["constraint_wagner"] = self.constraint_wagner
        out["wagner_prism"] = self.wagner_prism
        return out

    def __getitem__(self, name: str) -> ConstraintGraph:
        return self.named_graphs()[name]


@lru_cache(maxsize=None)
def catalog() -> ObstructionCatalog:
    cat = ObstructionCatalog(
        constraint_k4=build(4, K4_EDGES, [0, 1]),
        constraint_wheel=build(5, WHEEL_EDGES, [0, 2]),
        # both triangles
        constraint_prism_1=build(6, PRISM_EDGES, [0, 1, 2, 3, 4, 5]),
        # one triangle and two edges of the other
        constraint_prism_2=build(6, PRISM_EDGES, [0, 1, 2, 3, 4]),
        # two edges of each triangle; the missing edges 12 and 45 are matched by 14, 25
        constraint_prism_3=build(6, PRISM_EDGES, [0, 2, 3, 5]),
        # two edges of each triangle; the missing edges 12 and 34 are not matched
        constraint_prism_4=build(6, PRISM_EDGES, [0, 2, 4, 5]),
        weird_prism=build(6, PRISM_EDGES, [6, 7, 8]),
        constraint_wagner=build(6, WAGNER_EDGES, WAGNER_X),
        # matching edge 03 plus the triangle edges 12 and 45 avoiding it
        wagner_prism=build(6, PRISM_EDGES, [6, 1, 4]),
        special_k4=make_bond_context(build(4, K4_EDGES), {0, 1}),
        special_prism=make_bond_context(build(6, PRISM_EDGES), {0, 1, 2}),
    )
    _self_check(cat)
    return cat


def _self_check(cat: ObstructionCatalog) -> None:
    for name, g in cat.named_graphs().items():
        g.validate()
        if not is_3_connected(g):
            raise InvariantViolation(f"{name} is not 3-connected")
        if is_constraint_connected(g):
            raise InvariantViolation(f"{name} has connected X")
    if len(x_components(cat.weird_prism)) != 3:
        raise InvariantViolation("weird prism must have three X components")
    if len(cat.special_k4.d) != 4 or len(cat.special_prism.d) != 3:
        raise InvariantViolation("special pairs have the wrong bond sizes")

"""Constraint-minor containment, essential edges and the minimal-obstruction oracle.

The searches explore constraint minors depth first (deletions before
contractions, smaller labels first) and memoize failures by canonical form,
which makes them exact decision procedures at the sizes used here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_form, is_isomorphic
from .catalog import OBSTRUCTION_NAMES, catalog
from .connectivity import is_3_connected
from .enumeration import enumerate_graphs, x_orbit_representatives
from .errors import InvariantViolation, PreconditionError, ResourceLimitError
from .graph import (
    ConstraintGraph,
    MinorCertificate,
    contract,
    contract_op,
    delete_non_x,
    delete_op,
    replay,
    strip_isolated,
    x_components,
)

SEARCH_CAP = 2_000_000

# purpose -> canonical codes whose minors (including themselves) do not qualify
_FAILED: dict = {}


def clear_caches() -> None:
    _FAILED.clear()


def one_step_minors(g: ConstraintGraph):
    """``(op, child)`` for every legal single operation, deletions first."""
    for lab in g.non_x:
        yield delete_op(lab), delete_non_x(g, lab)
    for lab, _, _ in g.edges:
        yield contract_op(lab), contract(g, lab)


def _stats(g: ConstraintGraph) -> tuple:
    return g.n, g.m, len(g.x), g.m - len(g.x), len(x_components(g))


def _search(g: ConstraintGraph, accept, prune, purpose, cap: int):
    """Ops leading from ``g`` to a minor satisfying ``accept``, or None.

    ``prune(h)`` must only reject graphs none of whose minors is accepted.
    """
    failed = _FAILED.setdefault(purpose, set())
    budget = [cap]

    def visit(h):
        if prune(h):
            return None
        code = canonical_form(h).code
        if code in failed:
            return None
        if accept(h):
            return []
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceLimitError(f"constraint-minor search exceeded {cap} states")
        for op, child in one_step_minors(h):
            path = visit(child)
            if path is not None:
                return [op] + path
        failed.add(code)
        return None

    return visit(strip_isolated(g))


def _certificate(g, ops, name, target) -> MinorCertificate:
    result = replay(g, ops)
    witness = is_isomorphic(result, target)
    if witness is None:
        raise InvariantViolation(f"search path for {name} does not replay to it")
    cert = MinorCertificate(tuple(ops), name, tuple(witness))
    if not cert.check(g, target):
        raise InvariantViolation(f"certificate for {name} fails its replay check")
    return cert


def has_constraint_minor(g: ConstraintGraph, target: ConstraintGraph, name: str = "target",
                         *, prune_connected: bool = True, cap: int = SEARCH_CAP):
    """A certificate that ``target`` is a constraint minor of ``g``, or None.

    With ``prune_connected`` the search skips minors whose X is connected when
    the target's X is not; connectedness of X is inherited by every minor.
    """
    target = strip_isolated(target)
    tform = canonical_form(target)
    tn, tm, tx, tnx, tcomp = _stats(target)
    skip_connected = prune_connected and tcomp > 1

    def prune(h):
        n, m, x, nx, comp = _stats(h)
        if n < tn or m < tm or x < tx or nx < tnx or comp < tcomp:
            return True
        return skip_connected and comp <= 1

    ops = _search(g, lambda h: canonical_form(h) == tform, prune,
                  ("minor", tform.code, skip_connected), cap)
    if ops is None:
        return None
    return _certificate(g, ops, name, target)


def find_forbidden_minor(g: ConstraintGraph, *, prune_connected: bool = True, cap: int = SEARCH_CAP):
    """First of the six obstructions that is a constraint minor of ``g``, with certificate."""
    cat = catalog()
    for name in OBSTRUCTION_NAMES:
        cert = has_constraint_minor(g, getattr(cat, name), name,
                                    prune_connected=prune_connected, cap=cap)
        if cert is not None:
            return name, cert
    return None


def _is_bad(h: ConstraintGraph) -> bool:
    return len(x_components(h)) > 1 and is_3_connected(h)


def _bad_prune(h: ConstraintGraph) -> bool:
    return h.n < 4 or h.m < 6 or len(x_components(h)) <= 1


def bad_minor_path(g: ConstraintGraph, cap: int = SEARCH_CAP):
    """Ops to a 3-connected constraint minor of ``g`` (possibly ``g``) with disconnected X."""
    return _search(g, _is_bad, _bad_prune, ("bad",), cap)


@dataclass(frozen=True)
class EssentialReport:
    edge: int
    essential: bool
    witness: tuple | None = None  # ops, starting with contract(edge) or delete(edge)


def is_essential(g: ConstraintGraph, e: int, cap: int = SEARCH_CAP) -> EssentialReport:
    """Is ``e`` (outside X) essential: neither ``G/e`` nor ``G\\e`` has a 3-connected
    constraint minor with disconnected X?"""
    if e in g.x:
        raise PreconditionError(f"edge {e} is in X")
    if e not in g.endpoints:
        raise PreconditionError(f"unknown edge {e}")
    if not is_3_connected(g):
        raise PreconditionError("is_essential expects a 3-connected graph")
    g = strip_isolated(g)
    for op, child in ((delete_op(e), delete_non_x(g, e)), (contract_op(e), contract(g, e))):
        path = bad_minor_path(child, cap)
        if path is not None:
            return EssentialReport(e, False, (op,) + tuple(path))
    return EssentialReport(e, True, None)


def is_minimal_obstruction(g: ConstraintGraph, cap: int = SEARCH_CAP) -> bool:
    """3-connected, X disconnected, and no proper 3-connected constraint minor keeps X disconnected."""
    if not _is_bad(g):
        return False
    for _, child in one_step_minors(strip_isolated(g)):
        if bad_minor_path(child, cap) is not None:
            return False
    return True


def minimal_obstructions(n_max: int, cap: int = SEARCH_CAP) -> list:
    """All minimal obstructions on at most ``n_max`` vertices, one per isomorphism class."""
    out = []
    for n in range(4, n_max + 1):
        for g in enumerate_graphs(n, is_3_connected):
            for x in x_orbit_representatives(g):
                cg = ConstraintGraph(g, x)
                if len(x_components(cg)) > 1 and is_minimal_obstruction(cg, cap):
                    out.append(cg)
    return out


def match_catalog(g: ConstraintGraph, names=None):
    """Name of the catalog graph isomorphic to ``g`` (X preserved), or None."""
    cat = catalog()
    named = cat.named_graphs()
    for name in names or named:
        if is_isomorphic(g, named[name]) is not None:
            return name
    return None

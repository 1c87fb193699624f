"""Exhaustive small-scale verification sweeps behind ``constraint-minors verify``.

Each sweep returns a :class:`RunReport`.  Sweeps over graphs run one task per
graph (optionally in worker processes); a task returns counts and failures,
so aggregation does not depend on the worker count or completion order.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .bonds import certify
from .canon import canonical_form, is_isomorphic
from .catalog import OBSTRUCTION_NAMES, catalog
from .connectivity import (
    BondContext,
    _side_connected,
    four_contractible,
    is_2_connected,
    is_3_connected,
    is_3connected_along,
    is_triangle,
)
from .bonds import SPECIAL_K4, is_special_k4, is_special_prism, reduce_to_special
from .enumeration import enumerate_graphs, x_orbit_representatives
from .errors import ConstraintMinorError, PreconditionError, ResourceLimitError
from .formats import dump_text
from .graph import ConstraintGraph, as_constraint, contract, is_constraint_connected, replay
from .obstructions import find_forbidden_minor, minimal_obstructions, one_step_minors
from .realizer import Realization, cycle_matroid_equal, flip_closure, matroid_realizations, realize, _star_key

SWEEPS = ("obstructions", "theorem2", "lemma45", "lemma42", "realizer", "closure")
EXHAUSTIVE_MAX = {"obstructions": 6, "theorem2": 6, "lemma45": 7, "lemma42": 6, "realizer": 6, "closure": 5}


@dataclass
class RunReport:
    command: str
    counts: dict = field(default_factory=dict)
    properties: dict = field(default_factory=dict)  # name -> bool
    failures: list = field(default_factory=list)  # dicts with "property", "detail", maybe "reproducer"
    notes: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and all(self.properties.values())

    def check(self, name: str, value: bool) -> None:
        self.properties[name] = self.properties.get(name, True) and bool(value)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "ok": self.ok,
            "counts": self.counts,
            "properties": self.properties,
            "failures": self.failures,
            "notes": self.notes,
            "wall_time": round(self.wall_time, 3),
        }

    def to_text(self) -> str:
        lines = [f"$ {self.command}"]
        for k, v in self.counts.items():
            lines.append(f"  {k}: {v}")
        for k, v in self.properties.items():
            lines.append(f"  [{'PASS' if v else 'FAIL'}] {k}")
        lines += [f"  note: {n}" for n in self.notes]
        for f in self.failures:
            extra = f" (reproducer: {f['reproducer']})" if f.get("reproducer") else ""
            lines.append(f"  failure: {f['property']}: {f['detail']}{extra}")
        lines.append(f"  {'OK' if self.ok else 'FAILED'} in {self.wall_time:.1f}s")
        return "\n".join(lines)


class _Deadline:
    def __init__(self, seconds):
        self.end = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.end is not None and time.monotonic() > self.end:
            raise ResourceLimitError("time cap exceeded")


def _map(fn, items, jobs, deadline):
    """Yield ``fn(item)`` in input order, in worker processes when ``jobs > 1``."""
    if jobs <= 1:
        for item in items:
            deadline.check()
            yield fn(item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for result in pool.map(fn, items, chunksize=4):
            deadline.check()
            yield result


def _merge(report, counts, failures):
    for k, v in counts.items():
        report.counts[k] = report.counts.get(k, 0) + v
    report.failures += failures


def _add(counts, key, k=1):
    counts[key] = counts.get(key, 0) + k


# -------------------------------------------------------------------- tasks

def _task_theorem2(g):
    counts, failures = {}, []
    for x in x_orbit_representatives(g):
        cg = ConstraintGraph(g, x)
        _add(counts, "instances")
        connected = is_constraint_connected(cg)
        found = find_forbidden_minor(cg)
        outcome = certify(cg)
        if not (connected == (found is None) == outcome.connected):
            failures.append(("equivalence", cg, f"connected={connected} search={found and found[0]} "
                                                f"certify={outcome.name}"))
        if not outcome.connected:
            _add(counts, f"certified {outcome.name}")
            if not outcome.certificate.check(cg, getattr(catalog(), outcome.name)):
                failures.append(("certificate replay", cg, outcome.name))
    return counts, failures


def _task_lemma45(g):
    if is_triangle(g):
        return {}, []
    try:
        edges = four_contractible(g)
    except ConstraintMinorError as exc:
        return {"non-triangle graphs": 1}, [("four contractible edges", as_constraint(g), str(exc))]
    # re-check the answer directly: distinct, contractible, first two disjoint
    cg = as_constraint(g)
    ends = g.endpoints
    ok = (len(set(edges)) == 4 and not set(ends[edges[0]]) & set(ends[edges[1]])
          and all(is_2_connected(contract(cg, lab)) for lab in edges))
    fails = [] if ok else [("four contractible edges", cg, f"bad answer {edges}")]
    return {"non-triangle graphs": 1}, fails


def _task_lemma42(g):
    counts, failures = {}, []
    cg = as_constraint(g)
    n = g.n
    for mask in range(1, 2 ** (n - 1)):
        left = frozenset(v for v in range(n - 1) if mask >> v & 1)
        right = frozenset(range(n)) - left
        if not _side_connected(cg, left) or not _side_connected(cg, right):
            continue
        b = BondContext(cg, left, right)
        if not b.L or not b.R or not is_3connected_along(b):
            continue
        _add(counts, "bond pairs")
        try:
            res = reduce_to_special(b)
        except ConstraintMinorError as exc:
            failures.append(("reduce_to_special", cg, f"left={sorted(left)}: {exc}"))
            continue
        _add(counts, res.kind)
        final = res.final
        special = is_special_k4(final) if res.kind == SPECIAL_K4 else is_special_prism(final)
        replayed = replay(cg, res.ops)
        same = is_isomorphic(replayed, final.graph) is not None
        if not (special and same and final.d == b.d & final.graph.labels):
            failures.append(("special minor validated", cg, f"left={sorted(left)}"))
    return counts, failures


def _task_realizer(g):
    counts, failures = {}, []
    closure = flip_closure(g)
    if {_star_key(h) for h in closure} != {_star_key(h) for h in matroid_realizations(g)}:
        failures.append(("flip closure equals all realizations", as_constraint(g), "sets differ"))
    for x in x_orbit_representatives(g):
        cg = ConstraintGraph(g, x)
        _add(counts, "instances")
        oracle = any(is_constraint_connected(h.with_x(x)) for h in closure)
        result = realize(cg)  # realizations are validated inside realize
        got = isinstance(result, Realization)
        _add(counts, "realizable" if got else "not realizable")
        if got != oracle:
            failures.append(("agrees with flip-closure oracle", cg, f"realize={got} oracle={oracle}"))
        if got and not (cycle_matroid_equal(cg, result.result) and is_constraint_connected(result.result)):
            failures.append(("realizations valid", cg, "cycle matroid or X connectivity check failed"))
        if not got:
            if result.name is None:
                failures.append(("six-obstruction completeness", cg,
                                 f"unrealizable, none of the six is a constraint minor; minimal minor {result.minor}"))
            else:
                _add(counts, f"forbidden {result.name}")
    return counts, failures


def _task_closure(g):
    counts, failures = {}, []
    for x in x_orbit_representatives(g):
        cg = ConstraintGraph(g, x)
        if not is_constraint_connected(cg):
            continue
        for op, child in one_step_minors(cg):
            _add(counts, "operations")
            if not is_constraint_connected(child):
                failures.append(("closure", cg, f"{op!r} disconnects X"))
    return counts, failures


_TASKS = {
    "theorem2": (_task_theorem2, 4, is_3_connected),
    "lemma45": (_task_lemma45, 3, is_2_connected),
    "lemma42": (_task_lemma42, 2, is_2_connected),
    "realizer": (_task_realizer, 3, is_2_connected),
    "closure": (_task_closure, 1, None),
}


# ------------------------------------------------------------------- driver

def _write_reproducer(directory, which, index, g) -> str:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{which}-{index:03d}.txt"
    path.write_text(dump_text(g))
    return str(path)


def run_sweep(which: str, n_max: int, *, jobs: int = 1, cap_seconds=None, reproducers=None) -> RunReport:
    if which not in SWEEPS:
        raise PreconditionError(f"unknown sweep {which!r}; choose from {', '.join(SWEEPS)}")
    limit = EXHAUSTIVE_MAX[which]
    if n_max > limit:
        raise PreconditionError(f"verify {which} is exhaustive only up to n = {limit}")
    report = RunReport(f"verify {which} {n_max}")
    start = time.monotonic()
    deadline = _Deadline(cap_seconds)
    if which == "obstructions":
        _obstructions(report, n_max)
    else:
        fn, n_min, pred = _TASKS[which]
        graphs = [g for n in range(n_min, n_max + 1) for g in enumerate_graphs(n, pred)]
        report.counts["graphs"] = len(graphs)
        raw = []
        for counts, fails in _map(fn, graphs, jobs, deadline):
            _merge(report, counts, [])
            raw += fails
        if which == "theorem2":
            _targeted_theorem2(report, raw)
        for prop in _PROPERTIES[which]:
            report.check(prop, not any(f[0] == prop for f in raw))
        for i, (prop, g, detail) in enumerate(raw):
            entry = {"property": prop, "detail": detail}
            if reproducers:
                entry["reproducer"] = _write_reproducer(reproducers, which, i, g)
            report.failures.append(entry)
        if which == "realizer":
            bad = sum(1 for f in raw if f[0] == "six-obstruction completeness")
            if bad:
                report.notes.append(f"{bad} unrealizable instance(s) have none of the six obstructions "
                                    "as a constraint minor")
    report.wall_time = time.monotonic() - start
    return report


_PROPERTIES = {
    "theorem2": ("equivalence", "certificate replay"),
    "lemma45": ("four contractible edges",),
    "lemma42": ("reduce_to_special", "special minor validated"),
    "realizer": ("agrees with flip-closure oracle", "realizations valid", "flip closure equals all realizations",
                 "six-obstruction completeness"),
    "closure": ("closure",),
}


def _targeted_theorem2(report, raw):
    """The three auxiliary examples are checked as well."""
    cat = catalog()
    for name in ("weird_prism", "constraint_wagner", "wagner_prism"):
        g = cat[name]
        outcome = certify(g)
        if outcome.connected or not outcome.certificate.check(g, getattr(cat, outcome.name)):
            raw.append(("equivalence", g, f"{name} not certified"))
        report.counts[f"targeted {name}"] = outcome.name


def _obstructions(report, n_max):
    found = minimal_obstructions(n_max)
    cat = catalog()
    matched = []
    for g in found:
        name = next((nm for nm in OBSTRUCTION_NAMES if is_isomorphic(g, getattr(cat, nm)) is not None), None)
        matched.append(name)
        if name is None:
            report.failures.append({"property": "matches catalog", "detail": repr(g)})
    expected = [nm for nm in OBSTRUCTION_NAMES if getattr(cat, nm).n <= n_max]
    report.counts["minimal obstructions"] = len(found)
    report.counts["matched"] = ", ".join(sorted(nm for nm in matched if nm))
    report.check("matches catalog", None not in matched)
    report.check("exactly the cataloged obstructions", sorted(nm for nm in matched if nm) == sorted(expected))
    codes = {canonical_form(g).code for g in found}
    report.check("pairwise non-isomorphic", len(codes) == len(found))
    if n_max >= 6:
        report.check("exactly 6", len(found) == 6)

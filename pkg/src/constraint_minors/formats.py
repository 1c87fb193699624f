"""Reading and writing constraint graphs.

Text format, one graph per file::

    n m
    u v x        # m lines; x is 1 for edges in X, 0 otherwise

Edge labels are the line order (0-based).  Blank lines and ``#`` comments
are ignored.  The JSON mirror is ``{"n": n, "edges": [[u, v], ...], "X": [labels]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphInputError
from .graph import ConstraintGraph, Graph, build

FORMATS = ("text", "json")


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _ints(line: str, number: int, count: int) -> list:
    parts = line.split()
    if len(parts) != count:
        raise GraphInputError(f"expected {count} integers, got {len(parts)}", line=number)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphInputError(f"non-integer token in {line!r}", line=number) from None


def parse_text(text: str) -> ConstraintGraph:
    lines = list(_content_lines(text))
    if not lines:
        raise GraphInputError("empty input", line=1)
    number, header = lines[0]
    n, m = _ints(header, number, 2)
    if n < 0 or m < 0:
        raise GraphInputError("vertex and edge counts must be nonnegative", line=number)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else number
        raise GraphInputError(f"header announces {m} edges but {len(body)} edge lines follow", line=last)
    pairs, x = [], []
    for i, (number, line) in enumerate(body):
        u, v, flag = _ints(line, number, 3)
        if flag not in (0, 1):
            raise GraphInputError(f"X flag must be 0 or 1, got {flag}", line=number)
        try:
            Graph.from_pairs(n, pairs + [(u, v)])
        except GraphInputError as exc:
            raise GraphInputError(str(exc), item=exc.item, line=number) from None
        pairs.append((u, v))
        if flag:
            x.append(i)
    return build(n, pairs, x)


def parse_json(text: str) -> ConstraintGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphInputError('JSON graph needs "n" and "edges"')
    n = data["n"]
    edges = data["edges"]
    xs = data.get("X", [])
    if not isinstance(n, int) or not isinstance(edges, list) or not isinstance(xs, list):
        raise GraphInputError('"n" must be an integer, "edges" and "X" lists')
    pairs = []
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(t, int) for t in e)):
            raise GraphInputError(f"edge {i} is not a pair of integers", item=e)
        pairs.append(tuple(e))
    return build(n, pairs, xs)


def parse(text: str, fmt: str = "text") -> ConstraintGraph:
    if fmt == "text":
        return parse_text(text)
    if fmt == "json":
        return parse_json(text)
    raise ValueError(f"unknown format {fmt!r}")


def read_graph(path, fmt: str | None = None) -> ConstraintGraph:
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "text"
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text, fmt)


def _relabelled(g: ConstraintGraph):
    """Edges in label order with X given by position (labels become line numbers)."""
    edges = sorted(g.edges)
    return [(u, v) for _, u, v in edges], [i for i, (lab, _, _) in enumerate(edges) if lab in g.x]


def dump_text(g: ConstraintGraph) -> str:
    pairs, x = _relabelled(g)
    xs = set(x)
    lines = [f"{g.n} {len(pairs)}"]
    lines += [f"{u} {v} {1 if i in xs else 0}" for i, (u, v) in enumerate(pairs)]
    return "\n".join(lines) + "\n"


def to_json_obj(g: ConstraintGraph) -> dict:
    pairs, x = _relabelled(g)
    return {"n": g.n, "edges": [list(p) for p in pairs], "X": x}


def dump_json(g: ConstraintGraph) -> str:
    return json.dumps(to_json_obj(g))


def dump(g: ConstraintGraph, fmt: str = "text") -> str:
    return dump_json(g) + "\n" if fmt == "json" else dump_text(g)

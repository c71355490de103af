"""File formats: edge lists, angle files, deterministic JSON."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import MalformedFile
from .graphs import Graph


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse ``n <count>`` followed by one 1-indexed ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored.
    """
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise MalformedFile("expected header 'n <count>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise MalformedFile(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise MalformedFile("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise MalformedFile(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedFile(f"non-integer vertex in {line!r}", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise MalformedFile(f"vertex out of range 1..{n} in {line!r}", lineno)
        if u == v:
            raise MalformedFile(f"self-loop at {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise MalformedFile(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        raise MalformedFile("missing header 'n <count>'")
    return Graph(n, frozenset(edges))


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g))


def parse_angles(text: str) -> np.ndarray:
    vals = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            x = float(line)
        except ValueError:
            raise MalformedFile(f"not a number: {line!r}", lineno) from None
        if not math.isfinite(x):
            raise MalformedFile("angle is not finite", lineno)
        vals.append(x)
    return np.array(vals)


def read_angles(path) -> np.ndarray:
    return parse_angles(Path(path).read_text())


def format_angles(theta) -> str:
    return "".join(f"{float(x):.17g}\n" for x in theta)


def write_angles(theta, path) -> None:
    Path(path).write_text(format_angles(theta))


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats at 17 significant digits and insertion key order.

    Non-finite floats become ``null``.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return {None: "null", True: "true", False: "false"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        text = f"{x:.17g}"
        if not any(c in text for c in ".en"):
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(isinstance(x, (int, float, np.integer, np.floating)) and not isinstance(x, bool)
               for x in obj):
            return "[" + ", ".join(dumps(x) for x in obj) + "]"
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")

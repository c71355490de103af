"""Threshold graphs: construction, recognition and structural queries.

Vertices are labelled ``1..n`` everywhere in the public API. A threshold
graph is grown from a single vertex by appending either an isolated vertex
(bit 0) or a dominating vertex (bit 1); the bit string ``code`` stores the
choices for vertices ``2..n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    Disconnected,
    EmptyInput,
    InvalidCharacter,
    InvalidParameters,
    NotThreshold,
)


@dataclass(frozen=True)
class ThresholdCode:
    """Creation sequence; ``bits[i]`` belongs to vertex ``i + 2``."""

    bits: tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "".join("1" if b else "0" for b in self.bits)

    @property
    def n(self) -> int:
        return len(self.bits) + 1

    @property
    def connected(self) -> bool:
        return not self.bits or self.bits[-1]

    @classmethod
    def from_int(cls, value: int, length: int) -> "ThresholdCode":
        """Code whose bit string is the ``length``-digit binary form of ``value``."""
        return cls(tuple(c == "1" for c in format(value, f"0{length}b"))) if length else cls()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameters("vertex count must be nonnegative")
        clean = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidParameters(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidParameters(f"edge ({u}, {v}) outside 1..{self.n}")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def _nbrs(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def neighbors(self, i: int) -> frozenset:
        """Open neighbourhood N(i)."""
        return self._nbrs[i]

    def closed_neighbors(self, i: int) -> frozenset:
        """Closed neighbourhood N[i] = N(i) | {i}."""
        return self._nbrs[i] | {i}

    def degree(self, i: int) -> int:
        return len(self._nbrs[i])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        pairs = self.n * (self.n - 1) // 2
        return self.num_edges / pairs if pairs else 0.0

    @cached_property
    def edge_index(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based endpoint arrays, sorted, for vectorised kernels."""
        es = sorted(self.edges)
        u = np.array([a - 1 for a, _ in es], dtype=np.intp)
        v = np.array([b - 1 for _, b in es], dtype=np.intp)
        return u, v

    @cached_property
    def degrees(self) -> np.ndarray:
        """0-based degree vector."""
        return np.array([len(self._nbrs[i]) for i in self.vertices], dtype=float)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        u, v = self.edge_index
        A[u, v] = 1.0
        A[v, u] = 1.0
        return A

    def laplacian(self) -> np.ndarray:
        A = self.adjacency()
        return np.diag(A.sum(axis=1)) - A

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {1}
        stack = [1]
        while stack:
            for j in self._nbrs[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled ``1..k`` in the given order."""
        vs = list(vertices)
        pos = {v: k + 1 for k, v in enumerate(vs)}
        return Graph(len(vs), frozenset(
            (pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos))


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]

    def class_of(self, v: int) -> tuple[int, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)


@dataclass(frozen=True)
class BlockStructure:
    """Alternating I/U blocks of a connected creation sequence.

    ``blocks`` is a tuple of ``(kind, vertices)`` with ``kind`` in
    ``{"I", "U"}``, in creation order, starting with ``I_1``.
    """

    blocks: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def i_blocks(self) -> list[tuple[int, ...]]:
        return [vs for kind, vs in self.blocks if kind == "I"]

    @property
    def u_blocks(self) -> list[tuple[int, ...]]:
        return [vs for kind, vs in self.blocks if kind == "U"]

    @property
    def k(self) -> int:
        return len(self.u_blocks)


@dataclass(frozen=True)
class WeightRep:
    weights: tuple[float, ...]
    threshold: float

    def realizes(self, g: Graph) -> bool:
        w = self.weights
        return all(
            g.has_edge(u, v) == (w[u - 1] + w[v - 1] >= self.threshold)
            for u, v in itertools.combinations(g.vertices, 2))


def parse_code(text: str) -> ThresholdCode:
    """Parse a bare ``0``/``1`` string.

    >>> str(parse_code("0101"))
    '0101'
    """
    text = text.strip()
    if not text:
        raise EmptyInput("empty threshold code")
    bad = sorted(set(text) - {"0", "1"})
    if bad:
        raise InvalidCharacter(f"invalid character(s) {''.join(bad)!r} in code")
    return ThresholdCode(tuple(c == "1" for c in text))


def _as_code(code) -> ThresholdCode:
    if isinstance(code, ThresholdCode):
        return code
    if isinstance(code, str):
        return parse_code(code) if code else ThresholdCode()
    return ThresholdCode(tuple(code))


def build_threshold(code) -> Graph:
    code = _as_code(code)
    edges = set()
    for idx, bit in enumerate(code.bits):
        v = idx + 2
        if bit:
            edges.update((u, v) for u in range(1, v))
    return Graph(code.n, frozenset(edges))


def edge_count_from_code(code) -> int:
    """Edge count from the closed form: a dominating vertex ``i`` adds ``i - 1`` edges."""
    code = _as_code(code)
    return sum(idx + 1 for idx, bit in enumerate(code.bits) if bit)


def creation_order(g: Graph) -> tuple[list[int], list[bool]]:
    """Peel isolated/dominating vertices; return creation order and their bits.

    The returned order lists vertices as they would be created; ``bits[i]``
    refers to ``order[i + 1]``.  Raises ``NotThreshold`` if peeling stalls.
    """
    if g.n == 0:
        raise NotThreshold("empty graph")
    alive = set(g.vertices)
    deg = {v: g.degree(v) for v in alive}
    removed: list[tuple[int, bool]] = []
    while len(alive) > 1:
        m = len(alive)
        pick = None
        for v in sorted(alive):
            if deg[v] == 0 or deg[v] == m - 1:
                pick = v
                break
        if pick is None:
            raise NotThreshold(
                f"no isolated or dominating vertex among {len(alive)} remaining")
        dominating = deg[pick] == m - 1 and m > 1 and deg[pick] > 0
        alive.remove(pick)
        for w in g.neighbors(pick):
            if w in alive:
                deg[w] -= 1
        removed.append((pick, dominating))
    (last,) = alive
    order = [last] + [v for v, _ in reversed(removed)]
    bits = [b for _, b in reversed(removed)]
    return order, bits


def recognize_threshold(g: Graph) -> ThresholdCode:
    _, bits = creation_order(g)
    return ThresholdCode(tuple(bits))


def _four_vertex_type(g: Graph, quad) -> str | None:
    a, b, c, d = quad
    pairs = ((a, b), (a, c), (a, d), (b, c), (b, d), (c, d))
    deg = {a: 0, b: 0, c: 0, d: 0}
    m = 0
    for x, y in pairs:
        if g.has_edge(x, y):
            deg[x] += 1
            deg[y] += 1
            m += 1
    ds = sorted(deg.values())
    if m == 3 and ds == [1, 1, 2, 2]:
        return "P4"
    if m == 4 and ds == [2, 2, 2, 2]:
        return "C4"
    if m == 2 and ds == [1, 1, 1, 1]:
        return "2K2"
    return None


def forbidden_subgraphs(g: Graph) -> list[tuple[tuple[int, ...], str]]:
    """All induced P4 / C4 / 2K2 quadruples (brute force over 4-subsets)."""
    found = []
    for quad in itertools.combinations(g.vertices, 4):
        kind = _four_vertex_type(g, quad)
        if kind:
            found.append((quad, kind))
    return found


def is_forbidden_free(g: Graph) -> bool:
    return all(_four_vertex_type(g, q) is None
               for q in itertools.combinations(g.vertices, 4))


def nested_neighborhoods(g: Graph) -> bool:
    for u, v in itertools.combinations(g.vertices, 2):
        if not (g.neighbors(u) <= g.closed_neighbors(v)
                or g.neighbors(v) <= g.closed_neighbors(u)):
            return False
    return True


def weight_representation(g: Graph) -> WeightRep:
    """Integer weights and threshold realising ``g``.

    With creation positions ``p = 1..n``, dominating vertices get ``n + p``,
    isolated ones (including the first vertex) get ``n - p``, and ``t = 2n``.
    The result is checked against every pair before it is returned.
    """
    order, bits = creation_order(g)
    n = g.n
    w = [0.0] * n
    for p, v in enumerate(order, start=1):
        dom = p > 1 and bits[p - 2]
        w[v - 1] = float(n + p if dom else n - p)
    rep = WeightRep(tuple(w), float(2 * n))
    if not rep.realizes(g):  # pragma: no cover - construction is exact
        raise NotThreshold("weight construction failed verification")
    return rep


def closed_twin_classes(g: Graph) -> TwinPartition:
    groups: dict[frozenset, list[int]] = {}
    for v in g.vertices:
        groups.setdefault(g.closed_neighbors(v), []).append(v)
    classes = sorted(tuple(c) for c in groups.values())
    return TwinPartition(tuple(classes))


def block_decomposition(code) -> BlockStructure:
    """Split the creation sequence into maximal runs.

    Vertex 1 counts as a leading 0, so the first block is always ``I_1``.
    """
    code = _as_code(code)
    if not code.connected:
        raise Disconnected(f"code {code} ends in 0")
    labels = [False] + list(code.bits)
    blocks = []
    for bit, run in itertools.groupby(enumerate(labels, start=1), key=lambda t: t[1]):
        blocks.append(("U" if bit else "I", tuple(v for v, _ in run)))
    return BlockStructure(tuple(blocks))


def windmill(k: int, m: int) -> Graph:
    """``m`` copies of ``K_k`` sharing vertex 1."""
    if k < 2 or m < 1:
        raise InvalidParameters(f"windmill needs k >= 2 and m >= 1, got k={k}, m={m}")
    n = m * (k - 1) + 1
    edges = set()
    for blade in range(m):
        members = [1] + [2 + blade * (k - 1) + j for j in range(k - 1)]
        edges.update(itertools.combinations(members, 2))
    return Graph(n, frozenset(edges))


def star(leaves: int) -> Graph:
    """Star with hub 1."""
    return Graph(leaves + 1, frozenset((1, j) for j in range(2, leaves + 2)))


def cycle(n: int) -> Graph:
    return Graph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def path(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def complete(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def connected_codes(length: int):
    """All connected codes of the given length (last bit 1)."""
    if length == 0:
        yield ThresholdCode()
        return
    for value in range(2 ** (length - 1)):
        head = ThresholdCode.from_int(value, length - 1).bits
        yield ThresholdCode(head + (True,))

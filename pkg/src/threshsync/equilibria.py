"""Multistart Newton search for equilibria of the Kuramoto energy."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import random_config, trial_seed
from .errors import InvalidParameters, NoConvergence, SingularSystem, ThreshSyncError
from .graphs import Graph
from .landscape import Classification, Tolerances, classify, gradient, hessian, wrap

DEDUP_RADIUS = 1e-4


@dataclass
class Equilibrium:
    config: np.ndarray
    classification: Classification
    residual: float
    basin_hits: int = 1

    def to_dict(self) -> dict:
        return {
            "angles": [float(x) for x in self.config],
            "class": self.classification.value,
            "residual": float(self.residual),
            "basin_hits": int(self.basin_hits),
        }


@dataclass
class EquilibriumCatalog:
    graph_id: str
    equilibria: list = field(default_factory=list)
    starts: int = 0
    seed: int = 0
    failures: dict = field(default_factory=dict)

    def count(self, cls: Classification) -> int:
        return sum(e.classification == cls for e in self.equilibria)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_id,
            "starts": self.starts,
            "seed": self.seed,
            "failures": dict(sorted(self.failures.items())),
            "equilibria": [e.to_dict() for e in self.equilibria],
        }


def canonicalize(theta) -> np.ndarray:
    """Rotate so vertex 1 sits at angle 0 and wrap to (-pi, pi]."""
    th = np.asarray(theta, dtype=float)
    if th.size == 0:
        return th.copy()
    return wrap(th - th[0])


def circular_sup_distance(a, b) -> float:
    d = np.abs(wrap(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
    return float(d.max(initial=0.0))


def splay_config(n: int) -> np.ndarray:
    """Equally spaced phases ``2 pi (i - 1) / n``."""
    if n < 2:
        raise InvalidParameters("splay state needs n >= 2")
    return 2 * np.pi * np.arange(n) / n


def refine_newton(g: Graph, theta0, tol: float = 1e-10, max_iter: int = 100,
                  max_fallbacks: int = 20, fallback_step: float = 0.1,
                  cond_limit: float = 1e12) -> Equilibrium:
    """Damped Newton on the gradient with vertex 1 pinned at angle 0.

    Steps are halved (at most 30 times) while the gradient norm does not
    decrease. A numerically singular reduced Hessian triggers one
    gradient-descent step, at most ``max_fallbacks`` times.
    """
    th, gn = _newton_root(g, theta0, tol, max_iter, max_fallbacks, fallback_step, cond_limit)
    return _classified(g, th, gn, tol)


def _classified(g, th, gn, tol):
    rep = classify(g, th, Tolerances(grad=max(tol, Tolerances().grad)))
    return Equilibrium(th, rep.classification, gn)


def _newton_root(g, theta0, tol, max_iter, max_fallbacks=20, fallback_step=0.1,
                 cond_limit=1e12):
    if not tol > 0:
        raise InvalidParameters("tol must be positive")
    th = canonicalize(theta0)
    n = g.n
    fallbacks = 0
    for _ in range(max_iter + 1):
        gr = gradient(g, th)
        gn = float(np.linalg.norm(gr))
        if gn < tol:
            return canonicalize(th), gn
        if n == 1:  # pragma: no cover - gradient of one vertex is zero
            break
        Hr = hessian(g, th)[1:, 1:]
        try:
            if np.linalg.cond(Hr) > cond_limit:
                raise np.linalg.LinAlgError
            step = -np.linalg.solve(Hr, gr[1:])
        except np.linalg.LinAlgError:
            fallbacks += 1
            if fallbacks > max_fallbacks:
                raise SingularSystem("reduced Hessian stayed singular")
            th = canonicalize(th - fallback_step * gr)
            continue
        alpha = 1.0
        for _ in range(30):
            trial = th.copy()
            trial[1:] += alpha * step
            if np.linalg.norm(gradient(g, trial)) < gn:
                break
            alpha *= 0.5
        th = canonicalize(trial)
    raise NoConvergence(f"no convergence after {max_iter} iterations")


def multistart_search(g: Graph, starts: int, seed: int, tol: float = 1e-10,
                      graph_id: str = "", dedup_radius: float = DEDUP_RADIUS,
                      max_iter: int = 100) -> EquilibriumCatalog:
    """Refine seeded random starts plus the synchronous and splay states.

    Roots are canonicalised and merged when within ``dedup_radius`` in
    circular sup-distance; merging is a sequential pass in start order.
    """
    if starts < 1:
        raise InvalidParameters("starts must be >= 1")
    seeds = [np.zeros(g.n)]
    if g.n >= 2:
        seeds.append(splay_config(g.n))
    seeds += [random_config(g.n, trial_seed(seed, i)) for i in range(starts)]

    cat = EquilibriumCatalog(graph_id, [], starts, int(seed), {})
    found = np.empty((0, g.n))
    for theta0 in seeds:
        try:
            th, gn = _newton_root(g, theta0, tol, max_iter)
        except ThreshSyncError as exc:
            cat.failures[exc.code] = cat.failures.get(exc.code, 0) + 1
            continue
        if len(found):
            dist = np.abs(wrap(found - th)).max(axis=1)
            hit = int(np.argmin(dist))
            if dist[hit] < dedup_radius:
                cat.equilibria[hit].basin_hits += 1
                continue
        cat.equilibria.append(_classified(g, th, gn, tol))
        found = np.vstack([found, th])
    return cat

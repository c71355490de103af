"""Kuramoto energy landscape on a graph.

``E(theta) = sum over edges of (1 - cos(theta_u - theta_v))``; the
homogeneous Kuramoto model is the gradient flow ``dtheta/dt = -grad E``.
Angles are numpy arrays indexed ``0..n-1`` (vertex ``i`` lives at ``i - 1``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eigen import jacobi_eigh, min_symmetric_eigenvalue  # noqa: F401 (re-export)
from .errors import DimensionMismatch, IsolatedVertex, NotUnitVectors
from .graphs import Graph


class Classification(str, enum.Enum):
    NOT_EQUILIBRIUM = "NotEquilibrium"
    SYNCHRONOUS_MINIMUM = "SynchronousMinimum"
    NON_SYNC_SOSP = "NonSyncSOSP"
    SADDLE = "Saddle"


@dataclass(frozen=True)
class Tolerances:
    grad: float = 1e-9
    psd: float = 1e-8
    sync: float = 1e-6


DEFAULT_TOL = Tolerances()


@dataclass
class LandscapeReport:
    energy: float
    gradient_norm: float
    mu: np.ndarray
    min_hessian_eigenvalue: float
    classification: Classification
    witness: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            "energy": float(self.energy),
            "gradient_norm": float(self.gradient_norm),
            "mu": [float(x) for x in self.mu],
            "min_eig": float(self.min_hessian_eigenvalue),
            "class": self.classification.value,
            "witness": None if self.witness is None else [float(x) for x in self.witness],
        }


class TwinCaseId(str, enum.Enum):
    EQUAL = "Equal"
    ANTIPODAL = "Antipodal"
    FREE_AT_MINUS_ONE = "FreeAtMinusOne"
    NOT_GEOMETRIC_TWINS = "NotGeometricTwins"


@dataclass(frozen=True)
class TwinCase:
    case_id: TwinCaseId
    mu_a: float = float("nan")
    mu_b: float = float("nan")


def wrap(theta):
    """Wrap angles to (-pi, pi]."""
    w = np.mod(np.asarray(theta, dtype=float) + np.pi, 2 * np.pi) - np.pi
    return np.where(w == -np.pi, np.pi, w)


def _check(g: Graph, theta) -> np.ndarray:
    th = np.asarray(theta, dtype=float)
    if th.ndim != 1 or th.shape[0] != g.n:
        raise DimensionMismatch(f"expected {g.n} angles, got shape {th.shape}")
    return th


def energy(g: Graph, theta) -> float:
    th = _check(g, theta)
    u, v = g.edge_index
    return float(np.sum(1.0 - np.cos(th[u] - th[v])))


def _grad(u, v, n, th):
    s = np.sin(th[v] - th[u])
    return np.bincount(v, weights=s, minlength=n) - np.bincount(u, weights=s, minlength=n)


def gradient(g: Graph, theta) -> np.ndarray:
    """Component ``i`` is ``-sum_j A_ij sin(theta_j - theta_i)``."""
    th = _check(g, theta)
    u, v = g.edge_index
    return _grad(u, v, g.n, th)


def hessian(g: Graph, theta) -> np.ndarray:
    th = _check(g, theta)
    u, v = g.edge_index
    c = np.cos(th[u] - th[v])
    H = np.zeros((g.n, g.n))
    H[u, v] = -c
    H[v, u] = -c
    H[np.diag_indices(g.n)] = np.bincount(u, weights=c, minlength=g.n) + \
        np.bincount(v, weights=c, minlength=g.n)
    return H


def mu_all(g: Graph, theta) -> np.ndarray:
    """Alignment scalars ``mu_i = sum_{j in N(i)} cos(theta_j - theta_i)``."""
    th = _check(g, theta)
    u, v = g.edge_index
    c = np.cos(th[u] - th[v])
    return np.bincount(u, weights=c, minlength=g.n) + np.bincount(v, weights=c, minlength=g.n)


def neighbor_phasor_sums(g: Graph, theta) -> np.ndarray:
    """``(n, 2)`` array of ``sum_{j in N(i)} (cos theta_j, sin theta_j)``."""
    th = _check(g, theta)
    A = g.adjacency()
    return np.stack([A @ np.cos(th), A @ np.sin(th)], axis=1)


def local_order(g: Graph, theta, i: int) -> float:
    """Local order parameter ``R_i = |sum_{j in N(i)} e^{i theta_j}| / deg(i)``."""
    th = _check(g, theta)
    nb = sorted(g.neighbors(i))
    if not nb:
        raise IsolatedVertex(f"vertex {i} has no neighbours")
    z = np.exp(1j * th[np.array(nb) - 1]).sum()
    return float(min(abs(z) / len(nb), 1.0))


def circular_diameter(theta) -> float:
    """Largest pairwise geodesic distance on the circle, in ``[0, pi]``.

    For each point the farthest other point is the one nearest its antipode,
    so a sorted search gives the answer in ``O(n log n)``.
    """
    a = np.sort(np.mod(np.asarray(theta, dtype=float), 2 * np.pi))
    n = a.size
    if n < 2:
        return 0.0
    anti = np.mod(a + np.pi, 2 * np.pi)
    idx = np.searchsorted(a, anti)
    hi = a[idx % n]
    lo = a[(idx - 1) % n]
    d_hi = np.abs(hi - anti)
    d_lo = np.abs(anti - lo)
    d_hi = np.minimum(d_hi, 2 * np.pi - d_hi)
    d_lo = np.minimum(d_lo, 2 * np.pi - d_lo)
    nearest = np.minimum(d_hi, d_lo)
    return float(max(np.pi - nearest.min(), 0.0))


def is_synchronous(theta, tol: float = DEFAULT_TOL.sync) -> bool:
    return circular_diameter(theta) < tol


def block_descent_value(g: Graph, theta, block) -> float:
    """``x^T H x`` for the 0/1 indicator ``x`` of ``block``.

    Only edges leaving the block contribute, each with ``cos`` of its phase
    difference. A negative value means the indicator is a descent direction.
    """
    th = _check(g, theta)
    inside = np.zeros(g.n, dtype=bool)
    for b in block:
        if not 1 <= b <= g.n:
            raise DimensionMismatch(f"vertex {b} outside 1..{g.n}")
        inside[b - 1] = True
    u, v = g.edge_index
    cross = inside[u] != inside[v]
    return float(np.sum(np.cos(th[u[cross]] - th[v[cross]])))


def classify(g: Graph, theta, tol: Tolerances = DEFAULT_TOL) -> LandscapeReport:
    """Classify ``theta`` as non-equilibrium, saddle, synchronous or spurious SOSP.

    A negative ``mu_i`` already rules out second-order stationarity (the
    Hessian's diagonal entry is ``mu_i``), so it is tested before the
    eigendecomposition and yields a coordinate witness.
    """
    th = _check(g, theta)
    E = energy(g, th)
    gn = float(np.linalg.norm(gradient(g, th)))
    mu = mu_all(g, th)
    H = hessian(g, th)
    w, V = jacobi_eigh(H)
    lam = float(w[0]) if w.size else 0.0

    witness = None
    if gn > tol.grad:
        cls = Classification.NOT_EQUILIBRIUM
    elif mu.size and mu.min() < -tol.psd:
        cls = Classification.SADDLE
        witness = np.zeros(g.n)
        witness[int(np.argmin(mu))] = 1.0
    elif lam < -tol.psd:
        cls = Classification.SADDLE
        witness = V[:, 0].copy()
    elif circular_diameter(th) < tol.sync:
        cls = Classification.SYNCHRONOUS_MINIMUM
    else:
        cls = Classification.NON_SYNC_SOSP
    return LandscapeReport(E, gn, mu, lam, cls, witness)


def twin_case(v_a, v_b, q, tol: float = 1e-8) -> TwinCase:
    """Which branch of the two-phasor compatibility relations holds.

    Solves ``v_b + q = mu_a v_a`` and ``v_a + q = mu_b v_b`` by projection
    and checks the residuals. Ties at ``mu_a = mu_b = -1`` resolve to
    ``FreeAtMinusOne``.
    """
    va, vb, q = (np.asarray(x, dtype=float) for x in (v_a, v_b, q))
    if abs(np.linalg.norm(va) - 1) > tol or abs(np.linalg.norm(vb) - 1) > tol:
        raise NotUnitVectors("v_a and v_b must be unit vectors")
    mu_a = float(np.dot(vb + q, va))
    mu_b = float(np.dot(va + q, vb))
    scale = 1.0 + np.linalg.norm(q)
    res = max(np.linalg.norm(vb + q - mu_a * va), np.linalg.norm(va + q - mu_b * vb))
    if res > tol * scale:
        return TwinCase(TwinCaseId.NOT_GEOMETRIC_TWINS, mu_a, mu_b)
    if abs(mu_a + 1) <= tol * scale and abs(mu_b + 1) <= tol * scale:
        return TwinCase(TwinCaseId.FREE_AT_MINUS_ONE, mu_a, mu_b)
    if np.linalg.norm(va - vb) <= tol and abs(mu_a - mu_b) <= tol * scale:
        return TwinCase(TwinCaseId.EQUAL, mu_a, mu_b)
    if np.linalg.norm(va + vb) <= tol and abs(mu_a + mu_b + 2) <= tol * scale:
        return TwinCase(TwinCaseId.ANTIPODAL, mu_a, mu_b)
    return TwinCase(TwinCaseId.NOT_GEOMETRIC_TWINS, mu_a, mu_b)

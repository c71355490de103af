"""Cyclic Jacobi eigensolver for small dense symmetric matrices.

Rotations are applied in round-robin (tournament) order: each round
annihilates ``n // 2`` disjoint off-diagonal pairs at once, which lets the
row/column updates run as whole-array numpy operations.
"""

from __future__ import annotations

import numpy as np

from .errors import NotSymmetric


def _tournament_rounds(n: int) -> list[tuple[int, np.ndarray]]:
    """Per round: pair count ``h`` and a layout ``p_1..p_h, q_1..q_h, rest``."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rest = sorted(set(range(n)) - set(p) - set(q))
        rounds.append((len(p), np.array(p + q + rest, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(M, tol: float = 1e-12, max_sweeps: int = 60, sym_tol: float = 1e-9):
    """Eigenvalues (ascending) and orthonormal eigenvectors of symmetric ``M``.

    Parameters
    ----------
    M : array_like, shape (n, n)
    tol : float
        Relative off-diagonal Frobenius norm at which sweeps stop.
    sym_tol : float
        Allowed asymmetry, relative to the largest entry.

    Returns
    -------
    w : ndarray, shape (n,)
    V : ndarray, shape (n, n)
        ``M @ V[:, k] ~= w[k] * V[:, k]``.
    """
    A = np.array(M, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    scale = max(np.abs(A).max(initial=0.0), 1.0)
    if np.abs(A - A.T).max(initial=0.0) > sym_tol * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    if n <= 1:
        return np.diag(A).copy(), V

    rounds = _tournament_rounds(n)
    where = np.arange(n)  # where[j]: current position of original index j
    offmask = ~np.eye(n, dtype=bool)
    total = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A[offmask])
        if off <= tol * total or off == 0.0:
            break
        for h, layout in rounds:
            # bring the pairs of this round into two contiguous blocks
            perm = where[layout]
            A = A[np.ix_(perm, perm)]
            V = V[:, perm]
            where[layout] = np.arange(n)

            k = np.arange(h)
            apq = A[k, h + k]
            app, aqq = A[k, k], A[h + k, h + k]
            nz = apq != 0.0
            tau = (aqq - app) / (2.0 * np.where(nz, apq, 1.0))
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(nz, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # A <- R^T A R with R[p,p]=R[q,q]=c, R[p,q]=s, R[q,p]=-s
            Ap, Aq = A[:, :h].copy(), A[:, h:2 * h].copy()
            A[:, :h] = c * Ap - s * Aq
            A[:, h:2 * h] = s * Ap + c * Aq
            Ap, Aq = A[:h, :].copy(), A[h:2 * h, :].copy()
            A[:h, :] = c[:, None] * Ap - s[:, None] * Aq
            A[h:2 * h, :] = s[:, None] * Ap + c[:, None] * Aq
            A[k, h + k] = 0.0
            A[h + k, k] = 0.0
            Vp, Vq = V[:, :h].copy(), V[:, h:2 * h].copy()
            V[:, :h] = c * Vp - s * Vq
            V[:, h:2 * h] = s * Vp + c * Vq

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def min_symmetric_eigenvalue(M) -> float:
    w, _ = jacobi_eigh(M)
    return float(w[0]) if w.size else 0.0

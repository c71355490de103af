"""Gradient-flow simulation and seeded random ensembles."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidParameters, NonFiniteState
from .graphs import Graph
from .landscape import DEFAULT_TOL, _grad, circular_diameter, energy, wrap


class Termination(str, enum.Enum):
    GRADIENT_VANISHED = "GradientVanished"
    TIME_EXHAUSTED = "TimeExhausted"
    NON_FINITE = "NonFiniteState"


@dataclass(frozen=True)
class IntegrationParams:
    dt: float = 0.01
    t_max: float = 1000.0
    stop_grad_norm: float = 1e-8
    record_every: int = 1
    max_dt: float = 0.1

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidParameters("dt must be positive")
        if self.dt > self.max_dt:
            raise InvalidParameters(f"dt={self.dt} exceeds the guard max_dt={self.max_dt}")
        if self.t_max < 0 or self.t_max / self.dt > 1e8:
            raise InvalidParameters("t_max must be >= 0 and t_max/dt <= 1e8")
        if self.record_every < 1:
            raise InvalidParameters("record_every must be >= 1")


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    termination: Termination

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def to_csv(self) -> str:
        n = self.states.shape[1]
        lines = [",".join(["t"] + [f"theta_{i}" for i in range(1, n + 1)])]
        for t, s in zip(self.times, self.states):
            lines.append(",".join(f"{x:.17g}" for x in (t, *s)))
        return "\n".join(lines) + "\n"


@dataclass
class TrialResult:
    seed: int
    termination: Termination
    final_diameter: float
    final_energy: float


@dataclass
class EnsembleReport:
    trials: int
    synchronized_count: int
    seed: int
    per_trial: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "synchronized_count": self.synchronized_count,
            "seed": self.seed,
            "per_trial": [
                {
                    "seed": r.seed,
                    "termination": r.termination.value,
                    "final_diameter": r.final_diameter,
                    "final_energy": r.final_energy,
                }
                for r in self.per_trial
            ],
        }


def _field(g: Graph):
    u, v = g.edge_index
    n = g.n
    return lambda th: -_grad(u, v, n, th)


def _check(g: Graph, theta) -> np.ndarray:
    th = np.array(theta, dtype=float)
    if th.ndim != 1 or th.shape[0] != g.n:
        raise DimensionMismatch(f"expected {g.n} angles, got shape {th.shape}")
    return th


def rk4_step(g: Graph, theta, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step of ``dtheta/dt = -grad E``."""
    if not dt > 0:
        raise InvalidParameters("dt must be positive")
    th = _check(g, theta)
    f = _field(g)
    return _rk4(f, th, dt, f(th))


def _rk4(f, th, dt, k1):
    k2 = f(th + 0.5 * dt * k1)
    k3 = f(th + 0.5 * dt * k2)
    k4 = f(th + dt * k3)
    return th + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(g: Graph, theta0, p: IntegrationParams = IntegrationParams()) -> Trajectory:
    """Integrate until the gradient norm drops below ``p.stop_grad_norm`` or time runs out.

    The state is stored unwrapped; wrap it with :func:`landscape.wrap` if needed.
    """
    f = _field(g)
    th = _check(g, theta0)
    if not np.all(np.isfinite(th)):
        raise NonFiniteState("initial state is not finite")
    times, states = [0.0], [th.copy()]
    step = 0
    t = 0.0
    while True:
        k1 = f(th)
        if np.linalg.norm(k1) < p.stop_grad_norm:
            term = Termination.GRADIENT_VANISHED
            break
        if t >= p.t_max:
            term = Termination.TIME_EXHAUSTED
            break
        th = _rk4(f, th, p.dt, k1)
        step += 1
        t = step * p.dt
        if not np.all(np.isfinite(th)):
            raise NonFiniteState(f"state became non-finite at t={t}; reduce dt")
        if step % p.record_every == 0:
            times.append(t)
            states.append(th.copy())
    if times[-1] != t:
        times.append(t)
        states.append(th.copy())
    return Trajectory(np.array(times), np.array(states), term)


def random_config(n: int, seed: int) -> np.ndarray:
    """I.i.d. uniform angles on (-pi, pi] from a Philox stream keyed by ``seed``."""
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=int(seed) % 2**64))
    return np.pi - 2 * np.pi * rng.random(n)


def trial_seed(master_seed: int, trial: int) -> int:
    """Per-trial key derived from ``(master_seed, trial)`` only."""
    ss = np.random.SeedSequence([int(master_seed) % 2**64, int(trial)])
    return int(ss.generate_state(1, np.uint64)[0])


def run_trial(g: Graph, seed: int, p: IntegrationParams = IntegrationParams()) -> TrialResult:
    theta0 = random_config(g.n, seed)
    try:
        traj = integrate(g, theta0, p)
    except NonFiniteState:
        return TrialResult(seed, Termination.NON_FINITE, float("nan"), float("nan"))
    final = wrap(traj.final)
    return TrialResult(seed, traj.termination, circular_diameter(final), energy(g, final))


def _run_trial_args(args):
    return run_trial(*args)


def ensemble(g: Graph, trials: int, master_seed: int,
             p: IntegrationParams = IntegrationParams(),
             sync_tol: float = DEFAULT_TOL.sync, workers: int = 1) -> EnsembleReport:
    """Run ``trials`` gradient flows from seeded random starts.

    A trial counts as synchronized iff the gradient vanished and the final
    circular diameter is below ``sync_tol``. Each trial depends only on
    ``(master_seed, trial index)``, so ``workers > 1`` gives the same report.
    """
    if trials < 1:
        raise InvalidParameters("trials must be >= 1")
    jobs = [(g, trial_seed(master_seed, t), p) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_trial_args, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_run_trial_args(j) for j in jobs]
    count = sum(
        r.termination == Termination.GRADIENT_VANISHED and r.final_diameter < sync_tol
        for r in results)
    return EnsembleReport(trials, int(count), int(master_seed), results)

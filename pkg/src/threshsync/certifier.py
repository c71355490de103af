"""Synchronization certificates for connected threshold graphs.

A certificate is an ordered list of local synchronization steps. Each step
names the vertex sets it acts on and the set of vertices known to share a
phase afterwards. Three kinds of steps are used:

``BaseClosedTwins``
    a set of pairwise closed twins (``N[i] = N[j]``) shares a phase at
    every second-order stationary point.
``TwinAttachment``
    vertices whose whole neighbourhood lies inside an already synchronized
    set ``S`` align with it.
``PendantExtension``
    a clique block ``S2`` joins a synchronized clique ``S1`` that carries
    synchronized pendant vertices ``Q``, when both share the outside
    neighbourhood ``P``.

Steps follow the block structure of the creation sequence, from the last
run of dominating vertices backwards.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyGraph, GraphMismatch, NotEquilibrium
from .graphs import Graph, ThresholdCode, _as_code, block_decomposition
from .landscape import Classification, Tolerances, circular_diameter, classify


class StepKind(str, enum.Enum):
    BASE_CLOSED_TWINS = "BaseClosedTwins"
    TWIN_ATTACHMENT = "TwinAttachment"
    PENDANT_EXTENSION = "PendantExtension"


_SET_KEYS = {
    StepKind.BASE_CLOSED_TWINS: ("S",),
    StepKind.TWIN_ATTACHMENT: ("attached", "S"),
    StepKind.PENDANT_EXTENSION: ("Q", "S1", "S2", "P"),
}


@dataclass(frozen=True)
class CertStep:
    kind: StepKind
    sets: dict
    synced_after: frozenset

    def new_vertices(self) -> frozenset:
        if self.kind == StepKind.BASE_CLOSED_TWINS:
            return frozenset(self.sets["S"])
        if self.kind == StepKind.TWIN_ATTACHMENT:
            return frozenset(self.sets["attached"])
        return frozenset(self.sets["S2"])

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "sets": {k: sorted(self.sets[k]) for k in _SET_KEYS[self.kind]},
            "synced_after": sorted(self.synced_after),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CertStep":
        kind = StepKind(d["kind"])
        sets = {k: frozenset(int(x) for x in d["sets"][k]) for k in _SET_KEYS[kind]}
        return cls(kind, sets, frozenset(int(x) for x in d["synced_after"]))


@dataclass(frozen=True)
class Certificate:
    code: ThresholdCode
    steps: tuple

    def to_dict(self) -> dict:
        return {"code": str(self.code), "steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(_as_code(d["code"]), tuple(CertStep.from_dict(s) for s in d["steps"]))


@dataclass
class StepResult:
    index: int
    kind: StepKind
    passed: bool
    reasons: list = field(default_factory=list)


@dataclass
class VerificationReport:
    steps: list
    monotone: bool
    complete: bool
    first_failure: int | None
    reason: str | None

    @property
    def passed(self) -> bool:
        return self.reason is None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "reason": self.reason,
            "first_failure": self.first_failure,
            "monotone": self.monotone,
            "complete": self.complete,
            "steps": [
                {"index": r.index, "kind": r.kind.value, "passed": r.passed,
                 "reasons": list(r.reasons)}
                for r in self.steps
            ],
        }


@dataclass
class AuditStep:
    index: int
    kind: StepKind
    passed: bool
    max_deviation: float


@dataclass
class AuditReport:
    classification: Classification
    steps: list
    first_failure: int | None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def to_dict(self) -> dict:
        return {
            "classification": self.classification.value,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "steps": [
                {"index": s.index, "kind": s.kind.value, "passed": s.passed,
                 "max_deviation": float(s.max_deviation)}
                for s in self.steps
            ],
        }


def certify(code) -> Certificate:
    """Build the block-induction certificate for a connected code.

    With blocks ``I_1, U_1, ..., I_k, U_k`` the steps are
    ``BaseClosedTwins(U_k)``, then for ``m = 1..k-1`` a ``TwinAttachment``
    of ``I_{k-m+1}`` and a ``PendantExtension`` adding ``U_{k-m}``, and
    finally the attachment of ``I_1``. That is ``2k`` steps.
    """
    code = _as_code(code)
    if len(code) == 0:
        raise EmptyGraph("a single vertex has nothing to certify")
    blocks = block_decomposition(code)
    I, U = blocks.i_blocks, blocks.u_blocks
    k = len(U)
    steps = []
    synced = frozenset(U[k - 1])
    steps.append(CertStep(StepKind.BASE_CLOSED_TWINS, {"S": frozenset(U[k - 1])}, synced))
    for m in range(1, k):
        top = k - m  # 0-based index of U_{k-m+1} and I_{k-m+1}
        S1 = frozenset().union(*U[top:])
        attached = frozenset(I[top])
        synced = synced | attached
        steps.append(CertStep(StepKind.TWIN_ATTACHMENT,
                              {"attached": attached, "S": S1}, synced))
        Q = frozenset().union(*I[top:])
        S2 = frozenset(U[top - 1])
        first_s2 = min(S2)
        P = frozenset(range(1, first_s2))
        synced = synced | S2
        steps.append(CertStep(StepKind.PENDANT_EXTENSION,
                              {"Q": Q, "S1": S1, "S2": S2, "P": P}, synced))
    S_all = frozenset().union(*U)
    synced = synced | frozenset(I[0])
    steps.append(CertStep(StepKind.TWIN_ATTACHMENT,
                          {"attached": frozenset(I[0]), "S": S_all}, synced))
    return Certificate(code, tuple(steps))


def step_problems(g: Graph, step: CertStep, synced_before) -> list[str]:
    """Reasons why ``step`` is not a valid application; empty when it is."""
    before = frozenset(synced_before)
    V = frozenset(g.vertices)
    probs = []
    sets = step.sets
    missing = [k for k in _SET_KEYS[step.kind] if k not in sets]
    if missing:
        return [f"missing sets {missing}"]
    for name in _SET_KEYS[step.kind]:
        if not frozenset(sets[name]) <= V:
            probs.append(f"{name} contains vertices outside the graph")
    if probs:
        return probs

    if step.kind == StepKind.BASE_CLOSED_TWINS:
        S = frozenset(sets["S"])
        if not S:
            probs.append("S is empty")
        closed = {g.closed_neighbors(i) for i in S}
        if len(closed) > 1:
            probs.append("S is not a set of closed twins")

    elif step.kind == StepKind.TWIN_ATTACHMENT:
        A, S = frozenset(sets["attached"]), frozenset(sets["S"])
        if not A:
            probs.append("attached set is empty")
        if not S <= before:
            probs.append("S is not synchronized yet")
        for a in sorted(A):
            if not g.neighbors(a):
                probs.append(f"vertex {a} has no neighbours")
            elif not g.neighbors(a) <= S:
                probs.append(f"N({a}) is not inside S")

    else:
        Q, S1, S2, P = (frozenset(sets[k]) for k in ("Q", "S1", "S2", "P"))
        parts = (Q, S1, S2, P)
        if sum(len(x) for x in parts) != len(frozenset().union(*parts)):
            probs.append("Q, S1, S2, P are not disjoint")
        if not S1 or not S2:
            probs.append("S1 and S2 must be nonempty")
        for i in sorted(Q):
            if not g.neighbors(i) <= S1:
                probs.append(f"N({i}) is not inside S1")
        clique = S1 | S2
        for i in sorted(clique):
            expected = P | (g.neighbors(i) & Q) | (clique - {i})
            if g.neighbors(i) != expected:
                probs.append(f"N({i}) is not P + its Q-neighbours + rest of the clique")
        if not (Q | S1) <= before:
            probs.append("Q and S1 are not synchronized yet")

    after = frozenset(step.synced_after)
    if after != before | step.new_vertices():
        probs.append("synced_after is not synced_before plus the new vertices")
    if not after > before:
        probs.append("synced set does not grow")
    return probs


def check_step(g: Graph, step: CertStep, synced_before) -> bool:
    return not step_problems(g, step, synced_before)


def verify_certificate(g: Graph, cert: Certificate) -> VerificationReport:
    if g.n != cert.code.n:
        raise GraphMismatch(f"graph has {g.n} vertices, code describes {cert.code.n}")
    synced = frozenset()
    results = []
    monotone = True
    first = None
    for idx, step in enumerate(cert.steps):
        probs = step_problems(g, step, synced)
        if not frozenset(step.synced_after) > synced:
            monotone = False
        results.append(StepResult(idx, step.kind, not probs, probs))
        if probs and first is None:
            first = idx
        synced = frozenset(step.synced_after)
    complete = synced == frozenset(g.vertices)
    reason = None
    if first is not None:
        reason = "NotMonotone" if not monotone else "PreconditionFailed"
    elif not complete:
        reason = "IncompleteCover"
    return VerificationReport(results, monotone, complete, first, reason)


def audit_config(g: Graph, cert: Certificate, theta, tol: float = 1e-6,
                 landscape_tol: Tolerances = Tolerances()) -> AuditReport:
    """Check the phase equalities asserted by each step at ``theta``.

    Step ``i`` passes when all of ``synced_after`` lie within ``tol``
    circular diameter of one another.
    """
    if g.n != cert.code.n:
        raise GraphMismatch(f"graph has {g.n} vertices, code describes {cert.code.n}")
    th = np.asarray(theta, dtype=float)
    rep = classify(g, th, landscape_tol)
    if rep.classification == Classification.NOT_EQUILIBRIUM:
        raise NotEquilibrium(f"gradient norm {rep.gradient_norm:.3g} above tolerance")
    out = []
    first = None
    for idx, step in enumerate(cert.steps):
        members = np.array(sorted(step.synced_after), dtype=int) - 1
        dev = circular_diameter(th[members])
        ok = dev < tol
        out.append(AuditStep(idx, step.kind, ok, dev))
        if not ok and first is None:
            first = idx
    return AuditReport(rep.classification, out, first)

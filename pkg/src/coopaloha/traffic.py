"""Temporal degree distributions and per-frame slot activation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class TemporalDegreeDistribution:
    """Finite-support pmf over the number of replicas a user sends.

    ``probabilities[q - 1]`` is the probability of sending ``q`` replicas.
    """

    probabilities: tuple

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a non-empty vector")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError(f"probabilities must be finite and >= 0: {p.tolist()}")
        total = p.sum()
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        p = p / total
        nz = np.flatnonzero(p)
        p = p[: nz[-1] + 1]
        object.__setattr__(self, "probabilities", tuple(float(v) for v in p))

    @classmethod
    def from_pairs(cls, pairs) -> "TemporalDegreeDistribution":
        pairs = [(int(q), float(prob)) for q, prob in pairs]
        if not pairs:
            raise ValueError("empty distribution")
        qmax = max(q for q, _ in pairs)
        if min(q for q, _ in pairs) < 1:
            raise ValueError("degrees must be >= 1")
        p = [0.0] * qmax
        for q, prob in pairs:
            if p[q - 1]:
                raise ValueError(f"degree {q} given twice")
            p[q - 1] = prob
        return cls(tuple(p))

    @classmethod
    def parse(cls, text: str) -> "TemporalDegreeDistribution":
        """Parse ``"q:p,q:p"``, e.g. ``"2:1.0"`` or ``"1:0.5,3:0.5"``."""
        pairs = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            try:
                q, prob = item.split(":")
                pairs.append((int(q), float(prob)))
            except ValueError:
                raise ValueError(f"bad degree-distribution term {item!r}, want q:p") from None
        return cls.from_pairs(pairs)

    @property
    def q_max(self) -> int:
        return len(self.probabilities)

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(1, self.q_max + 1)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probabilities)

    def pairs(self) -> list:
        return [(q, p) for q, p in zip(range(1, self.q_max + 1), self.probabilities) if p > 0]


def mean_degree(dist: TemporalDegreeDistribution) -> float:
    return float(np.dot(dist.degrees, dist.as_array()))


@dataclass(frozen=True)
class FramePlan:
    """Activation slots per user; slots are numbered 1..tau."""

    tau: int
    activation: tuple

    @property
    def n(self) -> int:
        return len(self.activation)

    def temporal_degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.activation], dtype=int)


def sample_frame_plan(dist, n, tau, rng=None) -> FramePlan:
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if dist.q_max > tau:
        raise ValueError(f"q_max={dist.q_max} exceeds tau={tau}")
    rng = np.random.default_rng(rng)
    q = rng.choice(dist.degrees, size=n, p=dist.as_array())
    # partial Fisher-Yates, vectorized across users: the first j columns
    # are a uniform j-subset for every j <= q_max
    slots = np.tile(np.arange(1, tau + 1), (n, 1))
    rows = np.arange(n)
    for j in range(dist.q_max):
        k = rng.integers(j, tau, size=n)
        tmp = slots[rows, j].copy()
        slots[rows, j] = slots[rows, k]
        slots[rows, k] = tmp
    activation = tuple(np.sort(slots[i, : q[i]]) for i in range(n))
    return FramePlan(int(tau), activation)


def plan_from_slots(tau, activation) -> FramePlan:
    """Build a plan from explicit 1-based slot lists (fixtures, tests)."""
    acts = []
    for a in activation:
        a = np.unique(np.asarray(a, dtype=int))
        if a.size == 0 or a[0] < 1 or a[-1] > tau:
            raise ValueError(f"activation {a.tolist()} not a non-empty subset of 1..{tau}")
        acts.append(a)
    return FramePlan(int(tau), tuple(acts))

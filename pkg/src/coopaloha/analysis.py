"""Asymptotic degree polynomials, and-or-tree evolution and load thresholds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .traffic import TemporalDegreeDistribution, mean_degree

FIXPOINT_TOL = 1e-12
DE_ITERATIONS = 10_000
DE_SUCCESS = 1 - 1e-4


@dataclass(frozen=True)
class AsymptoticParams:
    """Mean spatial degree ``delta``, normalized load ``G`` and the
    temporal degree distribution."""

    delta: float
    G: float
    dist: TemporalDegreeDistribution

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.G >= 0:
            raise ValueError(f"G must be >= 0, got {self.G}")

    @property
    def lam(self) -> float:
        return mean_degree(self.dist)


@dataclass(frozen=True)
class AndOrState:
    p: float
    q: float
    s: int


def _unit(x):
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(xa > 1) or np.any(np.isnan(xa)):
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return xa


def _out(v, x):
    return float(v) if np.ndim(x) == 0 else v


def Gamma(x, params: AsymptoticParams):
    """Node-oriented user degree polynomial, sum_q L_q exp(-delta (1 - x^q))."""
    xa = _unit(x)
    v = sum(
        lq * np.exp(-params.delta * (1 - xa**q))
        for q, lq in params.dist.pairs()
    )
    return _out(v, x)


def gamma_edge(x, params: AsymptoticParams):
    """Edge-oriented user degree polynomial ``Gamma'(x) / Gamma'(1)``."""
    xa = _unit(x)
    lam = params.lam
    v = sum(
        q * lq / lam * xa ** (q - 1) * np.exp(-params.delta * (1 - xa**q))
        for q, lq in params.dist.pairs()
    )
    return _out(v, x)


def chi(x, params: AsymptoticParams):
    """Edge-oriented check degree polynomial (Poisson, mean G*delta*lambda)."""
    xa = _unit(x)
    v = np.exp(-params.G * params.delta * params.lam * (1 - xa))
    return _out(v, x)


def and_or_iterates(params: AsymptoticParams, S: int) -> Iterator[AndOrState]:
    """Yield the and-or-tree states for s = 0..S, stopping at a fixpoint."""
    p = q = 1.0
    yield AndOrState(p, q, 0)
    for s in range(1, S + 1):
        # clamp away rounding: gamma_edge(1) may exceed 1 by an ulp
        q = min(gamma_edge(p, params), 1.0)
        p_new = min(max(1.0 - chi(1.0 - q, params), 0.0), 1.0)
        done = abs(p_new - p) < FIXPOINT_TOL
        p = p_new
        yield AndOrState(p, q, s)
        if done:
            return


def and_or_tree(params: AsymptoticParams, S: int = DE_ITERATIONS) -> tuple[float, float]:
    """Return ``(p_S, 1 - Gamma(p_S))``; the second value is a heuristic
    estimate of the spatio-temporal decoding probability."""
    if S < 1:
        raise ValueError(f"S must be >= 1, got {S}")
    for state in and_or_iterates(params, S):
        pass
    return state.p, 1.0 - Gamma(state.p, params)


def single_station_de(dist: TemporalDegreeDistribution, H: float, S: int = DE_ITERATIONS) -> float:
    """Density-evolution decoding probability of one receiver hearing every
    user, at load ``H`` users per slot."""
    if H < 0:
        raise ValueError(f"H must be >= 0, got {H}")
    lam = mean_degree(dist)
    pairs = dist.pairs()
    p = 1.0
    for _ in range(S):
        q = sum(k * lk / lam * p ** (k - 1) for k, lk in pairs)
        p_new = 1.0 - math.exp(-H * lam * q)
        done = abs(p_new - p) < FIXPOINT_TOL
        p = p_new
        if done:
            break
    return 1.0 - sum(lk * p**k for k, lk in pairs)


def find_threshold_H(dist: TemporalDegreeDistribution, tol: float = 1e-3,
                     S: int = DE_ITERATIONS, success: float = DE_SUCCESS) -> float:
    """Largest load on [0, 1] whose single-station decoding probability is
    at least ``success``, located by bisection to within ``tol``."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lo, hi = 0.0, 1.0
    if single_station_de(dist, hi, S) >= success:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if single_station_de(dist, mid, S) >= success:
            lo = mid
        else:
            hi = mid
    return lo


def theorem1_bound(delta: float, H_star: float) -> float:
    """Lower bound ``H* / (8 e delta)`` on the cooperative load threshold."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if H_star < 0:
        raise ValueError(f"H_star must be >= 0, got {H_star}")
    return H_star / (8 * math.e * delta)


def coverage_probability(delta: float) -> float:
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return -math.expm1(-delta)


def peak_throughput_bound(delta: float, H_star: float) -> float:
    return theorem1_bound(delta, H_star) * coverage_probability(delta)

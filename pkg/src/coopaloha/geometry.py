"""Random placements on the unit square and radius-r adjacency."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

HALF_SIDE = 0.5

# distance matrix is built in row blocks of this many users
_CHUNK = 4096


class Point2D(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Deployment:
    """Users, base stations and the closed-disc adjacency between them.

    ``adjacency[i]`` is a sorted int array of the stations within distance
    ``radius`` of user ``i``.
    """

    user_positions: np.ndarray
    station_positions: np.ndarray
    radius: float
    adjacency: tuple

    @property
    def n(self) -> int:
        return len(self.user_positions)

    @property
    def m(self) -> int:
        return len(self.station_positions)

    def spatial_degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=int)

    def covered(self) -> np.ndarray:
        return self.spatial_degrees() > 0

    def station_adjacency(self) -> list[np.ndarray]:
        """Transpose of ``adjacency``: for each station, the users it hears."""
        out: list[list[int]] = [[] for _ in range(self.m)]
        for i, stations in enumerate(self.adjacency):
            for l in stations:
                out[l].append(i)
        return [np.array(u, dtype=int) for u in out]


def place_uniform(count, square_half_side=HALF_SIDE, rng=None) -> np.ndarray:
    """Return a ``(count, 2)`` array of i.i.d. uniform points on the square."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if square_half_side <= 0:
        raise ValueError(f"square_half_side must be positive, got {square_half_side}")
    rng = np.random.default_rng(rng)
    return rng.uniform(-square_half_side, square_half_side, size=(count, 2))


def adjacency_lists(users, stations, r) -> tuple:
    users = np.asarray(users, dtype=float).reshape(-1, 2)
    stations = np.asarray(stations, dtype=float).reshape(-1, 2)
    r2 = r * r
    out = []
    for start in range(0, len(users), _CHUNK):
        block = users[start:start + _CHUNK]
        d2 = ((block[:, None, :] - stations[None, :, :]) ** 2).sum(axis=2)
        hits = d2 <= r2
        out.extend(np.flatnonzero(row) for row in hits)
    return tuple(out)


def deployment_from_positions(users, stations, r) -> Deployment:
    """Build a deployment from explicit coordinates (used for fixtures)."""
    if not 0 < r < HALF_SIDE:
        raise ValueError(f"radius must lie in (0, 1/2), got {r}")
    users = np.asarray(users, dtype=float).reshape(-1, 2)
    stations = np.asarray(stations, dtype=float).reshape(-1, 2)
    if np.any(np.abs(users) > HALF_SIDE) or np.any(np.abs(stations) > HALF_SIDE):
        raise ValueError("positions must lie in the unit square [-1/2, 1/2]^2")
    return Deployment(users, stations, float(r), adjacency_lists(users, stations, r))


def build_deployment(n, m, r, rng=None) -> Deployment:
    if n < 1 or m < 1:
        raise ValueError(f"n and m must be >= 1, got n={n}, m={m}")
    if not 0 < r < HALF_SIDE:
        raise ValueError(f"radius must lie in (0, 1/2), got {r}")
    rng = np.random.default_rng(rng)
    users = place_uniform(n, HALF_SIDE, rng)
    stations = place_uniform(m, HALF_SIDE, rng)
    return Deployment(users, stations, float(r), adjacency_lists(users, stations, r))


def is_nominal(p, r) -> bool:
    """True when ``p`` lies in the interior square of half-side 1/2 - 2r."""
    x, y = p
    lim = HALF_SIDE - 2 * r
    return abs(x) <= lim and abs(y) <= lim


def nominal_mask(points, r) -> np.ndarray:
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    return np.all(np.abs(points) <= HALF_SIDE - 2 * r, axis=1)


def radius_for_delta(delta, m) -> float:
    """Radius giving mean spatial degree ``delta`` with ``m`` stations."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    r = math.sqrt(delta / (m * math.pi))
    if r >= HALF_SIDE:
        raise ValueError(f"delta={delta} with m={m} gives r={r:.4f} >= 1/2")
    return r

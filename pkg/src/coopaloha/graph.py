"""Bipartite user / (station, slot) graph of one frame."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SystemGraph:
    """Users on one side, check nodes ``(l, t)`` on the other.

    Check ``(l, t)`` (station ``l`` in ``0..m-1``, slot ``t`` in ``1..tau``)
    has flat id ``l * tau + t - 1``. ``user_edges[i]`` and ``check_edges[c]``
    are sorted int arrays and are transposes of each other.
    ``user_stations[i]`` is the user's adjacency list in the deployment.
    """

    n_users: int
    m_stations: int
    tau: int
    user_edges: tuple
    check_edges: tuple
    user_stations: tuple
    user_slots: tuple

    @property
    def n_checks(self) -> int:
        return self.m_stations * self.tau

    def check_id(self, l, t) -> int:
        if not (0 <= l < self.m_stations and 1 <= t <= self.tau):
            raise ValueError(f"no check node ({l}, {t})")
        return l * self.tau + t - 1

    def check_node(self, c) -> tuple[int, int]:
        l, t0 = divmod(int(c), self.tau)
        return l, t0 + 1

    def user_degrees(self) -> np.ndarray:
        return np.array([len(e) for e in self.user_edges], dtype=int)

    def check_degrees(self) -> np.ndarray:
        return np.array([len(e) for e in self.check_edges], dtype=int)

    def n_edges(self) -> int:
        return int(self.user_degrees().sum())

    def covered(self) -> np.ndarray:
        return np.array([len(s) > 0 for s in self.user_stations], dtype=bool)

    def dump(self) -> str:
        """One line per check node: ``"l t: u1 u2 ..."``."""
        lines = []
        for c, users in enumerate(self.check_edges):
            l, t = self.check_node(c)
            lines.append(f"{l} {t}: " + " ".join(str(u) for u in users))
        return "\n".join(lines) + "\n"


def graph_from_lists(n_users, m_stations, tau, user_stations, user_slots) -> SystemGraph:
    if len(user_stations) != n_users or len(user_slots) != n_users:
        raise ValueError(
            f"got {len(user_stations)} adjacency lists and {len(user_slots)} "
            f"activation sets for {n_users} users"
        )
    user_stations = tuple(np.asarray(s, dtype=int) for s in user_stations)
    user_slots = tuple(np.asarray(s, dtype=int) for s in user_slots)
    user_edges = []
    for st, sl in zip(user_stations, user_slots):
        user_edges.append(np.sort((st[:, None] * tau + (sl[None, :] - 1)).ravel()))
    n_checks = m_stations * tau
    if n_users:
        flat = np.concatenate(user_edges)
        owner = np.repeat(np.arange(n_users), [len(e) for e in user_edges])
    else:
        flat = owner = np.zeros(0, dtype=int)
    order = np.lexsort((owner, flat))
    flat, owner = flat[order], owner[order]
    bounds = np.searchsorted(flat, np.arange(n_checks + 1))
    check_edges = tuple(owner[bounds[c]:bounds[c + 1]] for c in range(n_checks))
    return SystemGraph(
        n_users=int(n_users),
        m_stations=int(m_stations),
        tau=int(tau),
        user_edges=tuple(user_edges),
        check_edges=check_edges,
        user_stations=user_stations,
        user_slots=user_slots,
    )


def build_graph(dep, plan) -> SystemGraph:
    if dep.n != plan.n:
        raise ValueError(f"deployment has {dep.n} users but frame plan has {plan.n}")
    return graph_from_lists(dep.n, dep.m, plan.tau, dep.adjacency, plan.activation)


def empirical_check_degree_stats(g: SystemGraph, stations=None):
    """Mean, variance and histogram (index = degree) of check-node degrees.

    ``stations`` optionally restricts the statistics to the check nodes of
    the given stations (index array or boolean mask), e.g. nominal ones.
    """
    deg = g.check_degrees()
    if stations is not None:
        idx = np.arange(g.m_stations)[np.asarray(stations)]
        deg = deg.reshape(g.m_stations, g.tau)[idx].ravel()
    if deg.size == 0:
        return 0.0, 0.0, np.zeros(1, dtype=int)
    return float(deg.mean()), float(deg.var()), np.bincount(deg)

"""Peeling decoders on a :class:`~coopaloha.graph.SystemGraph`.

All four decoders share one rule: a check node holding exactly one
uncancelled user yields that user. They differ in where the decoded user is
then cancelled:

* non-cooperative: nowhere (only clean slots of the original graph count),
* temporal: in every slot of the station that decoded it,
* spatial: at every station, but only in the slot it was decoded in,
* spatio-temporal: everywhere.

Signals are modelled as sets of user ids, so cancellation is exact.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

import numpy as np

NONCOOP = "noncoop"
SPATIAL = "spatial"
TEMPORAL = "temporal"
SPATIOTEMPORAL = "spatiotemporal"
DECODER_NAMES = (NONCOOP, SPATIAL, SPATIOTEMPORAL, TEMPORAL)


@dataclass
class DecodingResult:
    collected: np.ndarray
    resolved_checks: np.ndarray
    iterations_used: int
    # station that first decoded each user, -1 if never collected
    collector: np.ndarray
    trace: list = field(default_factory=list, repr=False)

    def collected_set(self) -> frozenset:
        return frozenset(np.flatnonzero(self.collected).tolist())

    @property
    def n_collected(self) -> int:
        return int(self.collected.sum())


def _rank(g, order):
    if order is None:
        return np.arange(g.n_checks)
    order = np.asarray(order, dtype=int)
    if sorted(order.tolist()) != list(range(g.n_checks)):
        raise ValueError("order must be a permutation of the check ids")
    rank = np.empty(g.n_checks, dtype=int)
    rank[order] = np.arange(g.n_checks)
    return rank


def _peel(g, group_of, order=None) -> DecodingResult:
    """Round-based peeling with cancellation restricted to a check group.

    Each round decodes every check that is a singleton at the start of the
    round, then cancels each decoded user from the checks sharing the
    decoding check's group.
    """
    rank = _rank(g, order).tolist()
    group_of = np.asarray(group_of).tolist()
    edges = [e.tolist() for e in g.user_edges]
    res = [set(e.tolist()) for e in g.check_edges]
    collected = np.zeros(g.n_users, dtype=bool)
    collector = np.full(g.n_users, -1, dtype=int)
    done = set()
    frontier = [c for c in range(g.n_checks) if len(res[c]) == 1]
    rounds = 0
    while True:
        frontier.sort(key=rank.__getitem__)
        singles = [(c, next(iter(res[c]))) for c in frontier if len(res[c]) == 1]
        if not singles:
            break
        rounds += 1
        first = {}
        for c, u in singles:
            if u not in first or c < first[u]:
                first[u] = c
        for u, c in first.items():
            if not collected[u]:
                collected[u] = True
                collector[u] = c // g.tau
        touched = set()
        for c, u in singles:
            key = (u, group_of[c])
            if key in done:
                continue
            done.add(key)
            for c2 in edges[u]:
                if group_of[c2] == key[1]:
                    res[c2].discard(u)
                    touched.add(c2)
        frontier = [c for c in touched if len(res[c]) == 1]
    resolved = np.array([not r for r in res], dtype=bool)
    return DecodingResult(collected, resolved, rounds, collector)


def decode_noncooperative(g, order=None) -> DecodingResult:
    return _peel(g, np.arange(g.n_checks), order)


def decode_temporal(g, order=None) -> DecodingResult:
    """Each station runs SIC over its own slots in isolation."""
    return _peel(g, np.arange(g.n_checks) // g.tau, order)


def decode_spatial(g, order=None) -> DecodingResult:
    """Per-slot SIC across stations; nothing crosses slot boundaries."""
    return _peel(g, np.arange(g.n_checks) % g.tau, order)


def decode_graph_cleaning(g, order=None) -> DecodingResult:
    """Spatio-temporal decoding as plain peeling of the whole graph.

    Each round removes every user adjacent to a degree-1 check together
    with all of its edges.
    """
    return _peel(g, np.zeros(g.n_checks, dtype=int), order)


def decode_spatiotemporal(g, max_iterations=None, order=None, trace=False) -> DecodingResult:
    """Cooperative decoding by message passing between stations.

    Every iteration each station runs temporal SIC to a fixpoint and
    broadcasts what it collected to all stations adjacent to those users;
    stations whose checks are all resolved leave, and the rest cancel the
    newly received users from their slots. Runs at most ``max_iterations``
    iterations (default ``tau * m``) and stops early once an iteration
    collects nobody.

    ``iterations_used`` counts the iterations that collected at least one
    user. With ``trace=True`` the result carries ``(s, station, event,
    user)`` tuples, ``event`` one of ``temporal-collect``,
    ``spatial-cancel`` and ``exit``.
    """
    tau, m = g.tau, g.m_stations
    cap = tau * m if max_iterations is None else int(max_iterations)
    if cap < 1:
        raise ValueError(f"max_iterations must be >= 1, got {cap}")
    rank = _rank(g, order)
    station_order = sorted(range(m), key=lambda l: rank[l * tau: (l + 1) * tau].min())
    rank = rank.tolist()
    slots = [a.tolist() for a in g.user_slots]
    neighbours = [a.tolist() for a in g.user_stations]
    res = [set(e.tolist()) for e in g.check_edges]
    collected = np.zeros(g.n_users, dtype=bool)
    collector = np.full(g.n_users, -1, dtype=int)
    events = []
    active = [True] * m
    dirty = [True] * m
    used = 0

    def local_sic(l, s):
        base = l * tau
        local = sorted(range(base, base + tau), key=rank.__getitem__)
        queue = deque(c for c in local if len(res[c]) == 1)
        out = []
        while queue:
            c = queue.popleft()
            if len(res[c]) != 1:
                continue
            (u,) = res[c]
            out.append(u)
            if not collected[u]:
                collected[u] = True
                collector[u] = l
            if trace:
                events.append((s, l, "temporal-collect", u))
            for t in slots[u]:
                c2 = base + t - 1
                res[c2].discard(u)
                if len(res[c2]) == 1:
                    queue.append(c2)
        return out

    for s in range(1, cap + 1):
        # step 1: temporal SIC and transmit
        out = {}
        for l in station_order:
            if active[l] and dirty[l]:
                out[l] = local_sic(l, s)
                dirty[l] = False
        inbox = defaultdict(set)
        progress = False
        for l, users in out.items():
            progress = progress or bool(users)
            for u in users:
                for l2 in neighbours[u]:
                    if l2 != l:
                        inbox[l2].add(u)
        if progress:
            used = s
        # step 2: check termination
        for l in station_order:
            if not active[l]:
                continue
            if s == cap or not any(res[l * tau: (l + 1) * tau]):
                active[l] = False
                if trace:
                    events.append((s, l, "exit", None))
        if not progress:
            break
        # step 3: receive and spatial IC
        for l in station_order:
            if not active[l]:
                continue
            new = inbox.get(l, set()).difference(out.get(l, ()))
            for u in sorted(new):
                hit = False
                for t in slots[u]:
                    c = l * tau + t - 1
                    if u in res[c]:
                        res[c].discard(u)
                        hit = True
                if hit:
                    dirty[l] = True
                    if trace:
                        events.append((s, l, "spatial-cancel", u))
    resolved = np.array([not r for r in res], dtype=bool)
    return DecodingResult(collected, resolved, used, collector, events)


DECODERS = {
    NONCOOP: decode_noncooperative,
    SPATIAL: decode_spatial,
    TEMPORAL: decode_temporal,
    SPATIOTEMPORAL: decode_spatiotemporal,
}


def decode(name, g, **kwargs) -> DecodingResult:
    try:
        fn = DECODERS[name]
    except KeyError:
        raise ValueError(f"unknown decoder {name!r}; choose from {sorted(DECODERS)}") from None
    return fn(g, **kwargs)


def count_metrics(res: DecodingResult, g) -> tuple[float, float]:
    """``(fraction collected, collected users per station per slot)``."""
    k = res.n_collected
    frac = k / g.n_users if g.n_users else 0.0
    return frac, k / (g.tau * g.m_stations)


def format_trace(events) -> str:
    lines = []
    for s, l, event, u in events:
        lines.append(f"s={s} B{l} {event}" + ("" if u is None else f" U{u}"))
    return "\n".join(lines)

import itertools
import math

import numpy as np
import pytest

from coopaloha.geometry import build_deployment
from coopaloha.graph import build_graph, graph_from_lists
from coopaloha.traffic import TemporalDegreeDistribution, sample_frame_plan

LAMBDA2 = TemporalDegreeDistribution.from_pairs([(2, 1.0)])


@pytest.fixture
def lambda2():
    return LAMBDA2


def random_instance(rng, m=None, tau=None, n=None, delta=None):
    """Random geometric instance of modest size."""
    m = m or int(rng.integers(2, 9))
    tau = tau or int(rng.integers(2, 7))
    delta = delta or float(rng.uniform(0.5, 4.0))
    n = n if n is not None else int(rng.integers(1, 3 * m * tau // 2 + 2))
    r = min(math.sqrt(delta / (m * math.pi)), 0.45)
    dist = TemporalDegreeDistribution.from_pairs([(1, 0.3), (2, 0.5), (min(3, tau), 0.2)]
                                                 if tau >= 3 else [(1, 0.4), (2, 0.6)])
    dep = build_deployment(n, m, r, rng)
    return build_graph(dep, sample_frame_plan(dist, n, tau, rng))


def _bits(x):
    return [i for i in range(x.bit_length()) if x >> i & 1]


def user_types(m, tau):
    """(station mask, slot mask) pairs of covered users."""
    return [(a, b) for a in range(1, 2**m) for b in range(1, 2**tau)]


def _perm_maps(m, tau):
    types = user_types(m, tau)
    index = {t: k for k, t in enumerate(types)}
    maps = []
    for ps in itertools.permutations(range(m)):
        for pt in itertools.permutations(range(tau)):
            row = []
            for a, b in types:
                a2 = sum(1 << ps[i] for i in _bits(a))
                b2 = sum(1 << pt[i] for i in _bits(b))
                row.append(index[(a2, b2)])
            maps.append(row)
    return np.array(maps)


def canonical_multisets(m, tau, n, batch=200_000):
    """Yield one multiset of user types per orbit under station and slot
    relabeling (the lexicographically smallest sorted representative)."""
    maps = _perm_maps(m, tau)
    it = itertools.combinations_with_replacement(range(len(maps[0])), n)
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return
        a = np.array(chunk)
        keep = np.ones(len(a), dtype=bool)
        for row in maps[1:]:
            b = np.sort(row[a], axis=1)
            diff = b != a
            first = diff.argmax(axis=1)
            has = diff.any(axis=1)
            smaller = has & (b[np.arange(len(a)), first] < a[np.arange(len(a)), first])
            keep &= ~smaller
        yield from a[keep]


def graph_from_types(m, tau, combo):
    types = user_types(m, tau)
    stations = [_bits(types[c][0]) for c in combo]
    slots = [[s + 1 for s in _bits(types[c][1])] for c in combo]
    return graph_from_lists(len(combo), m, tau, stations, slots)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, detail) in results.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")

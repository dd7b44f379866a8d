"""Small hand-checkable decoding instances.

Users and stations are 0-based (``U0`` is the first user), slots 1-based.

* ``F1``: one station, two users, two slots; U0 sends in {1, 2}, U1 in {1}.
* ``F2``: two stations, one slot; U0 reaches both, U1 reaches B0 only.
* ``F3``: two stations, two slots; B0 hears U0 {1, 2} and U1 {1}, B1 hears
  only U0.
* ``FIG1``: four users and three stations, three slots, built from
  coordinates so the geometry path is exercised too. U0 sits between B0 and
  B1; U1 and U3 reach only B0, U2 only B1, and B2 hears nobody. Each
  decoder collects a different set here.
"""

from __future__ import annotations

from .geometry import deployment_from_positions
from .graph import build_graph, graph_from_lists
from .traffic import plan_from_slots


def f1():
    return graph_from_lists(2, 1, 2, [[0], [0]], [[1, 2], [1]])


def f2():
    return graph_from_lists(2, 2, 1, [[0, 1], [0]], [[1], [1]])


def f3():
    return graph_from_lists(2, 2, 2, [[0, 1], [0]], [[1, 2], [1]])


FIG1_STATIONS = [(-0.1, 0.0), (0.1, 0.0), (0.4, 0.4)]
FIG1_USERS = [(0.0, 0.0), (-0.2, 0.0), (0.2, 0.0), (-0.1, 0.1)]
FIG1_SLOTS = [[1, 2, 3], [1, 2], [1, 2], [3]]
FIG1_RADIUS = 0.12


def fig1():
    dep = deployment_from_positions(FIG1_USERS, FIG1_STATIONS, FIG1_RADIUS)
    return build_graph(dep, plan_from_slots(3, FIG1_SLOTS))


FIXTURES = {"F1": f1, "F2": f2, "F3": f3, "FIG1": fig1}

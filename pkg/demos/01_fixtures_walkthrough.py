"""Walk through the four-user layout and watch each decoder peel it."""

from coopaloha import fixtures
from coopaloha.decoders import DECODER_NAMES, decode, format_trace

g = fixtures.fig1()

# three stations, three slots; each check node is one (station, slot) pair
print(g.dump())
print()

# every decoder collects U0, which is alone in slot 3 at station B1
# only the spatio-temporal decoder gets all four users
for name in DECODER_NAMES:
    got = sorted(decode(name, g).collected_set())
    print(f"{name:15s}", " ".join(f"U{u}" for u in got))
print()

# the trace shows the order of events: B1 peels U0 and U2 on its own,
# passes U0 to B0, and B0 can then read U1 in slot 1
res = decode("spatiotemporal", g, trace=True)
print(format_trace(res.trace))
print("iterations used:", res.iterations_used)
print("collected by station:", res.collector.tolist())

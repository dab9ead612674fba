"""
Playing the chip-firing game
============================

A vertex holding at least as many chips as its out-degree may fire, sending
one chip along each out-arc.  Whether a game stops is decided by the starting
distribution alone, not by the order of firings.
"""

from chipfire import decide_termination, load_fixture, play

g = load_fixture("G2")
print(g)
print("out-degrees:", g.out_degree)

# two chips on vertex 0 keep circulating forever
trace = play(g, [2, 0, 0, 0])
print(trace.to_log(g.laplacian()))
print("fires per vertex inside the cycle:", trace.cycle_fire_counts())

# one chip each on vertices 0 and 1 is already stable
print(decide_termination(g, [1, 1, 0, 0]))

# every strategy reaches the same verdict; when the game stops, it stops
# after the same number of moves in the same place
g3 = load_fixture("G3")
for x in ([0, 0, 1, 3], [0, 0, 2, 2]):
    for strategy in ("lowest", "highest", "rotating"):
        t = play(g3, x, strategy=strategy)
        print(f"{x} {strategy:>8}: terminated={t.terminated} moves={t.moves} final={t.final_state}")

# above |E| - |V| chips nothing can terminate
print("bound:", g.termination_bound)
print(decide_termination(g, [g.termination_bound + 1, 0, 0, 0]))

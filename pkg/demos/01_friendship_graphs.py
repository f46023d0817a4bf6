"""Friendship graphs: cycles glued at a single hub.

F_{n,m} is n copies of the cycle C_m sharing one vertex. This walk-through
computes the pebbling number, the optimal pebbling number and its 2-capped
variant exhaustively, then compares each with its closed form.

Run:  python demos/01_friendship_graphs.py
"""

from pebbling import formulas as fm
from pebbling import graphcore as gc
from pebbling.solver import is_solvable, optimal_pebbling, pebbling_number


def show(label, computed, formula):
    mark = "ok" if computed == formula else "MISMATCH"
    print(f"  {label:<12} computed {computed:>3}   formula {formula:>3}   {mark}")


print("Triangles at a hub: pi(F_{n,3}) = 2n + 2")
for n in (2, 3, 4):
    g = gc.make_friendship(n, 3)
    res = pebbling_number(g)
    show(f"n={n}", res.value, fm.friendship3_pi(n).value)

print("\nSquares at a hub: pi(F_{n,4}) = 3n + 10, pi* = 4, pi*_2 = 4, 5, 6")
for n in (2, 3, 4):
    g = gc.make_friendship(n, 4)
    suite = fm.fn4_suite(n)
    res = pebbling_number(g)
    show(f"n={n} pi", res.value, suite.pi)
    show(f"n={n} pi*", optimal_pebbling(g).value, suite.pi_star)
    show(f"n={n} pi*_2", optimal_pebbling(g, 2).value, suite.pi_star_2)

# The extremal configuration is found by search, not assumed. For F_{3,4}
# it piles pebbles opposite the target and a few on the other squares.
g = gc.make_friendship(3, 4)
res = pebbling_number(g)
print(f"\nF_(3,4): a heaviest unsolvable configuration for target {res.root}:")
print(f"  {list(res.witness)}  (weight {res.witness.weight})")
print(f"  solvable? {is_solvable(g, res.witness, res.root)}")
bumped = list(res.witness)
bumped[max(g.vertices, key=lambda v: bumped[v])] += 1
print(f"  one more pebble on its largest pile -> solvable? {is_solvable(g, bumped, res.root)}")

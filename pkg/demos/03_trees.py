"""Trees: pebbling numbers from a maximum path partition.

For a tree rooted at r, split the edges into paths hanging away from r and
pick the partition whose sorted length list is lexicographically largest.
With lengths l_1 >= ... >= l_m the t-fold rooted pebbling number is

    t * 2^l_1 + 2^l_2 + ... + 2^l_m - m + 1.

This script builds a few trees, prints the partition and checks the value
against exhaustive search.

Run:  python demos/03_trees.py
"""

import random

from pebbling import formulas as fm
from pebbling import graphcore as gc
from pebbling.solver import greedy_solution, pebbling_number_rooted

# legs of length 3, 2 and 2 around vertex 0
spider = gc.make_tree([None, 0, 1, 2, 0, 4, 0, 6])
part = fm.max_r_path_partition(spider, 3)
print("spider with legs 3, 2, 2, rooted at the tip of the long leg")
print(f"  paths   {[list(p) for p in part.paths]}")
print(f"  lengths {list(part.lengths)}")
for t in (1, 2, 3):
    formula = fm.tree_pi(spider, 3, t).value
    computed = pebbling_number_rooted(spider, 3, t).value
    print(f"  t={t}: formula {formula}, search {computed}")

rng = random.Random(1)
agree = 0
for _ in range(50):
    n = rng.randint(2, 8)
    tree = gc.Graph(n, [(rng.randrange(v), v) for v in range(1, n)])
    r = rng.randrange(n)
    agree += fm.tree_pi(tree, r).value == pebbling_number_rooted(tree, r).value
print(f"\nrandom trees: formula matched search on {agree} of 50")

# Trees are greedy: enough pebbles can always be moved straight toward r.
p5 = gc.make_path(5)
moves = greedy_solution(p5, (16, 0, 0, 0, 0), 4)
print(f"\nP_5 with 16 pebbles at one end reaches the other in {len(moves)} greedy moves")

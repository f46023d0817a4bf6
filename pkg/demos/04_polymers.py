"""Polymers: graphs assembled from small monomers.

A polymer glues monomer graphs together at single vertices in a tree-like
pattern (or joins them by bridge edges, the "link" shape). Its pebbling
number is bounded by simple expressions in the monomers' pebbling numbers.
This script builds one polymer of each shape and compares the bounds with
the exact value.

Run:  python demos/04_polymers.py
"""

from pebbling import formulas as fm
from pebbling import graphcore as gc
from pebbling.solver import pebbling_number

c3, c4, p3 = gc.make_cycle(3), gc.make_cycle(4), gc.make_path(3)
PI = {id(c3): 3, id(c4): 4, id(p3): 4}

examples = {
    "chain": gc.PolymerSpec([c4, c4, c4], [(0, 2, 1, 0), (1, 2, 2, 0)], "chain"),
    "link": gc.PolymerSpec([c4, c3], [(0, 2, 1, 0)], "link"),
    "bouquet": gc.PolymerSpec([c4, c4, c4, c4], [(0, 0, i, 0) for i in (1, 2, 3)], "bouquet"),
    "general": gc.PolymerSpec([c3, p3, c4], [(0, 1, 1, 0), (0, 2, 2, 1)], "general"),
}

for shape, spec in examples.items():
    g = gc.compose_polymer(spec)
    pis = [PI[id(m)] for m in spec.monomers]
    exact = pebbling_number(g)
    bounds = {"product": fm.product_bound(pis).value}
    if shape == "link":
        bounds = {"link": fm.link_bound(pis).value}
    if shape == "bouquet":
        bounds["bouquet"] = fm.bouquet_bound(pis).value
    shown = ", ".join(f"{k} {v}" for k, v in bounds.items())
    print(f"{shape:<8} {g.order:>2} vertices  pi = {exact.value:>3}  bounds: {shown}  "
          f"lower {fm.lower_bounds(g).value}")

# The chain of squares meets its product bound; the bouquet of squares is
# the friendship graph F_{4,4} and meets the bouquet bound.
print("\nsharp cases:")
print(f"  chain of 3 squares  pi = {pebbling_number(gc.make_square_chain(3)).value}, "
      f"product 4^3 = {fm.product_bound([4, 4, 4]).value}")
print(f"  bouquet of 4 squares  pi = {pebbling_number(gc.make_friendship(4, 4)).value}, "
      f"bound {fm.bouquet_bound([4, 4, 4, 4]).value}")

# Q(n, m) = K_n with a private K_m hanging from each vertex (a corona)
q = gc.make_Qnm(3, 3)
print(f"\nQ(3,3): pi = {pebbling_number(q).value}, formula {fm.qnm_pi(3, 3).pi}")

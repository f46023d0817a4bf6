"""Certifying pebbling numbers of square chains with weight functions.

Exhaustive search stops being practical quickly on chains of squares, so the
value is pinned from both sides instead:

* an upper bound from a linear program whose constraints come from weighted
  spanning trees (strategies) rooted at the target, solved in exact
  rationals and checked against a dual certificate;
* a lower bound from one explicit configuration that the solver proves
  cannot reach the target.

When the two meet, the pebbling number is known exactly.

Run:  python demos/02_square_chain_certificates.py
"""

from pebbling import formulas as fm
from pebbling import graphcore as gc
from pebbling.wfl import (certify_rooted, decompose_nonbasic, fraction_str,
                          ortho_chain_strategies, para_chain_strategies, validate_strategy)

print("Para chains Q_n (cut vertices opposite): pi(Q_n, r) = 4^n")
for n in (1, 2, 3, 4):
    g = gc.make_square_chain(n)
    cert = certify_rooted(g, 0, para_chain_strategies(n))
    print(f"  Q_{n}: LP optimum {fraction_str(cert.lp_optimum):>7}  upper {cert.upper:>4}  "
          f"witness weight {cert.witness_weight:>4}  verdict {cert.verdict:<5}  "
          f"formula {fm.square_chain_pi(n).value}")

print("\nOrtho chains O_n (cut vertices adjacent): pi(O_n, r) = 2^(n+2) + 2n - 4")
for n in (2, 3, 4):
    g = gc.make_square_chain(n, "ortho")
    strategies = ortho_chain_strategies(n)
    kinds = sorted({validate_strategy(g, s).kind for s in strategies})
    cert = certify_rooted(g, 0, strategies)
    print(f"  O_{n}: strategies {'/'.join(kinds):<15} upper {cert.upper:>4}  "
          f"witness weight {cert.witness_weight:>4}  verdict {cert.verdict:<5}  "
          f"formula {fm.square_chain_pi(n, 'ortho').value}")

# Nonbasic strategies (parent weight at least twice the child's) are sums of
# basic ones (parent weight exactly twice), each on a nested subtree.
s = ortho_chain_strategies(3)[0]
parts = decompose_nonbasic(s, gc.make_square_chain(3, "ortho"))
print(f"\nThe first O_3 strategy splits into {len(parts)} basic strategies:")
for coef, part in parts:
    print(f"  {fraction_str(coef):>6} x tree on {len(part.parent)} vertices, "
          f"total {fraction_str(part.total())}")

# Far beyond search: only the LP ceiling is available.
n = 10
g = gc.make_square_chain(n, "ortho")
cert = certify_rooted(g, 0, ortho_chain_strategies(n), witness=None)
print(f"\nO_{n} ({g.order} vertices): upper bound {cert.upper}, "
      f"formula {fm.square_chain_pi(n, 'ortho').value}, "
      f"distance lower bound {fm.lower_bounds(g).value}; not searched exhaustively")

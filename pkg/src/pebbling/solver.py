"""Exact pebbling solvability and the four pebbling invariants.

Solvability is decided by a memoized depth-first search over configurations
reachable by pebbling moves. Two facts keep the search small: a configuration
whose distance potential ``sum f(v) 2^-dist(v, r)`` is below ``t`` can never
put ``t`` pebbles on ``r``, and some solution never moves a pebble off the
target, so those moves are never tried.

The rooted pebbling number is found by branch-and-bound over boxes
``L <= f <= U`` of configurations. Unsolvable configurations form a down-set,
so when ``U`` is solvable the pebbles actually consumed by its solution (a
solvable ``D <= U``) split the box into disjoint children, the i-th of which
demands ``f(v_i) < D(v_i)`` and ``f(v_j) >= D(v_j)`` for ``j < i``.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

from .graphcore import Graph, GraphError, automorphisms, vertex_orbits
from . import lp

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    """Raised internally when a search runs out of nodes."""


class Configuration(tuple):
    """Per-vertex pebble counts."""

    def __new__(cls, counts: Iterable[int] = ()):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative pebble count in {counts}")
        return super().__new__(cls, counts)

    @property
    def weight(self) -> int:
        return sum(self)

    @classmethod
    def zeros(cls, n: int) -> "Configuration":
        return cls((0,) * n)

    @classmethod
    def single(cls, n: int, v: int, k: int) -> "Configuration":
        return cls(k if i == v else 0 for i in range(n))

    def __le__(self, other):
        return len(self) == len(other) and all(a <= b for a, b in zip(self, other))

    def __ge__(self, other):
        return len(self) == len(other) and all(a >= b for a, b in zip(self, other))

    def to_json(self) -> list[int]:
        return list(self)


Move = tuple[int, int]


def _check(g: Graph, f: Sequence[int], r: int | None = None, t: int = 1) -> tuple[int, ...]:
    f = tuple(int(c) for c in f)
    if len(f) != g.order:
        raise ValueError(f"configuration has {len(f)} entries, graph has {g.order} vertices")
    if any(c < 0 for c in f):
        raise ValueError("negative pebble count")
    if r is not None and not 0 <= r < g.order:
        raise ValueError(f"target {r} not in graph")
    if t < 1:
        raise ValueError("t must be at least 1")
    return f


def replay(g: Graph, f: Sequence[int], moves: Iterable[Move]) -> Configuration:
    """Apply ``moves`` to ``f``; raise ``ValueError`` on any illegal step."""
    cur = list(f)
    for i, (u, v) in enumerate(moves):
        if not g.has_edge(u, v):
            raise ValueError(f"step {i}: {u} and {v} are not adjacent")
        if cur[u] < 2:
            raise ValueError(f"step {i}: vertex {u} holds {cur[u]} pebbles")
        cur[u] -= 2
        cur[v] += 1
    return Configuration(cur)


def potential(g: Graph, f: Sequence[int], r: int) -> Fraction:
    """``sum f(v) / 2^dist(v, r)`` as an exact rational."""
    d = g.distances(r)
    return sum((Fraction(c, 1 << d[v]) for v, c in enumerate(f) if c), Fraction(0))


class PotentialVerdict(enum.Enum):
    PROVEN_UNSOLVABLE = "proven-unsolvable"
    INCONCLUSIVE = "inconclusive"


def unsolvability_potential_test(g: Graph, f: Sequence[int], r: int, t: int = 1) -> PotentialVerdict:
    f = _check(g, f, r, t)
    if potential(g, f, r) < t:
        return PotentialVerdict.PROVEN_UNSOLVABLE
    return PotentialVerdict.INCONCLUSIVE


class _Counter:
    def __init__(self, budget: int | None):
        self.left = DEFAULT_BUDGET if budget is None else budget
        self.used = 0

    def tick(self, k: int = 1):
        self.used += k
        if self.used > self.left:
            raise BudgetExceeded(self.used)


class RootedSolver:
    """Solvability engine for a fixed graph, target and multiplicity.

    Unsolvable configurations met during any search are remembered, so a
    single instance amortizes work across many queries.
    """

    DEAD_CACHE_LIMIT = 1_000_000

    def __init__(self, g: Graph, r: int, t: int = 1, budget: int | None = None,
                 moves: str = "all"):
        if not 0 <= r < g.order:
            raise ValueError(f"target {r} not in graph")
        if t < 1:
            raise ValueError("t must be at least 1")
        self.g, self.r, self.t = g, r, t
        self.dist = g.distances(r)
        self.depth = max(self.dist)
        self.scale = tuple(1 << (self.depth - d) for d in self.dist)
        self.need = t << self.depth
        self.counter = _Counter(budget)
        allowed = {
            "all": lambda du, dv: True,
            "greedy": lambda du, dv: dv < du,
            "semigreedy": lambda du, dv: dv <= du,
        }[moves]
        d = self.dist
        mv = [(u, v) for u in g.vertices if u != r for v in g.neighbors(u)
              if allowed(d[u], d[v])]
        # toward the target first, then from vertices nearer the target
        mv.sort(key=lambda e: (d[e[1]] - d[e[0]], d[e[0]], e))
        self.moves = tuple(mv)
        self.delta = tuple(self.scale[v] - 2 * self.scale[u] for u, v in mv)
        self.dead: set[tuple[int, ...]] = set()
        # two shortest-path trees (smallest / largest parent id)
        self.trees = [{v: pick(u for u in g.neighbors(v) if d[u] == d[v] - 1)
                       for v in g.vertices if v != r} for pick in (min, max)]
        self._push_order = sorted((v for v in g.vertices if v != r), key=lambda v: -d[v])
        self.rows = self._path_rows()

    def _tree_push(self, f: tuple[int, ...]) -> list[Move] | None:
        """Push every pebble up a shortest-path tree, deepest vertices first."""
        for parent in self.trees:
            c = list(f)
            moves = []
            for v in self._push_order:
                k = c[v] // 2
                if k:
                    c[v] -= 2 * k
                    c[parent[v]] += k
                    moves.extend([(v, parent[v])] * k)
            if c[self.r] >= self.t:
                return moves
        return None

    def _path_rows(self) -> list[tuple[tuple[int, ...], int]]:
        """Linear inequalities every t-fold unsolvable configuration obeys.

        Along a shortest-path-tree branch ``r = v_0, ..., v_l`` pushing
        pebbles greedily to ``r`` delivers at least
        ``sum f(v_i) 2^-i - (1 - 2^-l)`` of them, so unsolvable ``f`` has
        ``sum f(v_i) 2^(l-i) <= t 2^l - 1``. The sum of all branch rows is
        added so that every vertex is constrained at once.
        """
        g, r, d = self.g, self.r, self.dist
        rows = set()
        for parent in self.trees:
            leaves = [v for v in g.vertices if v != r and v not in parent.values()]
            for leaf in leaves:
                a = [0] * g.order
                v, l = leaf, d[leaf]
                while True:
                    a[v] = 1 << (l - d[v])
                    if v == r:
                        break
                    v = parent[v]
                rows.add((tuple(a), (self.t << l) - 1))
        rows = sorted(rows)
        if len(rows) > 1:
            rows.append(self._aggregate(rows))
        return rows

    def _aggregate(self, rows):
        """Combine the rows with optimal LP multipliers for the initial box."""
        n, r = self.g.order, self.r
        cols = [v for v in range(n) if v != r]
        A = [[a[v] for v in cols] for a, _ in rows]
        b = [rhs - a[r] * (self.t - 1) for a, rhs in rows]
        try:
            y = lp.maximize([1] * len(cols), A, b).dual
        except lp.LPError:
            y = [Fraction(1)] * len(rows)
        den = 1
        for q in y:
            den = den * q.denominator // gcd(den, q.denominator)
        m = [int(q * den) for q in y]
        coef = tuple(sum(mi * a[v] for mi, (a, _) in zip(m, rows)) for v in range(n))
        return coef, sum(mi * rhs for mi, (_, rhs) in zip(m, rows))

    def box_bound(self, L: Sequence[int], U: Sequence[int]) -> int:
        """Upper bound on the weight of an unsolvable ``f`` with ``L <= f <= U``
        (-1 if none can exist): the best fractional-knapsack value over rows."""
        base = sum(L)
        best = sum(U)
        for a, b in self.rows:
            cap = b - sum(x * l for x, l in zip(a, L))
            if cap < 0:
                return -1
            total, items = 0, []
            for x, l, u in zip(a, L, U):
                if u > l:
                    if x == 0:
                        total += u - l
                    else:
                        items.append((x, u - l))
            items.sort()
            for x, span in items:
                take = min(span, cap // x)
                total += take
                cap -= take * x
                if take < span:
                    break
            best = min(best, base + total)
        return best

    def pot(self, f: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(f, self.scale))

    def solve(self, f: Sequence[int]) -> list[Move] | None:
        """A move sequence putting ``t`` pebbles on the target, or ``None``."""
        f = tuple(f)
        if f[self.r] >= self.t:
            return []
        if self.pot(f) < self.need:
            return None
        if f in self.dead:
            return None
        quick = self._tree_push(f)
        if quick is not None:
            return quick
        limit = sys.getrecursionlimit()
        want = sum(f) + 200
        if want > limit:
            sys.setrecursionlimit(want)
        path: list[Move] = []
        ok = self._dfs(list(f), self.pot(f), path)
        return path if ok else None

    def is_solvable(self, f: Sequence[int]) -> bool:
        return self.solve(f) is not None

    def _dfs(self, f: list[int], pot: int, path: list[Move]) -> bool:
        r, t = self.r, self.t
        if f[r] >= t:
            return True
        if pot < self.need:
            return False
        key = tuple(f)
        if key in self.dead:
            return False
        self.counter.tick()
        for (u, v), dp in zip(self.moves, self.delta):
            if f[u] >= 2:
                np_ = pot + dp
                if np_ < self.need:
                    continue
                f[u] -= 2
                f[v] += 1
                path.append((u, v))
                if self._dfs(f, np_, path):
                    f[u] += 2
                    f[v] -= 1
                    return True
                path.pop()
                f[u] += 2
                f[v] -= 1
        if len(self.dead) > self.DEAD_CACHE_LIMIT:
            self.dead.clear()
        self.dead.add(key)
        return False

    def consumed(self, f: Sequence[int], moves: Sequence[Move]) -> tuple[int, ...]:
        """Pebbles of ``f`` actually used by ``moves`` (a solvable sub-configuration).

        Walks the moves backwards from ``t`` pebbles on the target, charging a
        move only when the pebble it delivers is still needed.
        """
        need = [0] * len(f)
        need[self.r] = self.t
        for u, v in reversed(moves):
            if need[v] > 0:
                need[v] -= 1
                need[u] += 2
        return tuple(min(a, b) for a, b in zip(need, f))


# --- results ---------------------------------------------------------------

@dataclass
class InvariantResult:
    """Value of a pebbling invariant with a witness configuration.

    For pi-type invariants the witness is a maximum-weight unsolvable
    configuration (weight ``value - 1``); for optimal pebbling it is a
    minimum-weight solvable one. When a budget runs out ``exhaustive`` is
    False, ``value`` is the proven lower bound and ``upper`` the proven upper
    bound.
    """

    value: int
    witness: Configuration
    root: int | None = None
    exhaustive: bool = True
    lower: int | None = None
    upper: int | None = None
    t: int = 1
    nodes: int = 0

    def to_json(self) -> dict:
        d = {"value": self.value, "witness": list(self.witness), "root": self.root,
             "exhaustive": self.exhaustive}
        if not self.exhaustive:
            d["lower"] = self.lower
            d["upper"] = self.upper
        return d


def _box_lp_bound(strategies, n: int, r: int) -> Callable:
    """Admissible bound on the weight of unsolvable configurations in a box."""
    rows = []
    for s in strategies:
        w = s.weight_vector(n)
        rows.append((w, s.total()))

    def bound(L, U):
        # substitute f = L + y with 0 <= y <= U - L
        cols = [v for v in range(n) if v != r and U[v] > L[v]]
        A, b = [], []
        for w, tot in rows:
            rhs = tot - sum(w[v] * L[v] for v in range(n))
            if rhs < 0:
                return -1
            A.append([w[v] for v in cols])
            b.append(rhs)
        for k, v in enumerate(cols):
            A.append([1 if j == k else 0 for j in range(len(cols))])
            b.append(U[v] - L[v])
        base = sum(L)
        if not cols:
            return base
        res = lp.maximize([1] * len(cols), A, b)
        return base + int(res.optimum)  # floor for nonnegative rationals
    return bound


def max_unsolvable(engine: RootedSolver, best: int = -1,
                   best_witness: Sequence[int] | None = None,
                   bound: Callable | None = None,
                   target: int | None = None) -> tuple[int, tuple[int, ...] | None, int | None]:
    """Branch-and-bound for a heaviest unsolvable configuration.

    Only configurations heavier than ``best`` are sought. Returns
    ``(best, witness, open_bound)``: ``open_bound`` is ``None`` when the
    search finished and otherwise the largest bound among unexplored boxes
    (the search stops early once a witness of weight ``target`` is found or
    the budget runs out).
    """
    g, r, t = engine.g, engine.r, engine.t
    n = g.order
    U0 = tuple(t - 1 if v == r else (t << engine.dist[v]) - 1 for v in range(n))
    stack = [((0,) * n, U0)]
    witness = tuple(best_witness) if best_witness is not None else None
    try:
        while stack:
            L, U = stack.pop()
            su = sum(U)
            if su <= best:
                continue
            engine.counter.tick()
            if engine.box_bound(L, U) <= best:
                continue
            if bound is not None and bound(L, U) <= best:
                continue
            moves = engine.solve(U)
            if moves is None:
                best, witness = su, U
                if target is not None and best >= target:
                    return best, witness, max([best] + [sum(u) for _, u in stack]) if stack else None
                continue
            D = engine.consumed(U, moves)
            cand = [v for v in range(n) if D[v] > L[v]]
            if not cand:
                continue
            children = []
            Lc = list(L)
            for v in cand:
                Uc = list(U)
                Uc[v] = D[v] - 1
                children.append((tuple(Lc), tuple(Uc)))
                Lc[v] = D[v]
            stack.extend(reversed(children))
    except BudgetExceeded:
        pending = [sum(u) for _, u in stack] + [sum(U)]
        return best, witness, max(pending)
    return best, witness, None


def _seed(engine: RootedSolver) -> tuple[int, tuple[int, ...]]:
    """Cheap unsolvable configurations: all pebbles on a farthest vertex, or
    one pebble everywhere off the target."""
    g, r, t = engine.g, engine.r, engine.t
    n = g.order
    far = max(g.vertices, key=lambda v: (engine.dist[v], -v))
    cands = [tuple((t << engine.depth) - 1 if v == far else 0 for v in range(n)),
             tuple(t - 1 if v == r else 1 for v in range(n))]
    best, wit = -1, None
    for c in cands:
        if sum(c) > best and engine.solve(c) is None:
            best, wit = sum(c), c
    return best, wit


def pebbling_number_rooted(g: Graph, r: int, t: int = 1, budget: int | None = None,
                           strategies: Sequence | None = None,
                           at_least: int | None = None) -> InvariantResult:
    """pi_t(G, r): one more than the heaviest t-fold r-unsolvable configuration.

    ``strategies`` (Weight Function Lemma strategies rooted at ``r``) add an
    LP bound to the search when ``t == 1``. ``at_least`` tells the search
    that only values above it matter; the result is then exact only if it
    exceeds ``at_least``.
    """
    if not g.is_connected():
        raise GraphError("pebbling numbers need a connected graph")
    engine = RootedSolver(g, r, t, budget)
    return _rooted(engine, strategies, at_least)


def _rooted(engine: RootedSolver, strategies=None, at_least=None) -> InvariantResult:
    g, r, t = engine.g, engine.r, engine.t
    bound = None
    if strategies:
        if t != 1:
            raise ValueError("strategy bounds apply to t = 1 only")
        for s in strategies:
            if s.root != r:
                raise ValueError("strategy root differs from the target")
        bound = _box_lp_bound(strategies, g.order, r)
    best, wit = _seed(engine)
    floor = best
    if at_least is not None and at_least - 1 > best:
        floor = at_least - 1
    found, witness, open_bound = max_unsolvable(engine, floor, wit if floor == best else None, bound)
    if witness is None:
        witness = wit
        found = best
    exhaustive = open_bound is None
    res = InvariantResult(found + 1, Configuration(witness), r, exhaustive, t=t,
                          nodes=engine.counter.used)
    if not exhaustive:
        res.lower, res.upper = found + 1, open_bound + 1
    return res


def pebbling_number(g: Graph, t: int = 1, budget: int | None = None,
                    roots: Sequence[int] | None = None) -> InvariantResult:
    """pi_t(G) = max over roots; roots equivalent under automorphism are
    evaluated once; roots are tried by decreasing eccentricity and the first
    root attaining the maximum is reported."""
    if not g.is_connected():
        raise GraphError("pebbling numbers need a connected graph")
    if roots is None:
        roots = [orb[0] for orb in vertex_orbits(g)] if g.order <= 16 else list(g.vertices)
    counter = _Counter(budget)
    best: InvariantResult | None = None
    # far-out roots usually carry the maximum, which then prunes the rest
    ecc = {v: max(g.distances(v)) for v in roots}
    for r in sorted(roots, key=lambda v: (-ecc[v], v)):
        engine = RootedSolver(g, r, t)
        engine.counter = counter
        try:
            res = _rooted(engine, None, best.value if best else None)
        except BudgetExceeded:
            res = None
        if res is not None and (best is None or res.value > best.value):
            best = res
        if res is None or not res.exhaustive:
            # unexplored roots leave only the crude global ceiling
            lower = best.value if best else 1
            wit = best.witness if best else Configuration.zeros(g.order)
            return InvariantResult(lower, wit, best.root if best else None, False,
                                   lower=lower, upper=_global_upper(g, t), t=t,
                                   nodes=counter.used)
    best.nodes = counter.used
    return best


def pebbling_number_at_most(g: Graph, bound: int, t: int = 1,
                            budget: int | None = None) -> bool | None:
    """Decide ``pi_t(G) <= bound`` without computing pi_t.

    Searches every root for a t-fold unsolvable configuration of weight at
    least ``bound``; the pruning ``sum(U) < bound`` makes loose bounds cheap.
    Returns ``None`` when the budget runs out first.
    """
    if not g.is_connected():
        raise GraphError("pebbling numbers need a connected graph")
    roots = [orb[0] for orb in vertex_orbits(g)] if g.order <= 16 else list(g.vertices)
    counter = _Counter(budget)
    try:
        for r in roots:
            engine = RootedSolver(g, r, t)
            engine.counter = counter
            if _seed(engine)[0] >= bound:
                return False
            best, _, open_bound = max_unsolvable(engine, bound - 1, None, target=bound)
            if best >= bound:
                return False
            if open_bound is not None:
                return None
    except BudgetExceeded:
        return None
    return True


def _global_upper(g: Graph, t: int) -> int:
    # crude but valid: t copies of the single-vertex threshold on every vertex
    n = g.order
    d = max(max(g.distances(v)) for v in g.vertices)
    return n * ((t << d) - 1) + 1


# --- optimal pebbling ------------------------------------------------------

def _compositions(w: int, n: int, cap: int | None) -> Iterator[tuple[int, ...]]:
    """Weight-``w`` configurations on ``n`` vertices in lexicographic order."""
    hi = w if cap is None else min(w, cap)
    if n == 1:
        if w <= hi:
            yield (w,)
        return
    room = None if cap is None else cap * (n - 1)
    for first in range(0, hi + 1):
        rest = w - first
        if room is not None and rest > room:
            continue
        for tail in _compositions(rest, n - 1, cap):
            yield (first,) + tail


class _AllTargets:
    def __init__(self, g: Graph, counter: _Counter):
        self.engines = []
        for r in g.vertices:
            e = RootedSolver(g, r, 1)
            e.counter = counter
            self.engines.append(e)

    def solvable(self, f: Sequence[int]) -> bool:
        # cheap potential screen over all targets before any search
        for e in self.engines:
            if f[e.r] == 0 and e.pot(f) < e.need:
                return False
        return all(e.is_solvable(f) for e in self.engines)


def is_solvable(g: Graph, f: Sequence[int], r: int, t: int = 1) -> bool:
    f = _check(g, f, r, t)
    return RootedSolver(g, r, t).is_solvable(f)


def find_solution(g: Graph, f: Sequence[int], r: int, t: int = 1) -> list[Move] | None:
    """A replayable move sequence placing ``t`` pebbles on ``r``, or ``None``."""
    f = _check(g, f, r, t)
    return RootedSolver(g, r, t).solve(f)


def is_solvable_all_targets(g: Graph, f: Sequence[int]) -> bool:
    f = _check(g, f)
    return _AllTargets(g, _Counter(None)).solvable(f)


def optimal_pebbling(g: Graph, per_vertex_cap: int | None = None,
                     budget: int | None = None) -> InvariantResult:
    """pi* (no cap) or pi*_t (cap t): least weight of a configuration that
    reaches every vertex. The witness is the lexicographically least one."""
    if not g.is_connected():
        raise GraphError("optimal pebbling needs a connected graph")
    if per_vertex_cap is not None and per_vertex_cap < 1:
        raise ValueError("cap must be at least 1")
    n = g.order
    # inverse permutations: image of f under a is (f[a^-1(0)], ..., f[a^-1(n-1)])
    inv = [tuple(sorted(range(n), key=a.__getitem__)) for a in automorphisms(g, limit=5000)
           if any(a[i] != i for i in range(n))] if n <= 16 else []
    counter = _Counter(budget)
    checker = _AllTargets(g, counter)
    w = 1
    try:
        while True:
            for f in _compositions(w, n, per_vertex_cap):
                # skip f when a symmetric image is lexicographically smaller
                if any(tuple([f[j] for j in a]) < f for a in inv):
                    continue
                counter.tick()
                if checker.solvable(f):
                    return InvariantResult(w, Configuration(f), None, True, nodes=counter.used)
            w += 1
    except BudgetExceeded:
        return InvariantResult(w, Configuration.zeros(n), None, False, lower=w,
                               upper=n if per_vertex_cap else None, nodes=counter.used)


# --- greedy solutions, classes, oracle -------------------------------------

def greedy_solution(g: Graph, f: Sequence[int], r: int, semigreedy: bool = False,
                    t: int = 1) -> list[Move] | None:
    """A solution using only r-greedy (or r-semigreedy) moves, if one exists."""
    f = _check(g, f, r, t)
    return RootedSolver(g, r, t, moves="semigreedy" if semigreedy else "greedy").solve(f)


class PebblingClass(enum.Enum):
    CLASS0 = "Class0"
    CLASS1 = "Class1"
    NEITHER = "neither"


def classify(g: Graph, budget: int | None = None) -> PebblingClass:
    res = pebbling_number(g, budget=budget)
    if not res.exhaustive:
        raise BudgetExceeded(res.nodes)
    if res.value == g.order:
        return PebblingClass.CLASS0
    if res.value == g.order + 1:
        return PebblingClass.CLASS1
    return PebblingClass.NEITHER


ORACLE_STATE_LIMIT = 2_000_000


def is_solvable_oracle(g: Graph, f: Sequence[int], r: int, t: int = 1,
                       state_limit: int = ORACLE_STATE_LIMIT) -> bool:
    """Unpruned breadth-first exploration of every reachable configuration."""
    f = _check(g, f, r, t)
    arcs = [(u, v) for u in g.vertices for v in g.neighbors(u)]
    seen = {f}
    frontier = [f]
    while frontier:
        nxt = []
        for s in frontier:
            if s[r] >= t:
                return True
            for u, v in arcs:
                if s[u] >= 2:
                    c = list(s)
                    c[u] -= 2
                    c[v] += 1
                    c = tuple(c)
                    if c not in seen:
                        seen.add(c)
                        if len(seen) > state_limit:
                            raise BudgetExceeded(len(seen))
                        nxt.append(c)
        frontier = nxt
    return False

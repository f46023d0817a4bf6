"""Weight Function Lemma certificates.

A strategy is a subtree of the host graph rooted at the target ``r`` with
rational vertex weights, ``w(r) = 0`` and ``w(parent) >= 2 w(v)`` for every
vertex whose parent is not ``r`` (equality everywhere makes it basic). Any
r-unsolvable configuration ``f`` satisfies ``sum w(v) f(v) <= sum_{v in T} w(v)``,
so a family of strategies bounds ``pi(G, r)`` through the packing LP
``max sum_{v != r} f(v)`` under those inequalities. An unsolvable witness one
pebble short of the LP bound pins the rooted pebbling number exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import lp
from .graphcore import Graph
from .solver import (Configuration, RootedSolver, _box_lp_bound, _seed,
                     max_unsolvable)


class StrategyError(ValueError):
    pass


class UnboundedLP(StrategyError):
    """Some non-root vertex has zero weight in every strategy."""

    def __init__(self, vertices):
        super().__init__(f"strategies give no weight to vertices {sorted(vertices)}; "
                         "the LP is unbounded")
        self.vertices = sorted(vertices)


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Strategy:
    """Rooted tree (``parent`` maps each non-root vertex to its parent) with
    per-vertex weights. Vertices outside the tree have weight zero."""

    root: int
    parent: Mapping[int, int]
    weights: Mapping[int, Fraction]

    def __init__(self, root: int, parent: Mapping[int, int], weights: Mapping[int, object]):
        object.__setattr__(self, "root", int(root))
        object.__setattr__(self, "parent", dict(sorted((int(c), int(p)) for c, p in parent.items())))
        object.__setattr__(self, "weights", dict(sorted((int(v), _q(w)) for v, w in weights.items())))

    @classmethod
    def from_path(cls, path: Sequence[int], weights: Sequence | None = None) -> "Strategy":
        """Path ``r = path[0], ..., path[-1]``; basic doubling weights by default."""
        k = len(path) - 1
        if weights is None:
            weights = [2 ** (k - i) for i in range(1, k + 1)]
        if len(weights) != k:
            raise StrategyError("need one weight per non-root path vertex")
        return cls(path[0], {path[i]: path[i - 1] for i in range(1, k + 1)},
                   {path[i]: weights[i - 1] for i in range(1, k + 1)})

    @property
    def tree_vertices(self) -> list[int]:
        return [self.root] + list(self.parent)

    def depth(self, v: int) -> int:
        d = 0
        while v != self.root:
            v = self.parent[v]
            d += 1
        return d

    def w(self, v: int) -> Fraction:
        return self.weights.get(v, Fraction(0))

    def weight_vector(self, n: int) -> list[Fraction]:
        return [self.w(v) for v in range(n)]

    def total(self) -> Fraction:
        return sum((self.w(v) for v in self.parent), Fraction(0))

    def edges(self) -> list[tuple[int, int]]:
        return [(p, c) for c, p in self.parent.items()]

    def to_json(self) -> dict:
        return {"root": self.root,
                "edges": [[p, c] for p, c in self.edges()],
                "weights": {str(v): fraction_str(w) for v, w in self.weights.items()}}

    @classmethod
    def from_json(cls, d: dict) -> "Strategy":
        try:
            return cls(d["root"], {int(c): int(p) for p, c in d["edges"]},
                       {int(v): Fraction(w) for v, w in d["weights"].items()})
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise StrategyError(f"malformed strategy: {exc}") from None


@dataclass(frozen=True)
class StrategyCheck:
    kind: str  # "basic" | "nonbasic" | "invalid"
    reason: str | None = None

    def __bool__(self):
        return self.kind != "invalid"


def validate_strategy(g: Graph, s: Strategy) -> StrategyCheck:
    def bad(reason):
        return StrategyCheck("invalid", reason)

    r = s.root
    if not 0 <= r < g.order:
        return bad(f"root {r} not in graph")
    if r in s.parent:
        return bad("root has a parent")
    if not s.parent:
        return bad("tree has no vertex besides the root")
    tree = set(s.tree_vertices)
    for c, p in s.parent.items():
        if not (0 <= c < g.order and 0 <= p < g.order):
            return bad(f"tree edge ({p}, {c}) leaves the graph")
        if p not in tree:
            return bad(f"parent {p} of {c} is not in the tree")
        if not g.has_edge(p, c):
            return bad(f"({p}, {c}) is not an edge of the graph")
    for c in s.parent:
        seen, v = set(), c
        while v != r:
            if v in seen:
                return bad(f"parent pointers from {c} cycle")
            seen.add(v)
            v = s.parent[v]
    for v, w in s.weights.items():
        if v not in tree and w != 0:
            return bad(f"vertex {v} off the tree has weight {w}")
        if w < 0:
            return bad(f"negative weight at {v}")
    if s.w(r) != 0:
        return bad("root weight must be zero")
    for v in s.parent:
        if s.w(v) <= 0:
            return bad(f"tree vertex {v} has nonpositive weight")
    basic = True
    for v, p in s.parent.items():
        if p == r:
            continue
        if s.w(p) < 2 * s.w(v):
            return bad(f"w({p}) = {s.w(p)} < 2 w({v}) = {2 * s.w(v)}")
        if s.w(p) != 2 * s.w(v):
            basic = False
    return StrategyCheck("basic" if basic else "nonbasic")


def strategy_total(s: Strategy) -> Fraction:
    return s.total()


class WFLVerdict(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"


def strategy_weight(s: Strategy, f: Sequence[int]) -> Fraction:
    return sum((s.w(v) * c for v, c in enumerate(f) if c), Fraction(0))


def check_wfl(s: Strategy, f: Sequence[int]) -> WFLVerdict:
    """Satisfied iff w(f) <= w(T); a violation proves f is r-solvable."""
    return WFLVerdict.SATISFIED if strategy_weight(s, f) <= s.total() else WFLVerdict.VIOLATED


def decompose_nonbasic(s: Strategy, g: Graph | None = None) -> list[tuple[Fraction, Strategy]]:
    """Write a strategy as a positive combination of nested basic strategies.

    With ``rho(v) = w(v) 2^depth(v)``, the inequality ``w(parent) >= 2 w(v)``
    says rho never increases away from the root, so each level set
    ``{v : rho(v) >= lam}`` plus the root is a subtree. Component j carries
    the doubling profile ``2^(D - depth)`` on the j-th level set, with
    coefficient ``(lam_j - lam_{j-1}) / 2^D``.
    """
    check = validate_strategy(g, s) if g is not None else _structural_check(s)
    if not check:
        raise StrategyError(check.reason)
    if check.kind == "basic":
        return [(Fraction(1), s)]
    depth = {v: s.depth(v) for v in s.parent}
    D = max(depth.values())
    rho = {v: s.w(v) * 2 ** depth[v] for v in s.parent}
    levels = sorted(set(rho.values()))
    out, prev = [], Fraction(0)
    for lam in levels:
        members = [v for v in s.parent if rho[v] >= lam]
        comp = Strategy(s.root, {v: s.parent[v] for v in members},
                        {v: Fraction(2 ** (D - depth[v])) for v in members})
        out.append(((lam - prev) / 2 ** D, comp))
        prev = lam
    return out


def _structural_check(s: Strategy) -> StrategyCheck:
    # validation without a host graph: complete graph on the touched vertices
    n = max([s.root, *s.parent, *s.parent.values()]) + 1
    host = Graph(n, [(min(c, p), max(c, p)) for c, p in s.parent.items()])
    return validate_strategy(host, s)


@dataclass
class BoundCertificate:
    """LP upper bound plus (optionally) an unsolvable witness for a root."""

    root: int
    strategies: list[Strategy]
    lp_optimum: Fraction
    dual: tuple[Fraction, ...]
    upper: int
    lower_witness: Configuration | None = None
    verdict: str = "gap"
    exhaustive: bool = False

    @property
    def witness_weight(self) -> int | None:
        return None if self.lower_witness is None else self.lower_witness.weight

    @property
    def value(self) -> int | None:
        return self.upper if self.verdict == "exact" else None

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "strategies": [s.to_json() for s in self.strategies],
            "lp_optimum": fraction_str(self.lp_optimum),
            "upper": self.upper,
            "lower_witness": None if self.lower_witness is None else list(self.lower_witness),
            "verdict": self.verdict,
        }


def _validated(g: Graph, r: int, strategies: Iterable[Strategy]) -> list[Strategy]:
    out = []
    for i, s in enumerate(strategies):
        if s.root != r:
            raise StrategyError(f"strategy {i} is rooted at {s.root}, not {r}")
        chk = validate_strategy(g, s)
        if not chk:
            raise StrategyError(f"strategy {i}: {chk.reason}")
        out.append(s)
    if not out:
        raise StrategyError("no strategies given")
    return out


def lp_bound(g: Graph, r: int, strategies: Sequence[Strategy]) -> BoundCertificate:
    """Upper bound ``floor(z) + 1`` from the LP relaxation over the strategies."""
    strategies = _validated(g, r, strategies)
    cols = [v for v in g.vertices if v != r]
    uncovered = [v for v in cols if all(s.w(v) == 0 for s in strategies)]
    if uncovered:
        raise UnboundedLP(uncovered)
    A = [[s.w(v) for v in cols] for s in strategies]
    b = [s.total() for s in strategies]
    res = lp.maximize([1] * len(cols), A, b)
    upper = res.optimum.numerator // res.optimum.denominator + 1
    return BoundCertificate(r, strategies, res.optimum, res.dual, upper)


def certify_rooted(g: Graph, r: int, strategies: Sequence[Strategy],
                   witness: Sequence[int] | str | None = "auto",
                   budget: int | None = None) -> BoundCertificate:
    """Sandwich pi(G, r) between an unsolvable witness and the LP bound.

    ``witness="auto"`` searches for an unsolvable configuration of weight
    ``upper - 1`` by branch-and-bound pruned with the same strategies.
    """
    cert = lp_bound(g, r, strategies)
    engine = RootedSolver(g, r, 1, budget)
    if witness is None:
        return cert
    if isinstance(witness, str):
        if witness != "auto":
            raise ValueError(f"unknown witness mode {witness!r}")
        best, wit = _seed(engine)
        bound = _box_lp_bound(cert.strategies, g.order, r)
        found, w2, open_bound = max_unsolvable(engine, best, wit, bound, target=cert.upper - 1)
        cert.lower_witness = Configuration(w2 if w2 is not None else wit)
        cert.exhaustive = open_bound is None
    else:
        f = Configuration(witness)
        if len(f) != g.order:
            raise ValueError("witness length differs from graph order")
        if engine.solve(f) is not None:
            raise StrategyError("supplied witness is solvable")
        cert.lower_witness = f
    if cert.lower_witness.weight + 1 == cert.upper:
        cert.verdict = "exact"
    return cert


# --- canned strategy families ------------------------------------------------

def _square_ids(n: int, i: int) -> tuple[int, int, int]:
    """Global ids of vertices 1, 2, 3 of square ``i`` in an identified chain."""
    if i == 0:
        return 1, 2, 3
    base = 4 + 3 * (i - 1)
    return base, base + 1, base + 2


def para_chain_strategies(n: int, pendant: bool = False) -> list[Strategy]:
    """The two doubling paths of Q_n (or Q_n+e) from vertex 0 to the far end,
    one along each side of every square."""
    if not isinstance(n, int) or n < 1:
        raise StrategyError(f"need n >= 1, got {n!r}")
    left, right = [0], [0]
    for i in range(n):
        a, c, b = _square_ids(n, i)
        left += [a, c]
        right += [b, c]
    if pendant:
        left.append(3 * n + 1)
        right.append(3 * n + 1)
    return [Strategy.from_path(left), Strategy.from_path(right)]


def ortho_chain_strategies(n: int) -> list[Strategy]:
    """Strategies for O_n rooted at vertex 0.

    Each is a doubling spine of length n+2 through the cut vertices (one per
    side of the two end squares) plus weight-1 leaves on the two non-cut
    vertices of every internal square, so each totals 2^(n+2) - 1 + 2n - 4.
    """
    if not isinstance(n, int) or n < 1:
        raise StrategyError(f"need n >= 1, got {n!r}")
    if n <= 2:
        return para_chain_strategies(n)
    out = []
    for side in (0, 1):
        spine = [0, 1 if side == 0 else 3, 2]
        leaves = {}
        entry = 2
        for i in range(1, n - 1):
            exit_, opp, near_entry = _square_ids(n, i)
            spine.append(exit_)
            leaves[near_entry] = entry
            leaves[opp] = exit_
            entry = exit_
        a, far, b = _square_ids(n, n - 1)
        spine += [a if side == 0 else b, far]
        k = len(spine) - 1
        parent = {spine[j]: spine[j - 1] for j in range(1, k + 1)}
        weights = {spine[j]: 2 ** (k - j) for j in range(1, k + 1)}
        parent.update(leaves)
        weights.update({v: 1 for v in leaves})
        out.append(Strategy(0, parent, weights))
    return out


def default_strategies(g: Graph) -> tuple[int, list[Strategy]] | None:
    """Root and canned strategies when ``g`` is exactly a square chain built by
    :func:`make_square_chain` (para, para+pendant or ortho)."""
    from .graphcore import make_square_chain
    for n in range(1, g.order + 1):
        if 3 * n + 1 > g.order:
            break
        for kind, pendant in (("para", False), ("para", True), ("ortho", False)):
            h = make_square_chain(n, kind, pendant)
            if h.order == g.order and h.edge_set() == g.edge_set():
                if kind == "ortho":
                    return 0, ortho_chain_strategies(n)
                return 0, para_chain_strategies(n, pendant)
    return None

"""Closed-form pebbling numbers, polymer bounds, tree path partitions and the
total-domination test for ``pi*_2 = 5``.

Each formula checks the parameter range it is proven for and raises
:class:`FormulaDomainError` outside it instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graphcore import Graph, GraphError, diameter


class FormulaDomainError(ValueError):
    pass


@dataclass(frozen=True)
class BoundValue:
    value: int
    kind: str  # "exact" | "upper" | "lower"
    source: str

    def to_json(self) -> dict:
        return {"value": self.value, "kind": self.kind, "source": self.source}


def _domain(cond: bool, msg: str):
    if not cond:
        raise FormulaDomainError(msg)


def _int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# --- cycles and friendship graphs -------------------------------------------

def cycle_pi(m: int, t: int = 1) -> BoundValue:
    """t-fold pebbling number of C_m."""
    _domain(_int(m) and m >= 3, f"cycle length must be >= 3, got {m!r}")
    _domain(_int(t) and t >= 1, f"t must be >= 1, got {t!r}")
    n, odd = divmod(m, 2)
    if not odd:
        return BoundValue(t * 2 ** n, "exact", "cycle-even")
    num = 2 ** (n + 2) - (-1) ** n
    assert num % 3 == 0
    return BoundValue(num // 3 + 2 ** n * (t - 1), "exact", "cycle-odd")


def friendship_even_pi(n: int, k: int) -> BoundValue:
    """pi(F_{n,2k}) for n, k >= 2."""
    _domain(_int(n) and n >= 2 and _int(k) and k >= 2, f"need n, k >= 2, got n={n!r}, k={k!r}")
    return BoundValue(2 ** (2 * k) + (2 ** k - 1) * (n - 2), "exact", "friendship-even")


def friendship_hub_pi(n: int, k: int) -> BoundValue:
    """pi(F_{n,2k}, hub)."""
    _domain(_int(n) and n >= 2 and _int(k) and k >= 2, f"need n, k >= 2, got n={n!r}, k={k!r}")
    return BoundValue(n * (2 ** k - 1) + 1, "exact", "friendship-hub")


def friendship3_pi(n: int) -> BoundValue:
    _domain(_int(n) and n >= 2, f"need n >= 2, got {n!r}")
    return BoundValue(2 * n + 2, "exact", "friendship-3")


def friendship3_optimal(n: int) -> BoundValue:
    """pi*(F_{n,3}) = pi*_2(F_{n,3}) = 2: two pebbles on the hub."""
    _domain(_int(n) and n >= 1, f"need n >= 1, got {n!r}")
    return BoundValue(2, "exact", "friendship-3-optimal")


@dataclass(frozen=True)
class FN4Values:
    pi: int
    pi_star: int
    pi_star_2: int


def fn4_suite(n: int) -> FN4Values:
    _domain(_int(n) and n >= 2, f"need n >= 2, got {n!r}")
    return FN4Values(3 * n + 10, 4, 4 if n == 2 else 5 if n == 3 else 6)


# --- cactus chains -----------------------------------------------------------

def triangular_chain_pi(n: int, pendant: bool = False) -> BoundValue:
    _domain(_int(n) and n >= 1, f"need n >= 1, got {n!r}")
    if pendant:
        return BoundValue(2 ** (n + 1) + n, "exact", "triangular-chain-pendant")
    return BoundValue(2 ** n + n, "exact", "triangular-chain")


def square_chain_pi(n: int, kind: str = "para", pendant: bool = False) -> BoundValue:
    """pi(Q_n), pi(Q_n+e) or pi(O_n), each at the far corner of the first square.

    For n <= 2 the ortho and para chains coincide, so the para value is used.
    """
    _domain(_int(n) and n >= 1, f"need n >= 1, got {n!r}")
    _domain(kind in ("para", "ortho"), f"kind must be para or ortho, got {kind!r}")
    if kind == "ortho" and n > 2:
        _domain(not pendant, "no closed form for O_n+e")
        return BoundValue(2 ** (n + 2) + 2 * n - 4, "exact", "ortho-chain")
    if pendant:
        return BoundValue(2 ** (2 * n + 1), "exact", "para-chain-pendant")
    return BoundValue(2 ** (2 * n), "exact", "para-chain")


@dataclass(frozen=True)
class CoronaValues:
    pi: int
    pi_star: int


def corona_complete_pi(n: int, h: int) -> CoronaValues:
    """pi and pi* of K_n ∘ H for any H of order h (n > 2)."""
    _domain(_int(n) and n > 2, f"need n > 2, got {n!r}")
    _domain(_int(h) and h >= 1, f"need h >= 1, got {h!r}")
    return CoronaValues(n * h + 2 * n + 2, 4)


def qnm_pi(n: int, m: int) -> CoronaValues:
    _domain(_int(n) and n > 2, f"need n > 2, got {n!r}")
    _domain(_int(m) and m >= 2, f"need m >= 2, got {m!r}")
    return CoronaValues(m * n + n + 2, 4)


# --- trees -------------------------------------------------------------------

@dataclass(frozen=True)
class PathPartition:
    lengths: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    root: int


def _rooted_children(tree: Graph, r: int) -> list[list[int]]:
    if not tree.is_connected() or tree.size != tree.order - 1:
        raise GraphError("input is not a tree")
    if not 0 <= r < tree.order:
        raise GraphError(f"root {r} not in tree")
    children = [[] for _ in tree.vertices]
    parent = [-1] * tree.order
    order = [r]
    parent[r] = r
    for v in order:
        for w in tree.neighbors(v):
            if parent[w] < 0:
                parent[w] = v
                children[v].append(w)
                order.append(w)
    return children


def max_r_path_partition(tree: Graph, r: int) -> PathPartition:
    """Maximum r-path partition by long-path decomposition.

    Every child of ``r`` starts a path at ``r``; elsewhere a vertex continues
    its path into its tallest child (smallest id on ties) and every other
    child starts a new path at that vertex.
    """
    children = _rooted_children(tree, r)
    height = [0] * tree.order

    def fill(v):
        stack, post = [v], []
        while stack:
            x = stack.pop()
            post.append(x)
            stack.extend(children[x])
        for x in reversed(post):
            height[x] = max((height[c] + 1 for c in children[x]), default=0)

    fill(r)

    def heavy(v):
        return min(children[v], key=lambda c: (-height[c], c))

    paths = []
    starts = [(r, c) for c in children[r]]
    while starts:
        head, c = starts.pop(0)
        path = [head, c]
        v = c
        while children[v]:
            h = heavy(v)
            starts.extend((v, x) for x in children[v] if x != h)
            path.append(h)
            v = h
        paths.append(tuple(path))
    paths.sort(key=lambda p: (-len(p), p))
    return PathPartition(tuple(len(p) - 1 for p in paths), tuple(paths), r)


def majorizes(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a`` majorizes ``b`` (or equals it) in the lexicographic sense used for
    path partitions: at the first differing index ``a`` is larger."""
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return len(a) <= len(b)


def tree_pi(tree: Graph, r: int, t: int = 1) -> BoundValue:
    _domain(_int(t) and t >= 1, f"need t >= 1, got {t!r}")
    part = max_r_path_partition(tree, r)
    ls = part.lengths
    if not ls:
        return BoundValue(t, "exact", "tree-rooted")
    m = len(ls)
    return BoundValue(t * 2 ** ls[0] + sum(2 ** l for l in ls[1:]) - m + 1, "exact", "tree-rooted")


def tree_pi_global(tree: Graph) -> BoundValue:
    best = max(tree_pi(tree, r).value for r in tree.vertices)
    return BoundValue(best, "exact", "tree")


def spanning_trees(g: Graph, limit: int = 200000):
    """Yield spanning trees of a small connected graph as edge tuples."""
    n, edges = g.order, list(g.edges)
    extra = len(edges) - (n - 1)
    if extra < 0:
        raise GraphError("graph is disconnected")
    count = 0
    for drop in combinations(range(len(edges)), extra):
        dropped = set(drop)
        keep = [e for i, e in enumerate(edges) if i not in dropped]
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in keep:
            a, b = find(u), find(v)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            yield Graph(n, keep)
            count += 1
            if count >= limit:
                return


def spanning_tree_bound(g: Graph, r: int, t: int = 1) -> BoundValue:
    """Subgraph bound: min over spanning trees T of the tree formula pi_t(T, r)."""
    best = min(tree_pi(T, r, t).value for T in spanning_trees(g))
    return BoundValue(best, "upper", "spanning-tree")


# --- general bounds ------------------------------------------------------------

def lower_bounds(g: Graph) -> BoundValue:
    return BoundValue(max(g.order, 2 ** diameter(g)), "lower", "order-diameter")


def _pis(pi_values) -> list[int]:
    vals = [int(v) for v in pi_values]
    _domain(len(vals) >= 1 and all(v >= 1 for v in vals), "need at least one positive pebbling number")
    return vals


def product_bound(pi_values: Sequence[int]) -> BoundValue:
    p = 1
    for v in _pis(pi_values):
        p *= v
    return BoundValue(p, "upper", "polymer-product")


def link_bound(pi_values: Sequence[int]) -> BoundValue:
    vals = _pis(pi_values)
    return BoundValue(2 ** (len(vals) - 1) * product_bound(vals).value, "upper", "polymer-link")


def bouquet_bound(pi_values: Sequence[int]) -> BoundValue:
    vals = sorted(_pis(pi_values), reverse=True)
    if len(vals) == 1:
        return BoundValue(vals[0], "upper", "polymer-bouquet")
    return BoundValue(vals[0] * vals[1] + sum(v - 1 for v in vals[2:]), "upper", "polymer-bouquet")


# --- total domination and pi*_2 = 5 --------------------------------------------

TDS_ORDER_LIMIT = 16


def _closed_cover(g: Graph, S) -> bool:
    covered = set(S)
    for v in S:
        covered.update(g.neighbors(v))
    return len(covered) == g.order


def total_domination_number(g: Graph) -> int:
    """gamma_t by exhaustive subset search (every vertex needs a neighbor in S)."""
    if g.order > TDS_ORDER_LIMIT:
        raise FormulaDomainError(f"order {g.order} above search limit {TDS_ORDER_LIMIT}")
    if g.order < 2 or any(g.degree(v) == 0 for v in g.vertices):
        raise FormulaDomainError("total domination needs a graph without isolated vertices")
    nbrs = [set(g.neighbors(v)) for v in g.vertices]
    for k in range(1, g.order + 1):
        for S in combinations(g.vertices, k):
            s = set(S)
            if all(nbrs[v] & s for v in g.vertices):
                return k
    raise AssertionError("unreachable for graphs without isolated vertices")


def pi_star2_eq5_characterization(g: Graph) -> bool:
    """The total-domination test for ``pi*_2(G) = 5``, evaluated literally.

    True iff gamma_t(G) >= 4, no set ``{u, v} ∪ (N(u) ∩ N(v))`` dominates G,
    and one of the three triple conditions holds for some distinct u, v, w.
    "Dominates" means the closed neighborhoods of the set cover V(G).
    """
    if g.order < 2 or not g.is_connected():
        raise FormulaDomainError("need a nontrivial connected graph")
    if total_domination_number(g) < 4:
        return False
    N = [frozenset(g.neighbors(v)) for v in g.vertices]
    V = list(g.vertices)
    for u, v in combinations(V, 2):
        if _closed_cover(g, {u, v} | (N[u] & N[v])):
            return False
    for u in V:
        for v in V:
            if v == u:
                continue
            cuv = N[u] & N[v]
            # (i) w a common neighbor of u and v
            for w in cuv:
                if _closed_cover(g, {u, v, w} | cuv | (N[u] & N[w]) | (N[v] & N[w])):
                    return True
            # (ii) w a neighbor of v
            for w in N[v]:
                if w != u and _closed_cover(g, {u, v, w} | cuv | (N[u] & N[w])):
                    return True
            # (iii) w a neighbor of the common neighborhood
            ring = set().union(*(N[x] for x in cuv)) if cuv else set()
            for w in ring:
                if w not in (u, v) and _closed_cover(g, {u, v, w} | cuv):
                    return True
    return False

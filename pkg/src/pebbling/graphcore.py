"""Graph construction, composition, distances and (de)serialization.

Every family used for the pebbling experiments is built here: cycles, paths,
complete graphs, hypercubes, generalized friendship graphs, triangular and
square cactus chains, coronas and polymers assembled by point-attaching.
Graphs are immutable; constructors are pure and deterministic.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Invalid graph, constructor argument or composition instruction."""


class GraphFormatError(GraphError):
    """Malformed serialized graph; carries a line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class Graph:
    """Simple undirected graph on vertices ``0 .. order-1``.

    Edges are stored as normalized ``(min, max)`` pairs in insertion order so
    that serialization is byte-stable. ``labels`` maps a vertex to a single
    string tag such as ``"hub"`` or ``"cut"``.
    """

    __slots__ = ("_order", "_edges", "_adj", "_labels", "_dist")

    def __init__(self, order: int, edges: Iterable[Sequence[int]] = (),
                 labels: Mapping[int, str] | None = None):
        if not isinstance(order, int) or order < 0:
            raise GraphError(f"order must be a nonnegative integer, got {order!r}")
        seen = set()
        norm = []
        adj: list[set[int]] = [set() for _ in range(order)]
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range for order {order}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"parallel edge {key}")
            seen.add(key)
            norm.append(key)
            adj[u].add(v)
            adj[v].add(u)
        lab = {}
        for v, tag in (labels or {}).items():
            v = int(v)
            if not 0 <= v < order:
                raise GraphError(f"label on missing vertex {v}")
            lab[v] = str(tag)
        self._order = order
        self._edges = tuple(norm)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._labels = MappingProxyType(dict(sorted(lab.items())))
        self._dist: dict[int, tuple[int, ...]] = {}

    @property
    def order(self) -> int:
        return self._order

    @property
    def vertices(self) -> range:
        return range(self._order)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @property
    def size(self) -> int:
        return len(self._edges)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self._order, self._edges + ((u, v),), self._labels)

    def with_labels(self, labels: Mapping[int, str]) -> "Graph":
        merged = dict(self._labels)
        merged.update(labels)
        return Graph(self._order, self._edges, merged)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._order == other._order and self._edges == other._edges
                and dict(self._labels) == dict(other._labels))

    def __hash__(self):
        return hash((self._order, self._edges))

    def __repr__(self):
        return f"Graph(order={self._order}, edges={list(self._edges)})"

    def distances(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self._order:
            raise GraphError(f"vertex {v} out of range")
        d = self._dist.get(v)
        if d is None:
            d = _bfs(self._adj, v)
            if any(x < 0 for x in d):
                raise GraphError("graph is disconnected")
            self._dist[v] = d
        return d

    def is_connected(self) -> bool:
        if self._order == 0:
            return False
        return all(x >= 0 for x in _bfs(self._adj, 0))


def _bfs(adj, source):
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(dist)


def distances(g: Graph, v: int) -> tuple[int, ...]:
    """Hop distance from ``v`` to every vertex (``g`` must be connected)."""
    return g.distances(v)


def eccentricity(g: Graph, v: int) -> int:
    return max(g.distances(v))


def diameter(g: Graph) -> int:
    return max(eccentricity(g, v) for v in g.vertices)


# --- basic families -------------------------------------------------------

def _need(cond: bool, msg: str):
    if not cond:
        raise GraphError(msg)


def make_cycle(m: int) -> Graph:
    _need(isinstance(m, int) and m >= 3, f"cycle needs m >= 3, got {m!r}")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def make_path(n: int) -> Graph:
    _need(isinstance(n, int) and n >= 1, f"path needs n >= 1, got {n!r}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def make_complete(n: int) -> Graph:
    _need(isinstance(n, int) and n >= 1, f"complete graph needs n >= 1, got {n!r}")
    return Graph(n, [(i, j) for j in range(n) for i in range(j)])


def make_star(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    _need(isinstance(leaves, int) and leaves >= 1, "star needs at least one leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], {0: "center"})


def make_hypercube(d: int) -> Graph:
    """Vertex ``x`` encodes the binary d-tuple of its bits."""
    _need(isinstance(d, int) and d >= 1, f"hypercube needs d >= 1, got {d!r}")
    n = 1 << d
    return Graph(n, [(x, x | (1 << b)) for x in range(n) for b in range(d)
                     if not x & (1 << b)])


def make_tree(parents: Sequence[int | None]) -> Graph:
    """Tree from a parent list; exactly one entry (the root) is ``None``."""
    roots = [v for v, p in enumerate(parents) if p is None]
    _need(len(roots) == 1, "parent list must contain exactly one root")
    g = Graph(len(parents), [(p, v) for v, p in enumerate(parents) if p is not None])
    _need(g.is_connected(), "parent list does not describe a tree")
    return g


# --- composition ----------------------------------------------------------

def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Monomer-major disjoint union; returns the graph and per-part offsets."""
    offsets, edges, labels = [], [], {}
    base = 0
    for g in graphs:
        offsets.append(base)
        edges.extend((u + base, v + base) for u, v in g.edges)
        labels.update({v + base: t for v, t in g.labels.items()})
        base += g.order
    return Graph(base, edges, labels), offsets


def _identify(g: Graph, pairs: Iterable[tuple[int, int]], tag: str = "cut") -> tuple[Graph, list[int]]:
    # union-find keyed on the lower id, then compress ids preserving order
    parent = list(g.vertices)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = set()
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise GraphError(f"vertices {a} and {b} already identified")
        lo, hi = min(ra, rb), max(ra, rb)
        parent[hi] = lo
        merged.add(lo)
    reps = sorted({find(v) for v in g.vertices})
    new_id = {r: i for i, r in enumerate(reps)}
    vmap = [new_id[find(v)] for v in g.vertices]
    edges, seen = [], set()
    for u, v in g.edges:
        a, b = vmap[u], vmap[v]
        if a == b:
            raise GraphError("identification would create a self-loop")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError("identification would create a parallel edge")
        seen.add(key)
        edges.append((a, b))
    labels = {}
    for v, t in g.labels.items():
        labels.setdefault(vmap[v], t)
    for r in merged:
        labels[new_id[find(r)]] = tag
    return Graph(len(reps), edges, labels), vmap


def point_attach(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Identify ``v1`` of ``g1`` with ``v2`` of ``g2``.

    ``g1`` keeps its ids; the remaining vertices of ``g2`` follow in order.
    The merged vertex is labeled ``"cut"``.
    """
    _need(0 <= v1 < g1.order, f"vertex {v1} not in first graph")
    _need(0 <= v2 < g2.order, f"vertex {v2} not in second graph")
    union, off = disjoint_union([g1, g2])
    g, _ = _identify(union, [(v1, off[1] + v2)])
    return g


SHAPES = ("general", "chain", "link", "bouquet")


@dataclass(frozen=True)
class PolymerSpec:
    """Monomers plus attachment instructions ``(a, va, b, vb)``.

    For every shape except ``link`` an instruction identifies vertex ``va`` of
    monomer ``a`` with vertex ``vb`` of monomer ``b``. For ``link`` it adds the
    bridge edge between them instead.
    """

    monomers: tuple[Graph, ...]
    attachments: tuple[tuple[int, int, int, int], ...]
    shape: str = "general"

    def __init__(self, monomers, attachments, shape="general"):
        object.__setattr__(self, "monomers", tuple(monomers))
        object.__setattr__(self, "attachments", tuple(tuple(int(x) for x in a) for a in attachments))
        object.__setattr__(self, "shape", shape)

    def validate(self) -> None:
        k = len(self.monomers)
        _need(k >= 1, "polymer needs at least one monomer")
        _need(self.shape in SHAPES, f"unknown polymer shape {self.shape!r}")
        _need(len(self.attachments) == k - 1,
              f"{k} monomers need {k - 1} attachments, got {len(self.attachments)}")
        comp = list(range(k))

        def find(x):
            while comp[x] != x:
                x = comp[x]
            return x

        for a, va, b, vb in self.attachments:
            _need(0 <= a < k and 0 <= b < k, f"monomer index out of range in {(a, va, b, vb)}")
            _need(0 <= va < self.monomers[a].order, f"vertex {va} not in monomer {a}")
            _need(0 <= vb < self.monomers[b].order, f"vertex {vb} not in monomer {b}")
            ra, rb = find(a), find(b)
            _need(ra != rb, f"attachment {(a, va, b, vb)} closes a cycle over monomers")
            comp[ra] = rb
        if self.shape in ("chain", "link"):
            pairs = sorted(tuple(sorted((a, b))) for a, _, b, _ in self.attachments)
            _need(pairs == [(i, i + 1) for i in range(k - 1)],
                  f"{self.shape} attachments must join monomer i to monomer i+1")
        if self.shape == "chain":
            for i in range(1, k - 1):
                entry = [vb if b == i else va for a, va, b, vb in self.attachments
                         if (a, b) in ((i - 1, i), (i, i - 1))][0]
                exit_ = [va if a == i else vb for a, va, b, vb in self.attachments
                         if (a, b) in ((i, i + 1), (i + 1, i))][0]
                _need(entry != exit_, f"chain monomer {i} uses one vertex for both nodes")
        if self.shape == "bouquet":
            union, off = disjoint_union(self.monomers)
            g, vmap = _identify(union, [(off[a] + va, off[b] + vb)
                                        for a, va, b, vb in self.attachments])
            nodes = {vmap[off[a] + va] for a, va, _, _ in self.attachments}
            _need(len(nodes) <= 1, "bouquet attachments must all meet at one node")

    def to_json(self) -> dict:
        return {"shape": self.shape,
                "monomers": [graph_to_dict(m) for m in self.monomers],
                "attachments": [list(a) for a in self.attachments]}

    @classmethod
    def from_json(cls, data: dict) -> "PolymerSpec":
        try:
            mons = [graph_from_dict(m) for m in data["monomers"]]
            return cls(mons, data.get("attachments", []), data.get("shape", "general"))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed polymer spec: {exc}") from None


def compose_polymer(spec: PolymerSpec) -> Graph:
    """Assemble the polymer described by ``spec`` (monomer-major numbering)."""
    spec.validate()
    union, off = disjoint_union(spec.monomers)
    pairs = [(off[a] + va, off[b] + vb) for a, va, b, vb in spec.attachments]
    if spec.shape == "link":
        g = union
        for u, v in pairs:
            g = g.with_edge(u, v)
        return g.with_labels({v: "terminal" for p in pairs for v in p})
    g, _ = _identify(union, pairs)
    return g


# --- named families --------------------------------------------------------

def make_friendship(n: int, m: int) -> Graph:
    """Generalized friendship graph F_{n,m}: n copies of C_m sharing vertex 0."""
    _need(isinstance(n, int) and n >= 1, f"friendship graph needs n >= 1, got {n!r}")
    _need(isinstance(m, int) and m >= 3, f"friendship graph needs m >= 3, got {m!r}")
    spec = PolymerSpec([make_cycle(m)] * n, [(0, 0, i, 0) for i in range(1, n)], "bouquet")
    return compose_polymer(spec).with_labels({0: "hub"})


def bouquet(monomers: Sequence[Graph], nodes: Sequence[int] | None = None) -> Graph:
    """All monomers identified at one node (vertex ``nodes[i]`` of monomer i)."""
    nodes = list(nodes) if nodes is not None else [0] * len(monomers)
    spec = PolymerSpec(monomers, [(0, nodes[0], i, nodes[i]) for i in range(1, len(monomers))],
                       "bouquet")
    return compose_polymer(spec)


def make_triangular_chain(n: int, pendant: bool = False) -> Graph:
    """Chain triangular cactus T_n; ``pendant`` builds T_n+e.

    Triangle i is ``{2i, 2i+1, 2i+2}``; the pendant vertex ``2n+1`` hangs off
    corner ``2n``, a cut-free corner at maximum distance from vertex 0.
    """
    _need(isinstance(n, int) and n >= 1, f"triangular chain needs n >= 1, got {n!r}")
    edges = []
    for i in range(n):
        a, b, c = 2 * i, 2 * i + 1, 2 * i + 2
        edges += [(a, b), (b, c), (a, c)]
    labels = {2 * i: "cut" for i in range(1, n)}
    order = 2 * n + 1
    if pendant:
        edges.append((2 * n, 2 * n + 1))
        labels[2 * n + 1] = "terminal"
        order += 1
    return Graph(order, edges, labels)


def make_square_chain(n: int, kind: str = "para", pendant: bool = False,
                      bridges: bool = False) -> Graph:
    """Square cactus chain Q_n (para) or O_n (ortho).

    Monomer i is a C_4 ``0-1-2-3``; it is entered at its vertex 0 and left at
    vertex 2 (para, and always for the first square) or vertex 1 (ortho,
    internal squares). Vertex 0 of the result is the far corner of the first
    square. ``bridges`` joins consecutive squares by an edge instead of
    identifying vertices (Q_n+(n-1)e). ``pendant`` hangs one extra vertex on
    vertex 2 of the last square.
    """
    _need(isinstance(n, int) and n >= 1, f"square chain needs n >= 1, got {n!r}")
    _need(kind in ("para", "ortho"), f"kind must be 'para' or 'ortho', got {kind!r}")
    exits = [2] + [2 if kind == "para" else 1] * (n - 2)
    atts = [(i, exits[i], i + 1, 0) for i in range(n - 1)]
    spec = PolymerSpec([make_cycle(4)] * n, atts, "link" if bridges else "chain")
    g = compose_polymer(spec)
    if pendant:
        far = far_corner_of_square_chain(n, kind, bridges)
        g = Graph(g.order + 1, g.edges + ((far, g.order),), {**g.labels, g.order: "terminal"})
    return g


def far_corner_of_square_chain(n: int, kind: str = "para", bridges: bool = False) -> int:
    """Id of vertex 2 of the last square (before any pendant is added)."""
    return 4 * n - 2 if bridges else 3 * n - 1


def make_corona(g: Graph, h: Graph) -> Graph:
    """Corona g∘h: vertex i of g joined to every vertex of the i-th copy of h."""
    _need(g.order >= 1, "corona needs a nonempty first graph")
    _need(h.order >= 1, "corona needs a nonempty second graph")
    edges = list(g.edges)
    for i in range(g.order):
        base = g.order + i * h.order
        edges += [(u + base, v + base) for u, v in h.edges]
        edges += [(i, base + j) for j in range(h.order)]
    return Graph(g.order * (1 + h.order), edges)


def make_Qnm(n: int, m: int) -> Graph:
    """Q(n, m) = K_n ∘ K_{m-1}."""
    _need(isinstance(n, int) and n > 1, f"Q(n,m) needs n > 1, got {n!r}")
    _need(isinstance(m, int) and m > 1, f"Q(n,m) needs m > 1, got {m!r}")
    return make_corona(make_complete(n), make_complete(m - 1))


# --- serialization --------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    d = {"order": g.order, "edges": [list(e) for e in g.edges]}
    if g.labels:
        d["labels"] = {str(v): t for v, t in g.labels.items()}
    return d


def graph_from_dict(d) -> Graph:
    if not isinstance(d, dict) or "order" not in d:
        raise GraphError("graph object needs an 'order' field")
    edges = d.get("edges", [])
    if not all(isinstance(e, (list, tuple)) and len(e) == 2 for e in edges):
        raise GraphError("edges must be pairs")
    labels = {int(k): v for k, v in (d.get("labels") or {}).items()}
    return Graph(d["order"], edges, labels)


def export_graph(g: Graph, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(graph_to_dict(g), separators=(",", ":")) + "\n").encode()
    if format == "dot":
        lines = ["graph G {"]
        for v in g.vertices:
            tag = g.labels.get(v)
            lines.append(f'  {v} [label="{tag}"];' if tag else f"  {v};")
        lines += [f"  {u} -- {v};" for u, v in g.edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise GraphError(f"unknown graph format {format!r}")


_DOT_NODE = re.compile(r'^(\d+)\s*(?:\[\s*label\s*=\s*"([^"]*)"\s*\])?\s*;?$')
_DOT_EDGE = re.compile(r"^(\d+)\s*--\s*(\d+)\s*;?$")


def import_graph(data: bytes | str, format: str = "json") -> Graph:
    text = data.decode() if isinstance(data, bytes) else data
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(exc.msg, exc.lineno, exc.colno) from None
        try:
            return graph_from_dict(obj)
        except GraphError as exc:
            raise GraphFormatError(str(exc), 1, 1) from None
    if format == "dot":
        return _parse_dot(text)
    raise GraphError(f"unknown graph format {format!r}")


def _parse_dot(text: str) -> Graph:
    lines = text.splitlines()
    nodes: dict[int, str | None] = {}
    edges = []
    opened = closed = False
    for lineno, raw in enumerate(lines, 1):
        s = raw.strip()
        col = len(raw) - len(raw.lstrip()) + 1
        if not s or s.startswith("//"):
            continue
        if not opened:
            if not re.match(r"^(strict\s+)?graph(\s+\w+)?\s*\{$", s):
                raise GraphFormatError("expected 'graph NAME {'", lineno, col)
            opened = True
            continue
        if s == "}":
            closed = True
            continue
        if closed:
            raise GraphFormatError("content after closing brace", lineno, col)
        m = _DOT_EDGE.match(s)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
            continue
        m = _DOT_NODE.match(s)
        if m:
            nodes[int(m.group(1))] = m.group(2)
            continue
        raise GraphFormatError(f"cannot parse statement {s!r}", lineno, col)
    if not closed:
        raise GraphFormatError("missing closing brace", len(lines) + 1, 1)
    order = max([*nodes, *(x for e in edges for x in e)], default=-1) + 1
    try:
        return Graph(order, edges, {v: t for v, t in nodes.items() if t})
    except GraphError as exc:
        raise GraphFormatError(str(exc), 1, 1) from None


# --- symmetry & isomorphism (small graphs) --------------------------------

def _refined_colors(g: Graph) -> list[tuple]:
    return [tuple(sorted(g.distances(v))) for v in g.vertices]


def automorphisms(g: Graph, limit: int = 100000) -> list[tuple[int, ...]]:
    """All automorphisms as permutation tuples (backtracking, small graphs)."""
    return list(_isomorphisms(g, g, limit))


def _isomorphisms(g: Graph, h: Graph, limit: int):
    if g.order != h.order or g.size != h.size:
        return
    n = g.order
    if n == 0:
        yield ()
        return
    cg = _refined_colors(g) if g.is_connected() else [(g.degree(v),) for v in g.vertices]
    ch = _refined_colors(h) if h.is_connected() else [(h.degree(v),) for v in h.vertices]
    if sorted(cg) != sorted(ch):
        return
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    # place vertices adjacent to already-placed ones early
    placed, seq = set(), []
    while len(seq) < n:
        nxt = next((v for v in order if v not in placed and
                    any(w in placed for w in g.neighbors(v))), None)
        if nxt is None:
            nxt = next(v for v in order if v not in placed)
        seq.append(nxt)
        placed.add(nxt)
    mapping = [-1] * n
    used = [False] * n
    count = 0

    def rec(i):
        nonlocal count
        if count >= limit:
            return
        if i == n:
            count += 1
            yield tuple(mapping)
            return
        v = seq[i]
        for w in range(n):
            if used[w] or cg[v] != ch[w]:
                continue
            ok = True
            for j in range(i):
                u = seq[j]
                if g.has_edge(u, v) != h.has_edge(mapping[u], w):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                yield from rec(i + 1)
                used[w] = False
                mapping[v] = -1

    yield from rec(0)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Exhaustive permutation search; only meant for order <= 10."""
    if g.order > 10 or h.order > 10:
        raise GraphError("isomorphism test limited to order <= 10")
    return next(_isomorphisms(g, h, 1), None) is not None


def vertex_orbits(g: Graph) -> list[list[int]]:
    """Orbits of the automorphism group, each sorted, ordered by min vertex."""
    seen = [-1] * g.order
    auts = automorphisms(g)
    orbits = []
    for v in g.vertices:
        if seen[v] >= 0:
            continue
        orb = sorted({a[v] for a in auts})
        for w in orb:
            seen[w] = len(orbits)
        orbits.append(orb)
    return orbits

"""Dense-id undirected graphs and the structural subroutines built on them.

Vertices are the integers ``0..n-1``.  Graphs are immutable: build them with
:func:`build_graph` or one of the small constructors, and derive new graphs
with :func:`induced_subgraph`, :func:`disjoint_union` or :func:`join`.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _bits
from .errors import (
    CapabilityError,
    GraphConstructionError,
    IndependenceError,
    PartitionError,
    SearchBudgetExceeded,
)

PATTERN_ORDER_CAP = 10


class Graph:
    """Immutable simple graph with sorted adjacency.

    ``edges`` is a tuple of ``(u, v)`` pairs with ``u < v``, sorted
    lexicographically.  ``adj[v]`` is a frozenset of neighbours.  Packed
    adjacency rows for the searches are built lazily by :meth:`bitrows`.
    """

    __slots__ = ("n", "edges", "adj", "_rows")

    def __init__(self, n: int, edges: tuple, adj: tuple):
        self.n = n
        self.edges = edges
        self.adj = adj
        self._rows = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbours(self, v: int) -> frozenset:
        return self.adj[v]

    def bitrows(self) -> np.ndarray:
        if self._rows is None:
            self._rows = _bits.pack_rows(self.n, self.adj)
        return self._rows

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges) -> Graph:
    """Validate and normalise an edge list into a :class:`Graph`.

    Duplicate edges collapse; self-loops and out-of-range ids raise
    :class:`GraphConstructionError`.
    """
    if n < 0:
        raise GraphConstructionError(f"negative vertex count {n}")
    seen = set()
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphConstructionError(f"edge {e!r} leaves the id range 0..{n - 1}")
        if u == v:
            raise GraphConstructionError(f"self-loop at vertex {u}")
        seen.add((u, v) if u < v else (v, u))
    sorted_edges = tuple(sorted(seen))
    nbr = [set() for _ in range(n)]
    for u, v in sorted_edges:
        nbr[u].add(v)
        nbr[v].add(u)
    return Graph(n, sorted_edges, tuple(frozenset(s) for s in nbr))


# ---------------------------------------------------------------- constructors

def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def path_graph(t: int) -> Graph:
    return build_graph(t, [(i, i + 1) for i in range(t - 1)])


def cycle_graph(t: int) -> Graph:
    if t < 3:
        raise GraphConstructionError("cycles need at least 3 vertices")
    return build_graph(t, [(i, (i + 1) % t) for i in range(t)])


def complete_graph(t: int) -> Graph:
    return build_graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])


def complete_multipartite_graph(sizes) -> Graph:
    sizes = list(sizes)
    n = sum(sizes)
    bounds = []
    acc = 0
    for s in sizes:
        bounds.append((acc, acc + s))
        acc += s
    edges = []
    for a, (lo1, hi1) in enumerate(bounds):
        for lo2, hi2 in bounds[a + 1:]:
            edges.extend((u, v) for u in range(lo1, hi1) for v in range(lo2, hi2))
    return build_graph(n, edges)


def matching_graph(k: int) -> Graph:
    """k disjoint edges (the pattern kP2)."""
    return build_graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def disjoint_union(graphs) -> Graph:
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return build_graph(offset, edges)


def join(g1: Graph, g2: Graph) -> Graph:
    edges = list(g1.edges)
    off = g1.n
    edges.extend((u + off, v + off) for u, v in g2.edges)
    edges.extend((u, v + off) for u in range(g1.n) for v in range(g2.n))
    return build_graph(g1.n + g2.n, edges)


_PATTERN_TERM = re.compile(r"^(\d*)([pc])(\d+)$")


def pattern_graph(name: str) -> Graph:
    """Parse a pattern name such as ``p5``, ``c7``, ``2p2`` or ``p3+2p1``.

    Terms joined with ``+`` denote a disjoint union; a leading multiplier
    repeats the term.
    """
    parts = []
    for term in name.lower().split("+"):
        m = _PATTERN_TERM.match(term.strip())
        if not m:
            raise GraphConstructionError(f"unrecognised pattern term {term!r}")
        count = int(m.group(1)) if m.group(1) else 1
        order = int(m.group(3))
        base = path_graph(order) if m.group(2) == "p" else cycle_graph(order)
        parts.extend([base] * count)
    return disjoint_union(parts)


def induced_subgraph(g: Graph, vertices) -> tuple:
    """Induced subgraph on ``vertices`` plus the new-to-old id mapping."""
    keep = sorted(set(vertices))
    index = {old: new for new, old in enumerate(keep)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return build_graph(len(keep), edges), tuple(keep)


# ------------------------------------------------------------------- instances

@dataclass(frozen=True)
class ProbeInstance:
    """Graph with a probe/nonprobe vertex partition; nonprobes independent."""

    graph: Graph
    probes: frozenset
    nonprobes: frozenset
    meta: dict | None = field(default=None, compare=False)


def validate_probe_instance(g: Graph, probes, nonprobes, meta=None) -> ProbeInstance:
    """Check the partition contract and wrap it into a :class:`ProbeInstance`."""
    p, q = frozenset(probes), frozenset(nonprobes)
    universe = frozenset(range(g.n))
    if p | q != universe or p & q:
        raise PartitionError("probes and nonprobes must partition the vertex set")
    for u, v in g.edges:
        if u in q and v in q:
            raise IndependenceError((u, v))
    return ProbeInstance(g, p, q, meta)


@dataclass(frozen=True)
class PartialColouring:
    """Partial proper colouring; colour 0 stands for `uncoloured`."""

    k: int
    colours: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one colour")
        for c in self.colours:
            if not 0 <= c <= self.k:
                raise ValueError(f"colour {c} outside 0..{self.k}")

    @classmethod
    def blank(cls, n: int, k: int) -> "PartialColouring":
        return cls(k, (0,) * n)

    def colour_of(self, v: int) -> int:
        return self.colours[v]

    def with_colours(self, assignment: dict) -> "PartialColouring":
        col = list(self.colours)
        for v, c in assignment.items():
            col[v] = c
        return PartialColouring(self.k, tuple(col))

    def uncoloured(self):
        return [v for v, c in enumerate(self.colours) if c == 0]

    def is_proper_on(self, g: Graph) -> bool:
        for u, v in g.edges:
            cu, cv = self.colours[u], self.colours[v]
            if cu and cu == cv:
                return False
        return True


@dataclass(frozen=True)
class InducedEmbedding:
    """Injective vertex map witnessing an induced copy of ``pattern`` in ``host``."""

    pattern: Graph
    host: Graph
    image: tuple

    def __post_init__(self):
        img = self.image
        if len(img) != self.pattern.n or len(set(img)) != len(img):
            raise ValueError("image must map the pattern vertices injectively")
        for a in range(self.pattern.n):
            for b in range(a + 1, self.pattern.n):
                if self.pattern.has_edge(a, b) != self.host.has_edge(img[a], img[b]):
                    raise ValueError(
                        f"pair ({a},{b}) breaks induced adjacency under the map"
                    )


# ------------------------------------------------------------------ traversals

def connected_components(g: Graph) -> list:
    """Components as sorted tuples, listed by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class TwoColouring:
    colours: tuple  # entries 1 or 2


@dataclass(frozen=True)
class OddClosedWalk:
    walk: tuple  # closed: first vertex repeated last, odd number of edges


def bipartition(g: Graph):
    """Proper 2-colouring, or an odd closed walk if none exists."""
    colour = [0] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if colour[s]:
            continue
        colour[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if colour[w] == 0:
                    colour[w] = 3 - colour[v]
                    parent[w] = v
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return OddClosedWalk(_odd_walk(parent, v, w))
    return TwoColouring(tuple(colour))


def _odd_walk(parent, u, v):
    up, vp = [u], [v]
    au, av = u, v
    seen_u = {u: 0}
    while parent[au] != -1:
        au = parent[au]
        seen_u[au] = len(up)
        up.append(au)
    while av not in seen_u:
        av = parent[av]
        vp.append(av)
    cut = seen_u[av]
    up = up[: cut + 1]
    return tuple(reversed(up)) + tuple(vp[:-1]) + (up[cut],)


def shortest_odd_cycle(g: Graph):
    """Lexicographically canonical shortest odd cycle, or None if bipartite.

    Breadth-first layering from every vertex; the output is chordless because
    a chord would split the cycle into a strictly shorter odd one.
    """
    best_len = None
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        limit = None if best_len is None else (best_len - 1) // 2
        while queue:
            v = queue.popleft()
            if limit is not None and dist[v] >= limit:
                continue
            for w in g.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
        for u, v in g.edges:
            if u in dist and v in dist and dist[u] == dist[v]:
                length = dist[u] + dist[v] + 1
                if best_len is None or length < best_len:
                    walk = _meet_walk(parent, u, v)
                    if walk is not None:
                        best_len = length
                        best = walk
                        if best_len == 3:
                            return _canonical_cycle(best)
    return _canonical_cycle(best) if best is not None else None


def _meet_walk(parent, u, v):
    pu, pv = [u], [v]
    while parent[pu[-1]] != -1:
        pu.append(parent[pu[-1]])
    while parent[pv[-1]] != -1:
        pv.append(parent[pv[-1]])
    cycle = list(reversed(pu)) + pv[:-1]
    if len(set(cycle)) != len(cycle):
        return None  # walk revisits a vertex; a shorter odd cycle exists elsewhere
    return cycle


def _canonical_cycle(cycle):
    k = len(cycle)
    start = cycle.index(min(cycle))
    rot = cycle[start:] + cycle[:start]
    if rot[1] > rot[-1]:
        rot = [rot[0]] + list(reversed(rot[1:]))
    return tuple(rot)


def find_k4(g: Graph):
    """Some 4-clique as an ascending tuple, or None."""
    if g.n < 4:
        return None
    if isinstance(bipartition(g), TwoColouring):
        return None
    rows = g.bitrows()
    for u, v in g.edges:
        common = rows[u] & rows[v]
        if not common.any():
            continue
        for w in _bits.iter_bits(common):
            hit = common & rows[w]
            x = _bits.first_bit(hit)
            if x >= 0:
                return tuple(sorted((u, v, w, x)))
    return None


def find_induced_subgraph(host: Graph, pattern: Graph, *, node_budget=None):
    """First induced copy of ``pattern`` in ``host`` in lexicographic image
    order, or None.

    Backtracking over pattern vertices in id order with bitset forward
    checking; exceeding ``node_budget`` raises :class:`SearchBudgetExceeded`.
    """
    p = pattern.n
    if p > PATTERN_ORDER_CAP:
        raise CapabilityError(f"pattern order {p} exceeds the cap {PATTERN_ORDER_CAP}")
    if p == 0:
        return InducedEmbedding(pattern, host, ())
    if p > host.n:
        return None
    rows = host.bitrows()
    mask = _bits.full_mask(host.n)
    image = [0] * p
    counter = [0]

    def rec(d, cands):
        for x in _bits.iter_bits(cands[d]):
            counter[0] += 1
            if node_budget is not None and counter[0] > node_budget:
                raise SearchBudgetExceeded(
                    f"induced-pattern search exceeded {node_budget} nodes"
                )
            image[d] = x
            if d + 1 == p:
                return True
            nxt = []
            dead = False
            for j in range(d + 1, p):
                if pattern.has_edge(d, j):
                    row = cands[j] & rows[x]
                else:
                    row = cands[j] & ~rows[x] & mask
                    _bits.clear_bit(row, x)
                if not row.any():
                    dead = True
                    break
                nxt.append(row)
            if not dead and rec(d + 1, cands[: d + 1] + nxt):
                return True
        return False

    if rec(0, [mask.copy() for _ in range(p)]):
        return InducedEmbedding(pattern, host, tuple(image))
    return None


# ------------------------------------------------------- structure recognisers

def complement_components(g: Graph) -> list:
    """Components of the complement graph, without materialising it."""
    if g.n == 0:
        return []
    unvisited = _bits.full_mask(g.n)
    rows = g.bitrows()
    comps = []
    while True:
        s = _bits.first_bit(unvisited)
        if s < 0:
            break
        _bits.clear_bit(unvisited, s)
        comp = [s]
        frontier = [s]
        while frontier:
            v = frontier.pop()
            fresh = unvisited & ~rows[v]
            fresh &= _bits.full_mask(g.n)
            new = list(_bits.iter_bits(fresh))
            if new:
                unvisited &= rows[v]
                comp.extend(new)
                frontier.extend(new)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return comps


def split_partition(g: Graph):
    """(clique, independent) vertex tuples if g is a split graph, else None.

    Degree-sequence test (sum over the top q degrees equals q(q-1) plus the
    rest), then an explicit check of both sides.
    """
    n = g.n
    if n == 0:
        return (), ()
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    q = 0
    for i in range(n):
        if degs[i] >= i:
            q = i + 1
    if sum(degs[:q]) != q * (q - 1) + sum(degs[q:]):
        return None
    clique = order[:q]
    indep = order[q:]
    rows = g.bitrows()
    cl_row = _bits.bit_row(n, clique)
    for c in clique:
        want = cl_row.copy()
        _bits.clear_bit(want, c)
        if (rows[c] & want != want).any():
            return None
    indep_set = set(indep)
    for u, v in g.edges:
        if u in indep_set and v in indep_set:
            return None
    return tuple(sorted(clique)), tuple(sorted(indep))

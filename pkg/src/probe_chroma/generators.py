"""Seeded instance generators, the two hardness-gadget constructors, and the
named fixture catalogue."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    ProbeInstance,
    build_graph,
    complete_multipartite_graph,
    cycle_graph,
    disjoint_union,
    find_induced_subgraph,
    join,
    path_graph,
    pattern_graph,
    validate_probe_instance,
)

_P5 = pattern_graph("p5")

REJECTION_ATTEMPTS = 120
REJECTION_MAX_N = 16
FILL_META_CAP = 2000


@dataclass(frozen=True)
class X3CInstance:
    """Exact-3-cover input: a universe of size 3k and a collection of
    3-subsets of it."""

    universe: tuple
    collection: tuple

    def __post_init__(self):
        ground = set(self.universe)
        if len(ground) != len(self.universe):
            raise ValueError("universe elements must be distinct")
        for s in self.collection:
            if len(set(s)) != 3 or not set(s) <= ground:
                raise ValueError(f"not a 3-subset of the universe: {s!r}")


def _rng(tag: str, *params) -> random.Random:
    return random.Random(":".join([tag] + [repr(p) for p in params]))


def _random_graph(n, p, rng):
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    return build_graph(n, edges)


# ------------------------------------------------------------------- hosts

def gen_p5free_host(n: int, edge_density: float, seed) -> Graph:
    """Deterministic P5-free graph on n vertices.

    Small orders rejection-sample random graphs; larger orders compose
    split graphs, complete multipartite graphs, unions, and joins, all of
    which avoid induced P5s.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = _rng("p5host", n, edge_density, seed)
    if n <= REJECTION_MAX_N:
        for _ in range(REJECTION_ATTEMPTS):
            g = _random_graph(n, edge_density, rng)
            if find_induced_subgraph(g, _P5) is None:
                return g
    return _structured_p5free(n, edge_density, rng)


def _structured_p5free(n, density, rng):
    if n <= 2:
        edges = [(0, 1)] if n == 2 and rng.random() < density else []
        return build_graph(n, edges)
    if n > 60:
        hi = min(n - 3, 60)
        cut = rng.randint(min(max(3, n // 3), hi), hi)
        return disjoint_union([
            _structured_p5free(cut, density, rng),
            _structured_p5free(n - cut, density, rng),
        ])
    roll = rng.random()
    if roll < 0.35:
        return _split_graph(n, density, rng)
    if roll < 0.6:
        return _multipartite(n, rng)
    if roll < 0.8 and n >= 6:
        cut = rng.randint(2, n - 2)
        return disjoint_union([
            _structured_p5free(cut, density, rng),
            _structured_p5free(n - cut, density, rng),
        ])
    if n >= 4:
        cut = rng.randint(1, n - 1)
        return join(
            _structured_p5free(cut, density, rng),
            _structured_p5free(n - cut, density, rng),
        )
    return _split_graph(n, density, rng)


def _split_graph(n, density, rng):
    clique = rng.randint(1, min(n, max(2, int(density * 8) + 2)))
    edges = list(itertools.combinations(range(clique), 2))
    for v in range(clique, n):
        for c in range(clique):
            if rng.random() < density:
                edges.append((c, v))
    return build_graph(n, edges)


def _multipartite(n, rng):
    parts = rng.randint(2, min(3, n)) if n >= 2 else 1
    sizes = [1] * parts
    for _ in range(n - parts):
        sizes[rng.randrange(parts)] += 1
    return complete_multipartite_graph(sizes)


def _disjoint_cliques(n, rng):
    sizes = []
    left = n
    while left:
        take = min(left, rng.randint(1, 5))
        sizes.append(take)
        left -= take
    edges = []
    base = 0
    for size in sizes:
        edges.extend(itertools.combinations(range(base, base + size), 2))
        base += size
    return build_graph(n, edges)


def _hfree_host(n, density, rng, pattern, fallback):
    """Rejection sampling with a structured escape hatch."""
    if n <= REJECTION_MAX_N:
        for _ in range(REJECTION_ATTEMPTS):
            g = _random_graph(n, density, rng)
            if find_induced_subgraph(g, pattern) is None:
                return g
    return fallback(n, rng)


def _trianglefree_p5free_host(n, rng):
    """Union of complete bipartite blocks, stars, short paths, and
    pentagons; every block is both triangle-free and P5-free."""
    blocks = []
    left = n
    while left:
        take = min(left, rng.randint(1, 12))
        roll = rng.random()
        if take >= 5 and roll < 0.2:
            blocks.append(cycle_graph(5))
            left -= 5
            continue
        if take >= 2 and roll < 0.6:
            a = rng.randint(1, take - 1)
            sides = [list(range(a)), list(range(a, take))]
            edges = [(u, v) for u in sides[0] for v in sides[1]]
            blocks.append(build_graph(take, edges))
        elif take >= 2 and roll < 0.8:
            blocks.append(path_graph(min(take, 4)))
            take = min(take, 4)
        else:
            blocks.append(build_graph(take, []))
        left -= take
    return disjoint_union(blocks)


# --------------------------------------------------------- probe instances

def gen_probe_instance(n: int, density: float, seed,
                       pattern="p5", *, family: str | None = None) -> ProbeInstance:
    """Certified-by-construction probe instance.

    Default construction: sample a pattern-free host, pick a seeded
    nonprobe set, delete its internal edges.  The engineered families
    (``path-split``, ``pentagon``, ``split-pure``, ``union``,
    ``trianglefree``) build specific shapes with a known fill set.
    """
    if family == "path-split":
        return _family_path_split(n, seed)
    if family == "pentagon":
        return _family_pentagon(n, seed)
    if family == "split-pure":
        return _family_split_pure(n, density, seed)
    if family == "union":
        return _family_union(n, density, seed)
    if family == "trianglefree":
        return _family_trianglefree(n, density, seed)
    if family is not None:
        raise ValueError(f"unknown family: {family}")
    name = pattern if isinstance(pattern, str) else None
    pat = pattern_graph(pattern) if isinstance(pattern, str) else pattern
    rng = _rng("inst", n, density, seed, name)
    if name == "p5" or pat == _P5:
        host = gen_p5free_host(n, density, (seed, "host"))
    elif name == "p3" or (name and name.startswith("p3+")) or pat == pattern_graph("p3"):
        fallback = _disjoint_cliques if pat.m == 2 and pat.n == 3 else _multipartite
        host = _hfree_host(n, density, rng, pat, fallback)
    else:
        host = _hfree_host(n, density, rng, pat, _multipartite)
    frac = 0.2 + 0.5 * rng.random()
    nonprobes = frozenset(v for v in range(n) if rng.random() < frac)
    return _delete_and_pack(host, nonprobes, {
        "family": name or "custom", "n": n, "density": density, "seed": seed,
    })


def _delete_and_pack(host, nonprobes, meta):
    fill = tuple(
        e for e in host.edges if e[0] in nonprobes and e[1] in nonprobes
    )
    kept = [e for e in host.edges if e not in set(fill)]
    g = build_graph(host.n, kept)
    meta = dict(meta)
    meta["fill_count"] = len(fill)
    meta["fill"] = fill if len(fill) <= FILL_META_CAP else None
    probes = frozenset(range(host.n)) - frozenset(nonprobes)
    return validate_probe_instance(g, probes, frozenset(nonprobes), meta=meta)


def _family_path_split(n, seed):
    n = n + (n % 2)
    g = path_graph(n)
    probes = frozenset(range(0, n, 2))
    nonprobes = frozenset(range(1, n, 2))
    meta = {"family": "path-split", "n": n, "density": None, "seed": seed,
            "fill": None, "fill_count": None}
    return validate_probe_instance(g, probes, nonprobes, meta=meta)


def _family_pentagon(n, seed):
    """C5 of probes plus nonprobe attachment vertices, each adjacent to a
    pair of cycle vertices at distance two.  Completing the nonprobes to a
    clique yields a P5-free graph, so the fill certificate is the full
    nonprobe clique."""
    if n < 5:
        n = 5
    rng = _rng("pentagon", n, seed)
    edges = [(i, (i + 1) % 5) for i in range(5)]
    for v in range(5, n):
        i = rng.randrange(5)
        edges.append((i, v))
        edges.append(((i + 2) % 5, v))
    g = build_graph(n, edges)
    extras = tuple(range(5, n))
    t = len(extras)
    fill_count = t * (t - 1) // 2
    fill = (
        tuple(itertools.combinations(extras, 2))
        if fill_count <= FILL_META_CAP else None
    )
    meta = {"family": "pentagon", "n": n, "density": None, "seed": seed,
            "fill": fill, "fill_count": fill_count}
    return validate_probe_instance(
        g, frozenset(range(5)), frozenset(extras), meta=meta)


def _family_split_pure(n, density, seed):
    """Split graph: triangle 0-1-2, vertex 0 adjacent to every independent
    vertex, extra cross edges never closing a K4."""
    if n < 4:
        n = 4
    rng = _rng("splitpure", n, density, seed)
    edges = [(0, 1), (0, 2), (1, 2)]
    for v in range(3, n):
        edges.append((0, v))
        roll = rng.random()
        if roll < density * 0.5:
            edges.append((1, v))
        elif roll < density:
            edges.append((2, v))
    g = build_graph(n, edges)
    frac = 0.3 + 0.4 * rng.random()
    nonprobes = frozenset(v for v in range(3, n) if rng.random() < frac)
    meta = {"family": "split-pure", "n": n, "density": density, "seed": seed,
            "fill": (), "fill_count": 0}
    return validate_probe_instance(
        g, frozenset(range(n)) - nonprobes, nonprobes, meta=meta)


def _family_union(n, density, seed):
    rng = _rng("union", n, density, seed)
    chunks = rng.randint(2, 4)
    sizes = []
    left = n
    for i in range(chunks):
        if i == chunks - 1:
            sizes.append(max(left, 6))
            break
        take = max(6, left // chunks + rng.randint(-2, 2))
        take = min(take, left - 6 * (chunks - i - 1))
        if take < 6:
            take = 6
        sizes.append(take)
        left -= take
    parts = []
    for i, size in enumerate(sizes):
        kind = rng.choice(("path-split", "pentagon", "split-pure"))
        parts.append(gen_probe_instance(
            size, density, (seed, "chunk", i), family=kind))
    offset = 0
    edges, probes, nonprobes = [], [], []
    for part in parts:
        edges.extend((u + offset, v + offset) for u, v in part.graph.edges)
        probes.extend(v + offset for v in part.probes)
        nonprobes.extend(v + offset for v in part.nonprobes)
        offset += part.graph.n
    g = build_graph(offset, edges)
    meta = {"family": "union", "n": offset, "density": density, "seed": seed,
            "fill": None, "fill_count": None,
            "chunks": tuple(p.meta["family"] for p in parts)}
    return validate_probe_instance(
        g, frozenset(probes), frozenset(nonprobes), meta=meta)


def _family_trianglefree(n, density, seed):
    rng = _rng("trifree", n, density, seed)
    if n >= 8 and rng.random() < 0.4:
        inst = _family_pentagon(n, (seed, "tf"))
        meta = dict(inst.meta)
        meta["family"] = "trianglefree"
        return validate_probe_instance(
            inst.graph, inst.probes, inst.nonprobes, meta=meta)
    host = _trianglefree_p5free_host(n, rng)
    frac = 0.2 + 0.4 * rng.random()
    nonprobes = frozenset(v for v in range(n) if rng.random() < frac)
    return _delete_and_pack(host, nonprobes, {
        "family": "trianglefree", "n": n, "density": density, "seed": seed,
    })


# ------------------------------------------------------- hardness gadgets

_TRIVIAL_NO = "degenerate input; emitting a fixed 1-uncolourable instance"


def gen_x3c_reduction(x3c: X3CInstance):
    """Complement-gadget reduction from exact 3-cover to s-colourability.

    Returns (instance, s).  Degenerate inputs (universe size not 3k, or
    fewer sets than k) map to a fixed trivial no-instance.
    """
    ground = sorted(x3c.universe)
    s = len(x3c.collection)
    k, rem = divmod(len(ground), 3)
    if rem != 0 or s < k:
        g = build_graph(2, [(0, 1)])
        inst = validate_probe_instance(
            g, frozenset({0, 1}), frozenset(),
            meta={"family": "x3c", "note": _TRIVIAL_NO})
        return inst, 1
    x_of = {e: i for i, e in enumerate(ground)}
    nx = 3 * k
    y0, z0 = nx, nx + s
    n = nx + s + (s - k)
    edges = set(itertools.combinations(range(nx), 2))
    for j in range(s):
        for z in range(z0, n):
            edges.add((y0 + j, z))
    for j, subset in enumerate(x3c.collection):
        for e in subset:
            edges.add((x_of[e], y0 + j))
    comp = [
        (u, v) for u, v in itertools.combinations(range(n), 2)
        if (u, v) not in edges
    ]
    g = build_graph(n, comp)
    probes = frozenset(range(nx, n))
    nonprobes = frozenset(range(nx))
    inst = validate_probe_instance(
        g, probes, nonprobes,
        meta={"family": "x3c", "k": k, "s": s})
    return inst, s


def gen_precolext_reduction(bip: Graph, sides, v1: int, v2: int, v3: int) -> ProbeInstance:
    """Precolouring-extension gadget: add a triangle on three independent
    side-A vertices; 3-colourability of the result matches extendability
    of the (1,2,3) precolouring."""
    a_side, b_side = frozenset(sides[0]), frozenset(sides[1])
    if a_side & b_side or a_side | b_side != frozenset(range(bip.n)):
        raise ValueError("sides must partition the vertex set")
    for u, v in bip.edges:
        if (u in a_side) == (v in a_side):
            raise ValueError(f"edge ({u}, {v}) does not cross the sides")
    marked = (v1, v2, v3)
    if len(set(marked)) != 3 or not set(marked) <= a_side:
        raise ValueError("need three distinct vertices from side A")
    edges = list(bip.edges) + list(itertools.combinations(sorted(marked), 2))
    g = build_graph(bip.n, edges)
    return validate_probe_instance(
        g, a_side, b_side,
        meta={"family": "precol", "marked": marked})


# ---------------------------------------------------------------- fixtures

@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    pattern: str
    probe_free: bool
    partition: tuple | None = field(default=None)


def graph_l() -> Graph:
    """Two 5-vertex paths glued by true-twin and shifted cross edges;
    10 vertices, 21 edges."""
    edges = (
        [(i, i + 1) for i in range(4)]
        + [(i, i + 1) for i in range(5, 9)]
        + [(i, i + 5) for i in range(5)]
        + [(i, i + 6) for i in range(4)]
        + [(i + 5, i + 1) for i in range(4)]
    )
    return build_graph(10, edges)


def path_split_instance(n: int) -> ProbeInstance:
    """Even path with probes at even ids and nonprobes at odd ids."""
    if n < 2 or n % 2:
        raise ValueError("order must be even and at least 2")
    return _family_path_split(n, "fixture")


def fixtures_counterexamples():
    evens = tuple(
        Fixture(
            f"C{2 * m}", cycle_graph(2 * m), "2p2", True,
            (tuple(range(0, 2 * m, 2)), tuple(range(1, 2 * m, 2))),
        )
        for m in range(2, 6)
    )
    splits = tuple(
        Fixture(
            f"path-split-{k}", path_split_instance(k).graph, "p5", True,
            (tuple(range(0, k, 2)), tuple(range(1, k, 2))),
        )
        for k in (6, 8, 10)
    )
    return (
        Fixture("C7", cycle_graph(7), "p5", False),
        Fixture("C9", cycle_graph(9), "p5", False),
        Fixture("C7-probe-p6", cycle_graph(7), "p6", True),
        Fixture("L", graph_l(), "p5", False),
    ) + evens + splits

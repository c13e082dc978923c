"""Brute-force reference oracles, independent of the package internals."""

from __future__ import annotations

import itertools
import random

from probe_chroma.graphs import Graph, build_graph


def random_graph(n, p, rng):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, edges)


def brute_colourings(g: Graph, k: int):
    """Every proper k-colouring, as tuples."""
    for assign in itertools.product(range(1, k + 1), repeat=g.n):
        if all(assign[u] != assign[v] for u, v in g.edges):
            yield assign


def brute_extensions(g: Graph, partial, k: int):
    """Every proper total k-colouring agreeing with partial (0 = blank)."""
    free = [v for v in range(g.n) if partial[v] == 0]
    for choice in itertools.product(range(1, k + 1), repeat=len(free)):
        assign = list(partial)
        for v, c in zip(free, choice):
            assign[v] = c
        if all(assign[u] != assign[v] for u, v in g.edges):
            yield tuple(assign)


def brute_extendable(g: Graph, partial, k: int) -> bool:
    return next(iter(brute_extensions(g, partial, k)), None) is not None


def exhaustive_induced(host: Graph, pattern: Graph) -> bool:
    """Induced-subgraph containment by raw subset-and-bijection scan."""
    if pattern.n > host.n:
        return False
    for subset in itertools.combinations(range(host.n), pattern.n):
        for perm in itertools.permutations(subset):
            ok = True
            for i, j in itertools.combinations(range(pattern.n), 2):
                if pattern.has_edge(i, j) != host.has_edge(perm[i], perm[j]):
                    ok = False
                    break
            if ok:
                return True
    return False


def brute_two_sat(num_vars, clauses):
    """Truth-table satisfiability for DIMACS-style clause lists."""
    if any(len(cl) == 0 for cl in clauses):
        return None
    for bits in itertools.product((False, True), repeat=num_vars):
        def lit(l):
            val = bits[abs(l) - 1]
            return val if l > 0 else not val
        if all(any(lit(l) for l in cl) for cl in clauses):
            return bits
    return None


def exact_cover_exists(universe, collection) -> bool:
    target = frozenset(universe)

    def rec(covered, idx):
        if covered == target:
            return True
        if idx == len(collection):
            return False
        s = frozenset(collection[idx])
        if not s & covered and rec(covered | s, idx + 1):
            return True
        return rec(covered, idx + 1)

    return rec(frozenset(), 0)


def odd_girth_brute(g: Graph):
    """Length of the shortest odd cycle; None when bipartite.  Shortest
    odd cycles are chordless, so scanning induced cycles is enough."""
    for size in range(3, g.n + 1, 2):
        for subset in itertools.combinations(range(g.n), size):
            degs = [sum(1 for w in subset if g.has_edge(v, w)) for v in subset]
            if any(d != 2 for d in degs):
                continue
            if _subset_connected(g, subset):
                return size
    return None


def _subset_connected(g, subset):
    pool = set(subset)
    seen = {subset[0]}
    stack = [subset[0]]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in pool and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(pool)


def independent_sets(g: Graph):
    """All independent vertex subsets, the empty set included."""
    out = []
    for r in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), r):
            if all(not g.has_edge(u, v)
                   for u, v in itertools.combinations(subset, 2)):
                out.append(frozenset(subset))
    return out


_ATLAS_CACHE = None


def atlas_connected():
    """Connected graphs on at most 7 vertices, one per isomorphism class."""
    global _ATLAS_CACHE
    if _ATLAS_CACHE is None:
        import networkx as nx
        out = []
        for ng in nx.graph_atlas_g():
            if ng.number_of_nodes() == 0 or not nx.is_connected(ng):
                continue
            order = sorted(ng.nodes())
            idx = {u: i for i, u in enumerate(order)}
            out.append(build_graph(
                len(order), [(idx[u], idx[v]) for u, v in ng.edges()]))
        _ATLAS_CACHE = tuple(out)
    return _ATLAS_CACHE


def permute_instance(inst, perm):
    """Relabel an instance by perm (a sequence: new id of vertex v)."""
    from probe_chroma.graphs import validate_probe_instance
    g = inst.graph
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    probes = frozenset(perm[v] for v in inst.probes)
    nonprobes = frozenset(perm[v] for v in inst.nonprobes)
    return validate_probe_instance(build_graph(g.n, edges), probes, nonprobes)


def shuffled_permutation(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm

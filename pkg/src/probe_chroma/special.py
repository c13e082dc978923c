"""Auxiliary solvers: the triangle-free constructive colouring, the probe
(P3+sP1)-free 3-colouring algorithm, and the (s+1)P2-freeness checker."""

from __future__ import annotations

import itertools
import time

from .errors import CapabilityError, PromiseViolation
from .graphs import (
    Graph,
    PartialColouring,
    ProbeInstance,
    TwoColouring,
    bipartition,
    connected_components,
    find_induced_subgraph,
    find_k4,
    induced_subgraph,
    matching_graph,
    pattern_graph,
    shortest_odd_cycle,
)
from .solver import (
    COLOURABLE,
    NOT_COLOURABLE,
    NOT_PROBE_P5_FREE,
    SolveStats,
    SolverOptions,
    Verdict,
    _proper_assignments,
    _try_extend,
    verify_colouring,
)

_P3 = pattern_graph("p3")
_C3 = pattern_graph("c3")

# colours along the reference pentagon, then per attachment class V_{i,i+2}
_PENTAGON_CYCLE_COLOURS = (1, 2, 1, 2, 3)
_PENTAGON_CLASS_COLOURS = (2, 1, 2, 3, 1)


def colour_trianglefree_probe_p5(inst: ProbeInstance) -> tuple:
    """Constructive 3-colouring of a triangle-free probe P5-free instance.

    Every component either has a bipartite probe side (probes 2-coloured,
    nonprobes third colour) or hangs off a probe pentagon whose vertex
    classes take fixed colours.  No search and no NotColourable outcome.
    """
    g = inst.graph
    if find_induced_subgraph(g, _C3) is not None:
        raise ValueError("input contains a triangle")
    colours = [0] * g.n
    for comp in connected_components(g):
        sub, back = induced_subgraph(g, comp)
        sub_probes = sorted(i for i, old in enumerate(back) if old in inst.probes)
        gp, pmap = induced_subgraph(sub, sub_probes)
        bp = bipartition(gp)
        if isinstance(bp, TwoColouring):
            local = {pmap[i]: bp.colours[i] for i in range(gp.n)}
            for v in range(sub.n):
                colours[back[v]] = local.get(v, 3)
            continue
        cyc_p = shortest_odd_cycle(gp)
        if len(cyc_p) != 5:
            raise PromiseViolation(
                "long-induced-odd-cycle",
                [back[pmap[v]] for v in cyc_p],
                f"triangle-free probe side has odd girth {len(cyc_p)}",
            )
        cycle = [pmap[v] for v in cyc_p]
        pos = {v: i for i, v in enumerate(cycle)}
        for i, v in enumerate(cycle):
            colours[back[v]] = _PENTAGON_CYCLE_COLOURS[i]
        for v in range(sub.n):
            if v in pos:
                continue
            onc = frozenset(pos[w] for w in sub.adj[v] if w in pos)
            cls = None
            for i in range(5):
                if onc == frozenset({i, (i + 2) % 5}):
                    cls = i
                    break
            if cls is None:
                raise PromiseViolation(
                    "pentagon-classification-failed", [back[v]],
                    "a vertex does not attach to the pentagon at exactly "
                    "two positions of distance two",
                )
            colours[back[v]] = _PENTAGON_CLASS_COLOURS[cls]
    bad = verify_colouring(g, colours)
    if bad is not None:
        wit = [bad[1]] if bad[0] == "range" else list(bad[1])
        raise PromiseViolation("certificate-invalid", wit,
                               "constructed colouring is not proper")
    return tuple(colours)


def is_multi_p2_free(g: Graph, s: int) -> bool:
    """True iff g has no induced (s+1)P2; s is capped at 4."""
    if s > 4:
        raise CapabilityError(f"matching order {s + 1} exceeds the pattern cap")
    return find_induced_subgraph(g, matching_graph(s + 1)) is None


# ----------------------------------------------------- probe (P3+sP1)-free

def solve_3col_p3sp1(inst: ProbeInstance, s: int,
                     opts: SolverOptions | None = None) -> Verdict:
    """3-colour a partitioned probe (P3+sP1)-free instance.

    Low-degree nonprobes are deleted up front and re-coloured greedily at
    the end; each remaining component goes through the P3-free split or the
    bounded D-plus-S branching.
    """
    opts = opts or SolverOptions()
    t0 = time.perf_counter()
    stats = SolveStats(seed=opts.seed)
    g = inst.graph
    colours = [0] * g.n
    status, diagnostic = COLOURABLE, None
    try:
        deleted = _delete_low_degree_nonprobes(g, inst.nonprobes)
        alive = [v for v in range(g.n) if v not in set(deleted)]
        h, hmap = induced_subgraph(g, alive)
        h_probes = frozenset(i for i, old in enumerate(hmap) if old in inst.probes)
        for comp in connected_components(h):
            sub, back = induced_subgraph(h, comp)
            sub_probes = frozenset(i for i, old in enumerate(back) if old in h_probes)
            stats.start_component()
            try:
                res = _p3sp1_component(sub, sub_probes, s, stats)
            except PromiseViolation as pv:
                raise pv.translated([hmap[b] for b in back])
            if res is None:
                status = NOT_COLOURABLE
                break
            for new, old in enumerate(back):
                colours[hmap[old]] = res[new]
        if status == COLOURABLE:
            for v in reversed(deleted):
                seen = {colours[w] for w in g.adj[v] if colours[w]}
                colours[v] = next(c for c in (1, 2, 3) if c not in seen)
            bad = verify_colouring(g, colours)
            if bad is not None:
                wit = [bad[1]] if bad[0] == "range" else list(bad[1])
                raise PromiseViolation("certificate-invalid", wit,
                                       "assembled colouring is not proper")
    except PromiseViolation as pv:
        status, diagnostic = NOT_PROBE_P5_FREE, pv.diagnostic()
    stats.time_ms = (time.perf_counter() - t0) * 1000.0
    cert = tuple(colours) if status == COLOURABLE else None
    return Verdict(status, cert, diagnostic, stats)


def _delete_low_degree_nonprobes(g, nonprobes):
    """Nonprobes of degree below 3, in deletion order.

    Nonprobes are pairwise non-adjacent, so removing one never lowers
    another's degree; the loop still runs to a fixpoint to keep the
    contract obvious.
    """
    deleted = []
    gone = set()
    changed = True
    while changed:
        changed = False
        for v in sorted(nonprobes):
            if v in gone:
                continue
            deg = sum(1 for w in g.adj[v] if w not in gone)
            if deg < 3:
                gone.add(v)
                deleted.append(v)
                changed = True
    return deleted


def _p3sp1_component(g, probes, s, stats):
    """One component, low-degree nonprobes already gone."""
    if find_k4(g) is not None:
        return None
    nprob = frozenset(range(g.n)) - frozenset(probes)
    p_sorted = sorted(probes)
    gp, pmap = induced_subgraph(g, p_sorted)
    if find_induced_subgraph(gp, _P3) is None:
        return _case_p3free(g, probes, nprob, s, stats)
    if len(probes) <= 4 * s + 1:
        return _case_small_p(g, gp, pmap, stats)
    return _case_branching(g, gp, pmap, nprob, s, stats)


def _case_p3free(g, probes, nprob, s, stats):
    """G[P] is P3-free, so the probe side is a disjoint union of cliques;
    here the component is connected, hence one clique plus nonprobes."""
    if not nprob:
        return tuple(i + 1 for i in range(g.n)) if g.n <= 3 else None
    u = min(nprob)
    non_nb = sorted(v for v in probes if v not in g.adj[u])
    if len(non_nb) > 3 * (s + 2):
        return None
    for size in range(len(non_nb) + 1):
        for sel in itertools.combinations(non_nb, size):
            if any(g.has_edge(a, b) for a, b in itertools.combinations(sel, 2)):
                continue
            stats.add_branch()
            sset = set(sel)
            removed = sset | {
                x for x in nprob if not any(w in sset for w in g.adj[x])
            }
            keep = [v for v in range(g.n) if v not in removed]
            sub, back = induced_subgraph(g, keep)
            bp = bipartition(sub)
            if not isinstance(bp, TwoColouring):
                continue
            colours = [3] * g.n
            for i, old in enumerate(back):
                colours[old] = bp.colours[i]
            return tuple(colours)
    return None


def _case_small_p(g, gp, pmap, stats):
    """|P| small: enumerate proper colourings of the probe side directly."""
    base = PartialColouring.blank(g.n, 3)
    for assignment in _proper_assignments(g, pmap, base):
        stats.add_branch()
        ext = _try_extend(g, base.with_colours(assignment), (), stats)
        if ext is not None:
            return ext.colours
    return None


def _case_branching(g, gp, pmap, nprob, s, stats):
    """P3 core plus independent set D, then bounded probe subsets S."""
    emb = find_induced_subgraph(gp, _P3)
    q = [pmap[v] for v in emb.image]
    closed_q = set(q) | {w for v in q for w in g.adj[v]}
    rest = [v for v in pmap if v not in closed_q]
    i_mis = []
    taken = set()
    for v in rest:
        if not any(w in taken for w in g.adj[v]):
            i_mis.append(v)
            taken.add(v)
    if len(i_mis) >= s:
        raise PromiseViolation(
            "induced-pattern-among-probes", q + i_mis[:s],
            f"an induced P3 plus {s} isolated probes exists on the probe "
            "side; no fill between nonprobes can remove it",
        )
    d = sorted(set(q) | set(i_mis))
    dset = set(d)
    undominated = [
        v for v in sorted(nprob) if not any(w in dset for w in g.adj[v])
    ]
    useful = sorted({w for v in undominated for w in g.adj[v]} - dset)
    base = PartialColouring.blank(g.n, 3)
    for size in range(min(len(useful), 3 * s) + 1):
        for sel in itertools.combinations(useful, size):
            ds = d + list(sel)
            ds_set = set(ds)
            if any(
                not any(w in ds_set for w in g.adj[v]) for v in undominated
            ):
                continue
            for assignment in _proper_assignments(g, ds, base):
                stats.add_branch()
                ext = _try_extend(g, base.with_colours(assignment), (), stats)
                if ext is not None:
                    return ext.colours
    return None

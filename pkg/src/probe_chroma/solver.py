"""3-colouring solver for partitioned probe P5-free graphs.

The solver is a promise algorithm: verdicts are trustworthy on genuine probe
P5-free inputs.  Every structural claim the algorithm leans on is asserted at
run time; a failed assertion aborts the solve with a
``not_probe_p5_free`` verdict naming the claim and the witnessing vertices,
rather than guessing.  Returned colourings are verified proper
unconditionally.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import _bits
from .errors import CapabilityError, ListSizeError, PromiseViolation
from .graphs import (
    Graph,
    PartialColouring,
    ProbeInstance,
    TwoColouring,
    _canonical_cycle,
    bipartition,
    connected_components,
    complement_components,
    find_induced_subgraph,
    find_k4,
    induced_subgraph,
    pattern_graph,
    shortest_odd_cycle,
    split_partition,
)
from .listcol import EqualityConstraint, extend_by_2list
from .oracles import oracle_k_colourable
from .propagation import Conflict, propagate

COLOURABLE = "colourable"
NOT_COLOURABLE = "not_colourable"
NOT_PROBE_P5_FREE = "not_probe_p5_free"

COMPONENT_TWO_SAT_BUDGET = 810  # 30 cycle colourings x 9 pair colourings x 3

_P5 = pattern_graph("p5")
_C5 = pattern_graph("c5")


@dataclass
class SolverOptions:
    oracle_fallback: bool = False  # re-solve structurally failed components by brute force
    node_budget: int | None = 5_000_000  # cap for induced-pattern searches
    direct_search_cap: int = 64  # below this order, skip the structural screens
    triple_enum_cap: int = 1200  # largest order for 3-set dominating enumeration
    seed: int | None = None  # echoed into stats for reproducibility bookkeeping


@dataclass
class SolveStats:
    branches: int = 0
    two_sat_calls: int = 0
    time_ms: float = 0.0
    seed: int | None = None
    component_branches: list = field(default_factory=list)
    component_two_sat_calls: list = field(default_factory=list)
    two_sat_budget: int | None = None  # per-component hard cap, when set

    def start_component(self):
        self.component_branches.append(0)
        self.component_two_sat_calls.append(0)

    def add_branch(self):
        self.branches += 1
        if self.component_branches:
            self.component_branches[-1] += 1

    def add_two_sat(self):
        self.two_sat_calls += 1
        if self.component_two_sat_calls:
            self.component_two_sat_calls[-1] += 1
            if self.two_sat_budget is not None:
                assert self.component_two_sat_calls[-1] <= self.two_sat_budget

    def as_dict(self):
        return {
            "branches": self.branches,
            "two_sat_calls": self.two_sat_calls,
            "time_ms": self.time_ms,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Verdict:
    status: str
    colouring: tuple | None
    diagnostic: dict | None
    stats: SolveStats


def verify_colouring(g: Graph, colouring, k: int = 3):
    """None when proper with colours in 1..k; otherwise the violation:
    ("range", vertex) or ("edge", (u, v))."""
    for v, c in enumerate(colouring):
        if not 1 <= c <= k:
            return ("range", v)
    for u, v in g.edges:
        if colouring[u] == colouring[v]:
            return ("edge", (u, v))
    return None


# -------------------------------------------------------------------- top level

def solve_3col(inst: ProbeInstance, opts: SolverOptions | None = None) -> Verdict:
    """Decide 3-colourability of a partitioned probe P5-free instance.

    Components whose graph is plain P5-free go through the dominating-set
    path; the others through the probe component algorithm.
    """
    opts = opts or SolverOptions()
    t0 = time.perf_counter()
    stats = SolveStats(seed=opts.seed, two_sat_budget=COMPONENT_TWO_SAT_BUDGET)
    g = inst.graph
    colours = [0] * g.n
    status, diagnostic = COLOURABLE, None
    try:
        for comp in connected_components(g):
            sub, back = induced_subgraph(g, comp)
            sub_probes = frozenset(i for i, old in enumerate(back) if old in inst.probes)
            stats.start_component()
            try:
                res = _solve_component(sub, sub_probes, stats, opts)
            except PromiseViolation as sf:
                if not opts.oracle_fallback:
                    raise sf.translated(back)
                res = oracle_k_colourable(sub, 3)
            if res is None:
                status = NOT_COLOURABLE
                break
            for new, old in enumerate(back):
                colours[old] = res[new]
        if status == COLOURABLE:
            bad = verify_colouring(g, colours)
            if bad is not None:
                wit = [bad[1]] if bad[0] == "range" else list(bad[1])
                raise PromiseViolation(
                    "certificate-invalid", wit, "assembled colouring is not proper"
                )
    except PromiseViolation as sf:
        status, diagnostic = NOT_PROBE_P5_FREE, sf.diagnostic()
    stats.time_ms = (time.perf_counter() - t0) * 1000.0
    cert = tuple(colours) if status == COLOURABLE else None
    return Verdict(status, cert, diagnostic, stats)


def _solve_component(g, probes, stats, opts):
    if _contains_pattern(g, _P5, opts):
        return _probe_component_core(g, probes, stats, opts)
    return _p5free_core(g, stats, opts)


def _contains_pattern(g, pattern, opts):
    """Induced-copy presence for P5 or C5, with structural shortcuts.

    Both patterns are connected and co-connected, so the search recurses
    into components and join factors; split graphs contain neither.
    """
    if g.n < pattern.n:
        return False
    if g.n <= opts.direct_search_cap:
        return find_induced_subgraph(g, pattern, node_budget=opts.node_budget) is not None
    comps = connected_components(g)
    if len(comps) > 1:
        return any(
            _contains_pattern(induced_subgraph(g, c)[0], pattern, opts) for c in comps
        )
    cocomps = complement_components(g)
    if len(cocomps) > 1:
        return any(
            _contains_pattern(induced_subgraph(g, c)[0], pattern, opts) for c in cocomps
        )
    if split_partition(g) is not None:
        return False
    return find_induced_subgraph(g, pattern, node_budget=opts.node_budget) is not None


# ------------------------------------------------------------ P5-free dispatch

def solve_p5free_3col(g: Graph, opts: SolverOptions | None = None) -> Verdict:
    """3-colour a connected P5-free graph via a small dominating set.

    Such a graph (when K4-free) has a dominating clique or P3 on at most 3
    vertices; each of its proper colourings propagates to 2-colour lists
    everywhere, so one 2-SAT round per colouring decides the component.
    """
    return _wrap_component(lambda stats, o: _p5free_core(g, stats, o), g, opts)


def _wrap_component(core, g, opts):
    opts = opts or SolverOptions()
    t0 = time.perf_counter()
    stats = SolveStats(seed=opts.seed, two_sat_budget=COMPONENT_TWO_SAT_BUDGET)
    stats.start_component()
    status, diagnostic, cert = COLOURABLE, None, None
    try:
        res = core(stats, opts)
        if res is None:
            status = NOT_COLOURABLE
        else:
            bad = verify_colouring(g, res)
            if bad is not None:
                wit = [bad[1]] if bad[0] == "range" else list(bad[1])
                raise PromiseViolation("certificate-invalid", wit,
                                        "colouring is not proper")
            cert = tuple(res)
    except PromiseViolation as sf:
        status, diagnostic = NOT_PROBE_P5_FREE, sf.diagnostic()
    stats.time_ms = (time.perf_counter() - t0) * 1000.0
    return Verdict(status, cert, diagnostic, stats)


def _p5free_core(g, stats, opts):
    if find_k4(g) is not None:
        return None
    dom = _dominating_clique_or_p3(g, opts)
    if dom is None:
        raise PromiseViolation(
            "dominating-set-missing", [],
            "no dominating clique or P3 on at most 3 vertices exists",
        )
    base = PartialColouring.blank(g.n, 3)
    for assignment in _proper_assignments(g, dom, base):
        stats.add_branch()
        res = propagate(g, base.with_colours(assignment))
        if isinstance(res, Conflict):
            continue
        ext = _try_extend(g, res, (), stats)
        if ext is not None:
            return ext.colours
    return None


def _dominating_clique_or_p3(g, opts):
    """First dominating set of size <= 3 inducing a clique or a P3.

    Singles are scanned by descending degree, pairs with a degree-sum cutoff,
    triples through their middle vertex; the first hit wins.
    """
    n = g.n
    rows = g.bitrows()
    full = _bits.full_mask(n)
    closed = [rows[v] | _bits.bit_row(n, (v,)) for v in range(n)]
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    for v in order:
        if np.array_equal(closed[v], full):
            return (v,)
    for ii, u in enumerate(order):
        du = g.degree(u)
        if ii + 1 < n and du + g.degree(order[ii + 1]) + 2 < n:
            break
        for v in order[ii + 1:]:
            if du + g.degree(v) + 2 < n:
                break
            if g.has_edge(u, v) and np.array_equal(closed[u] | closed[v], full):
                return tuple(sorted((u, v)))
    if n > opts.triple_enum_cap:
        raise CapabilityError(
            f"dominating-triple enumeration capped at {opts.triple_enum_cap} vertices, got {n}"
        )
    seen = set()
    for mid in range(n):
        nbrs = sorted(g.adj[mid])
        for a, u in enumerate(nbrs):
            for w in nbrs[a + 1:]:
                trip = tuple(sorted((u, mid, w)))
                if trip in seen:
                    continue
                seen.add(trip)
                if np.array_equal(closed[u] | closed[mid] | closed[w], full):
                    return trip
    return None


def _proper_assignments(g, verts, base):
    """Proper 3-colourings of ``verts`` consistent with ``base``.

    Vertices already coloured in ``base`` are kept fixed; free choices that
    clash with a coloured neighbour are dropped.  Yields free-vertex
    assignment dicts lexicographically over (position in ``verts``, colour),
    so the caller's vertex order fixes the branch order.
    """
    verts = tuple(verts)
    fixed = {v: base.colours[v] for v in verts if base.colours[v]}
    free = [v for v in verts if v not in fixed]
    nbr_cols = {
        v: {base.colours[w] for w in g.adj[v] if base.colours[w]} for v in free
    }
    for choice in itertools.product((1, 2, 3), repeat=len(free)):
        assign = dict(fixed)
        assign.update(zip(free, choice))
        if any(assign[v] in nbr_cols[v] for v in free):
            continue
        ok = True
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                u, w = verts[a], verts[b]
                if assign[u] == assign[w] and g.has_edge(u, w):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield {v: assign[v] for v in free}


def _try_extend(g, partial, equalities, stats):
    stats.add_two_sat()
    try:
        return extend_by_2list(g, partial, equalities)
    except ListSizeError as e:
        raise PromiseViolation(
            "open-list-too-long", [e.vertex],
            "a vertex kept 3 admissible colours after propagation; "
            "it has no coloured neighbour",
        ) from e


# ------------------------------------------------------------- probe component

def solve_probe_component(g: Graph, probes, nonprobes,
                          opts: SolverOptions | None = None) -> Verdict:
    """Run the probe-component algorithm on one connected component."""
    p = frozenset(probes)
    return _wrap_component(lambda stats, o: _probe_component_core(g, p, stats, o), g, opts)


def _probe_component_core(g, probes, stats, opts):
    if find_k4(g) is not None:
        return None
    p_sorted = sorted(probes)
    gp, pmap = induced_subgraph(g, p_sorted)
    pcomps = connected_components(gp)
    nonbip = []
    twocols = {}
    for comp in pcomps:
        sub, smap = induced_subgraph(gp, comp)
        bp = bipartition(sub)
        if isinstance(bp, TwoColouring):
            for i, local in enumerate(smap):
                twocols[pmap[local]] = bp.colours[i]
        elif len(comp) >= 2:
            nonbip.append(tuple(pmap[local] for local in comp))
    if not nonbip:
        colours = [0] * g.n
        for v in range(g.n):
            colours[v] = twocols.get(v, 3)
        return tuple(colours)
    if len(nonbip) >= 2:
        return None
    kverts = nonbip[0]
    gk, kmap = induced_subgraph(g, kverts)
    try:
        local_cycle = pick_reference_cycle(gk, node_budget=opts.node_budget)
    except PromiseViolation as sf:
        raise sf.translated(kmap)
    cycle = tuple(kmap[v] for v in local_cycle)
    crow = _bits.bit_row(g.n, cycle)
    rows = g.bitrows()
    cset = set(cycle)
    for v in range(g.n):
        if v not in cset and np.array_equal(rows[v] & crow, crow):
            return None
    base = PartialColouring.blank(g.n, 3)
    for assignment in _proper_assignments(g, cycle, base):
        stats.add_branch()
        psi = _propagate_on_k(g, gk, kmap, assignment)
        if psi is None:
            continue
        if len(cycle) == 5:
            out = _run_case1(g, psi, stats)
        else:
            out = _run_case2(g, probes, kverts, cycle, psi, stats)
        if out is not None:
            return out
    return None


def pick_reference_cycle(k_graph: Graph, *, node_budget=None) -> tuple:
    """Reference cycle of the non-bipartite probe component.

    Preference order: lexicographically least induced C5; else the least
    triangle dominating the component; else the least triangle.  A
    non-bipartite component with neither (odd girth 7 or more) cannot be
    probe P5-free.
    """
    if isinstance(bipartition(k_graph), TwoColouring):
        raise ValueError("reference cycle requires a non-bipartite graph")
    emb = find_induced_subgraph(k_graph, _C5, node_budget=node_budget)
    if emb is not None:
        return _canonical_cycle(list(emb.image))
    rows = k_graph.bitrows()
    full = _bits.full_mask(k_graph.n)
    first_tri = None
    for u, v in k_graph.edges:
        common = rows[u] & rows[v]
        for w in _bits.iter_bits(common):
            if w <= v:
                continue
            tri = (u, v, w)
            if first_tri is None:
                first_tri = tri
            cover = rows[u] | rows[v] | rows[w] | _bits.bit_row(k_graph.n, tri)
            if np.array_equal(cover, full):
                return tri
    if first_tri is not None:
        return first_tri
    cyc = shortest_odd_cycle(k_graph)
    if len(cyc) == 5:
        return cyc
    raise PromiseViolation(
        "long-induced-odd-cycle", list(cyc),
        f"shortest odd cycle has length {len(cyc)}; only 3 or 5 can occur",
    )


def _propagate_on_k(g, gk, kmap, assignment):
    """Propagate the cycle colouring through the probe component only."""
    kinv = {old: new for new, old in enumerate(kmap)}
    seed = [0] * gk.n
    for v, c in assignment.items():
        seed[kinv[v]] = c
    res = propagate(gk, PartialColouring(3, tuple(seed)))
    if isinstance(res, Conflict):
        return None
    full = [0] * g.n
    for new, old in enumerate(kmap):
        full[old] = res.colours[new]
    return PartialColouring(3, tuple(full))


def _run_case1(g, psi, stats):
    """|C| = 5: one full propagation plus one 2-SAT round."""
    res = propagate(g, psi)
    if isinstance(res, Conflict):
        return None
    ext = _try_extend(g, res, (), stats)
    return ext.colours if ext is not None else None


# ----------------------------------------------------------------- case |C| = 3

@dataclass(frozen=True)
class CaseDecomposition:
    """Per-branch snapshot of the component around the coloured triangle.

    ``k_c``/``k_u`` are colour-indexed triples (index i-1 for colour i);
    ``removed_lr`` lists (vertex, colour) pairs taken out by the single-class
    neighbourhood rule.
    """

    k_vertices: frozenset
    cycle: tuple
    k_c: tuple
    k_u: tuple
    k_r: frozenset
    i_vertices: frozenset
    m_c: frozenset
    m_u: tuple
    m_r: frozenset
    l_c: frozenset
    l_u: tuple
    l_r: frozenset
    j_vertices: frozenset
    j_components: tuple
    removed_lr: tuple


def make_case_decomposition(g: Graph, probes, k_vertices, cycle,
                            psi: PartialColouring) -> CaseDecomposition:
    """Classify every vertex by its coloured-neighbour profile under psi."""
    K = frozenset(k_vertices)
    k_c = [set(), set(), set()]
    for v in K:
        if psi.colours[v]:
            k_c[psi.colours[v] - 1].add(v)
    k_u = [set(), set(), set()]
    k_r = set()
    for v in K:
        if psi.colours[v]:
            continue
        seen = {psi.colours[w] for w in g.adj[v] if psi.colours[w]}
        assert len(seen) <= 1, "propagation left a vertex seeing two colours"
        if seen:
            k_u[seen.pop() - 1].add(v)
        else:
            k_r.add(v)
    iverts = frozenset(probes) - K
    nverts = frozenset(range(g.n)) - frozenset(probes)
    m = frozenset(v for v in nverts if g.adj[v] & iverts)
    lverts = nverts - m

    def classify(group):
        c_, r_ = set(), set()
        u_ = [set(), set(), set()]
        for v in sorted(group):
            cols = {psi.colours[w] for w in g.adj[v] if psi.colours[w]}
            if len(cols) >= 2:
                c_.add(v)
            elif cols:
                u_[cols.pop() - 1].add(v)
            else:
                r_.add(v)
        return c_, u_, r_

    m_c, m_u, m_r = classify(m)
    l_c, l_u, l_r = classify(lverts)
    j = frozenset(v for v in iverts if not (g.adj[v] & m_c))
    gi, imap = induced_subgraph(g, sorted(iverts))
    j_comps = []
    for comp in connected_components(gi):
        verts = tuple(imap[v] for v in comp)
        inside = sum(1 for v in verts if v in j)
        if 0 < inside < len(verts):
            raise PromiseViolation(
                "j-not-component-closed", list(verts),
                "a probe component outside K mixes vertices with and "
                "without M_c neighbours",
            )
        if inside:
            j_comps.append(verts)
    removed = []
    for v in sorted(l_r):
        nbrs = g.adj[v]
        if not nbrs:
            continue
        for i in (1, 2, 3):
            if nbrs <= k_u[i - 1]:
                removed.append((v, i))
                break
    return CaseDecomposition(
        K, tuple(cycle),
        tuple(frozenset(s) for s in k_c),
        tuple(frozenset(s) for s in k_u),
        frozenset(k_r), iverts, frozenset(m_c),
        tuple(frozenset(s) for s in m_u), frozenset(m_r),
        frozenset(l_c), tuple(frozenset(s) for s in l_u), frozenset(l_r),
        j, tuple(j_comps), tuple(removed),
    )


def find_dominating_pair(g: Graph, k_vertices, targets):
    """Smallest, then lexicographically least D of at most two K-vertices
    with all targets inside N[D]; None when no such D exists."""
    tset = frozenset(targets)
    if not tset:
        return ()
    rows = g.bitrows()
    trow = _bits.bit_row(g.n, tset)
    kv = sorted(k_vertices)
    closed = {v: rows[v] | _bits.bit_row(g.n, (v,)) for v in kv}
    for v in kv:
        if not (trow & ~closed[v]).any():
            return (v,)
    for a, u in enumerate(kv):
        for v in kv[a + 1:]:
            if not (trow & ~(closed[u] | closed[v])).any():
                return (u, v)
    return None


def _run_case2(g, probes, kverts, cycle, psi, stats):
    """|C| = 3: decompose, dominate the colour-starved rest, branch."""
    decomp = make_case_decomposition(g, probes, kverts, cycle, psi)
    removed_set = frozenset(v for v, _ in decomp.removed_lr)
    targets = decomp.k_r | (decomp.l_r - removed_set)
    pair = find_dominating_pair(g, kverts, targets)
    if pair is None:
        raise PromiseViolation(
            "dominating-pair-missing", sorted(targets)[:20],
            "no two K-vertices dominate the vertices without coloured "
            "neighbours",
        )
    mu_nonempty = [i for i in (1, 2, 3) if decomp.m_u[i - 1]]
    for d_assign in _proper_assignments(g, pair, psi):
        stats.add_branch()
        seeded = psi.with_colours(d_assign)
        if not decomp.j_vertices or not mu_nonempty:
            out = _case2_attempt(g, decomp, seeded, stats, drop_j=False)
        elif len(mu_nonempty) >= 2:
            vstar = min(v for i in mu_nonempty for v in decomp.m_u[i - 1])
            blocked = {seeded.colours[w] for w in g.adj[vstar] if seeded.colours[w]}
            out = None
            for c in (1, 2, 3):
                if c in blocked:
                    continue
                stats.add_branch()
                out = _case2_attempt(
                    g, decomp, seeded.with_colours({vstar: c}), stats, drop_j=False
                )
                if out is not None:
                    break
        else:
            out = _case2_attempt(g, decomp, seeded, stats, drop_j=True)
        if out is not None:
            return out
    return None


def _case2_attempt(g, decomp, seeded, stats, *, drop_j):
    """One propagation + 2-SAT round on the working graph."""
    skip = decomp.m_r | frozenset(v for v, _ in decomp.removed_lr)
    if drop_j:
        skip |= decomp.j_vertices
    keep = [v for v in range(g.n) if v not in skip]
    w_graph, wmap = induced_subgraph(g, keep)
    winv = {old: new for new, old in enumerate(wmap)}
    wseed = PartialColouring(3, tuple(seeded.colours[old] for old in wmap))
    res = propagate(w_graph, wseed)
    if isinstance(res, Conflict):
        return None
    equalities = []
    if drop_j:
        mu_nonempty = [i for i in (1, 2, 3) if decomp.m_u[i - 1]]
        palette = tuple(c for c in (1, 2, 3) if c != mu_nonempty[0])
        for comp in decomp.j_components:
            if len(comp) < 2:
                continue
            nbrs = sorted(set().union(*(g.adj[v] for v in comp)) - set(comp))
            mapped = tuple(winv[x] for x in nbrs if x in winv)
            if len(mapped) >= 2:
                equalities.append(EqualityConstraint(mapped, palette))
    ext = _try_extend(w_graph, res, tuple(equalities), stats)
    if ext is None:
        return None
    full = list(seeded.colours)
    for new, old in enumerate(wmap):
        full[old] = ext.colours[new]
    return finalize_extension(g, decomp, PartialColouring(3, tuple(full)))


def finalize_extension(g: Graph, decomp: CaseDecomposition,
                       partial: PartialColouring) -> tuple:
    """Colour the removed vertices back in forced order and verify.

    J components first (their attachments are coloured), then the removed
    L_r vertices (their K_u^i neighbours now avoid colour i), then M_r
    (all neighbours lie in the coloured I side).
    """
    colours = list(partial.colours)
    mu_nonempty = [i for i in (1, 2, 3) if decomp.m_u[i - 1]]
    for comp in decomp.j_components:
        if all(colours[v] for v in comp):
            continue
        if len(comp) == 1:
            if len(mu_nonempty) != 1:
                raise PromiseViolation(
                    "isolated-j-unreachable", list(comp),
                    "an uncoloured isolated probe survived outside the "
                    "single-class case",
                )
            colours[comp[0]] = mu_nonempty[0]
            continue
        # deferred M_r attachments are colourless here; they pick a free
        # colour after the component, so only M_u neighbours constrain it
        outside = set().union(*(g.adj[v] for v in comp)) - set(comp)
        nbrs = sorted(outside - decomp.m_r)
        ncols = {colours[w] for w in nbrs}
        if len(ncols) != 1 or 0 in ncols:
            raise PromiseViolation(
                "attachment-colours-differ", nbrs[:20],
                "the neighbours of a probe component outside K do not "
                "share one colour",
            )
        shared = ncols.pop()
        palette = [c for c in (1, 2, 3) if c != shared]
        sub, smap = induced_subgraph(g, comp)
        bp = bipartition(sub)
        if not isinstance(bp, TwoColouring):
            raise PromiseViolation(
                "odd-probe-attachment", list(comp),
                "a probe component outside K is not bipartite",
            )
        for local, old in enumerate(smap):
            colours[old] = palette[bp.colours[local] - 1]
    for v, i in decomp.removed_lr:
        if any(colours[w] == i for w in g.adj[v]):
            raise PromiseViolation(
                "no-free-colour", [v],
                "a removed vertex regained a neighbour of its recorded colour",
            )
        colours[v] = i
    for v in sorted(decomp.m_r):
        seen = {colours[w] for w in g.adj[v] if colours[w]}
        free = [c for c in (1, 2, 3) if c not in seen]
        if not free:
            raise PromiseViolation(
                "no-free-colour", [v],
                "a deferred nonprobe sees all three colours",
            )
        colours[v] = free[0]
    bad = verify_colouring(g, colours)
    if bad is not None:
        wit = [bad[1]] if bad[0] == "range" else list(bad[1])
        raise PromiseViolation("certificate-invalid", wit,
                                "final colouring is not proper")
    return tuple(colours)

import itertools
import random

import pytest
from hypothesis import assume, given, strategies as st

import helpers
from probe_chroma.errors import ListSizeError
from probe_chroma.graphs import (
    PartialColouring,
    build_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)
from probe_chroma.listcol import (
    EqualityConstraint,
    build_list_formula,
    compute_lists,
    extend_by_2list,
    solve_two_sat,
)


class TestTwoSat:
    def test_two_clause_satisfiable(self):
        out = solve_two_sat(2, [(1, 2), (-1, 2)])
        assert out is not None and out[1] is True

    def test_forced_contradiction(self):
        assert solve_two_sat(1, [(1, 1), (-1, -1)]) is None

    def test_empty_formula(self):
        assert solve_two_sat(0, []) == []

    @given(
        st.integers(1, 6),
        st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=14),
    )
    def test_matches_truth_table(self, num_vars, raw):
        def lit(code):
            var = code // 2 % num_vars + 1
            return var if code % 2 == 0 else -var

        clauses = [(lit(a), lit(b)) for a, b in raw]
        out = solve_two_sat(num_vars, clauses)
        brute = helpers.brute_two_sat(num_vars, clauses)
        assert (out is None) == (brute is None)
        if out is not None:
            for a, b in clauses:
                val_a = out[a - 1] if a > 0 else not out[-a - 1]
                val_b = out[b - 1] if b > 0 else not out[-b - 1]
                assert val_a or val_b


class TestLists:
    def test_open_lists_on_cycle(self):
        g = cycle_graph(5)
        lists = compute_lists(g, PartialColouring(3, (1, 2, 1, 0, 0)))
        assert lists == {3: (2, 3), 4: (2, 3)}

    def test_all_coloured_means_no_vars(self):
        g = path_graph(3)
        f = build_list_formula(g, PartialColouring(3, (1, 2, 1)))
        assert f.num_vars == 0 and not f.unsat

    def test_list_overflow_names_vertex(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(ListSizeError) as e:
            compute_lists(g, PartialColouring.blank(3, 3))
        assert e.value.vertex == 0
        assert e.value.list_size == 3

    def test_formula_var_count_is_total_list_size(self):
        g = cycle_graph(5)
        f = build_list_formula(g, PartialColouring(3, (1, 2, 1, 0, 0)))
        assert f.num_vars == sum(len(row) for row in f.lists.values())
        assert f.num_vars == 4


class TestExtend:
    def test_cycle_last_vertex_forced(self):
        g = cycle_graph(5)
        out = extend_by_2list(g, PartialColouring(3, (1, 2, 1, 2, 0)))
        assert out.colours == (1, 2, 1, 2, 3)

    def test_adjacent_singleton_lists_clash(self):
        g = complete_graph(4)
        out = extend_by_2list(g, PartialColouring(3, (2, 3, 0, 0)))
        assert out is None

    def test_equal_colours_on_an_edge_impossible(self):
        g = path_graph(2)
        eq = EqualityConstraint((0, 1), (1, 2))
        assert extend_by_2list(g, PartialColouring.blank(2, 2), [eq]) is None

    def test_cycle_two_open_vertices(self):
        g = cycle_graph(5)
        out = extend_by_2list(g, PartialColouring(3, (1, 2, 1, 0, 0)))
        assert out is not None
        assert (out.colours[3], out.colours[4]) in {(2, 3), (3, 2)}

    def test_chain_over_shared_open_list(self):
        # u and w both see only colour 1, so their lists are (2, 3)
        g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        partial = PartialColouring(3, (1, 0, 1, 0, 1))
        eq = EqualityConstraint((1, 3), (2, 3))
        out = extend_by_2list(g, partial, [eq])
        assert out is not None
        assert out.colours[1] == out.colours[3]

    def test_chain_against_an_edge(self):
        # same shared (2, 3) lists, but the chained pair is adjacent
        g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        partial = PartialColouring(3, (1, 0, 0, 1))
        eq = EqualityConstraint((1, 2), (2, 3))
        assert extend_by_2list(g, partial, [eq]) is None


cases = st.builds(
    lambda n, es, p, cs, qs: _case(n, es, p, cs, qs),
    st.integers(2, 8), st.integers(0, 10**6), st.floats(0.2, 0.8),
    st.integers(0, 10**6), st.integers(0, 10**6),
)


def _case(n, eseed, p, cseed, qseed):
    g = helpers.random_graph(n, p, random.Random(eseed))
    rng = random.Random(cseed)
    colours = [0] * n
    for v in rng.sample(range(n), rng.randint(n // 2, n)):
        free = {1, 2, 3} - {colours[w] for w in g.adj[v]}
        if free:
            colours[v] = rng.choice(sorted(free))
    qrng = random.Random(qseed)
    groups = []
    for _ in range(qrng.randint(0, 2)):
        size = qrng.randint(2, min(3, n))
        verts = tuple(qrng.sample(range(n), size))
        # full palette: a coupling never narrower than any member's open list
        groups.append(EqualityConstraint(verts, (1, 2, 3)))
    return g, PartialColouring(3, tuple(colours)), groups


def _brute_list_solutions(g, partial, lists, groups):
    verts = sorted(lists)
    for pick in itertools.product(*(lists[v] for v in verts)):
        full = list(partial.colours)
        for v, c in zip(verts, pick):
            full[v] = c
        if any(full[u] == full[v] for u, v in g.edges):
            continue
        ok = True
        for eq in groups:
            for a, b in itertools.combinations(eq.vertices, 2):
                for c in eq.colours:
                    if (full[a] == c) != (full[b] == c):
                        ok = False
        if ok:
            yield tuple(full)


class TestExtendAgainstBrute:
    @given(cases)
    def test_feasibility_matches_and_output_valid(self, case):
        g, partial, groups = case
        try:
            lists = compute_lists(g, partial)
        except ListSizeError:
            assume(False)
        out = extend_by_2list(g, partial, groups)
        brute = set(_brute_list_solutions(g, partial, lists, groups))
        assert (out is not None) == bool(brute)
        if out is not None:
            assert out.colours in brute

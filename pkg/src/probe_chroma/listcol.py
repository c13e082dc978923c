"""Completing a partial colouring when every open list has at most 2 colours.

The instance becomes 2-SAT: one variable per (vertex, allowed colour),
at-least-one clauses per vertex, at-most-one-per-edge clauses per shared
colour, plus optional colour-equality couplings between vertex chains.
Satisfiability is decided with Tarjan's strongly connected components.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ListSizeError
from .graphs import Graph, PartialColouring

_TRUE = ("const", True)
_FALSE = ("const", False)


@dataclass(frozen=True)
class EqualityConstraint:
    """All ``vertices`` must agree colour-by-colour over ``colours``.

    Encoded as biconditional chains between consecutive vertices in
    ascending id order; by transitivity this equals the all-pairs coupling.
    """

    vertices: tuple
    colours: tuple


@dataclass(frozen=True)
class ListFormula:
    num_vars: int
    clauses: tuple  # pairs of DIMACS-style literals; units doubled
    var_of: dict  # (vertex, colour) -> 0-based variable index
    lists: dict  # vertex -> ascending tuple of allowed colours
    unsat: bool  # an empty list or contradictory constant arose while building


def compute_lists(g: Graph, partial: PartialColouring) -> dict:
    """Open colour lists of the uncoloured vertices.

    A list longer than 2 raises :class:`ListSizeError`: the caller's
    structural guarantees were violated.
    """
    lists = {}
    for v in range(g.n):
        if partial.colours[v]:
            continue
        seen = {partial.colours[w] for w in g.adj[v] if partial.colours[w]}
        allowed = tuple(c for c in range(1, partial.k + 1) if c not in seen)
        if len(allowed) > 2:
            raise ListSizeError(v, len(allowed))
        lists[v] = allowed
    return lists


def build_list_formula(g: Graph, partial: PartialColouring, equalities=()) -> ListFormula:
    lists = compute_lists(g, partial)
    var_of = {}
    for v in sorted(lists):
        for c in lists[v]:
            var_of[(v, c)] = len(var_of)

    clauses = []
    unsat = False

    def lit(v, c):
        # constant when v is already coloured or c is off v's list
        if partial.colours[v]:
            return _TRUE if partial.colours[v] == c else _FALSE
        if (v, c) not in var_of:
            return _FALSE
        return ("var", var_of[(v, c)] + 1)

    for v in sorted(lists):
        row = lists[v]
        if not row:
            unsat = True
        elif len(row) == 1:
            x = var_of[(v, row[0])] + 1
            clauses.append((x, x))
        else:
            clauses.append((var_of[(v, row[0])] + 1, var_of[(v, row[1])] + 1))

    for u, v in g.edges:
        if partial.colours[u] or partial.colours[v]:
            continue
        for c in lists[u]:
            if (v, c) in var_of:
                clauses.append((-(var_of[(u, c)] + 1), -(var_of[(v, c)] + 1)))

    for eq in equalities:
        verts = tuple(sorted(eq.vertices))
        for a, b in zip(verts, verts[1:]):
            for c in eq.colours:
                la, lb = lit(a, c), lit(b, c)
                unsat |= _couple(clauses, la, lb)
    return ListFormula(len(var_of), tuple(clauses), var_of, lists, unsat)


def _couple(clauses, la, lb) -> bool:
    """Append clauses for ``la <-> lb``; True means contradiction."""
    if la[0] == "const" and lb[0] == "const":
        return la[1] != lb[1]
    if la[0] == "const":
        la, lb = lb, la
    if lb[0] == "const":
        x = la[1]
        clauses.append((x, x) if lb[1] else (-x, -x))
        return False
    x, y = la[1], lb[1]
    clauses.append((-x, y))
    clauses.append((x, -y))
    return False


def tarjan_scc(adj) -> list:
    """Component id per node; ids increase in reverse topological order."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    counter = 0
    n_comps = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            row = adj[v]
            for j in range(pi, len(row)):
                w = row[j]
                if index[w] == -1:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comps
                    if w == v:
                        break
                n_comps += 1
    return comp


def solve_two_sat(num_vars: int, clauses):
    """Satisfying assignment as a bool list, or None.

    Literals are DIMACS-style: ``+(i+1)`` for variable ``i``, negative for
    its negation.
    """
    adj = [[] for _ in range(2 * num_vars)]

    def node(l):
        return 2 * (abs(l) - 1) + (0 if l > 0 else 1)

    for a, b in clauses:
        adj[node(-a)].append(node(b))
        adj[node(-b)].append(node(a))
    comp = tarjan_scc(adj)
    out = []
    for i in range(num_vars):
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        out.append(comp[2 * i] < comp[2 * i + 1])
    return out


def extend_by_2list(g: Graph, partial: PartialColouring, equalities=()):
    """Complete ``partial`` on all of ``g`` or report impossibility with None.

    Ties between the two allowed truths of a vertex resolve to the smaller
    colour, so the output is deterministic.
    """
    formula = build_list_formula(g, partial, equalities)
    if formula.unsat:
        return None
    assignment = solve_two_sat(formula.num_vars, formula.clauses)
    if assignment is None:
        return None
    updates = {}
    for v, row in formula.lists.items():
        updates[v] = next(c for c in row if assignment[formula.var_of[(v, c)]])
    return partial.with_colours(updates)

"""Forced-colour propagation for partial k-colourings.

A vertex that sees k-1 distinct colours on its neighbours has only one
colour left; assign it and requeue the neighbours.  The rule is monotone and
confluent, so the fixpoint is independent of the processing order.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .graphs import Graph, PartialColouring


@dataclass(frozen=True)
class Conflict:
    """Witness that the partial colouring cannot be completed greedily.

    ``vertex`` sees all k colours on its closed neighbourhood; smallest such
    id after the fixpoint is reached.
    """

    vertex: int


def _seen_colours(g: Graph, colours, v):
    return {colours[w] for w in g.adj[v] if colours[w]}


def propagate(g: Graph, start: PartialColouring, *, scan_seed=None):
    """Run the forced-colour fixpoint; return the extended colouring or a
    :class:`Conflict`.

    ``scan_seed`` permutes the initial worklist order; the result never
    depends on it (confluence), the parameter exists so tests can exercise
    that claim.
    """
    k = start.k
    colours = list(start.colours)
    order = list(range(g.n))
    if scan_seed is not None:
        random.Random(scan_seed).shuffle(order)
    queue = deque(v for v in order if colours[v] == 0)
    queued = [colours[v] == 0 for v in range(g.n)]
    while queue:
        v = queue.popleft()
        queued[v] = False
        if colours[v]:
            continue
        seen = _seen_colours(g, colours, v)
        if len(seen) == k - 1:
            missing = next(c for c in range(1, k + 1) if c not in seen)
            colours[v] = missing
            for w in g.adj[v]:
                if colours[w] == 0 and not queued[w]:
                    queued[w] = True
                    queue.append(w)
    for v in range(g.n):
        if len(_seen_colours(g, colours, v)) == k:
            return Conflict(v)
    return PartialColouring(k, tuple(colours))

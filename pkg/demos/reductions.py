"""Hardness gadgets in action: exact 3-cover and precolouring extension
both turn into probe-graph colouring questions.

Run: python3 demos/reductions.py
"""

from probe_chroma.generators import (
    X3CInstance,
    gen_precolext_reduction,
    gen_x3c_reduction,
)
from probe_chroma.graphs import build_graph
from probe_chroma.oracles import oracle_k_colourable


def exact_cover():
    universe = tuple(range(6))
    yes = ((0, 1, 2), (3, 4, 5), (1, 2, 3))
    no = ((0, 1, 2), (2, 3, 4), (1, 2, 3))
    for label, coll in (("coverable", yes), ("uncoverable", no)):
        inst, s = gen_x3c_reduction(X3CInstance(universe, coll))
        ans = oracle_k_colourable(inst.graph, s)
        print(f"  {label} collection {coll}")
        print(f"    gadget: n={inst.graph.n}, target colours s={s}, "
              f"{s}-colourable: {ans is not None}")


def precolouring():
    # a 6-cycle as a bipartite graph; each odd vertex sees two of the
    # pinned colours and takes the third, so the pins extend
    bip = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    sides = ((0, 2, 4), (1, 3, 5))
    inst = gen_precolext_reduction(bip, sides, 0, 2, 4)
    ans = oracle_k_colourable(inst.graph, 3)
    print("  6-cycle, evens pinned to colours 1, 2, 3:")
    print(f"    gadget 3-colourable (= precolouring extends): "
          f"{ans is not None}")

    # a star from the same sides does not: its centre sees all three pins
    star = build_graph(6, [(0, 1), (2, 1), (4, 1)])
    inst = gen_precolext_reduction(star, sides, 0, 2, 4)
    ans = oracle_k_colourable(inst.graph, 3)
    print("  star into vertex 1, same pins:")
    print(f"    gadget 3-colourable (= precolouring extends): "
          f"{ans is not None}")


def main():
    print("exact 3-cover as s-colourability:")
    exact_cover()
    print()
    print("precolouring extension as 3-colourability:")
    precolouring()


if __name__ == "__main__":
    main()

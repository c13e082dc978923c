"""Run the probe pattern-freeness recogniser over the fixture catalogue.

Each fixture is a small graph paired with a pattern and the expected
answer; the interesting rows are the refusals (odd holes and the twin
gadget) next to near-identical graphs that do admit a completion.

Run: python3 demos/recognition.py
"""

from probe_chroma.generators import fixtures_counterexamples
from probe_chroma.graphs import pattern_graph
from probe_chroma.oracles import oracle_is_probe_hfree


def main():
    print(f"{'graph':<14} {'pattern':<8} {'probe-free?':<12} witness fill")
    for fx in fixtures_counterexamples():
        nset = frozenset(fx.partition[1]) if fx.partition else None
        cert = oracle_is_probe_hfree(fx.graph, pattern_graph(fx.pattern),
                                     nset)
        if cert is None:
            print(f"{fx.name:<14} {fx.pattern:<8} {'no':<12} -")
            continue
        fill = sorted(cert.fill_edges)
        shown = ", ".join(f"{u}-{v}" for u, v in fill[:6])
        if len(fill) > 6:
            shown += f", ... ({len(fill)} edges)"
        print(f"{fx.name:<14} {fx.pattern:<8} {'yes':<12} "
              f"N={sorted(cert.nonprobes)} fill=[{shown or 'none needed'}]")


if __name__ == "__main__":
    main()

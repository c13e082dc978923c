"""Small timing sweep over the generated scaling families.

Prints one line per size with the median solve time and the largest
per-component deduction count (the solver promises at most 810).

Run: python3 demos/scaling.py
"""

import statistics
import time

from probe_chroma.generators import gen_probe_instance
from probe_chroma.solver import solve_3col

FAMILIES = ("path-split", "pentagon", "split-pure", "union")


def main():
    print(f"{'n':>6} {'median ms':>10} {'max ms':>10} {'max 2-SAT calls':>16}")
    for n in (500, 1000, 2000, 4000):
        times = []
        worst_calls = 0
        for rep in range(6):
            inst = gen_probe_instance(n, 0.4, ("demo", rep),
                                      family=FAMILIES[rep % 4])
            t0 = time.perf_counter()
            v = solve_3col(inst)
            times.append((time.perf_counter() - t0) * 1000)
            assert v.status == "colourable"
            worst_calls = max(worst_calls,
                              max(v.stats.component_two_sat_calls, default=0))
        print(f"{n:>6} {statistics.median(times):>10.1f} "
              f"{max(times):>10.1f} {worst_calls:>16}")


if __name__ == "__main__":
    main()

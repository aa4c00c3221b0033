"""Grow each extremal construction and watch the unit-triangle count scale.

Run: python demos/construction_scaling.py
"""

import numpy as np

from unitarea.constructions import general_position, one_parallel_pair, three_parallel
from unitarea.counting import count_brute_force
from unitarea.experiment import ScalingSeries, scaling_fit

NS = (4, 8, 16, 32)

builders = {
    "three parallel lines (alpha=2)": lambda n: three_parallel(n, 2),
    "one parallel pair": one_parallel_pair,
    "lines in general position (alpha=1)": lambda n: general_position(n, 1),
}

for name, build in builders.items():
    rows = []
    for n in NS:
        s = build(n)
        c = count_brute_force(s)
        rows.append((n, len(s), c.total, c.restricted))
    print(f"\n{name}")
    print(f"{'n':>4} {'points':>7} {'total':>7} {'one per line':>13} {'ratio / n^2':>12}")
    for n, size, total, restricted in rows:
        print(f"{n:>4} {size:>7} {total:>7} {restricted:>13} {restricted / n**2:>12.3f}")
    series = ScalingSeries(tuple((n, r) for n, _, _, r in rows))
    print(f"log-log slope of the restricted count: {scaling_fit(series)}")

# The three-parallel count is n^2 plus a second quadratic term that starts far
# below its limit, which steepens the fitted slope over this short range.
n = np.array(NS, dtype=float)
excess = np.array([count_brute_force(three_parallel(k, 2)).restricted - k * k for k in NS], float)
print("\nthree-parallel excess over n^2:", excess.astype(int).tolist())
print("its own log-log slope:", round(float(np.polyfit(np.log(n), np.log(excess), 1)[0]), 4))

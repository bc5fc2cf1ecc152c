"""Walkthrough: where the verifier wins on wall time.

Verification work grows near-quadratically with n (t = n test values,
each a polynomial evaluation), while recomputing the product grows
cubically. The crossover on this machine typically lands around a few
hundred; run with larger sizes to push the gap further.
"""

import time

import numpy as np

from matverify import naive_multiply, seeded_rng, verify_product


def median_of(fn, reps=3):
    times = []
    for _ in range(reps):
        s = time.perf_counter()
        fn()
        times.append(time.perf_counter() - s)
    return sorted(times)[reps // 2]


rng = seeded_rng(12)
print(f"{'n':>5} {'verify (s)':>12} {'recompute (s)':>14} {'ratio':>7}")
for n in (64, 128, 256, 512):
    a = rng.integers(-9, 10, (n, n))
    b = rng.integers(-9, 10, (n, n))
    c = naive_multiply(a, b).data
    verify_product(a, b, c, n)  # warm caches before timing
    tv = median_of(lambda: verify_product(a, b, c, n))
    tn = median_of(lambda: naive_multiply(a, b))
    print(f"{n:>5} {tv:>12.4f} {tn:>14.4f} {tn / tv:>7.2f}")

"""Walkthrough: deterministic product verification and correction.

A candidate C for the product AB is checked without recomputing AB.
The verdict is exact whenever C and AB differ in at most t entries,
and a not-equal verdict is trustworthy unconditionally. When the
promise holds, the same machinery recovers AB by fixing only the
wrong entries.
"""

import numpy as np

from matverify import (
    PromiseViolationError,
    correct_product,
    naive_multiply,
    seeded_rng,
    verify_product,
)

rng = seeded_rng(2024)
n = 32

a = rng.integers(-9, 10, (n, n))
b = rng.integers(-9, 10, (n, n))
c = naive_multiply(a, b).data

print(f"n = {n}, entries in [-9, 9]")
print("exact product accepted: ", verify_product(a, b, c, t=4))

bad = c.copy()
hits = rng.choice(n * n, size=3, replace=False)
bad.flat[hits] += 7
print("3 corrupted entries caught:", not verify_product(a, b, bad, t=4))

res = correct_product(a, b, bad, t=4)
print(f"corrected back to AB:     {np.array_equal(res.product.data, c)}")
print(f"corrections made:         {res.correction_count} at "
      f"{[(i, j) for i, j, _, _ in res.corrections]}")
print(f"field evaluations:        {res.evaluations}")

# the promise is load-bearing: with t below the true error count the
# run refuses to guess and reports the overflow instead
try:
    correct_product(a, b, bad, t=2)
except PromiseViolationError as err:
    print(f"t=2 on 3 errors:          refused ({err})")

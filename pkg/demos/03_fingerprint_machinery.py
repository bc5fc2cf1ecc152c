"""Walkthrough: the polynomial fingerprint underneath the verifier.

Entry (i, j) of AB is attached to the monomial X^(i + n*j), giving a
single univariate polynomial whose nonzero terms biject with nonzero
product entries. The verifier never expands its n^2 coefficients: the
factorization sum_k q_k(X) * r_k(X^n) evaluates it straight from the
factors, and evaluations at consecutive powers of a high-order root
detect any t-sparse polynomial. Working mod several primes whose
product exceeds the entry bound lifts field verdicts to the integers.
"""

import numpy as np

from matverify import (
    build_crt_basis,
    eval_fingerprint,
    eval_fingerprint_progression,
    fingerprint_rep,
    seeded_rng,
)

rng = seeded_rng(5)
n = 4

basis = build_crt_basis(n, bound=10**6)
print(f"CRT basis for n={n}, bound=10^6: primes "
      f"{[f.p for f in basis.fields]}, roots {[f.omega for f in basis.fields]}")
ctx = basis.fields[0]

a = rng.integers(0, ctx.p, (n, n))
b = rng.integers(0, ctx.p, (n, n))
rep = fingerprint_rep(a, b, ctx)

# expanding coefficients the long way reproduces the factorized values
prod = (a @ b) % ctx.p
coeffs = np.zeros(n * n, dtype=np.int64)
for i in range(n):
    for j in range(n):
        coeffs[i + n * j] = prod[i, j]
pts = [2, 3, 5, 11]
expanded = [
    int(sum(int(c) * pow(x, e, ctx.p) for e, c in enumerate(coeffs)) % ctx.p)
    for x in pts
]
print(f"\nfingerprint at x={pts}: factorized {eval_fingerprint(rep, pts)}, "
      f"expanded {expanded}")

# consecutive powers of the root are what the sparsity test consumes;
# a zero product would make every one of these values vanish
vals = eval_fingerprint_progression(rep, 0, 8)
print(f"values at omega^0..omega^7:  {[int(v) for v in vals]}")

zero_rep = fingerprint_rep(a, np.zeros((n, n), dtype=np.int64), ctx)
vals = eval_fingerprint_progression(zero_rep, 0, 8)
print(f"same for a zero product:     {[int(v) for v in vals]}")

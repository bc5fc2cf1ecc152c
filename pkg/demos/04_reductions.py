"""Walkthrough: the two structural reduction gadgets.

Boolean product verification splits into two halves: one-entries get
explicit witnesses, zero-entries become a 3SUM instance that has a
solution exactly when some zero should have been a one. Separately,
the product fingerprint compiles into a small arithmetic circuit, so
product verification also reduces to univariate identity testing.
"""

import numpy as np

from matverify import (
    bmm_ones_certificate,
    bmm_zeroes_to_3sum,
    build_crt_basis,
    emit_upit_circuit,
    eval_circuit,
    eval_fingerprint,
    fingerprint_rep,
    seeded_rng,
    serialize_three_sum,
    three_sum_bruteforce,
)

rng = seeded_rng(40)
n = 4

a = rng.integers(0, 2, (n, n))
b = rng.integers(0, 2, (n, n))
c = ((a @ b) > 0).astype(np.int64)

cert = bmm_ones_certificate(a, b, c)
print(f"ones witnessed: {cert.ok} ({len(cert.witnesses)} entries)")

inst = bmm_zeroes_to_3sum(a, b, c)
print(f"3SUM instance: |S1|={len(inst.s1)} |S2|={len(inst.s2)} "
      f"|S3|={len(inst.s3)}, base W={inst.base}")
print(f"solvable (should be False for an exact product): "
      f"{three_sum_bruteforce(inst.s1, inst.s2, inst.s3)}")

c[1, 2] = 0  # break one entry; the reduction notices
inst = bmm_zeroes_to_3sum(a, b, c)
print(f"after zeroing a true one:  "
      f"{three_sum_bruteforce(inst.s1, inst.s2, inst.s3)}")

print("\nsmallest instance, serialized:")
print(serialize_three_sum(bmm_zeroes_to_3sum([[1]], [[1]], [[0]])), end="")

# the circuit side: gate list evaluating the fingerprint of AB
ctx = build_crt_basis(n, 10**4).fields[0]
ai = rng.integers(-9, 10, (n, n))
bi = rng.integers(-9, 10, (n, n))
circ = emit_upit_circuit(ai, bi, ctx)
rep = fingerprint_rep(ai, bi, ctx)
probes = [int(x) for x in rng.integers(0, ctx.p, 4)]
print(f"\ncircuit: {len(circ.gates)} gates, {circ.wire_count} wires, "
      f"degree {circ.degree}, mod {circ.modulus}")
print(f"circuit values at {probes}:     "
      f"{[eval_circuit(circ, x, ctx) for x in probes]}")
print(f"fingerprint values at {probes}: {eval_fingerprint(rep, probes)}")

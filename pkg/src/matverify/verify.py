"""Deciding whether a claimed product is correct: the deterministic
all-zeroes test on the augmented pair, its integer-level lift through a CRT
basis, randomized baselines, and a deliberately flawed bilinear probe kept
as a negative control."""

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .field import CrtBasis, FieldCtx, build_crt_basis, power_sequence
from .matrix import IntMatrix, as_matrix, augment
from .poly import horner_many, progression_eval


@dataclass(frozen=True)
class FingerprintRep:
    """Factorized form of a block's product fingerprint.

    For factors L (rows x K) and R (K x cols) restricted to a side x side
    block at (i0, j0), the fingerprint is the univariate polynomial

        sum over block entries of (LR)_{i,j} * X^((i-i0) + side*(j-j0)),

    whose nonzero monomials biject with the block's nonzero product entries
    ((i-i0) + side*(j-j0) is injective on the block). It is never expanded:
    left_polys[k] holds column k of L over the block rows, right_polys[k]
    holds row k of R over the block columns, and the value at a point x is
    sum_k left_k(x) * right_k(x^side).
    """

    ctx: FieldCtx
    side: int
    left_polys: np.ndarray   # (K, side), reduced mod p
    right_polys: np.ndarray  # (K, side), reduced mod p


def fingerprint_rep(
    left: np.ndarray,
    right: np.ndarray,
    ctx: FieldCtx,
    i_start: int = 0,
    j_start: int = 0,
    side: int | None = None,
) -> FingerprintRep:
    """Slice per-inner-index coefficient vectors out of the factors.
    Entries already reduced to int64 in [0, p) pass through as views."""
    left = left.data if isinstance(left, IntMatrix) else np.asarray(left)
    right = right.data if isinstance(right, IntMatrix) else np.asarray(right)
    if left.ndim != 2 or right.ndim != 2 or left.shape[1] != right.shape[0]:
        raise UsageError("factors must be 2-d with matching inner dimension")
    if side is None:
        side = left.shape[0]
    if i_start + side > left.shape[0] or j_start + side > right.shape[1]:
        raise UsageError("block exceeds factor dimensions")
    lp = _reduce_slice(left[i_start : i_start + side, :].T, ctx.p)
    rp = _reduce_slice(right[:, j_start : j_start + side], ctx.p)
    return FingerprintRep(ctx=ctx, side=side, left_polys=lp, right_polys=rp)


def _reduce_slice(view: np.ndarray, p: int) -> np.ndarray:
    if view.dtype == object:
        flat = np.array([int(v) % p for v in view.ravel()], dtype=np.int64)
        return flat.reshape(view.shape)
    if view.dtype == np.int64 and view.size and 0 <= view.min() and view.max() < p:
        return view
    return (view.astype(np.int64) % p).astype(np.int64, copy=False)


def _active_rows(rep: FingerprintRep) -> np.ndarray:
    # skip inner indices whose column (or row) vanishes on the block
    return np.nonzero(rep.left_polys.any(axis=1) & rep.right_polys.any(axis=1))[0]


def eval_fingerprint(rep: FingerprintRep, points) -> list[int]:
    """Fingerprint values at arbitrary points: sum_k q_k(x) * r_k(x^side)."""
    p = rep.ctx.p
    pts = np.array([int(x) % p for x in points], dtype=np.int64)
    if pts.size == 0:
        return []
    pts_side = np.array([pow(int(x), rep.side, p) for x in pts], dtype=np.int64)
    acc = np.zeros(len(pts), dtype=np.int64)
    for k in _active_rows(rep):
        qv = horner_many(rep.left_polys[k], pts, p)
        rv = horner_many(rep.right_polys[k], pts_side, p)
        acc = (acc + qv * rv) % p
    return [int(v) for v in acc]


def eval_fingerprint_progression(
    rep: FingerprintRep, start_exp: int, count: int, stats: dict | None = None
) -> np.ndarray:
    """Fingerprint values at omega^(start_exp + u) for u = 0..count-1."""
    ctx = rep.ctx
    p = ctx.p
    if count <= 0:
        return np.zeros(max(count, 0), dtype=np.int64)
    first_q = pow(ctx.omega, start_exp, p)
    ratio_r = pow(ctx.omega, rep.side, p)
    first_r = pow(ratio_r, start_exp, p)
    acc = np.zeros(count, dtype=np.int64)
    active = _active_rows(rep)
    for k in active:
        qv = progression_eval(rep.left_polys[k], first_q, ctx.omega, count, p)
        rv = progression_eval(rep.right_polys[k], first_r, ratio_r, count, p)
        acc = (acc + qv * rv) % p
    if stats is not None:
        stats["evaluations"] = stats.get("evaluations", 0) + count * len(active)
    return acc


@dataclass(frozen=True)
class ZeroVerdict:
    """Outcome of the all-zeroes test: sound NONZERO witness, or ZERO
    (correct whenever the true nonzero count is within the budget)."""

    all_zero: bool
    witness: int | None   # least exponent nu with a nonzero value
    checked: int          # points actually evaluated (after clamping)


def all_zeroes_test(
    left, right, t: int, ctx: FieldCtx, stats: dict | None = None
) -> ZeroVerdict:
    """Decide whether left @ right == 0 by evaluating the fingerprint at
    omega^0..omega^(t-1). NONZERO answers are unconditionally sound; ZERO is
    correct whenever the product has at most t nonzero entries."""
    if t < 1:
        raise UsageError("t must be >= 1")
    left = _reduced_array(left, ctx.p)
    right = _reduced_array(right, ctx.p)
    side = left.shape[0]
    if right.shape[1] != side:
        raise UsageError("product of the pair must be square")
    if ctx.order_lb < side * side:
        raise UsageError("omega order bound below side^2")
    t_eff = min(t, side * side)
    rep = fingerprint_rep(left, right, ctx)
    vals = eval_fingerprint_progression(rep, 0, t_eff, stats)
    nz = np.nonzero(vals)[0]
    if nz.size:
        return ZeroVerdict(all_zero=False, witness=int(nz[0]), checked=t_eff)
    return ZeroVerdict(all_zero=True, witness=None, checked=t_eff)


def _reduced_array(m, p: int) -> np.ndarray:
    data = m.data if isinstance(m, IntMatrix) else np.asarray(m)
    if data.dtype == object:
        return np.array(
            [[int(v) % p for v in row] for row in data], dtype=np.int64
        )
    return (data % p).astype(np.int64, copy=False)


def _square_triple(a, b, c) -> tuple[IntMatrix, IntMatrix, IntMatrix, int]:
    a, b, c = as_matrix(a), as_matrix(b), as_matrix(c)
    n = a.rows
    for m, name in ((a, "A"), (b, "B"), (c, "C")):
        if m.rows != n or m.cols != n:
            raise UsageError(f"{name} must be {n}x{n}")
    return a, b, c, n


def verify_product(
    a, b, c, t: int, basis: CrtBasis | None = None, stats: dict | None = None
) -> bool:
    """True iff C = AB, guaranteed whenever they differ in at most t entries.
    False answers are always correct.

    Augments to (A | C), (B ; -I), builds a CRT basis covering the augmented
    magnitude bound, and requires the all-zeroes test to pass mod every
    prime.
    """
    a, b, c, n = _square_triple(a, b, c)
    if t < 1:
        raise UsageError("t must be >= 1")
    pair = augment(a, b, c)
    if basis is None:
        basis = build_crt_basis(n, pair.magnitude_bound())
    for ctx in basis.fields:
        ap, bp = pair.reduced(ctx)
        if not all_zeroes_test(ap, bp, t, ctx, stats).all_zero:
            return False
    return True


def seeded_rng(seed: int) -> np.random.Generator:
    """Counter-based generator so runs are reproducible from the seed."""
    return np.random.Generator(np.random.Philox(seed))


def _exact_matvec(mat: np.ndarray, vec: np.ndarray, bound: int) -> np.ndarray:
    if bound < 1 << 62 and mat.dtype != object and vec.dtype != object:
        return mat @ vec
    return np.dot(mat.astype(object), vec.astype(object))


def freivalds_verify(a, b, c, reps: int = 20, seed: int = 0) -> bool:
    """Classic randomized check: random 0/1 vector v, compare Cv to A(Bv).
    False positives have probability at most 2^-reps over the seed stream."""
    a, b, c, n = _square_triple(a, b, c)
    if reps < 1:
        raise UsageError("reps must be >= 1")
    rng = seeded_rng(seed)
    for _ in range(reps):
        v = rng.integers(0, 2, size=n).astype(np.int64)
        bv = _exact_matvec(b.data, v, n * b.max_abs)
        abv = _exact_matvec(a.data, bv, n * a.max_abs * n * b.max_abs)
        cv = _exact_matvec(c.data, v, n * c.max_abs)
        if not np.array_equal(abv, cv):
            return False
    return True


def sampling_verify(a, b, c, seed: int = 0) -> bool:
    """Deterministic test at budget t = n, then 4n seeded random entries
    checked by exact inner products. Deterministically correct up to n
    errors; constant-probability correct beyond."""
    a, b, c, n = _square_triple(a, b, c)
    if not verify_product(a, b, c, t=n):
        return False
    rng = seeded_rng(seed)
    for _ in range(4 * n):
        i = int(rng.integers(0, n))
        j = int(rng.integers(0, n))
        inner = sum(int(x) * int(y) for x, y in zip(a.data[i], b.data[:, j]))
        if inner != int(c.data[i, j]):
            return False
    return True


def flawed_bilinear_test(a, b, c, points) -> list[int]:
    """The broken bilinear probe kept as a negative control: values of
    x(r)^T (AB - C) x(r) with x(r) = (1, r, ..., r^(n-1)).

    Antisymmetric differences make this vanish identically even when
    AB != C, which is exactly what the real test must not do.
    """
    a, b, c, n = _square_triple(a, b, c)
    out = []
    for r in points:
        r = int(r)
        x = [1] * n
        for i in range(1, n):
            x[i] = x[i - 1] * r
        xa = [sum(int(a.data[i, k]) * x[i] for i in range(n)) for k in range(n)]
        bx = [sum(int(b.data[k, j]) * x[j] for j in range(n)) for k in range(n)]
        cx = [sum(int(c.data[i, j]) * x[j] for j in range(n)) for i in range(n)]
        quad = sum(xa[k] * bx[k] for k in range(n))
        quad -= sum(x[i] * cx[i] for i in range(n))
        out.append(quad)
    return out

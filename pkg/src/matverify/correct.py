"""Output-sensitive multiplication and product correction.

A quadtree search locates nonzero entries of the augmented product using
cached polynomial test values; every located entry is confirmed by an exact
integer inner product, written into C, and all caches are patched
incrementally along the containing chain rather than recomputed.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InternalCheckError, PromiseViolationError, UsageError
from .field import CrtBasis, FieldCtx, build_crt_basis, power_sequence
from .matrix import IntMatrix, SubmatrixId, as_matrix, pad_to_pow2
from .verify import (
    eval_fingerprint_progression,
    fingerprint_rep,
    verify_product,
)


@dataclass
class CorrectionResult:
    """Outcome of a correction / output-sensitive multiplication run."""

    product: IntMatrix
    corrections: list[tuple[int, int, int, int]]  # (i, j, old, new)
    evaluations: int
    max_granularity: int
    granularity_map: dict[SubmatrixId, int]
    prime_passes: int

    @property
    def correction_count(self) -> int:
        return len(self.corrections)


class CorrectionEngine:
    """Working state for one prime: reduced factors, per-block granularity
    tau, computed-prefix counters alpha, sparse nonzero test values, and the
    nested queue of blocks certified to contain a nonzero."""

    def __init__(
        self,
        a2: IntMatrix,
        b2: IntMatrix,
        c2: IntMatrix,
        t: int,
        ctx: FieldCtx,
        stats: dict,
        trace=None,
        trace_prefix: str = "",
    ):
        m = a2.rows
        self.m = m
        self.a2 = a2
        self.b2 = b2
        self.c2 = c2
        self.t = t
        self.ctx = ctx
        self.stats = stats
        self.trace = trace
        self.trace_prefix = trace_prefix

        p = ctx.p
        self.ap = np.hstack([_reduce(a2.data, p), _reduce(c2.data, p)])
        self.bp = np.vstack(
            [_reduce(b2.data, p), (p - 1) * np.eye(m, dtype=np.int64)]
        )
        self.root = SubmatrixId(0, 0, m)
        self.t_eff = min(t, m * m)

        self.tau: dict[SubmatrixId, int] = {}
        self.alpha: dict[SubmatrixId, int] = {}
        self.vals: dict[SubmatrixId, list[tuple[int, int]]] = {}
        self.queue: list[SubmatrixId] = []

        # exact integer inner products stay in int64 when they cannot overflow
        self._i64_inner = (
            a2.cols * a2.max_abs * b2.max_abs < 1 << 62
            and a2.data.dtype != object
            and b2.data.dtype != object
        )

    # -- evaluation ------------------------------------------------------

    def scratch_values(self, s: SubmatrixId, lo: int, hi: int) -> np.ndarray:
        """Block test values recomputed from the current factors; the oracle
        the caches must agree with."""
        rep = fingerprint_rep(
            self.ap, self.bp, self.ctx, s.i_start, s.j_start, s.side
        )
        return eval_fingerprint_progression(rep, lo, hi - lo, self.stats)

    def _extend_values(self, s: SubmatrixId, target: int) -> None:
        have = self.alpha.get(s, 0)
        if have >= target:
            return
        fresh = self.scratch_values(s, have, target)
        if fresh.size:
            stored = self.vals.setdefault(s, [])
            for off in np.nonzero(fresh)[0]:
                stored.append((have + int(off), int(fresh[off])))
        self.alpha[s] = target

    # -- search ----------------------------------------------------------

    def find_nonzero(self, s: SubmatrixId) -> tuple[int, int, dict]:
        """Locate a nonzero position inside block s, which the caches must
        already certify nonzero. Doubles granularity until some child
        witnesses, then descends into the child with the least witnessing
        exponent (ties broken by fixed child order)."""
        info = {"start": s, "nu": None}
        while s.side > 1:
            if self.tau.get(s, 0) == 0:
                self.tau[s] = s.side
            kids = s.split()
            while True:
                target = self.tau[s]
                for child in kids:
                    self._extend_values(child, target)
                best = None
                for idx, child in enumerate(kids):
                    lst = self.vals.get(child)
                    if lst and (best is None or lst[0][0] < best[0]):
                        best = (lst[0][0], idx)
                if best is not None:
                    break
                if target >= s.side * s.side:
                    raise InternalCheckError(
                        "all test values zero at full granularity; caches corrupt"
                    )
                self.tau[s] = min(2 * target, s.side * s.side)
            if info["nu"] is None:
                info["nu"] = best[0]
            child = kids[best[1]]
            self.queue.append(child)
            s = child
        return s.i_start, s.j_start, info

    # -- update ----------------------------------------------------------

    def apply_write(self, i: int, j: int, old: int, new: int) -> None:
        """Patch the field copy and every cached value on the containing
        chain after C[i, j] changed from old to new."""
        p = self.ctx.p
        delta = (new - old) % p
        self.ap[i, self.m + j] = new % p
        s = self.root
        while True:
            prefix = self.alpha.get(s, 0)
            if prefix and delta:
                self._shift_stored(s, i, j, delta, prefix)
            if not self.vals.get(s) and s in self.queue:
                self.queue.remove(s)
            if s.side == 1 or self.tau.get(s, 0) == 0:
                # nothing was ever computed below this block
                break
            s = s.child_containing(i, j)

    def _shift_stored(
        self, s: SubmatrixId, i: int, j: int, delta: int, prefix: int
    ) -> None:
        # the write moves the block fingerprint by -delta * X^e
        p = self.ctx.p
        e = (i - s.i_start) + s.side * (j - s.j_start)
        seq = power_sequence(pow(self.ctx.omega, e, p), prefix, p)
        dense = np.zeros(prefix, dtype=np.int64)
        for nu, gamma in self.vals.get(s, ()):
            dense[nu] = gamma
        dense = (dense + (p - delta) * seq) % p
        self.vals[s] = [(int(nu), int(dense[nu])) for nu in np.nonzero(dense)[0]]

    # -- integer side ----------------------------------------------------

    def exact_inner(self, i: int, j: int) -> int:
        if self._i64_inner:
            return int(self.a2.data[i] @ self.b2.data[:, j])
        return sum(int(x) * int(y) for x, y in zip(self.a2.data[i], self.b2.data[:, j]))

    # -- driver ----------------------------------------------------------

    def run(self, corrections: list, pre_write=None, post_update=None) -> None:
        self._extend_values(self.root, self.t_eff)
        if self.vals.get(self.root):
            self.queue.append(self.root)
        iteration = 0
        while self.queue:
            s = self.queue[-1]
            i, j, info = self.find_nonzero(s)
            new = self.exact_inner(i, j)
            old = self.c2.get(i, j)
            if new == old:
                raise InternalCheckError(
                    f"field-level witness at ({i},{j}) has zero integer value"
                )
            if len(corrections) >= self.t:
                raise PromiseViolationError(
                    f"more than {self.t} differing entries; "
                    f"entry {len(corrections) + 1} found at ({i},{j})",
                    position=(i, j),
                    corrections=len(corrections),
                )
            if pre_write is not None:
                pre_write(self, i, j, old, new)
            corrections.append((i, j, old, new))
            self.c2.set(i, j, new)
            self.apply_write(i, j, old, new)
            if post_update is not None:
                post_update(self, i, j)
            if self.trace is not None:
                st = info["start"]
                self.trace.write(
                    f"{self.trace_prefix}iter={iteration} "
                    f"sub=({st.i_start},{st.j_start},{st.side}) "
                    f"tau={self.tau.get(st, 0)} nu={info['nu']} "
                    f"pos=({i},{j})\n"
                )
            iteration += 1


def _reduce(data: np.ndarray, p: int) -> np.ndarray:
    if data.dtype == object:
        return np.array([[int(v) % p for v in row] for row in data], dtype=np.int64)
    return data % p


def _run_engine(
    a, b, c_seed, t: int, trace=None, pre_write=None, post_update=None
) -> CorrectionResult:
    a, b = as_matrix(a), as_matrix(b)
    n = a.rows
    if a.cols != n or b.rows != n or b.cols != n:
        raise UsageError("factors must be square and same size")
    if c_seed.rows != n or c_seed.cols != n:
        raise UsageError("C must match the factor size")
    if t < 0:
        raise UsageError("t must be >= 0")

    a2, b2, c2, m = pad_to_pow2(a, b, c_seed)
    prod = m * a2.max_abs * b2.max_abs
    bound = max(prod + max(c2.max_abs, prod), 1)
    basis = build_crt_basis(m, bound)

    corrections: list[tuple[int, int, int, int]] = []
    stats = {"evaluations": 0}
    granularity: dict[SubmatrixId, int] = {}
    passes = 0
    clean = False
    for idx, ctx in enumerate(basis.fields):
        engine = CorrectionEngine(
            a2, b2, c2, t, ctx, stats, trace=trace,
            trace_prefix=f"prime={ctx.p} " if trace is not None else "",
        )
        passes += 1
        engine.run(corrections, pre_write=pre_write, post_update=post_update)
        for s, tv in engine.tau.items():
            if tv > granularity.get(s, 0):
                granularity[s] = tv
        # integer-level sweep over the full basis; catches nonzeroes that
        # vanish mod this pass's prime
        if verify_product(a2, b2, c2, max(t, 1), basis=basis, stats=stats):
            clean = True
            break
    if not clean:
        raise PromiseViolationError(
            "residual differences remain after all primes; "
            "the <= t promise cannot hold",
            corrections=len(corrections),
        )

    result = IntMatrix(c2.data[:n, :n])
    return CorrectionResult(
        product=result,
        corrections=corrections,
        evaluations=stats["evaluations"],
        max_granularity=max(granularity.values(), default=0),
        granularity_map=granularity,
        prime_passes=passes,
    )


def multiply_output_sensitive(
    a, b, t: int, *, trace=None, pre_write=None, post_update=None
) -> CorrectionResult:
    """Compute AB exactly under the promise that it has at most t nonzero
    entries; cost scales with t rather than with the dense product."""
    a = as_matrix(a)
    zeros = IntMatrix(np.zeros((a.rows, a.rows), dtype=np.int64))
    return _run_engine(
        a, b, zeros, t, trace=trace, pre_write=pre_write, post_update=post_update
    )


def correct_product(
    a, b, c_in, t: int, *, trace=None, pre_write=None, post_update=None
) -> CorrectionResult:
    """Recover AB from a candidate C differing from it in at most t entries.
    c_in is not mutated; the corrected matrix is returned."""
    c_seed = as_matrix(c_in).copy()
    return _run_engine(
        a, b, c_seed, t, trace=trace, pre_write=pre_write, post_update=post_update
    )

"""Prime-field contexts: deterministic prime search, generator construction,
and CRT bases whose modulus product covers a given integer magnitude bound."""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import ResourceLimitError, UsageError

_SIEVE_BUDGET = 1 << 27      # flags per segmented-sieve call (~128 MiB)
_GROUP_TABLE_BUDGET = 1 << 31  # boolean table for the generator search


def sieve_primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], ascending, via a segmented Eratosthenes sieve."""
    if lo < 2 or hi < lo:
        raise UsageError(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    if hi >= 1 << 63:
        raise UsageError("upper bound must fit in a machine word")
    if hi - lo + 1 > _SIEVE_BUDGET:
        raise ResourceLimitError(f"sieve range wider than {_SIEVE_BUDGET} flags")
    root = isqrt(hi)
    if root + 1 > _SIEVE_BUDGET:
        raise ResourceLimitError("base sieve would exceed the memory budget")

    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for q in range(2, isqrt(root) + 1):
        if base[q]:
            base[q * q :: q] = False

    flags = np.ones(hi - lo + 1, dtype=bool)
    if lo < 2:
        flags[: 2 - lo] = False
    for q in np.nonzero(base)[0]:
        q = int(q)
        start = max(q * q, ((lo + q - 1) // q) * q)
        if start <= hi:
            flags[start - lo :: q] = False
    return [int(lo + i) for i in np.nonzero(flags)[0]]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3):
        if n % q == 0:
            return n == q
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _cyclic_subgroup(a: int, p: int) -> np.ndarray:
    """All distinct powers of a modulo p, starting at a^0 = 1."""
    a %= p
    if a == 1:
        return np.array([1], dtype=np.int64)
    if p < 1 << 31:
        arr = np.array([1], dtype=np.int64)
        while True:
            step = int(arr[-1]) * a % p       # a^len(arr)
            block = arr * step % p
            hits = np.nonzero(block == 1)[0]
            if hits.size:
                return np.concatenate([arr, block[: hits[0]]])
            arr = np.concatenate([arr, block])
    powers = [1]
    x = a
    while x != 1:
        powers.append(x)
        x = x * a % p
    return np.array(powers, dtype=object)


@lru_cache(maxsize=256)
def find_generator(p: int) -> int:
    """Deterministic generator of the full multiplicative group mod p.

    Scans candidates in ascending order, skipping anything already covered
    by a previously picked candidate's cyclic subgroup; once every group
    element is covered, the last candidate picked generates the whole group.
    """
    if p < 3 or not _is_prime(p):
        raise UsageError(f"{p} is not a prime >= 3")
    if p > _GROUP_TABLE_BUDGET:
        raise ResourceLimitError("generator lookup table would exceed budget")
    seen = np.zeros(p, dtype=bool)
    seen[0] = True
    last = 1
    pos = 1
    while pos < p:
        off = int(np.argmax(~seen[pos:]))
        cand = pos + off
        if seen[cand]:
            break
        last = cand
        sub = _cyclic_subgroup(cand, p)
        seen[sub.astype(np.int64)] = True
        pos = cand + 1
    return last


def multiplicative_order(x: int, p: int) -> int:
    """Exhaustively computed order of x in the multiplicative group mod p."""
    if x % p == 0:
        raise UsageError("0 is not a group element")
    return len(_cyclic_subgroup(x, p))


_POWER_CACHE: dict[tuple[int, int], np.ndarray] = {}


def power_sequence(base: int, count: int, p: int) -> np.ndarray:
    """[base^0, base^1, ..., base^(count-1)] mod p."""
    if count < 0:
        raise UsageError("count must be >= 0")
    base %= p
    if p >= 1 << 31:
        out = np.empty(count, dtype=object)
        acc = 1 % p
        for i in range(count):
            out[i] = acc
            acc = acc * base % p
        return out
    out = np.zeros(count, dtype=np.int64)
    if count == 0:
        return out
    out[0] = 1 % p
    filled = 1
    while filled < count:
        take = min(filled, count - filled)
        step = int(out[filled - 1]) * base % p   # base^filled
        out[filled : filled + take] = out[:take] * step % p
        filled += take
    return out


def _cached_powers(p: int, base: int, count: int) -> np.ndarray:
    key = (p, base)
    cur = _POWER_CACHE.get(key)
    if cur is None or len(cur) < count:
        grown = max(count, 16 if cur is None else 2 * len(cur))
        cur = power_sequence(base, grown, p)
        _POWER_CACHE[key] = cur
    return cur[:count]


@dataclass(frozen=True)
class FieldCtx:
    """A prime p together with an element omega of multiplicative order
    at least order_lb; the arithmetic substrate for every polynomial test."""

    p: int
    omega: int
    order_lb: int = 1

    def __post_init__(self):
        if not 0 < self.omega < self.p:
            raise UsageError("omega must be a nonzero residue")

    def powers(self, count: int) -> np.ndarray:
        """omega^0..omega^(count-1); cached and grown on demand."""
        return _cached_powers(self.p, self.omega, count)


@dataclass(frozen=True)
class CrtBasis:
    """Distinct primes whose product exceeds 2*bound, each paired with a
    generator, so field-level zero tests lift to integer zero tests."""

    fields: tuple[FieldCtx, ...]
    bound: int

    @property
    def modulus_product(self) -> int:
        out = 1
        for f in self.fields:
            out *= f.p
        return out


@lru_cache(maxsize=128)
def build_crt_basis(n: int, bound: int) -> CrtBasis:
    """The d smallest primes >= n^2+1 with d minimal s.t. (n^2+1)^d > 2*bound.

    n below 2 is clamped to 2 so the smallest usable prime is 5 and a
    nontrivial omega always exists.
    """
    if n < 1:
        raise UsageError("n must be >= 1")
    if bound < 1:
        raise UsageError("bound must be >= 1")
    side = max(n, 2)
    base = side * side + 1
    d = 1
    while base**d <= 2 * bound:
        d += 1

    primes: list[int] = []
    lo = base
    span = max(1024, 4 * d)
    while len(primes) < d:
        hi = lo + span - 1
        primes.extend(sieve_primes_in_range(lo, hi))
        lo = hi + 1
        span *= 2
    fields = tuple(
        FieldCtx(p, find_generator(p), order_lb=side * side) for p in primes[:d]
    )
    return CrtBasis(fields=fields, bound=bound)


def mod_add(x: int, y: int, ctx: FieldCtx) -> int:
    return (x + y) % ctx.p


def mod_sub(x: int, y: int, ctx: FieldCtx) -> int:
    return (x - y) % ctx.p


def mod_mul(x: int, y: int, ctx: FieldCtx) -> int:
    return x * y % ctx.p


def mod_pow(x: int, e: int, ctx: FieldCtx) -> int:
    return pow(x % ctx.p, e, ctx.p)


def mod_inv(x: int, ctx: FieldCtx) -> int:
    if x % ctx.p == 0:
        raise ZeroDivisionError("0 has no multiplicative inverse")
    return pow(x, -1, ctx.p)

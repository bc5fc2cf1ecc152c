"""Univariate polynomials over F_p: multiplication through integer packing,
long division, multipoint evaluation, and batch evaluation along geometric
progressions via a chirp factorization of the exponents."""

import numpy as np

try:
    from gmpy2 import mpz

    _from_bytes = mpz.from_bytes
except ImportError:  # pragma: no cover - declared dependency, belt and braces
    mpz = int
    _from_bytes = int.from_bytes

from .errors import UsageError
from .field import FieldCtx, power_sequence

_TREE_THRESHOLD = 64   # below this, per-point Horner beats the subproduct tree
_SCHOOLBOOK_DEG = 32   # below this, plain convolution beats packing

_WORD = 1 << 31        # moduli above this take the slow exact paths


class Poly:
    """Dense coefficient vector over F_p; index i holds the X^i coefficient.

    Canonical form: reduced into [0, p) with no trailing zero (the zero
    polynomial keeps one zero coefficient). Treat instances as immutable.
    """

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs, ctx: FieldCtx):
        arr = np.asarray(coeffs)
        if arr.ndim != 1:
            raise UsageError("coefficients must be one-dimensional")
        if arr.size and arr.dtype.kind == "i":
            arr = arr.astype(np.int64) % ctx.p
        else:
            arr = np.array([int(c) % ctx.p for c in coeffs], dtype=np.int64)
        nz = np.nonzero(arr)[0]
        self.coeffs = arr[: int(nz[-1]) + 1] if nz.size else np.zeros(1, np.int64)
        self.ctx = ctx

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx.p == other.ctx.p and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.ctx.p, self.coeffs.tobytes()))

    def __repr__(self):
        return f"Poly({self.coeffs.tolist()}, p={self.ctx.p})"


def _same_ctx(f: Poly, g: Poly) -> None:
    if f.ctx.p != g.ctx.p:
        raise UsageError("mismatched field contexts")


def _slot_width(term_count: int, p: int) -> int:
    """Bytes per packed slot so that term_count coefficient products can
    never carry into the next slot."""
    bits = (term_count * (p - 1) * (p - 1)).bit_length()
    return max(1, (bits + 7) // 8)


def _pack(arr: np.ndarray, width: int):
    """Fixed-width little-endian slots -> one big integer."""
    v = arr.astype("<u8")
    if width == 8:
        return _from_bytes(v.tobytes(), "little")
    b8 = v.view(np.uint8).reshape(-1, 8)
    if width < 8:
        return _from_bytes(b8[:, :width].tobytes(), "little")
    buf = np.zeros((len(arr), width), dtype=np.uint8)
    buf[:, :8] = b8
    return _from_bytes(buf.tobytes(), "little")


def _unpack(z, width: int, total_slots: int, p: int, start: int = 0, stop=None):
    """Slots [start, stop) of a packed integer, reduced mod p (int64)."""
    stop = total_slots if stop is None else stop
    raw = z.to_bytes(width * total_slots, "little")
    u8 = np.frombuffer(raw, dtype=np.uint8).reshape(total_slots, width)[start:stop]
    count = stop - start
    if width <= 8:
        buf = np.zeros((count, 8), dtype=np.uint8)
        buf[:, :width] = u8
        vals = buf.view("<u8").reshape(count)
        return (vals % np.uint64(p)).astype(np.int64)
    # two-limb slots; requires p < 2^32 so the recombination fits uint64
    buf = np.zeros((count, 16), dtype=np.uint8)
    buf[:, :width] = u8
    pair = buf.view("<u8").reshape(count, 2)
    lo = pair[:, 0] % np.uint64(p)
    hi = pair[:, 1] % np.uint64(p)
    shift = np.uint64((1 << 64) % p)
    return ((lo + hi * shift % np.uint64(p)) % np.uint64(p)).astype(np.int64)


def _kron_convolve(a: np.ndarray, b: np.ndarray, p: int):
    """Exact mod-p convolution via one big-integer product, or None when the
    slot geometry cannot be made safe."""
    terms = min(len(a), len(b))
    width = _slot_width(terms, p)
    if width > 16 or (width > 8 and p >= 1 << 32):
        return None
    total = len(a) + len(b) - 1
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, width, total, p)


def _convolve_object(a, b, p: int) -> np.ndarray:
    av = [int(x) for x in a]
    bv = [int(x) for x in b]
    out = [0] * (len(av) + len(bv) - 1)
    for i, ai in enumerate(av):
        if ai == 0:
            continue
        for j, bj in enumerate(bv):
            out[i + j] = (out[i + j] + ai * bj) % p
    return np.array(out, dtype=np.int64)


def poly_mul(f: Poly, g: Poly) -> Poly:
    """Exact product over F_p."""
    _same_ctx(f, g)
    p = f.ctx.p
    if f.is_zero or g.is_zero:
        return Poly([0], f.ctx)
    la, lb = len(f.coeffs), len(g.coeffs)
    if min(la, lb) <= _SCHOOLBOOK_DEG:
        if min(la, lb) * (p - 1) * (p - 1) < 1 << 63:
            return Poly(np.convolve(f.coeffs, g.coeffs) % p, f.ctx)
        return Poly(_convolve_object(f.coeffs, g.coeffs, p), f.ctx)
    out = _kron_convolve(f.coeffs, g.coeffs, p)
    if out is None:
        out = _convolve_object(f.coeffs, g.coeffs, p)
    return Poly(out, f.ctx)


def poly_divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with f = q*g + r and deg r < deg g."""
    _same_ctx(f, g)
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    p = f.ctx.p
    dg = g.degree
    if f.is_zero or f.degree < dg:
        return Poly([0], f.ctx), f
    lead_inv = pow(int(g.coeffs[-1]), -1, p)
    if p < _WORD:
        rem = f.coeffs.copy()
        div = g.coeffs
        q = np.zeros(f.degree - dg + 1, dtype=np.int64)
        for i in range(f.degree, dg - 1, -1):
            c = int(rem[i]) * lead_inv % p
            if c:
                q[i - dg] = c
                rem[i - dg : i + 1] = (rem[i - dg : i + 1] - c * div) % p
        return Poly(q, f.ctx), Poly(rem[:dg] if dg else [0], f.ctx)
    rem = [int(x) for x in f.coeffs]
    div = [int(x) for x in g.coeffs]
    q = [0] * (f.degree - dg + 1)
    for i in range(f.degree, dg - 1, -1):
        c = rem[i] * lead_inv % p
        if c:
            q[i - dg] = c
            for s, dv in enumerate(div):
                rem[i - dg + s] = (rem[i - dg + s] - c * dv) % p
    return Poly(q, f.ctx), Poly(rem[:dg] if dg else [0], f.ctx)


def horner_eval(f: Poly, x: int) -> int:
    """Reference single-point evaluation."""
    p = f.ctx.p
    x = int(x) % p
    acc = 0
    for c in f.coeffs[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def horner_many(coeffs, pts: np.ndarray, p: int) -> np.ndarray:
    """Horner's scheme run across a whole vector of points at once."""
    if p >= _WORD:
        out = np.empty(len(pts), dtype=object)
        rev = [int(c) for c in coeffs][::-1]
        for m, x in enumerate(pts):
            acc = 0
            x = int(x)
            for c in rev:
                acc = (acc * x + c) % p
            out[m] = acc
        return out
    acc = np.zeros(len(pts), dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * pts + int(c)) % p
    return acc


def _linear_product(pts: np.ndarray, ctx: FieldCtx) -> Poly:
    p = ctx.p
    cur = np.array([1], dtype=np.int64)
    for x in pts:
        cur = np.convolve(cur, np.array([(-int(x)) % p, 1], dtype=np.int64)) % p
    return Poly(cur, ctx)


def _subproduct_tree(pts: np.ndarray, ctx: FieldCtx):
    if len(pts) <= _TREE_THRESHOLD:
        return (_linear_product(pts, ctx), None, None, pts)
    mid = len(pts) // 2
    left = _subproduct_tree(pts[:mid], ctx)
    right = _subproduct_tree(pts[mid:], ctx)
    return (poly_mul(left[0], right[0]), left, right, pts)


def _tree_descend(node, f: Poly) -> np.ndarray:
    modulus, left, right, pts = node
    rem = poly_divrem(f, modulus)[1] if f.degree >= modulus.degree else f
    if left is None:
        return horner_many(rem.coeffs, pts, f.ctx.p)
    return np.concatenate([_tree_descend(left, rem), _tree_descend(right, rem)])


def multipoint_eval(f: Poly, points) -> list[int]:
    """f at every point; subproduct-tree remainder cascade above the size
    threshold, per-point Horner below it. Identical values either way."""
    p = f.ctx.p
    pts = np.array([int(x) % p for x in points], dtype=np.int64)
    if pts.size == 0:
        return []
    if pts.size < _TREE_THRESHOLD or f.degree < _TREE_THRESHOLD or p >= _WORD:
        return [int(v) for v in horner_many(f.coeffs, pts, p)]
    return [int(v) for v in _tree_descend(_subproduct_tree(pts, f.ctx), f)]


class _ChirpTables:
    """Cached powers ratio^(+-T(k)) for triangular numbers T(k) = k(k+1)/2,
    plus packed kernel prefixes, keyed per (p, ratio)."""

    __slots__ = ("p", "ratio", "ratio_inv", "fwd", "inv", "_kernels")

    def __init__(self, p: int, ratio: int):
        self.p = p
        self.ratio = ratio % p
        self.ratio_inv = pow(self.ratio, -1, p)
        self.fwd = np.array([1], dtype=np.int64)
        self.inv = np.array([1], dtype=np.int64)
        self._kernels: dict[tuple[int, int], object] = {}

    def ensure(self, length: int) -> None:
        # grow by doubling using T(k+j) = T(k) + T(j) + k*j
        p = self.p
        while len(self.fwd) < length:
            k = len(self.fwd)
            tk = (k * (k + 1) // 2) % (p - 1)
            fk = pow(self.ratio, tk, p)
            ik = pow(fk, -1, p)
            geo_f = power_sequence(pow(self.ratio, k, p), k, p)
            geo_i = power_sequence(pow(self.ratio_inv, k, p), k, p)
            self.fwd = np.concatenate([self.fwd, self.fwd * fk % p * geo_f % p])
            self.inv = np.concatenate([self.inv, self.inv * ik % p * geo_i % p])

    def packed_kernel(self, width: int, length: int):
        key = (width, length)
        z = self._kernels.get(key)
        if z is None:
            self.ensure(length)
            z = _pack(self.fwd[:length], width)
            if len(self._kernels) >= 64:
                self._kernels.pop(next(iter(self._kernels)))
            self._kernels[key] = z
        return z


_CHIRP_CACHE: dict[tuple[int, int], _ChirpTables] = {}


def _chirp_tables(p: int, ratio: int) -> _ChirpTables:
    key = (p, ratio)
    tbl = _CHIRP_CACHE.get(key)
    if tbl is None:
        if len(_CHIRP_CACHE) >= 64:
            _CHIRP_CACHE.pop(next(iter(_CHIRP_CACHE)))
        tbl = _ChirpTables(p, ratio)
        _CHIRP_CACHE[key] = tbl
    return tbl


def progression_eval(coeffs, first: int, ratio: int, count: int, p: int) -> np.ndarray:
    """Values sum_i coeffs[i] * (first * ratio^u)^i for u = 0..count-1.

    The hot path rewrites ratio^(i*u) as ratio^(T(i+u) - T(i) - T(u)), so the
    whole batch becomes one convolution against the cached kernel
    ratio^T(0..). Small or awkward inputs fall back to vectorized Horner.
    """
    if count < 0:
        raise UsageError("count must be >= 0")
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    first %= p
    ratio %= p
    coeffs = np.asarray(coeffs)
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        return np.zeros(count, dtype=np.int64)
    coeffs = coeffs[: int(nz[-1]) + 1]
    n = len(coeffs)
    if nz.size == 1:
        # single monomial c*X^e: a plain geometric sequence
        e = int(nz[0])
        scale = int(coeffs[e]) * pow(first, e, p) % p
        return power_sequence(pow(ratio, e, p), count, p) * scale % p
    if ratio == 0 or p >= _WORD or n < 8 or count < 8:
        pts = power_sequence(ratio, count, p)
        if first != 1:
            pts = pts * first % p if p < _WORD else np.array(
                [int(x) * first % p for x in pts], dtype=object
            )
        return horner_many(coeffs, pts, p)

    tbl = _chirp_tables(p, ratio)
    b = coeffs.astype(np.int64)
    if first != 1:
        b = b * power_sequence(first, n, p) % p
    klen = n + count - 1
    tbl.ensure(max(n, count))
    b = b * tbl.inv[:n] % p
    width = _slot_width(n, p)
    kernel = tbl.packed_kernel(width, klen)
    packed = _pack(np.ascontiguousarray(b[::-1]), width)
    total = n + klen - 1
    vals = _unpack(packed * kernel, width, total, p, start=n - 1, stop=n - 1 + count)
    return vals * tbl.inv[:count] % p


def eval_on_progression(f: Poly, first: int, ratio: int, count: int) -> list[int]:
    """Poly-level wrapper over progression_eval."""
    return [int(v) for v in progression_eval(f.coeffs, first, ratio, count, f.ctx.p)]

"""Exact scalar and dense-matrix arithmetic over prime fields.

Residues are stored in uint64 arrays and every kernel is arranged so that
intermediates stay exactly representable.  The default modulus is the
Mersenne prime 2**61 - 1, chosen so that a random evaluation point
witnesses the generic rank of an interpolation matrix with failure
probability on the order of (degree)/p per trial.

The rank engine is a recursive block elimination (PLE decomposition).
Column panels are split in half down to a small leaf width; pivoting
inside a leaf is classical row elimination, while cross-panel updates are
delayed and applied as matrix products.  For products, operands are split
into 21-bit limbs so partial sums fit float64 exactly and can go through
BLAS; mod 2**61 - 1 the limb recombination is a cheap bit rotation since
2**61 == 1 (mod p).  The pivot choice (leftmost column, first nonzero
row) is identical in every backend, so all paths produce the same pivot
trace and the result is deterministic.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "MERSENNE61",
    "DEFAULT_PRIME",
    "PrimeField",
    "PrimeFieldMatrix",
    "is_prime",
    "mulmod_vec",
]

MERSENNE61 = (1 << 61) - 1
DEFAULT_PRIME = MERSENNE61

# Deterministic Miller-Rabin witness set, exact for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic in F_p for an odd prime p < 2**62."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_PRIME):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus must be prime, got {p!r}")
        if p == 2 or p >= 1 << 62:
            raise ValueError("modulus must be an odd prime below 2**62")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def reduce(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a prime field")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        return pow(a % self.p, e, self.p)

    def legendre(self, a: int) -> int:
        """Euler criterion: 1 for nonzero squares, -1 for non-squares, 0 for 0."""
        a %= self.p
        if a == 0:
            return 0
        return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None when a is not a quadratic residue.

        Tonelli-Shanks, with the exponent shortcut when p == 3 (mod 4).
        Callers that sample points on a quadric treat None as "retry with
        a fresh line", not as an error.
        """
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre(a) != 1:
            return None
        if p & 3 == 3:
            return pow(a, (p + 1) // 4, p)
        q = p - 1
        s = (q & -q).bit_length() - 1
        q >>= s
        z = 2
        while self.legendre(z) != -1:
            z += 1
        c = pow(z, q, p)
        x = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i = 0
            t2i = t
            while t2i != 1:
                t2i = t2i * t2i % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            x = x * b % p
            c = b * b % p
            t = t * c % p
            m = i
        return x


# ---------------------------------------------------------------------------
# Limb splitting.  A residue x < 2**61 is written x = x0 + x1*2**21 + x2*2**42
# with x0, x1 < 2**21 and x2 < 2**19.

_L21 = np.uint64(0x1FFFFF)
_M61 = np.uint64(MERSENNE61)


def _split3f(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """21-bit limbs of a uint64 array, as float64 (exact: limbs < 2**21)."""
    return (
        (x & _L21).astype(np.float64),
        ((x >> np.uint64(21)) & _L21).astype(np.float64),
        (x >> np.uint64(42)).astype(np.float64),
    )


def _split3u(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """21-bit limbs of a uint64 array, staying in uint64."""
    return x & _L21, (x >> np.uint64(21)) & _L21, x >> np.uint64(42)


def _combine5_m61(parts) -> np.ndarray:
    """Reduce sum(parts[s] * 2**(21 s)) mod 2**61 - 1.

    Each part must be a nonnegative array (any dtype castable to uint64)
    with values < 2**61.  Weights 2**63 and 2**84 reduce to 2**2 and 2**23
    because 2**61 == 1 (mod p), so each term is a rotation of the 61-bit
    window; the accumulated sum stays below 2**64.
    """
    acc = np.asarray(parts[0]).astype(np.uint64)
    for part, (sh, co) in zip(parts[1:], ((21, 40), (42, 19), (2, 59), (23, 38))):
        u = np.asarray(part).astype(np.uint64)
        acc += ((u << np.uint64(sh)) & _M61) + (u >> np.uint64(co))
    acc = (acc >> np.uint64(61)) + (acc & _M61)
    acc = (acc >> np.uint64(61)) + (acc & _M61)
    return _condsub(acc, MERSENNE61)


def _limb_products(x0, x1, x2, y0, y1, y2):
    """Five limb-convolution parts of (x0,x1,x2)*(y0,y1,y2), each < 3*2**42."""
    return (
        x0 * y0,
        x0 * y1 + x1 * y0,
        x0 * y2 + x1 * y1 + x2 * y0,
        x1 * y2 + x2 * y1,
        x2 * y2,
    )


def mulmod_vec(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Elementwise a*b mod p for reduced uint64 arrays (broadcasting allowed)."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if p == MERSENNE61:
        x0, x1, x2 = _split3u(a)
        y0, y1, y2 = _split3u(b)
        return _combine5_m61(_limb_products(x0, x1, x2, y0, y1, y2))
    if p < 1 << 31:
        return (a.astype(np.int64) * b.astype(np.int64) % p).astype(np.uint64)
    return ((a.astype(object) * b.astype(object)) % p).astype(np.uint64)


# ---------------------------------------------------------------------------
# Blocked elimination.

_LEAF_W = 8
_TRSM_LEAF = 64
_STRIPE = 1024


def _condsub(v: np.ndarray, p: int) -> np.ndarray:
    """In-place v mod p for v < 2p, branchless: v - p wraps below p."""
    np.minimum(v, v - np.uint64(p), out=v)
    return v


def _addmod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    return _condsub(x + y, p)


def _sub_block(a, rlo, rhi, clo, chi, prod, p):
    """a[rows, cols] = (a[rows, cols] - prod) mod p, all operands reduced."""
    v = a[rlo:rhi, clo:chi] + (np.uint64(p) - prod)
    a[rlo:rhi, clo:chi] = _condsub(v, p)


class _M61Kernel:
    """Update kernels for p = 2**61 - 1 via exact float64 BLAS on limbs."""

    p = MERSENNE61
    chunk_k = 512  # sums of 512 products of 22-bit limb sums stay < 2**53

    def matmul_mod(self, x, y):
        """Exact (x @ y) mod p; the inner dimension must be <= chunk_k."""
        k = x.shape[1]
        if k > self.chunk_k:
            raise ValueError(f"inner dimension {k} exceeds exactness bound {self.chunk_k}")
        out = np.empty((x.shape[0], y.shape[1]), dtype=np.uint64)
        x0, x1, x2 = _split3f(x)
        xs01, xs02, xs12 = x0 + x1, x0 + x2, x1 + x2
        for w0 in range(0, y.shape[1], _STRIPE):
            w1 = min(w0 + _STRIPE, y.shape[1])
            u0, u1, u2 = _split3f(y[:, w0:w1])
            p00 = x0 @ u0
            p11 = x1 @ u1
            p22 = x2 @ u2
            # Karatsuba cross terms; differences of exact integers
            # below 2**53 are themselves exact in float64.
            t1 = xs01 @ (u0 + u1) - p00 - p11
            t2 = xs02 @ (u0 + u2) - p00 - p22 + p11
            t3 = xs12 @ (u1 + u2) - p11 - p22
            out[:, w0:w1] = _combine5_m61((p00, t1, t2, t3, p22))
        return out

    def gemm_sub(self, a, rlo, rhi, pr0, pivcols, clo, chi):
        cols = np.asarray(pivcols, dtype=np.intp)
        for k0 in range(0, cols.size, self.chunk_k):
            kc = cols[k0 : k0 + self.chunk_k]
            prod = self.matmul_mod(a[rlo:rhi, kc], a[pr0 + k0 : pr0 + k0 + kc.size, clo:chi])
            _sub_block(a, rlo, rhi, clo, chi, prod, self.p)

    def scale_col(self, a, r1, j, scalar):
        x0, x1, x2 = _split3u(a[r1:, j])
        c0, c1, c2 = (
            np.uint64(scalar & 0x1FFFFF),
            np.uint64((scalar >> 21) & 0x1FFFFF),
            np.uint64(scalar >> 42),
        )
        a[r1:, j] = _combine5_m61(_limb_products(x0, x1, x2, c0, c1, c2))

    def outer_sub(self, a, r1, clo, chi, f, u):
        f0, f1, f2 = _split3u(f[:, None])
        u0, u1, u2 = _split3u(u[None, :])
        prod = _combine5_m61(_limb_products(f0, f1, f2, u0, u1, u2))
        _sub_block(a, r1, a.shape[0], clo, chi, prod, self.p)


class _SmallKernel:
    """Update kernels for small p: products of full residues fit float64."""

    def __init__(self, p: int):
        self.p = p
        self.chunk_k = min(2048, (1 << 53) // (p - 1) ** 2)

    def matmul_mod(self, x, y):
        """Exact (x @ y) mod p; the inner dimension must be <= chunk_k."""
        k = x.shape[1]
        if k > self.chunk_k:
            raise ValueError(f"inner dimension {k} exceeds exactness bound {self.chunk_k}")
        out = np.empty((x.shape[0], y.shape[1]), dtype=np.uint64)
        xf = x.astype(np.float64)
        for w0 in range(0, y.shape[1], _STRIPE):
            w1 = min(w0 + _STRIPE, y.shape[1])
            w = xf @ y[:, w0:w1].astype(np.float64)
            out[:, w0:w1] = (w.astype(np.int64) % self.p).astype(np.uint64)
        return out

    def gemm_sub(self, a, rlo, rhi, pr0, pivcols, clo, chi):
        cols = np.asarray(pivcols, dtype=np.intp)
        for k0 in range(0, cols.size, self.chunk_k):
            kc = cols[k0 : k0 + self.chunk_k]
            prod = self.matmul_mod(a[rlo:rhi, kc], a[pr0 + k0 : pr0 + k0 + kc.size, clo:chi])
            _sub_block(a, rlo, rhi, clo, chi, prod, self.p)

    def scale_col(self, a, r1, j, scalar):
        a[r1:, j] = (a[r1:, j].astype(np.int64) * scalar % self.p).astype(np.uint64)

    def outer_sub(self, a, r1, clo, chi, f, u):
        q = f.astype(np.int64)[:, None] * u.astype(np.int64)[None, :] % self.p
        _sub_block(a, r1, a.shape[0], clo, chi, q.astype(np.uint64), self.p)


def _ple_leaf(a, kern, r0, c0, c1, pivs):
    m = a.shape[0]
    r = r0
    for j in range(c0, c1):
        if r == m:
            return
        nz = np.nonzero(a[r:, j])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        if r + 1 < m:
            inv = pow(int(a[r, j]), -1, kern.p)
            kern.scale_col(a, r + 1, j, inv)
            if j + 1 < c1:
                kern.outer_sub(a, r + 1, j + 1, c1, a[r + 1 :, j], a[r, j + 1 : c1])
        pivs.append(j)
        r += 1


def _trsm_leaf(a, kern, r0, left, clo, chi):
    """Apply (I + N)^-1 to k pivot rows, N = stored strict-lower multipliers.

    The inverse is the Neumann sum of the nilpotent -N, built by doubling
    (log2 k small matmuls), after which all k rows update in one product.
    """
    k = len(left)
    if k == 1:
        return
    p = kern.p
    lf = a[r0 : r0 + k, np.asarray(left, dtype=np.intp)]
    lower = np.tril_indices(k, -1)
    neg = np.zeros((k, k), dtype=np.uint64)
    vals = lf[lower]
    neg[lower] = np.where(vals != 0, np.uint64(p) - vals, np.uint64(0))
    inv = np.eye(k, dtype=np.uint64) + neg  # I + (-N): partial sum of order < 2
    power = kern.matmul_mod(neg, neg)
    span = 2
    while span < k:
        inv = _addmod(kern.matmul_mod(inv, power), inv, p)
        span *= 2
        if span < k:
            power = kern.matmul_mod(power, power)
    a[r0 : r0 + k, clo:chi] = kern.matmul_mod(inv, a[r0 : r0 + k, clo:chi])


def _trsm(a, kern, r0, left, clo, chi):
    """Bring pivot rows up to date on columns [clo, chi).

    Solves the unit-lower system given by the stored multipliers: row t
    must absorb the eliminations of pivots s < t before those rows can be
    used in a block update.
    """
    k = len(left)
    if k <= _TRSM_LEAF:
        _trsm_leaf(a, kern, r0, left, clo, chi)
        return
    h = k // 2
    _trsm(a, kern, r0, left[:h], clo, chi)
    kern.gemm_sub(a, r0 + h, r0 + k, r0, left[:h], clo, chi)
    _trsm(a, kern, r0 + h, left[h:], clo, chi)


def _ple(a, kern, r0, c0, c1, pivs):
    m = a.shape[0]
    if r0 >= m or c0 >= c1:
        return
    if c1 - c0 <= _LEAF_W:
        _ple_leaf(a, kern, r0, c0, c1, pivs)
        return
    mid = (c0 + c1) // 2
    base = len(pivs)
    _ple(a, kern, r0, c0, mid, pivs)
    left = pivs[base:]
    k = len(left)
    if k:
        _trsm(a, kern, r0, left, mid, c1)
        if r0 + k < m:
            kern.gemm_sub(a, r0 + k, m, r0, left, mid, c1)
    _ple(a, kern, r0 + k, mid, c1, pivs)


def _elim_rows_int64(a, p):
    """Classical per-pivot elimination; exact while p**2 < 2**63."""
    m, n = a.shape
    pivs: list[int] = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, j])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        if r + 1 < m:
            inv = pow(int(a[r, j]), -1, p)
            f = a[r + 1 :, j] * inv % p
            if j + 1 < n:
                a[r + 1 :, j + 1 :] = (a[r + 1 :, j + 1 :] - f[:, None] * a[r, j + 1 :]) % p
            a[r + 1 :, j] = f
        pivs.append(j)
        r += 1
    return pivs


def _elim_rows_object(a, p):
    """Per-pivot elimination on Python integers; any p, no overflow limits."""
    m, n = a.shape
    pivs: list[int] = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, j])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        if r + 1 < m:
            inv = pow(int(a[r, j]), -1, p)
            f = a[r + 1 :, j] * inv % p
            if j + 1 < n:
                a[r + 1 :, j + 1 :] = (a[r + 1 :, j + 1 :] - f[:, None] * a[r, j + 1 :]) % p
            a[r + 1 :, j] = f
        pivs.append(j)
        r += 1
    return pivs


def _rank_with_pivots(a: np.ndarray, p: int) -> tuple[int, list[int]]:
    """Rank and pivot-column trace of a reduced uint64 matrix mod p."""
    m, n = a.shape
    if m == 0 or n == 0:
        return 0, []
    if p == MERSENNE61:
        pivs: list[int] = []
        _ple(a.copy(), _M61Kernel(), 0, 0, n, pivs)
        return len(pivs), pivs
    if (p - 1) ** 2 * 64 <= 1 << 53:
        pivs = []
        _ple(a.copy(), _SmallKernel(p), 0, 0, n, pivs)
        return len(pivs), pivs
    if p < 1 << 31:
        pivs = _elim_rows_int64(a.astype(np.int64), p)
        return len(pivs), pivs
    pivs = _elim_rows_object(a.astype(object), p)
    return len(pivs), pivs


class PrimeFieldMatrix:
    """Dense matrix over F_p with exact rank and kernel computations.

    Entries are kept as reduced residues in a uint64 array.  rank() works
    on a scratch copy, so a matrix can be shared between threads as long
    as nobody mutates it through the constructor argument.
    """

    __slots__ = ("field", "_a")

    def __init__(self, field: PrimeField, entries):
        self.field = field
        arr = np.asarray(entries)
        if arr.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got shape {arr.shape}")
        if arr.dtype == np.uint64:
            self._a = arr % np.uint64(field.p)
        elif arr.dtype.kind in "iu" and field.p < 1 << 62:
            self._a = (arr.astype(object) % field.p).astype(np.uint64)
        else:
            self._a = (np.array(entries, dtype=object).reshape(arr.shape) % field.p).astype(
                np.uint64
            )

    @classmethod
    def from_residues(cls, field: PrimeField, arr: np.ndarray) -> "PrimeFieldMatrix":
        """Wrap an already-reduced uint64 array without copying or checking."""
        self = cls.__new__(cls)
        self.field = field
        self._a = arr
        return self

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> np.ndarray:
        return self._a.copy()

    def entry(self, i: int, j: int) -> int:
        return int(self._a[i, j])

    def transpose(self) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix.from_residues(self.field, np.ascontiguousarray(self._a.T))

    def rank(self) -> int:
        return _rank_with_pivots(self._a, self.field.p)[0]

    def pivot_columns(self) -> list[int]:
        """Pivot columns of the echelon form (deterministic elimination order)."""
        return _rank_with_pivots(self._a, self.field.p)[1]

    def nullspace(self) -> list[list[int]]:
        """Basis of the right kernel, each vector scaled so its first
        nonzero coordinate is 1.

        Gauss-Jordan over Python integers; meant for small systems such
        as fitting a quadric through nine points, where the kernel vector
        itself is needed exactly.
        """
        p = self.field.p
        a = self._a.astype(object)
        m, n = a.shape
        pivots: list[tuple[int, int]] = []  # (row, col)
        r = 0
        for j in range(n):
            if r == m:
                break
            nz = [i for i in range(r, m) if a[i, j] != 0]
            if not nz:
                continue
            if nz[0] != r:
                a[[r, nz[0]]] = a[[nz[0], r]]
            inv = pow(int(a[r, j]), -1, p)
            a[r] = a[r] * inv % p
            for i in range(m):
                if i != r and a[i, j] != 0:
                    a[i] = (a[i] - a[i, j] * a[r]) % p
            pivots.append((r, j))
            r += 1
        pivot_cols = [j for _, j in pivots]
        free_cols = [j for j in range(n) if j not in pivot_cols]
        basis: list[list[int]] = []
        for fc in free_cols:
            v = [0] * n
            v[fc] = 1
            for pr, pc in pivots:
                v[pc] = int(-a[pr, fc] % p)
            lead = next(x for x in v if x != 0)
            if lead != 1:
                inv = pow(lead, -1, p)
                v = [x * inv % p for x in v]
            basis.append(v)
        return basis

"""Interpolation condition matrices at random points and the Monte Carlo
effective-dimension oracle.

"Points in general position" is realized probabilistically: base points
are drawn uniformly from an affine chart over F_p.  The rank of the
stacked condition matrix at random points is a lower bound for the rank
at general points, so h0 = monomials - rank is an upper bound for the
general h0, never an undercount; with the default p = 2**61 - 1 a rank
drop requires the random points to hit a fixed hypersurface of modest
degree, which happens with probability on the order of 1e-16 per trial.
Taking the maximum rank over independent trials makes the error
one-sided and vanishingly small.

Vanishing to order m at a point is imposed through iterated partial
derivatives: all derivatives of order < m vanish.  This encodes the
scheme-theoretic fat point correctly because p exceeds the degree, so
the falling-factorial coefficients of the derivatives are nonzero
residues.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gfprime import DEFAULT_PRIME, PrimeField, PrimeFieldMatrix, mulmod_vec
from .syscore import FatPointSystem, edim_expected, residual, vdim

__all__ = [
    "SamplePoint",
    "RankReport",
    "OnQuadric",
    "DegenerateConfigurationError",
    "QuadricSampleError",
    "monomial_exponents",
    "condition_rows",
    "effective_dim",
    "quadric_through",
    "on_quadric",
    "fixed_component_test",
]

SamplePoint = tuple[int, ...]


class DegenerateConfigurationError(RuntimeError):
    """The sampled points failed a genericity requirement (resample)."""


class QuadricSampleError(RuntimeError):
    """Too many consecutive failures while sampling a point on a quadric."""

    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(
            f"no point on the quadric found after {attempts} random lines; "
            "the prime may be too small or the quadric degenerate"
        )


@dataclass(frozen=True)
class OnQuadric:
    """Constrains a sample point to lie on the quadric through the points
    at the given indices (which must be drawn earlier and unconstrained)."""

    through: tuple[int, ...]


@dataclass(frozen=True)
class RankReport:
    """Outcome of a Monte Carlo effective-dimension run.

    rank is the maximum over trials; h0 = monomials - rank bounds the
    dimension of the system from above, and `special` compares the
    resulting effective dimension against the expected one.  `analytic`
    marks verdicts short-circuited without a matrix (multiplicity above
    degree + 1 empties the system identically).
    """

    system: FatPointSystem
    monomials: int
    conditions: int
    rank: int
    h0: int
    edim_actual: int
    vdim: int
    edim_expected: int
    special: bool
    trials: int
    seed: int
    prime: int
    analytic: bool = False


@lru_cache(maxsize=None)
def monomial_exponents(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of monomials of degree <= d in n variables.

    Graded lexicographic order: total degree ascending, and inside one
    degree the lexicographically larger exponent first, so (n=2, d=1)
    gives (0,0), (1,0), (0,1).  Length is C(d+n, n).
    """
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")

    def descending(total: int, length: int):
        if length == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in descending(total - first, length - 1):
                yield (first,) + rest

    out: list[tuple[int, ...]] = []
    for total in range(d + 1):
        out.extend(descending(total, n))
    assert len(out) == math.comb(d + n, n)
    return tuple(out)


@lru_cache(maxsize=None)
def _exponent_columns(n: int, d: int) -> tuple[np.ndarray, ...]:
    """Per-coordinate exponent arrays over the monomial column order."""
    exps = np.array(monomial_exponents(n, d), dtype=np.intp).reshape(-1, n)
    return tuple(np.ascontiguousarray(exps[:, j]) for j in range(n))


def _derivative_table(x: int, max_order: int, d: int, p: int) -> np.ndarray:
    """Table V[a, t] = (d/dx)^a applied to x^t, evaluated at x, mod p.

    That is falling(t, a) * x^(t-a) for t >= a and 0 below; the falling
    factorials are nonzero mod p because p > d.
    """
    powers = [1] * (d + 1)
    for t in range(1, d + 1):
        powers[t] = powers[t - 1] * x % p
    table = np.zeros((max_order + 1, d + 1), dtype=np.uint64)
    for a in range(max_order + 1):
        for t in range(a, d + 1):
            table[a, t] = math.perm(t, a) % p * powers[t - a] % p
    return table


def _condition_block(pt: SamplePoint, m: int, n: int, d: int, p: int) -> np.ndarray:
    """The C(m+n-1, n) x C(d+n, n) block of derivative conditions at pt.

    Rows follow the graded-lex order of derivative multi-indices of
    order < m; columns follow monomial_exponents(n, d).
    """
    alphas = np.array(monomial_exponents(n, m - 1), dtype=np.intp).reshape(-1, n)
    cols = _exponent_columns(n, d)
    tables = [_derivative_table(pt[j], m - 1, d, p) for j in range(n)]
    block = tables[0][alphas[:, 0]][:, cols[0]]
    for j in range(1, n):
        block = mulmod_vec(block, tables[j][alphas[:, j]][:, cols[j]], p)
    return block


def condition_rows(pt: SamplePoint, m: int, n: int, d: int) -> list[list[int]]:
    """Rows imposing vanishing to order m at pt on degree-d forms,
    over the default prime field unless pt uses a smaller one implicitly.

    Exposed in list form for inspection; the matrix pipeline uses the
    array-valued builder directly.
    """
    if not 1 <= m <= d + 1:
        raise ValueError(f"need 1 <= m <= d+1, got m={m}, d={d}")
    p = DEFAULT_PRIME
    block = _condition_block(tuple(c % p for c in pt), m, n, d, p)
    return [[int(x) for x in row] for row in block]


def _draw_points(
    count: int,
    n: int,
    field: PrimeField,
    rng: np.random.Generator,
    constraints,
) -> list[SamplePoint]:
    pts: list[SamplePoint] = []
    quadrics: dict[tuple[int, ...], tuple[int, ...]] = {}
    for i in range(count):
        c = constraints[i] if constraints is not None and i < len(constraints) else None
        if c is None:
            coords = rng.integers(0, field.p, size=n, dtype=np.uint64)
            pts.append(tuple(int(x) for x in coords))
        elif isinstance(c, OnQuadric):
            if n != 3:
                raise ValueError("quadric constraints apply to points in P^3")
            if any(t >= i for t in c.through):
                raise ValueError("a quadric constraint may only reference earlier points")
            key = tuple(c.through)
            if key not in quadrics:
                quadrics[key] = quadric_through([pts[t] for t in key], field)
            pts.append(on_quadric(quadrics[key], rng, field))
        else:
            raise TypeError(f"unknown constraint {c!r}")
    return pts


def _system_matrix(
    sys: FatPointSystem, pts: list[SamplePoint], field: PrimeField
) -> PrimeFieldMatrix:
    n, d, p = sys.ambient_dim, sys.degree, field.p
    blocks = [
        _condition_block(pts[i], m, n, d, p)
        for i, m in enumerate(sys.mults)
        if m >= 1
    ]
    return PrimeFieldMatrix.from_residues(field, np.vstack(blocks))


def effective_dim(
    sys: FatPointSystem,
    *,
    trials: int = 3,
    seed: int | None = None,
    prime: int = DEFAULT_PRIME,
    constraints=None,
) -> RankReport:
    """Monte Carlo effective dimension of a fat-point system.

    Each trial draws one fresh point per base point (honoring the
    optional per-point constraints), stacks the derivative conditions
    and computes the exact rank over F_p; the report keeps the maximum
    rank across trials.  The verdict is one-sided: h0 can only ever be
    overcounted, so special = true is wrong only with probability about
    (degree of the relevant degeneracy locus) / p per trial.

    The same (seed, trials, prime, constraints) produce the same points
    for any system with the same number of base points, which is what
    makes fixed-component comparisons meaningful.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    field = PrimeField(prime)
    if prime <= sys.degree:
        raise ValueError(f"prime {prime} must exceed the degree {sys.degree}")
    if seed is None:
        seed = secrets.randbits(64)
    n, d = sys.ambient_dim, sys.degree
    monomials = sys.monomial_count()
    conditions = sys.condition_count()
    v = vdim(sys)
    expected = edim_expected(sys)
    analytic = any(m > d + 1 for m in sys.mults)
    if analytic:
        rank = monomials  # a multiplicity above d+1 kills every form
    elif conditions == 0:
        rank = 0
    else:
        rank = 0
        for child in np.random.SeedSequence(seed).spawn(trials):
            rng = np.random.default_rng(child)
            pts = _draw_points(sys.npoints, n, field, rng, constraints)
            rank = max(rank, _system_matrix(sys, pts, field).rank())
    h0 = monomials - rank
    if h0 < max(v + 1, 0):
        raise AssertionError(
            f"rank {rank} exceeds the virtual bound for {sys}: h0={h0} < {max(v + 1, 0)}"
        )
    edim_actual = h0 - 1
    return RankReport(
        system=sys,
        monomials=monomials,
        conditions=conditions,
        rank=rank,
        h0=h0,
        edim_actual=edim_actual,
        vdim=v,
        edim_expected=expected,
        special=edim_actual > expected,
        trials=trials,
        seed=seed,
        prime=prime,
        analytic=analytic,
    )


_QUADRIC_EXPS = monomial_exponents(3, 2)  # 10 monomials of degree <= 2


def _eval_quadric(q, pt: SamplePoint, p: int) -> int:
    total = 0
    for coeff, e in zip(q, _QUADRIC_EXPS):
        term = coeff
        for c, ei in zip(pt, e):
            for _ in range(ei):
                term = term * c % p
        total = (total + term) % p
    return total


def quadric_through(points: list[SamplePoint], field: PrimeField) -> tuple[int, ...]:
    """Coefficients of the quadric through nine points of P^3 (affine chart).

    The 9 x 10 evaluation matrix of the degree <= 2 monomials must have a
    one-dimensional kernel; anything else means the points are in a
    degenerate configuration and the caller should resample.  The vector
    is normalized so its first nonzero coordinate is 1.
    """
    rows = []
    for pt in points:
        row = []
        for e in _QUADRIC_EXPS:
            term = 1
            for c, ei in zip(pt, e):
                for _ in range(ei):
                    term = term * c % field.p
            row.append(term)
        rows.append(row)
    kernel = PrimeFieldMatrix(field, rows).nullspace()
    if len(kernel) != 1:
        raise DegenerateConfigurationError(
            f"quadric through {len(points)} points has kernel dimension {len(kernel)}, expected 1"
        )
    return tuple(kernel[0])


def on_quadric(
    q,
    rng: np.random.Generator,
    field: PrimeField,
    *,
    max_attempts: int = 64,
    counter: dict | None = None,
) -> SamplePoint:
    """A random point on the quadric q, or QuadricSampleError.

    Draws a fresh random affine line, restricts q to it and solves the
    quadratic with the field square root; non-residue discriminants and
    degenerate (non-quadratic) restrictions are retried, about half of
    all lines succeeding.  When `counter` is given, counter["attempts"]
    records how many lines were tried.
    """
    p = field.p
    if all(int(c) % p == 0 for c in q):
        raise ValueError("the zero quadric has no well-defined point sampler")
    for attempt in range(1, max_attempts + 1):
        base = tuple(int(x) for x in rng.integers(0, p, size=3, dtype=np.uint64))
        direction = tuple(int(x) for x in rng.integers(0, p, size=3, dtype=np.uint64))
        # restrict to the line base + t*direction: a t^2 + b t + c
        a = 0
        for coeff, e in zip(q, _QUADRIC_EXPS):
            if sum(e) == 2:
                term = coeff
                for dcoord, ei in zip(direction, e):
                    for _ in range(ei):
                        term = term * dcoord % p
                a = (a + term) % p
        c = _eval_quadric(q, base, p)
        shifted = tuple((bb + dd) % p for bb, dd in zip(base, direction))
        b = (_eval_quadric(q, shifted, p) - a - c) % p
        if a == 0:
            continue
        disc = (b * b - 4 * a * c) % p
        root = field.sqrt(disc)
        if root is None:
            continue
        if int(rng.integers(0, 2)) == 1:
            root = (-root) % p
        t = (root - b) % p * field.inv(2 * a % p) % p
        pt = tuple((bb + t * dd) % p for bb, dd in zip(base, direction))
        if counter is not None:
            counter["attempts"] = attempt
        assert _eval_quadric(q, pt, p) == 0
        return pt
    raise QuadricSampleError(max_attempts)


def fixed_component_test(
    sys: FatPointSystem,
    fixed: FatPointSystem,
    *,
    trials: int = 3,
    seed: int | None = None,
    prime: int = DEFAULT_PRIME,
    constraints=None,
) -> bool:
    """Whether `fixed` divides every member of `sys`.

    Compares h0(sys) with h0 of the residual system on identical point
    draws (same seed, same constraints).  Multiplication by the fixed
    form embeds the residual into sys, so equal h0 means the embedding
    is onto and the fixed divisor splits off every member; a strictly
    larger h0 on the sys side refutes divisibility.
    """
    if seed is None:
        seed = secrets.randbits(64)
    full = effective_dim(sys, trials=trials, seed=seed, prime=prime, constraints=constraints)
    rest = effective_dim(
        residual(sys, fixed), trials=trials, seed=seed, prime=prime, constraints=constraints
    )
    return full.h0 == rest.h0

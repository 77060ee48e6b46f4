"""Condition matrices at random points and the Monte Carlo rank oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from fatpoints.gfprime import DEFAULT_PRIME, PrimeField
from fatpoints.interp import (
    DegenerateConfigurationError,
    OnQuadric,
    QuadricSampleError,
    _draw_points,
    condition_rows,
    effective_dim,
    fixed_component_test,
    monomial_exponents,
    on_quadric,
    quadric_through,
)
from fatpoints.syscore import FatPointSystem, parse_system, residual


def test_monomial_order_is_graded_with_lex_inside_degrees():
    assert monomial_exponents(2, 1) == ((0, 0), (1, 0), (0, 1))
    assert monomial_exponents(2, 2) == (
        (0, 0),
        (1, 0),
        (0, 1),
        (2, 0),
        (1, 1),
        (0, 2),
    )
    exps = monomial_exponents(3, 9)
    assert len(exps) == 220
    assert len(monomial_exponents(2, 12)) == 91
    degrees = [sum(e) for e in exps]
    assert degrees == sorted(degrees)
    for a, b in zip(exps, exps[1:]):
        if sum(a) == sum(b):
            assert a > b  # lexicographically descending inside a degree


def test_monomial_exponents_validation():
    with pytest.raises(ValueError):
        monomial_exponents(0, 3)
    with pytest.raises(ValueError):
        monomial_exponents(2, -1)


def test_condition_rows_are_iterated_derivatives():
    x, y = 5, 11
    rows = condition_rows((x, y), 2, 2, 2)
    # columns follow 1, x, y, x^2, xy, y^2; rows follow value, d/dx, d/dy
    assert rows[0] == [1, x, y, x * x, x * y, y * y]
    assert rows[1] == [0, 1, 0, 2 * x, y, 0]
    assert rows[2] == [0, 0, 1, 0, x, 2 * y]


def test_condition_rows_shapes_and_validation():
    rows = condition_rows((3, 5, 7), 3, 3, 4)
    assert len(rows) == 10
    assert len(rows[0]) == math.comb(7, 3)
    with pytest.raises(ValueError):
        condition_rows((1, 2), 0, 2, 4)
    with pytest.raises(ValueError):
        condition_rows((1, 2), 6, 2, 4)


def test_univariate_ranks_match_closed_form_sample():
    for d in range(5):
        for mults in [(1,), (2,), (3,), (1, 1), (2, 2), (3, 2, 1)]:
            rep = effective_dim(FatPointSystem(1, d, mults), trials=2, seed=77)
            assert rep.h0 == max(d + 1 - sum(mults), 0), (d, mults)


def test_report_fields_are_coherent():
    rep = effective_dim(parse_system("L2(6,1^2,2^8)"), seed=4)
    assert rep.monomials == 28
    assert rep.conditions == 26
    assert rep.rank == 26
    assert rep.h0 == 2
    assert rep.edim_actual == 1
    assert rep.vdim == 1
    assert rep.edim_expected == 1
    assert not rep.special
    assert rep.trials == 3
    assert rep.seed == 4
    assert rep.prime == DEFAULT_PRIME
    assert not rep.analytic


def test_same_seed_reproduces_report():
    s = parse_system("L3(5,4,2^8)")
    a = effective_dim(s, seed=123)
    b = effective_dim(s, seed=123)
    assert a == b


def test_seed_is_generated_and_echoed_when_omitted():
    rep = effective_dim(parse_system("L2(2,1)"))
    assert 0 <= rep.seed < 2**64
    again = effective_dim(parse_system("L2(2,1)"), seed=rep.seed)
    assert again.rank == rep.rank


def test_more_trials_never_lower_the_rank():
    s = parse_system("L2(9,2^2,3^8)")
    r1 = effective_dim(s, trials=1, seed=9).rank
    r3 = effective_dim(s, trials=3, seed=9).rank
    assert r3 >= r1


def test_multiplicity_above_degree_short_circuits():
    rep = effective_dim(FatPointSystem(2, 2, (5,)), seed=1)
    assert rep.analytic
    assert rep.rank == rep.monomials == 6
    assert rep.h0 == 0


def test_no_conditions_means_full_space():
    rep = effective_dim(FatPointSystem(2, 3, ()), seed=1)
    assert rep.h0 == 10
    assert rep.rank == 0
    rep = effective_dim(FatPointSystem(2, 3, (0, 0)), seed=1)
    assert rep.h0 == 10


def test_parameter_validation():
    s = parse_system("L2(4,2)")
    with pytest.raises(ValueError):
        effective_dim(s, trials=0, seed=1)
    with pytest.raises(ValueError):
        effective_dim(s, prime=3, seed=1)  # prime must exceed the degree
    with pytest.raises(ValueError):
        effective_dim(s, prime=15, seed=1)


def test_quadric_recovery_from_points_on_a_known_quadric():
    p = 101
    field = PrimeField(p)
    rng = np.random.default_rng(20)
    pts = []
    while len(pts) < 9:
        t, s = (int(v) for v in rng.integers(0, p, size=2))
        pt = (t, s, t * s % p)
        if pt not in pts:
            pts.append(pt)
    coeffs = quadric_through(pts, field)
    # monomial order for degree <= 2 in three variables:
    # 1, x, y, z, x^2, xy, xz, y^2, yz, z^2 -- the surface is z = x*y,
    # normalized so the first nonzero coefficient (z) is 1
    expected = [0, 0, 0, 1, 0, p - 1, 0, 0, 0, 0]
    assert list(coeffs) == expected


def test_quadric_through_rejects_degenerate_configurations():
    p = 101
    field = PrimeField(p)
    rng = np.random.default_rng(3)
    pts = [tuple(int(v) for v in rng.integers(0, p, size=3)) for _ in range(8)]
    pts.append(pts[0])  # repeated point drops the rank
    with pytest.raises(DegenerateConfigurationError):
        quadric_through(pts, field)


def test_on_quadric_lands_on_the_surface_and_reports_attempts():
    p = 101
    field = PrimeField(p)
    rng = np.random.default_rng(5)
    pts = [tuple(int(v) for v in rng.integers(0, p, size=3)) for _ in range(9)]
    q = quadric_through(pts, field)
    counter: dict = {}
    pt = on_quadric(q, np.random.default_rng(7), field, counter=counter)
    total = 0
    exps = monomial_exponents(3, 2)
    for c, e in zip(q, exps):
        term = c
        for coord, power in zip(pt, e):
            term = term * pow(coord, power, p) % p
        total = (total + term) % p
    assert total == 0
    assert counter["attempts"] >= 2  # this seed rejects at least one line


def test_on_quadric_gives_up_after_max_attempts():
    field = PrimeField(101)
    q = tuple([0, 0, 0, 1] + [0] * 6)  # the plane z = 0 counts as a quadric here
    with pytest.raises(QuadricSampleError) as info:
        on_quadric(q, np.random.default_rng(1), field, max_attempts=0)
    assert info.value.attempts == 0
    with pytest.raises(ValueError):
        on_quadric((0,) * 10, np.random.default_rng(1), field)


def test_fixed_component_detection():
    sys9 = parse_system("L3(9,6,4^8)")
    quad = parse_system("L3(2,1,1^8)")
    assert fixed_component_test(sys9, quad, seed=11)
    plane = FatPointSystem(3, 1, (1,) + (0,) * 8)
    assert not fixed_component_test(parse_system("L3(3,3,1^8)"), plane, seed=11)
    assert not fixed_component_test(parse_system("L3(3,3,1^8)"), quad, seed=11)


def test_constrained_points_share_the_free_prefix():
    field = PrimeField(DEFAULT_PRIME)
    free = _draw_points(9, 3, field, np.random.default_rng(31), None)
    cons = (None,) * 9 + (OnQuadric(through=tuple(range(9))),)
    mixed = _draw_points(10, 3, field, np.random.default_rng(31), cons)
    assert mixed[:9] == free
    q = quadric_through(free, field)
    last = mixed[9]
    exps = monomial_exponents(3, 2)
    total = 0
    for c, e in zip(q, exps):
        term = c
        for coord, power in zip(last, e):
            term = term * pow(coord, power, DEFAULT_PRIME) % DEFAULT_PRIME
        total = (total + term) % DEFAULT_PRIME
    assert total == 0


def test_constraint_validation():
    s = FatPointSystem(3, 3, (1, 1))
    with pytest.raises(ValueError):
        effective_dim(s, seed=1, constraints=(OnQuadric(through=(0,)), None))
    with pytest.raises(ValueError):
        effective_dim(
            FatPointSystem(2, 3, (1, 1)), seed=1, constraints=(None, OnQuadric(through=(0,)))
        )
    with pytest.raises(TypeError):
        effective_dim(s, seed=1, constraints=("bad", None))


def test_peeling_with_contact_points_matches_general_counts():
    on_q = OnQuadric(through=tuple(range(9)))
    ext = FatPointSystem(3, 7, (5,) + (3,) * 8 + (1,))
    quad10 = FatPointSystem(3, 2, (1,) * 10)
    cons = (None,) * 9 + (on_q,)
    assert fixed_component_test(ext, quad10, seed=13, constraints=cons)
    rep = effective_dim(residual(ext, quad10), seed=13, constraints=cons)
    assert rep.h0 == 4


def test_h0_never_undershoots_the_virtual_bound():
    rng = np.random.default_rng(8)
    for _ in range(40):
        d = int(rng.integers(0, 7))
        r = int(rng.integers(0, 5))
        mults = tuple(int(x) for x in rng.integers(1, 4, size=r))
        rep = effective_dim(FatPointSystem(2, d, mults), trials=1, seed=int(rng.integers(2**32)))
        assert rep.h0 >= max(rep.vdim + 1, 0)

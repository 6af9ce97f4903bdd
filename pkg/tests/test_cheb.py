import numpy as np
import pytest

from padua import cheb
from padua.cheb import (
    DegreeError,
    DomainError,
    basis_vector,
    cheb_t,
    cheb_t_norm,
    cheb_u,
    cospi_frac,
    t_norm_lattice,
    t_norm_values,
    u_values,
)

import oracles

SQRT2 = np.sqrt(2.0)


def test_first_kind_frozen_values():
    assert cheb_t(0, 0.3) == 1.0
    assert cheb_t(3, np.cos(np.pi / 9)) == pytest.approx(0.5, abs=1e-14)
    assert cheb_t(2, -0.5) == pytest.approx(-0.5, abs=1e-14)


def test_second_kind_frozen_values():
    assert cheb_u(1, 0.25) == pytest.approx(0.5, abs=1e-14)
    assert cheb_u(3, 1.0) == 4.0
    assert cheb_u(2, 0.0) == pytest.approx(-1.0, abs=1e-14)


def test_second_kind_boundary_limits():
    for k in range(9):
        assert cheb_u(k, 1.0) == pytest.approx(k + 1.0, abs=1e-12)
        assert cheb_u(k, -1.0) == pytest.approx((k + 1.0) * (-1.0) ** k, abs=1e-12)


def test_normalized_frozen_values():
    assert cheb_t_norm(0, 0.9) == 1.0
    assert cheb_t_norm(1, 0.5) == pytest.approx(SQRT2 * 0.5, abs=1e-15)
    assert cheb_t_norm(2, 0.0) == pytest.approx(-SQRT2, abs=1e-15)


def test_cosine_identity_sweep(rng):
    theta = rng.uniform(0.0, np.pi, 1000)
    x = np.cos(theta)
    for k in range(65):
        assert np.max(np.abs(cheb_t(k, x) - np.cos(k * theta))) <= 1e-12


def test_three_term_recurrence_residual(rng):
    x = rng.uniform(-1.0, 1.0, 500)
    for k in range(1, 64):
        resid = cheb_t(k + 1, x) - 2.0 * x * cheb_t(k, x) + cheb_t(k - 1, x)
        assert np.max(np.abs(resid)) <= 1e-12


def test_matches_recurrence_oracle(rng):
    x = rng.uniform(-1.0, 1.0, 200)
    for k in (0, 1, 2, 5, 11, 30):
        assert np.allclose(cheb_t(k, x), oracles.cheb_t_rec(k, x), atol=1e-11)
        assert np.allclose(cheb_u(k, x), oracles.cheb_u_rec(k, x), atol=5e-10)


def test_bounded_on_interval():
    x = np.linspace(-1.0, 1.0, 2001)
    for k in (1, 7, 32, 64):
        assert np.max(np.abs(cheb_t(k, x))) <= 1.0 + 1e-14


def test_domain_rejection():
    with pytest.raises(DomainError):
        cheb_t(3, 1.0000001)
    with pytest.raises(DomainError):
        cheb_u(3, -1.5)
    with pytest.raises(DomainError):
        basis_vector(2, (0.0, 2.0))


def test_degree_cap():
    assert cheb_t(cheb.MAX_DEGREE, 0.5) == pytest.approx(
        np.cos(cheb.MAX_DEGREE * np.arccos(0.5))
    )
    with pytest.raises(DegreeError):
        cheb_t(cheb.MAX_DEGREE + 1, 0.5)
    with pytest.raises(DegreeError):
        cheb_t(-1, 0.5)


def test_basis_vector_trivial_cases():
    assert np.array_equal(basis_vector(0, (0.2, -0.7)), [1.0])
    assert np.allclose(basis_vector(1, (0.0, 0.0)), [0.0, 0.0], atol=1e-15)


def test_basis_vector_derived_value():
    # entries are products of the normalized 1-D values; cross-checked
    # against the recurrence oracle
    got = basis_vector(2, (0.0, -0.5))
    expect = [-SQRT2, 0.0, -SQRT2 / 2.0]
    assert np.allclose(got, expect, atol=1e-14)
    oracle = [
        oracles.t_norm_rec(2 - j, 0.0) * oracles.t_norm_rec(j, -0.5) for j in range(3)
    ]
    assert np.allclose(got, oracle, atol=1e-14)


def test_basis_vector_length_and_batch(rng):
    pts = rng.uniform(-1, 1, (2, 7))
    vals = basis_vector(5, (pts[0], pts[1]))
    assert vals.shape == (6, 7)
    one = basis_vector(5, (pts[0][3], pts[1][3]))
    assert np.allclose(vals[:, 3], one, atol=1e-15)


def test_discrete_orthonormality():
    # tensor quadrature of P_a * P_b over the square, with enough nodes for
    # the degree-2n integrand
    from padua.analysis import tensor_quadrature

    for n in (3, 7):
        m = n + 2
        for a in range(n + 1):
            for b in range(n + 1):
                def product(u, v, a=a, b=b):
                    pa = basis_vector(n, (u, v))[a]
                    pb = basis_vector(n, (u, v))[b]
                    return pa * pb

                got = tensor_quadrature(product, m)
                expect = 1.0 if a == b else 0.0
                assert abs(got - expect) <= 1e-10


def test_lattice_tables_match_direct_evaluation():
    n = 12
    nums = np.arange(n + 1)
    x = cospi_frac(nums, n)
    table = t_norm_lattice(20, nums, n)
    direct = t_norm_values(20, x)
    assert np.max(np.abs(table - direct)) <= 1e-12


def test_u_values_table(rng):
    x = np.concatenate([rng.uniform(-1, 1, 64), [1.0, -1.0]])
    table = u_values(6, x)
    for k in range(7):
        assert np.allclose(table[k], oracles.cheb_u_rec(k, x), atol=1e-11)

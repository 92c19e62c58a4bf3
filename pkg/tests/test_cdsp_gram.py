"""Monomial Gram matrix against the quadrature energy oracle."""

import numpy as np
import pytest

from cauchydual import (
    ValidationError,
    cross_energy,
    gram_monomials,
    moment,
    quadrature_energy,
)


def _basis(n):
    f = np.zeros(n + 1, dtype=complex)
    f[n] = 1.0
    return f


def test_gram_closed_form(property_measures):
    for mu in property_measures:
        n = 8
        gram = gram_monomials(mu, n)
        for m in range(n):
            for ell in range(n):
                want = (1.0 if m == ell else 0.0) + min(m, ell) * moment(
                    mu, ell - m
                )
                assert abs(gram[m, ell] - want) <= 1e-13
        assert np.max(np.abs(gram - gram.conj().T)) <= 1e-13


def test_gram_positive_definite(property_measures):
    for mu in property_measures:
        eigs = np.linalg.eigvalsh(gram_monomials(mu, 12))
        assert eigs[0] > 0.9


def test_gram_size_validation(canonical_mu):
    with pytest.raises(ValidationError):
        gram_monomials(canonical_mu, 1)


def test_quadrature_level_validation(canonical_mu):
    with pytest.raises(ValidationError):
        quadrature_energy(_basis(1), canonical_mu, 0)
    with pytest.raises(ValidationError):
        quadrature_energy(_basis(1), canonical_mu, 4)


def test_quadrature_energy_constant_is_zero(canonical_mu):
    assert quadrature_energy(_basis(0), canonical_mu, 1) == 0.0


def test_quadrature_diag_spot(canonical_mu):
    # <z^n, z^n> - 1 = n * total mass; level-1 already resolves small n.
    gram = gram_monomials(canonical_mu, 5)
    for n in (1, 2, 3):
        exact = gram[n, n].real - 1.0
        got = quadrature_energy(_basis(n), canonical_mu, 1)
        assert abs(got - exact) <= 2e-2 * max(1.0, exact)


def test_quadrature_levels_tighten(canonical_mu):
    # Each level must meet its documented band; strict monotonicity is
    # not asserted because low-degree entries converge to the noise
    # floor already at level 1.
    exact = float(gram_monomials(canonical_mu, 5)[3, 3].real - 1.0)
    errs = [
        abs(quadrature_energy(_basis(3), canonical_mu, level) - exact)
        for level in (1, 2, 3)
    ]
    for err, band in zip(errs, (2e-2, 5e-3, 1e-3)):
        assert err <= band
    assert errs[2] <= errs[0] + 1e-12


def test_cross_energy_polarization_consistency(canonical_mu):
    rng = np.random.default_rng(41)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    self_pair = cross_energy(f, f, canonical_mu, 1)
    direct = quadrature_energy(f, canonical_mu, 1)
    assert abs(self_pair - direct) <= 1e-10 * (1.0 + abs(direct))


def test_cross_energy_matches_gram_offdiagonal(property_measures):
    # <z^n, z^m> - delta = cross energy of the monomials; spot pairs at
    # level 1 keep this test fast, the full sweep runs in acceptance.
    for mu in property_measures[:3]:
        gram = gram_monomials(mu, 5)
        for n, m in ((1, 1), (2, 1), (3, 2), (3, 3)):
            want = gram[n, m] - (1.0 if n == m else 0.0)
            got = cross_energy(_basis(n), _basis(m), mu, 1)
            assert abs(got - want) <= 2e-2 * max(1.0, abs(want))


def test_cross_energy_hermitian(canonical_mu):
    a = cross_energy(_basis(2), _basis(1), canonical_mu, 1)
    b = cross_energy(_basis(1), _basis(2), canonical_mu, 1)
    assert abs(a - np.conj(b)) <= 1e-10 * (1.0 + abs(a))

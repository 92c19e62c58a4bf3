"""Closed-form verdict, canonical frame, coupling scalar, and sweeps."""

import numpy as np
import pytest

from cauchydual import (
    ValidationError,
    canonical_frame,
    closed_form_test,
    coupling_determinant,
    make_measure,
    sweep_angle,
)

S_OFFDIAG = -230.719263940288
ROOT_PRODUCTS = (
    0.967575626606951 - 5.37631791548865j,
    0.967575626606951 + 5.37631791548865j,
)
COUPLING_DET = -0.13348007677575036


def test_counterexample_verdict(canonical_mu):
    res = closed_form_test(canonical_mu)
    assert res.verdict == "NotSubnormal"
    assert abs(res.s_offdiag - S_OFFDIAG) <= 1e-6 * abs(S_OFFDIAG)
    assert abs(res.s_offdiag.imag) <= 1e-6
    for got, want in zip(res.root_products, ROOT_PRODUCTS):
        assert abs(got - want) <= 1e-9
    assert len(res.citations) == 2


def test_single_atom_known_subnormal(single_mu):
    res = closed_form_test(single_mu)
    assert res.verdict == "KnownSubnormal"
    assert res.s_offdiag is None
    assert res.root_products == ()


def test_antipodal_known_subnormal(antipodal_mu):
    res = closed_form_test(antipodal_mu)
    assert res.verdict == "KnownSubnormal"


def test_three_atoms_inconclusive():
    mu = make_measure(
        [np.exp(0.2j), np.exp(1.9j), np.exp(4.0j)], [1.0, 0.7, 1.3]
    )
    res = closed_form_test(mu)
    assert res.verdict == "Inconclusive"
    assert res.s_offdiag is None


def test_small_angles_inconclusive():
    # Root products land on the ray [1, oo) for these separations, so
    # the ray criterion withholds judgement.
    for theta in (30.0, 45.0):
        point = np.exp(1j * np.deg2rad(theta))
        res = closed_form_test(make_measure([1.0 + 0j, point], [1.0, 1.0]))
        assert res.verdict == "Inconclusive"


def test_wide_angles_not_subnormal():
    for theta in (60.0, 90.0, 120.0, 165.0):
        point = np.exp(1j * np.deg2rad(theta))
        res = closed_form_test(make_measure([1.0 + 0j, point], [1.0, 1.0]))
        assert res.verdict == "NotSubnormal"


def test_verdict_rotation_invariant(canonical_mu):
    base = closed_form_test(canonical_mu)
    for phi in (np.pi / 7.0, np.pi / 3.0, 1.0):
        rot = np.exp(1j * phi)
        mu = make_measure([rot, 1j * rot], [1.0, 1.0])
        res = closed_form_test(mu)
        assert res.verdict == base.verdict
        assert abs(abs(res.s_offdiag) - abs(base.s_offdiag)) <= 1e-8 * abs(
            base.s_offdiag
        )
        for got, want in zip(res.root_products, base.root_products):
            assert abs(got - want) <= 1e-8


def test_verdict_reflection_invariant(canonical_mu):
    # Conjugating the measure conjugates the overlap sum, which is real.
    base = closed_form_test(canonical_mu)
    res = closed_form_test(make_measure([1.0 + 0j, -1j], [1.0, 1.0]))
    assert res.verdict == base.verdict
    assert abs(res.s_offdiag - base.s_offdiag) <= 1e-6 * abs(base.s_offdiag)


def test_verdict_weight_scaling(canonical_mu):
    for t in (0.5, 2.0):
        mu = make_measure([1.0 + 0j, 1j], [t, t])
        assert closed_form_test(mu).verdict == "NotSubnormal"


def test_canonical_frame_rotates_first_atom():
    mu = make_measure([np.exp(0.5j), np.exp(2.0j)], [1.5, 0.5])
    framed = canonical_frame(mu)
    assert framed.points[0] == 1.0 + 0j
    assert np.allclose(framed.weights, mu.weights)
    assert abs(framed.points[1] - np.exp(1.5j)) <= 1e-12


def test_canonical_frame_idempotent(canonical_mu):
    framed = canonical_frame(canonical_mu)
    again = canonical_frame(framed)
    assert np.max(np.abs(again.points - framed.points)) == 0.0


def test_coupling_determinant_regression(canonical_mu):
    got = coupling_determinant(canonical_mu)
    assert abs(got - COUPLING_DET) <= 1e-9 * abs(COUPLING_DET)
    assert abs(got.imag) <= 1e-9


def test_coupling_determinant_needs_two_atoms(single_mu):
    with pytest.raises(ValidationError):
        coupling_determinant(single_mu)


def test_sweep_basic_grid():
    rows = sweep_angle([30.0, 60.0, 90.0, 180.0])
    assert [r.theta_deg for r in rows] == [30.0, 60.0, 90.0, 180.0]
    assert rows[0].verdict.verdict == "Inconclusive"
    assert rows[1].verdict.verdict == "NotSubnormal"
    assert rows[2].verdict.verdict == "NotSubnormal"
    assert rows[3].verdict.verdict == "KnownSubnormal"
    for r in rows:
        assert r.error is None
        assert r.min_agler_n2 is not None
    assert rows[3].min_agler_n2 >= -1e-6


def test_sweep_out_of_range_angle_is_error_row():
    rows = sweep_angle([90.0, 181.0, 0.0])
    assert rows[0].error is None
    assert rows[1].error == "ValidationError"
    assert rows[1].verdict is None
    assert rows[1].min_agler_n2 is None
    assert rows[2].error == "ValidationError"


def test_sweep_small_angle_nonconvergence_row():
    # At 15 degrees the truncated dual misses the contraction gate at
    # the default size; the row must report the failure, not hide it.
    rows = sweep_angle([15.0], trunc=48)
    assert rows[0].error == "NonConvergence"
    rows = sweep_angle([15.0], trunc=96)
    assert rows[0].error is None
    assert rows[0].verdict.verdict == "Inconclusive"


def test_sweep_weights_forwarded():
    rows = sweep_angle([90.0], weights=(2.0, 0.5))
    assert rows[0].error is None
    assert rows[0].verdict.verdict == "NotSubnormal"

"""Shared fixtures: reference measures and small helpers."""

import numpy as np
import pytest

from cauchydual import make_measure, parse_measure


@pytest.fixture
def canonical_mu():
    """Unit masses at 1 and i (the reference counterexample)."""
    return parse_measure("1;i")


@pytest.fixture
def single_mu():
    return parse_measure("1")


@pytest.fixture
def antipodal_mu():
    return parse_measure("1;-1")


@pytest.fixture
def property_measures():
    """A spread of measures for property tests: varied k, weights, angles."""
    return [
        parse_measure("1"),
        parse_measure("1;i"),
        parse_measure("1;-1"),
        make_measure(
            [np.exp(0.3j), np.exp(2.1j)], [2.0, 0.5]
        ),
        make_measure(
            [np.exp(0.2j), np.exp(1.9j), np.exp(4.0j)], [1.0, 0.7, 1.3]
        ),
    ]

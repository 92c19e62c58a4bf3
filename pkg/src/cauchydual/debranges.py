"""Identification of D(mu) with a de Branges-Rovnyak space H(B).

The full kernel of D(mu) can be written as
``(q(z) conj(q(w)) - sum_{i,l} A[i,l] z^{i+1} conj(w)^{l+1}) /
(q(z) conj(q(w)) (1 - z conj(w)))`` for a Hermitian positive semidefinite
coefficient matrix ``A``.  Factoring ``A = P* P`` with ``P`` upper
triangular yields polynomials ``p_j`` and a Schur-class row
``B = (p_1/q, ..., p_k/q)`` whose de Branges-Rovnyak kernel coincides
with the D(mu) kernel.

``A`` is obtained by bivariate polynomial interpolation of the kernel
numerator; the leading row and column of the raw coefficient matrix must
vanish (that is the kernel normalization at the origin) and are deleted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cpoly import poly_eval
from .errors import NotPSD, ResidualTooLarge

__all__ = [
    "SchurIdentification",
    "compute_A",
    "cholesky_upper",
    "build_identification",
    "kernel_hb",
    "schur_row_eval",
]


def _numerator_expression(model):
    """Bivariate kernel numerator ``E(z, wb)`` as a callable.

    ``E(z, wb) = q(z) qc(wb) - p(z) pc(wb) / d * (1 + (1 - z wb) * S)``
    where ``qc, pc`` carry conjugated coefficients, and ``S`` is the
    double sum of conjugated Gram-inverse entries against simple poles at
    the atoms.  Polynomial in both arguments; ``wb`` stands for the
    conjugated second kernel variable.
    """
    pts = model.mu.points
    k = model.mu.k
    q = model.fact.q
    qc = np.conj(q)
    p = model.atom_poly
    pc = np.conj(p)
    d = model.fact.d
    op = model.o_prime
    binv_c = np.conj(model.b_inv)

    def expr(z, wb):
        s = 0j
        for r in range(k):
            for t in range(k):
                s += binv_c[r, t] / (
                    op[r] * np.conj(op[t]) * (z - pts[r]) * (wb - np.conj(pts[t]))
                )
        return poly_eval(q, z) * poly_eval(qc, wb) - poly_eval(p, z) * poly_eval(
            pc, wb
        ) / d * (1.0 + (1.0 - z * wb) * s)

    return expr


def compute_A(model):
    """Coefficient matrix of the de Branges-Rovnyak kernel numerator.

    Interpolates the bivariate numerator on a ``(k+1) x (k+1)`` node grid,
    solves for the coefficients of ``z^i * wb^j``, checks that the 0-row
    and 0-column vanish, validates the interpolant on an independent grid,
    and returns the Hermitian ``k x k`` block ``A[i, j] =`` coefficient of
    ``z^(i+1) * wb^(j+1)``.

    Parameters
    ----------
    model : DirichletModel

    Returns
    -------
    ndarray
        Hermitian positive semidefinite ``k x k`` matrix.

    Raises
    ------
    ResidualTooLarge
        If the 0-row/column fails to vanish, the independent-grid residual
        exceeds ``1e-8``, or Hermitian symmetry fails.
    NotPSD
        If the matrix has an eigenvalue below ``-1e-8 * trace``.
    """
    k = model.mu.k
    expr = _numerator_expression(model)

    radii = (0.3, 0.55, 0.8)
    nodes = np.array(
        [radii[j % 3] * np.exp(2j * np.pi * j / (k + 1)) for j in range(k + 1)]
    )
    vand = nodes[:, None] ** np.arange(k + 1)[None, :]
    emat = np.array([[expr(za, wb) for wb in nodes] for za in nodes])
    ahat = np.linalg.solve(vand, np.linalg.solve(vand, emat.T).T)

    edge = max(float(np.max(np.abs(ahat[0, :]))), float(np.max(np.abs(ahat[:, 0]))))
    if edge > 1e-8:
        raise ResidualTooLarge(
            f"kernel numerator has nonvanishing origin coefficients ({edge:.3e})"
        )

    check_radii = (0.45, 0.7, 0.9)
    check = np.array(
        [check_radii[j % 3] * np.exp(2j * np.pi * (j + 0.5) / (k + 2)) for j in range(k + 2)]
    )
    worst = 0.0
    scale = 1.0
    for za in check:
        zpow = za ** np.arange(k + 1)
        for wb in check:
            wpow = wb ** np.arange(k + 1)
            target = expr(za, wb)
            fit = zpow @ ahat @ wpow
            worst = max(worst, abs(fit - target))
            scale = max(scale, abs(target))
    if worst > 1e-8 * scale:
        raise ResidualTooLarge(
            f"interpolation residual {worst:.3e} exceeds 1e-8 * {scale:.3e}"
        )

    a = ahat[1:, 1:]
    herm = float(np.max(np.abs(a - a.conj().T)))
    if herm > 1e-10 * max(1.0, float(np.max(np.abs(a)))):
        raise ResidualTooLarge(f"coefficient matrix Hermitian defect {herm:.3e}")
    a = (a + a.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(a)
    trace = float(np.trace(a).real)
    if eigs[0] < -1e-8 * max(trace, 1.0):
        raise NotPSD(f"coefficient matrix min eigenvalue {eigs[0]:.3e}")
    return a


def cholesky_upper(a):
    """Upper Cholesky factor of a Hermitian PSD matrix: ``A = P* P``.

    ``P`` is upper triangular with real nonnegative diagonal.  Pivots
    below ``-1e-10 * trace`` raise; pivots within ``1e-10 * trace`` of
    zero produce a zero row (semidefinite rank deficiency).

    Parameters
    ----------
    a : ndarray
        Hermitian positive semidefinite matrix.

    Returns
    -------
    ndarray
        Upper-triangular ``P`` with ``P.conj().T @ P == a`` up to
        round-off.

    Raises
    ------
    NotPSD
        If a pivot is negative beyond tolerance.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    trace = max(float(np.trace(a).real), 1e-300)
    p = np.zeros((n, n), dtype=complex)
    for m in range(n):
        pivot = a[m, m].real - float(np.sum(np.abs(p[:m, m]) ** 2))
        if pivot < -1e-10 * trace:
            raise NotPSD(f"pivot {m} is negative: {pivot:.3e}")
        if pivot <= 1e-10 * trace:
            continue
        p[m, m] = np.sqrt(pivot)
        if m + 1 < n:
            p[m, m + 1 :] = (
                a[m, m + 1 :] - p[:m, m].conj() @ p[:m, m + 1 :]
            ) / p[m, m].real
    return p


@dataclass(frozen=True)
class SchurIdentification:
    """The H(B) data identifying D(mu) with a de Branges-Rovnyak space.

    Attributes
    ----------
    A : ndarray
        Hermitian PSD coefficient matrix of the kernel numerator.
    P : ndarray
        Upper-triangular factor with ``A = P* P`` and real nonnegative
        diagonal.
    p_polys : tuple of ndarray
        Row polynomials ``p_j(z) = sum_i P[j, i] * z**(i+1)`` (ascending
        coefficients, zero constant term).
    q : ndarray
        The shared monic denominator polynomial from the factorization.
    """

    A: np.ndarray
    P: np.ndarray
    p_polys: tuple
    q: np.ndarray


def build_identification(model):
    """Assemble the :class:`SchurIdentification` for a model.

    Parameters
    ----------
    model : DirichletModel

    Returns
    -------
    SchurIdentification

    Raises
    ------
    NotPSD, ResidualTooLarge
        Propagated from :func:`compute_A` / :func:`cholesky_upper`, or if
        the Cholesky reconstruction drifts beyond ``1e-9`` relative.
    """
    a = compute_A(model)
    p = cholesky_upper(a)
    amax = max(float(np.max(np.abs(a))), 1e-300)
    recon = float(np.max(np.abs(p.conj().T @ p - a)))
    if recon > 1e-9 * amax:
        raise ResidualTooLarge(f"Cholesky reconstruction residual {recon:.3e}")
    k = a.shape[0]
    polys = tuple(np.concatenate(([0j], p[j, :])) for j in range(k))
    return SchurIdentification(A=a, P=p, p_polys=polys, q=model.fact.q)


def kernel_hb(ident, z, w):
    """de Branges-Rovnyak kernel of the identified space.

    Evaluates ``(q(z) conj(q(w)) - sum_{i,l} A[i,l] z^(i+1) conj(w)^(l+1))
    / (q(z) conj(q(w)) (1 - z conj(w)))``.  The numerator is driven by the
    coefficient matrix ``A`` directly, which pins the orientation of the
    bivariate expansion.

    Parameters
    ----------
    ident : SchurIdentification
    z, w : complex
        Points in the open unit disk.

    Returns
    -------
    complex
    """
    k = ident.A.shape[0]
    wb = np.conj(w)
    zpow = z ** np.arange(1, k + 1)
    wpow = wb ** np.arange(1, k + 1)
    qz = poly_eval(ident.q, z)
    qwb = poly_eval(np.conj(ident.q), wb)
    num = qz * qwb - zpow @ ident.A @ wpow
    return complex(num / (qz * qwb * (1.0 - z * wb)))


def schur_row_eval(ident, z):
    """Values of the Schur row identifying the space with H(B).

    The row components are ``b_j(z) = conj-coefficient(p_j)(z) / q(z)``:
    conjugating the ``P`` coefficients is what makes ``sum_j b_j(z) *
    conj(b_j(w))`` reproduce the kernel numerator quadratic form in
    ``A`` and keeps ``sum_j |b_j(z)|^2 <= 1`` on the disk (the literal
    rows of ``P`` satisfy neither).  ``b_j(0) = 0`` by construction.

    Parameters
    ----------
    ident : SchurIdentification
    z : complex

    Returns
    -------
    ndarray
        The ``k`` component values.
    """
    qz = poly_eval(ident.q, z)
    return np.array([poly_eval(np.conj(pj), z) / qz for pj in ident.p_polys])

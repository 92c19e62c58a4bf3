"""Reproducing kernels: direct construction versus the H(B) normal form.

The kernel of the weighted Dirichlet space splits into a multiplier part
K_tilde and a finite-rank boundary part K_hat.  The same kernel also has
a de Branges-Rovnyak normal form driven by a positive matrix A and its
Cholesky factor.  This script builds both and checks they agree, and
verifies the reproducing property against a numerically projected
kernel section.
"""

import numpy as np

from cauchydual import (
    build_identification,
    build_model,
    gram_monomials,
    kernel_full,
    kernel_hat,
    kernel_hb,
    kernel_tilde,
    parse_measure,
    poly_eval,
    schur_row_eval,
)

mu = parse_measure("1;i")
model = build_model(mu)
ident = build_identification(model)

# Normalization: K(z, 0) = 1 for every z.
for z in (0.0 + 0j, 0.3 + 0.1j, -0.52 + 0.4j):
    print(f"K({z}, 0) =", kernel_full(model, z, 0.0 + 0j))

# The two constructions agree at arbitrary disk points.
z, w = 0.31 + 0.22j, 0.12 - 0.4j
print("\nK_tilde =", kernel_tilde(model, z, w))
print("K_hat   =", kernel_hat(model, z, w))
print("K       =", kernel_full(model, z, w))
print("K_HB    =", kernel_hb(ident, z, w))
print("|K - K_HB| =", abs(kernel_full(model, z, w) - kernel_hb(ident, z, w)))

# The identification data: A is positive semidefinite, P is its
# upper-triangular factor, and the row (p_j / q) is a Schur row:
# sum_j |p_j(z)/q(z)|^2 <= 1 on the disk.
print("\nA =", np.array2string(ident.A, precision=8))
print("P =", np.array2string(ident.P, precision=8))
for z in (0.9 + 0j, -0.6 + 0.7j, 0.05 - 0.9j):
    row = schur_row_eval(ident, z)
    print(f"sum_j |p_j/q|^2 at {z}: {float(np.sum(np.abs(row) ** 2)):.6f}")

# Reproducing property: <f, K(., lam)> = f(lam).  Expand K(., lam) in
# monomials by projecting onto a circle grid, then pair with f through
# the monomial Gram matrix.
lam = 0.37 - 0.21j
degree, terms = 40, 128
rho = 0.7
theta = 2.0 * np.pi * np.arange(terms) / terms
ring = rho * np.exp(1j * theta)
kvals = np.array([kernel_full(model, zz, lam) for zz in ring])
coeffs = np.array(
    [np.mean(kvals * rho ** (-n) * np.exp(-1j * n * theta)) for n in range(degree)]
)
gram = gram_monomials(mu, degree)
f = np.array([1.0, -0.5 + 0.25j, 0.0, 0.7j, 0.11])
fpad = np.zeros(degree, dtype=complex)
fpad[: f.size] = f
# Pair in the monomial basis: <z^m, z^n> = gram[m, n].
pairing = fpad @ gram @ np.conj(coeffs)
print("\n<f, K(., lam)> =", pairing)
print("f(lam)         =", poly_eval(f, lam))
print("difference     =", abs(pairing - poly_eval(f, lam)))

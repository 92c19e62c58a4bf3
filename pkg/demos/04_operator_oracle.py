"""Finite sections of the shift corroborate the closed-form verdict.

The shift on the weighted Dirichlet space is a 2-isometry; its Cauchy
dual is a contraction.  Truncating the shift to the first N basis
vectors of the kernel-orthonormal basis gives matrices whose interior
blocks certify the operator identities numerically: truncation corrupts
the last rows of any product involving powers, so each figure discards
an edge margin.  Subnormality of the dual would force every Agler
defect form to stay positive semidefinite; the order-6 form goes
decisively negative for the reference measure, independently of the
truncation size.
"""

import numpy as np

from cauchydual import (
    agler_min_eig,
    build_truncation,
    cauchy_dual,
    hyperexpansivity_max_eig,
    parse_measure,
    two_isometry_defect,
)

mu = parse_measure("1;i")

for n in (48, 64, 96):
    w = build_truncation(mu, n)
    keep = w.N - w.margin
    dual = cauchy_dual(w)
    print(f"N = {n}")
    print("  shift norm bound:", w.norm_T)
    print("  2-isometry defect (interior):", two_isometry_defect(w))
    print("  dual interior norm:", np.linalg.norm(dual[:keep, :keep], 2))
    curve = [agler_min_eig(dual, k, w.margin) for k in range(1, 7)]
    print("  Agler min eigenvalues n=1..6:", ["%.6e" % v for v in curve])
    hyper = [hyperexpansivity_max_eig(w, k) for k in (2, 3, 4)]
    print("  expansive max eigenvalues n=2..4:", ["%.3e" % v for v in hyper])

# The n = 6 plateau at -1.2033e-02 across all three sizes is the
# numerical signature of the closed-form NotSubnormal verdict: a
# subnormal contraction satisfies every order of the Agler positivity
# hierarchy, and this one provably stops between orders 5 and 6.

# For contrast, the antipodal measure (known subnormal dual) keeps the
# whole hierarchy nonnegative up to rounding.
mu2 = parse_measure("1;-1")
w2 = build_truncation(mu2, 64)
dual2 = cauchy_dual(w2)
curve2 = [agler_min_eig(dual2, k, w2.margin) for k in range(1, 7)]
print("\nantipodal Agler min eigenvalues n=1..6:", ["%.3e" % v for v in curve2])

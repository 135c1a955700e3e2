"""The volume mean-value identity on admissible balls.

For any solution of the Helmholtz equation and any ball inside its
domain, the volume mean over the ball equals a_m(lambda r) times the
center value.  We check it with spectral quadrature for several fields,
including a radius past the kernel's first zero where both sides go
negative, and a ball so small the identity collapses to continuity.
"""

import numpy as np

from helmholtz_means import (
    check_mean_value_formula,
    plane_wave,
    radial_solution,
)

cases = [
    ("radial field, m=2, lam*r = 1", radial_solution(2, 1.0, [0, 0]), [0, 0], 1.0),
    ("plane wave,   m=2, lam*r = 1", plane_wave(2, 1.0, [1, 0], 0.0), [0, 0], 1.0),
    ("plane wave,   m=3, lam*r = 1.5", plane_wave(3, 1.0, [0, 0, 1], 0.4), [0, 0, 0.2], 1.5),
    ("radial field, m=2, lam*r = 4  (kernel negative)", radial_solution(2, 2.0, [0, 0]), [0, 0], 2.0),
    ("plane wave,   m=2, r = 1e-3   (shrinking ball)", plane_wave(2, 1.0, [0, 1], 0.3), [0.4, 0.1], 1e-3),
]

print("a_m(lambda r) * u(x)  vs  M(u, B_r(x)):\n")
for label, u, x, r in cases:
    rep = check_mean_value_formula(u, np.asarray(x, dtype=float), r)
    print(f"{label}")
    print(
        f"   lhs = {rep.lhs:+.12f}   rhs = {rep.rhs:+.12f}"
        f"   residual = {rep.residual:+.2e}   -> {rep.verdict}"
    )
print("\nboth sides negative past j_(m/2,1); the identity itself never budges.")

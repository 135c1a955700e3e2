"""The two mean-value kernels, side by side.

a_m(t) ties a Helmholtz solution's value at a ball's center to its
volume mean over that ball; it starts at 1, dips, and oscillates about
zero, first crossing at the Bessel zero j_{m/2,1}.  Its modified-equation
sibling b_m(t) starts at 1 and climbs monotonically.  That contrast is
the whole story behind the size condition: the monotone kernel needs no
restriction, the oscillatory one does.
"""

import numpy as np

from helmholtz_means import a_norm, b_norm, bessel_zero

m = 2
t = np.linspace(0.0, 10.0, 11)
print(f"kernels for m = {m}:")
print(f"{'t':>6} {'a_m(t)':>12} {'b_m(t)':>14}")
for ti, ai, bi in zip(t, a_norm(m, t), b_norm(m, t)):
    print(f"{ti:6.1f} {ai:12.6f} {bi:14.6f}")

print()
print("first positive zeros j_(nu,1), where a_{2 nu} changes sign:")
for nu in (0.0, 0.5, 1.0, 1.5, 2.0):
    print(f"  nu = {nu:3.1f}: {bessel_zero(nu, 1):.9f}")

z = bessel_zero(m / 2, 1)
print()
print(f"a_{m} is positive on (0, {z:.6f}) and negative just past it:")
print(f"  a_{m}({z:.6f} - 0.1) = {a_norm(m, z - 0.1):+.6f}")
print(f"  a_{m}({z:.6f} + 0.1) = {a_norm(m, z + 0.1):+.6f}")
print(f"b_{m} keeps growing: b({z:.2f}) = {b_norm(m, z):.4f}, b({2 * z:.2f}) = {b_norm(m, 2 * z):.4f}")

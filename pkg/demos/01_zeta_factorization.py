"""G_hat against E(s) zeta(s), and the dips at the zeros of zeta.

Run: python3 demos/01_zeta_factorization.py
"""
import numpy as np

from guinand import kernel
from guinand.specfun import zeta_c, zeta_zeros

# G(v) = e^{v/2} alpha(e^v) beta(e^{-v}) is a positive bump around v = 0
v = np.linspace(-2, 2, 9)
print("v       G(v)")
for vi in v:
    print(f"{vi:5.1f}  {kernel.G_closed(vi):.6e}")

# its transform, summed as a Bessel series, equals E(s) zeta(s) on s = 1/2 + it
print("\n t     |G_hat(t)|        |E zeta|          rel diff")
for t in (0.0, 5.0, 10.0, 14.0, 20.0, 30.0):
    g = kernel.G_hat_series(t)
    s = 0.5 + 1j * t
    ez = kernel.E_factor(s) * zeta_c(s)
    print(f"{t:5.1f}  {abs(g):.6e}  {abs(ez):.6e}  {abs(g - ez) / abs(g):.1e}")

# so G_hat has a zero wherever zeta does
print("\nzero         |G_hat(gamma)|  / neighbours")
for g in zeta_zeros(5):
    c = kernel.zero_dip(g)
    print(f"{g:.6f}  {c.value:.2e}       {c.rel_err:.1e}")

# the theta_4^8 analogue, with B the Cauchy square of b
for c in kernel.weight8_constant_ratio([2, 2.5, 3]):
    print(c.name, c.extra.get("ratio", c.value))

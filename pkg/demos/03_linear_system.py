"""The truncated system T Lambda = V.

Run: python3 demos/03_linear_system.py
"""
import numpy as np

from guinand import linsys
from guinand.errors import SingularSystemError

tm = linsys.build_system(8)
np.set_printoptions(precision=3, linewidth=110)
print("T (8 x 8):")
print(tm.entries)
print("V:", tm.rhs)

# with enough columns the rows reproduce V to rounding
print("\nforward residual, n_tail = 320:", linsys.forward_residual(tm, 320).max())
print("forward residual, n_tail = 8:  ", linsys.forward_residual(tm, 8).max())

# the matrix is close to singular; the condition number explodes with N
for N in (4, 8, 12, 16):
    s = np.linalg.svd(linsys.build_system(N).entries, compute_uv=False)
    print(f"N={N:2d}  sigma_max {s[0]:.2e}  sigma_min {s[-1]:.2e}  cond {s[0] / s[-1]:.1e}")

# consistent right side: exact solve recovers Lambda, any ridge above sigma_min^2 biases it
syn = linsys.synthetic_system(tm)
for ridge in (0.0, 1e-14, 1e-10, 1e-6):
    r = linsys.solve_regularized(syn, ridge)
    print(f"ridge {ridge:7.0e}  max error {r.max_error:.2e}  forward {r.forward_residual_inf:.2e}")

# the true right side carries the tail n > N, so recovery is poor
r = linsys.solve_regularized(tm, 0.0)
print("\ntrue rhs, N=8:", np.round(r.lambda_hat, 3))
print("Lambda:       ", np.round(linsys.lambda_true(8), 3))
try:
    linsys.solve_regularized(linsys.build_system(32), 0.0)
except SingularSystemError as exc:
    print("N=32:", exc)

# off-diagonal mass of row n against the diagonal
for n in (4, 8, 16, 32):
    checks = {c.name.split(".")[-1]: c for c in linsys.structure_checks(n)}
    print(f"n={n:2d}  block {checks['block>diag'].value:.3e}  f(n,n) {checks['block>diag'].expected:.3e}"
          f"  n f(n,n) {checks['block>n*diag'].expected:.3e}")

# Psi_0 from Lambda and from 100 zeros
c = linsys.psi0_compare(10, 100)
print(f"\nPsi_0(10) = {c.expected:.6f}, explicit formula with 100 zeros {c.value:.6f}")

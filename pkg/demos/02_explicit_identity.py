"""Both sides of the explicit identity at translates G(v + log x).

Run: python3 demos/02_explicit_identity.py
"""
import math

from guinand import explicit

print("x        prime side        boundary          log-pi            archimedean       rel residual")
for x in (0.25, 0.5, 1, 1.25, 1.5, 2, math.e, 3, 5, 10):
    p = explicit.V_of_x(x)
    print(f"{x:<7.4g}  {p.lhs_prime_sum:.10e}  {p.bessel_boundary:.10e}  "
          f"{p.log_pi_term:.10e}  {p.archimedean:.10e}  {p.residual_rel:.1e}")

# the archimedean term two ways: J-integral in v, digamma integral in t
print("\nx      J-integral              digamma integral")
for x in (0.5, 1, 2, 4):
    print(f"{x:<5}  {explicit.archimedean_log(x):.15e}  {explicit.archimedean_spectral(x):.15e}")

# flipping the sign of the log-pi term breaks the identity
p = explicit.V_of_x(2.0, orientation="flipped")
print(f"\nflipped log-pi sign at x = 2: rel residual {p.residual_rel:.2f}")

# f(x) + f(1/x) - f(1)(sqrt x + 1/sqrt x) removes the boundary terms
e = explicit.eliminate(3.0)
print(f"elimination at x = 3: boundary {e.boundary_combined:.1e}, residual {e.residual:.1e}")

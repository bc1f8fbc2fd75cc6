"""Special values: lambda(i) = 1/2, theta_3(i), and the beta bridge.

Run: python3 demos/04_special_values.py
"""
from guinand import modular
from guinand.theta import beta, theta

for c in modular.modular_suite():
    print(f"{c.name:32s} {c.value:.16g}  rel {c.rel_err:.1e}")

# each entry f(m, n) is a combination of beta values, i.e. of theta_2^4 = 16 beta
print("\n16 beta(1) =", 16 * beta(1.0), " theta_2(i)^4 =", theta(2, 1.0) ** 4)
print("theta_3(i)^4 / 2 =", theta(3, 1.0) ** 4 / 2)

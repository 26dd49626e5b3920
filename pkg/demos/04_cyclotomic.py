# Cyclotomic polynomials: two constructions, values at 1, lower bounds, resultants
from fractions import Fraction
from math import gcd

from lucasdiv.lucas_core import LucasParams, alpha_approx
from lucasdiv.numtheory import (
    check_cyclotomic_lower_bound, check_cyclotomic_tau_bound, cyclotomic,
    cyclotomic_mobius, cyclotomic_resultant_unit, short_vector,
)

print("Phi_12:", cyclotomic(12).coeffs)
print("Phi_105 has a coefficient -2:", min(cyclotomic(105).coeffs))
print("division and Moebius routes agree up to 100:",
      all(cyclotomic(v).coeffs == cyclotomic_mobius(v).coeffs for v in range(1, 101)))

# Phi_v(1) is p for v a power of p and 1 otherwise
print({v: cyclotomic(v)(1) for v in range(2, 17)})

# Phi_v(alpha) > (alpha (alpha - 1))^(phi(v)/2), decided with interval arithmetic
golden = alpha_approx(LucasParams(1, 1), 128)
print("lower bound at the golden ratio, v <= 60:",
      all(check_cyclotomic_lower_bound(v, golden) for v in range(2, 61)))
print("sharper bound at 3/2, v <= 60:",
      all(check_cyclotomic_tau_bound(v, Fraction(3, 2)) for v in range(2, 61)))

# The resultant of (X^m-1)/(X-1) and (X^n-1)/(X-1) is a unit for coprime m, n
print("resultants:", {(m, n): cyclotomic_resultant_unit(m, n)
                      for m in range(2, 8) for n in range(m + 1, 9) if gcd(m, n) == 1})

# Short vectors: max(|u|,|v|) <= sqrt(X) and |a u + b v| <= 3 sqrt(X)
print(short_vector(1000, 617, 1000))

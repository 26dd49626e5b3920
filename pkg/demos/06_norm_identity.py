# |N(alpha_1 - zeta)| against (alpha_1^-phi(v) Phi_v(alpha_1) Phi_v*(alpha_1))^([M:L]/2)
from math import gcd

import mpmath

from lucasdiv.algebraic import check_norm_identity, norm_identity_sides
from lucasdiv.lucas_core import LucasParams

for a, b, k, v in [(2, 1, 1, 3), (1, 1, 2, 4), (1, 1, 2, 5), (1, 1, 1, 5), (2, 1, 1, 8)]:
    params = LucasParams(a, b)
    for j in (1, 2, 3):
        if gcd(j, v) != 1:
            continue
        lhs, rhs, degree = norm_identity_sides(params, k, v, j)
        print(f"(a,b,k,v,j)=({a},{b},{k},{v},{j}) [M:L]={degree}: "
              f"lhs={mpmath.nstr(lhs, 10)} rhs={mpmath.nstr(rhs, 10)} "
              f"agree={check_norm_identity(params, k, v, j)}")

# When alpha lies in Q(zeta_v) and delta = -1 the two sides differ: the right
# side is the geometric mean of the norms over the two Galois orbits (1 and 11
# for the golden ratio and v = 5), so it matches only when xi is a unit.

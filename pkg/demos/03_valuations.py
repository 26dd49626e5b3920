# p-adic valuations of U_m through the rank of appearance f_p
from lucasdiv.lucas_core import LucasParams, lucas_u
from lucasdiv.numtheory import primes_upto
from lucasdiv.valuation import (
    check_valuation_bound, nu, nu_p_of_lucas, rank_of_appearance, s_part,
)

fib = LucasParams(1, 1)
print("rank of appearance in Fibonacci:",
      {p: rank_of_appearance(fib, p) for p in primes_upto(30)})

# The table needs only nu_p(U_{f_p}) (or U_2, U_3, U_6 for p = 2) and nu_p(m / f_p)
params = LucasParams(4, 1)
for p, m in [(2, 48), (3, 36), (5, 100), (17, 72)]:
    print(f"(4, 1): nu_{p}(U_{m}) = {nu_p_of_lucas(params, p, m)}"
          f"  direct: {nu(lucas_u(params, m), p)}")

# S-parts and their bound alpha^2 m lcm[U_{f_p} : p in S]
print("F_12 S-part for S={2,3}:", s_part(fib, [2, 3], 12))
S = primes_upto(13)
print("bound holds for m <= 300:", all(check_valuation_bound(fib, S, m) for m in range(1, 301)))

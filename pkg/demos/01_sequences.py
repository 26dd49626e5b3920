# Lucas sequences U(a, b): U_0 = 0, U_1 = 1, U_{n+2} = a U_{n+1} + b U_n
from lucasdiv.lucas_core import (
    Identity, LucasParams, check_comment_identity, check_near_miss,
    check_periodicity_identity, lucas_table, lucas_u, lucas_u_mod, lucas_v,
)

fib = LucasParams(1, 1)
pell = LucasParams(2, 1)
print("Fibonacci:", [row.u for row in lucas_table(fib, 15)])
print("Pell:     ", [row.u for row in lucas_table(pell, 10)])

# Terms come from a doubling ladder, so huge indices are cheap
print("F_10000 has", len(str(lucas_u(fib, 10000))), "digits")
print("F_10^18 mod 1000003 =", lucas_u_mod(fib, 10**18, 1000003))

# U_n stays periodic modulo U_m with period 4m:  U_{n+4m} - U_n = U_m V_m V_{n+2m}
params = LucasParams(3, -1)
print("periodicity identity, m=7, n=0..30:",
      all(check_periodicity_identity(params, 7, n) for n in range(31)))

# Closed-form factorizations behind the exponents s = 1, 2, 4
for which, k in [(Identity.DIFF, 2), (Identity.SUM, 4), (Identity.SQSUM, 1)]:
    ok = all(check_comment_identity(fib, k, n, which) for n in range(100))
    print(f"{which.name:5s} k={k}: holds for n < 100: {ok}")

# For (4, -1), U_{4n+2} divides 4 (U_{n+1}^6 - U_n^6) but not the difference itself
q = LucasParams(4, -1)
print("with the factor 4:", all(check_near_miss(n) for n in range(50)))
n = 3
print(f"without it, n={n}: remainder",
      (lucas_u(q, n + 1) ** 6 - lucas_u(q, n) ** 6) % lucas_u(q, 4 * n + 2))
print("V_4 for (3, 1):", lucas_v(LucasParams(3, 1), 4))

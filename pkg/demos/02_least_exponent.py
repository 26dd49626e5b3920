# The least s with U_m | U_{n+k}^s - U_n^s, and a scan of the bound m < 20000 (sk)^2
from collections import Counter

from lucasdiv.lucas_core import LucasParams
from lucasdiv.order_solver import (
    ScanConfig, Status, min_s_at_n, min_s_over_n, structural_s, verify_theorem,
)

fib = LucasParams(1, 1)

# n fixed: F_7 = 13 divides F_4^4 - F_3^4 = 81 - 16 = 65
print("s at n=3, m=7:", min_s_at_n(fib, 1, 7, 3))
# minimizing over n: F_2 - F_1 = 0 is divisible by everything
print("min over n, m=7:", min_s_over_n(fib, 1, 7))
# some (n, m) admit no s at all: 5 | F_5 but 5 never divides 3^s
print("s at n=4, m=5:", min_s_at_n(fib, 1, 5, 4))

# When m has a matching shape the closed-form factorizations predict s
for k, m in [(1, 9), (2, 10), (4, 12)]:
    print(f"k={k}, m={m}: predicted (s, n) = {structural_s(fib, k, m)}")

# Scan a small grid; records come back in (a, b, k, m) order whatever the worker count
config = ScanConfig(a_range=(1, 4), b_values=(-1, 1), k_max=2, m_max=150)
records = list(verify_theorem(config, workers=1))
print(len(records), "records, all within the bound:", all(r.bound_ok for r in records))
print("distribution of s_min:", Counter(r.s_min for r in records))
print("certified 'no s exists':", sum(r.status is Status.NONE_EXISTS for r in records))

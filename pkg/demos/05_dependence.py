# Multiplicative dependence of alpha and xi = (alpha^k - delta conj(zeta)) / (alpha^k - zeta)
from lucasdiv.algebraic import (
    UNLISTED, check_exceptional_catalogue, find_dependence, xi_value,
)
from lucasdiv.lucas_core import LucasParams

# xi for (4, -1), k=1, zeta = i is exp(i pi / 6)
print(xi_value(LucasParams(4, -1), 1, 4, 1).value)

# A witness alpha^R xi^S = 1 is found numerically and certified by exact
# arithmetic in a cyclotomic field containing alpha
for args in [(2, 1, 1, 1, 1), (4, -1, 1, 4, 1), (3, 1, 1, 5, 1)]:
    w = find_dependence(LucasParams(*args[:2]), *args[2:], B=20)
    print(args, "->", w.relation if w else "no relation with |R|, |S| <= 20")

rows = check_exceptional_catalogue()
print(len(rows), "catalogued instances certified")

# Dependences that the option list does not mention; each one is an exact certificate
for a, b, k, v in UNLISTED:
    w = find_dependence(LucasParams(a, b), k, v, 1)
    print(f"(a,b,k,v)=({a},{b},{k},{v}):", w.relation)

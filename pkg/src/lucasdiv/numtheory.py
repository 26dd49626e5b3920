"""Cyclotomic polynomials, small arithmetic functions, gcd identities and
short vectors in a box.

Polynomials are lists of integer coefficients, lowest degree first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd, isqrt

import mpmath

from .lucas_core import LucasParams, RealQuadApprox, iv_workprec, lucas_u

__all__ = [
    "CycloPoly",
    "ShortVector",
    "factorize",
    "divisors",
    "is_prime",
    "primes_upto",
    "euler_phi",
    "moebius",
    "tau_star",
    "poly_mul",
    "poly_divmod",
    "poly_eval",
    "cyclotomic",
    "cyclotomic_mobius",
    "cyclotomic_at_one",
    "check_cyclotomic_lower_bound",
    "check_cyclotomic_tau_bound",
    "short_vector",
    "gcd_power_minus_one",
    "resultant",
    "cyclotomic_resultant_unit",
    "lucas_gcd_property",
]


# --- arithmetic functions -------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def euler_phi(v: int) -> int:
    result = v
    for p in factorize(v):
        result -= result // p
    return result


def moebius(v: int) -> int:
    f = factorize(v)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def tau_star(v: int) -> int:
    """Number of square-free divisors of v."""
    return 2 ** len(factorize(v))


# --- integer polynomials --------------------------------------------------

def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: list, q: list) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, c in enumerate(p):
        if c:
            for j, d in enumerate(q):
                out[i + j] += c * d
    return _trim(out)


def poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Division by a polynomial with leading coefficient +-1 (stays integral)."""
    lead = den[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have unit leading coefficient")
    rem = list(num)
    dq = len(num) - len(den)
    if dq < 0:
        return [0], _trim(rem)
    quot = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = rem[i + len(den) - 1] * lead
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    return _trim(quot), _trim(rem[: len(den) - 1] or [0])


def poly_eval(p: list, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _x_pow_minus_one(d: int) -> list:
    return [-1] + [0] * (d - 1) + [1]


# --- cyclotomic polynomials -----------------------------------------------

@dataclass(frozen=True)
class CycloPoly:
    v: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return poly_eval(list(self.coeffs), x)


@lru_cache(maxsize=None)
def _cyclo_coeffs(v: int) -> tuple[int, ...]:
    num = _x_pow_minus_one(v)
    for d in divisors(v)[:-1]:
        num, rem = poly_divmod(num, list(_cyclo_coeffs(d)))
        if rem != [0]:
            raise ArithmeticError(f"X^{v}-1 not divisible by Phi_{d}")
    return tuple(num)


def cyclotomic(v: int) -> CycloPoly:
    """Phi_v by dividing X^v - 1 by Phi_d for every proper divisor d."""
    if v < 1:
        raise ValueError(f"v must be positive, got {v}")
    return CycloPoly(v, _cyclo_coeffs(v))


def cyclotomic_mobius(v: int) -> CycloPoly:
    """Phi_v as prod_{d | v} (X^d - 1)^mu(v/d); independent of `cyclotomic`."""
    if v < 1:
        raise ValueError(f"v must be positive, got {v}")
    num, den = [1], [1]
    for d in divisors(v):
        mu = moebius(v // d)
        if mu == 1:
            num = poly_mul(num, _x_pow_minus_one(d))
        elif mu == -1:
            den = poly_mul(den, _x_pow_minus_one(d))
    quot, rem = poly_divmod(num, den)
    if rem != [0]:
        raise ArithmeticError(f"Moebius product for Phi_{v} is not a polynomial")
    return CycloPoly(v, tuple(quot))


def cyclotomic_at_one(v: int) -> int:
    """Phi_v(1): p when v is a power of the prime p, otherwise 1."""
    if v < 2:
        raise ValueError(f"v must be >= 2, got {v}")
    f = factorize(v)
    return next(iter(f)) if len(f) == 1 else 1


def _as_interval(alpha):
    iv = mpmath.iv
    if isinstance(alpha, RealQuadApprox):
        return alpha.interval()
    if isinstance(alpha, Fraction):
        return iv.mpf(alpha.numerator) / alpha.denominator
    if isinstance(alpha, str):
        return iv.mpf(alpha)
    if hasattr(alpha, "a") and hasattr(alpha, "b"):
        return alpha
    return iv.mpf(alpha)


def _phi_interval(v: int, x):
    # Moebius product: every factor x^d - 1 is positive for x > 1, so the
    # enclosure stays tight (no cancellation as in Horner's rule).
    acc = mpmath.iv.mpf(1)
    for d in divisors(v):
        mu = moebius(v // d)
        if mu == 1:
            acc = acc * (x**d - 1)
        elif mu == -1:
            acc = acc / (x**d - 1)
    return acc


def check_cyclotomic_lower_bound(v: int, alpha, precision_bits: int = 128) -> bool:
    """Strict Phi_v(alpha) > (alpha (alpha - 1))^(phi(v)/2), decided in interval arithmetic.

    `alpha` may be a RealQuadApprox (its error is folded in), an mpmath
    interval, a Fraction, a decimal string or a float (taken as exact).
    """
    if v < 2:
        raise ValueError(f"v must be >= 2, got {v}")
    with iv_workprec(precision_bits) as iv:
        x = _as_interval(alpha)
        if not x.a > 1:
            raise ValueError("alpha must exceed 1")
        lhs = _phi_interval(v, x)
        rhs = iv.sqrt(x * (x - 1)) ** euler_phi(v)
        return bool(lhs.a > rhs.b)


def check_cyclotomic_tau_bound(v: int, alpha, precision_bits: int = 128) -> bool:
    """Strict Phi_v(alpha) > alpha^phi(v) ((alpha - 1)/alpha)^(tau*(v)/2)."""
    if v < 2:
        raise ValueError(f"v must be >= 2, got {v}")
    with iv_workprec(precision_bits) as iv:
        x = _as_interval(alpha)
        if not x.a > 1:
            raise ValueError("alpha must exceed 1")
        lhs = _phi_interval(v, x)
        rhs = x ** euler_phi(v) * iv.sqrt((x - 1) / x) ** tau_star(v)
        return bool(lhs.a > rhs.b)


# --- short vectors --------------------------------------------------------

@dataclass(frozen=True)
class ShortVector:
    u: int
    v: int
    combo: int


def short_vector(a: int, b: int, X) -> ShortVector:
    """Nonzero (u, v) with max(|u|, |v|) <= sqrt(X) and |a u + b v| <= 3 sqrt(X).

    Returns the minimizer of (|combo|, |u|, |v|) over the whole box, ties going
    to larger u then larger v, so the answer is deterministic. For each u only
    the v nearest to -a u / b can minimize |a u + b v| (three neighbours are
    tried so that ties at u = 0 are seen), which keeps the search linear in
    sqrt(X).
    """
    Xq = Fraction(X)
    if Xq < 3:
        raise ValueError(f"X must be >= 3, got {X}")
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if max(a, b) > Xq:
        raise ValueError(f"max(a, b) = {max(a, b)} exceeds X = {X}")
    r = isqrt(floor(Xq))
    best = None
    for u in range(-r, r + 1):
        v0 = (-a * u) // b
        for v in {max(-r, min(r, v0 + d)) for d in (-1, 0, 1)}:
            if u == 0 and v == 0:
                continue
            c = a * u + b * v
            key = (abs(c), abs(u), abs(v), -u, -v)
            if best is None or key < best:
                best = key
    u, v = -best[3], -best[4]
    combo = a * u + b * v
    if combo * combo > 9 * Xq:
        raise ArithmeticError(f"no short vector for a={a}, b={b}, X={X}")
    return ShortVector(u, v, combo)


# --- gcd identities and resultants ---------------------------------------

def gcd_power_minus_one(gamma: int, m: int, n: int) -> int:
    """gcd(gamma^m - 1, gamma^n - 1), checked against |gamma^gcd(m, n) - 1|."""
    if abs(gamma) < 2:
        raise ValueError(f"|gamma| must be >= 2, got {gamma}")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    g = gcd(gamma**m - 1, gamma**n - 1)
    if g != abs(gamma ** gcd(m, n) - 1):
        raise ArithmeticError(f"gcd identity failed for gamma={gamma}, m={m}, n={n}")
    return g


def _content(p: list) -> int:
    c = 0
    for x in p:
        c = gcd(c, x)
    return c


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    rem = list(a)
    lb = b[-1]
    for _ in range(len(a) - len(b) + 1):
        lead = rem[-1]
        rem = [lb * c for c in rem]
        shift = len(rem) - len(b)
        for j, d in enumerate(b):
            rem[shift + j] -= lead * d
        rem.pop()
    return _trim(rem) if rem else [0]


def resultant(p: list, q: list) -> int:
    """Resultant of two integer polynomials via the subresultant PRS."""
    p, q = _trim(list(p)), _trim(list(q))
    if p == [0] or q == [0]:
        return 0
    a_c, b_c = _content(p), _content(q)
    p = [c // a_c for c in p]
    q = [c // b_c for c in q]
    t = a_c ** (len(q) - 1) * b_c ** (len(p) - 1)
    s = 1
    if len(p) < len(q):
        p, q = q, p
        if (len(p) - 1) % 2 and (len(q) - 1) % 2:
            s = -1
    g = h = Fraction(1)
    while len(q) > 1:
        dp, dq = len(p) - 1, len(q) - 1
        delta = dp - dq
        if dp % 2 and dq % 2:
            s = -s
        r = _prem(p, q)
        if r == [0]:
            return 0
        p = q
        div = g * h**delta
        q = []
        for c in r:
            qc = Fraction(c) / div
            if qc.denominator != 1:
                raise ArithmeticError("subresultant division not exact")
            q.append(int(qc))
        g = Fraction(p[-1])
        h = h ** (1 - delta) * g**delta
    dp = len(p) - 1
    h = h ** (1 - dp) * Fraction(q[0]) ** dp
    res = s * t * h
    if res.denominator != 1:
        raise ArithmeticError("resultant is not an integer")
    return int(res)


def _repunit(m: int) -> list:
    return [1] * m  # (X^m - 1)/(X - 1)


def cyclotomic_resultant_unit(m: int, n: int) -> int:
    """Res((X^m - 1)/(X - 1), (X^n - 1)/(X - 1)) for coprime m, n >= 2."""
    if m < 2 or n < 2:
        raise ValueError("m and n must be >= 2")
    if gcd(m, n) != 1:
        raise ValueError(f"m={m} and n={n} are not coprime")
    return resultant(_repunit(m), _repunit(n))


def lucas_gcd_property(params: LucasParams, m: int, n: int) -> bool:
    """gcd(U_m, U_n) == |U_gcd(m, n)|."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return gcd(lucas_u(params, m), lucas_u(params, n)) == abs(lucas_u(params, gcd(m, n)))

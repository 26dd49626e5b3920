"""Rank of appearance, p-adic valuations of U_m and S-parts.

nu_p(U_m) is read off the classical table in terms of the rank of appearance
f_p (the least k >= 1 with p | U_k):

    0                              if f_p does not divide m
    nu_p(U_{f_p}) + nu_p(m / f_p)  if f_p | m, p odd
    nu_2(U_2) + nu_2(m / 2)        if 2 | m, p = 2, a even
    nu_2(U_3)                      if m = 3 (mod 6), p = 2, a odd
    nu_2(U_6) + nu_2(m / 2)        if m = 0 (mod 6), p = 2, a odd
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from math import lcm

from .lucas_core import LucasParams, alpha_approx, iv_workprec, lucas_u
from .numtheory import is_prime

__all__ = [
    "PrimeSet",
    "ValuationReport",
    "nu",
    "rank_of_appearance",
    "nu_p_of_lucas",
    "valuation_report",
    "delta_p2",
    "valuation_excess_holds",
    "s_part",
    "check_valuation_bound",
]


class PrimeSet(tuple):
    """Sorted tuple of distinct primes."""

    def __new__(cls, primes=()):
        ps = sorted(set(int(p) for p in primes))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return super().__new__(cls, ps)


@dataclass(frozen=True)
class ValuationReport:
    p: int
    m: int
    nu_table: int
    nu_direct: int | None
    f_p: int

    @property
    def consistent(self) -> bool:
        return self.nu_direct is None or self.nu_direct == self.nu_table


def nu(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


_rank_cache: dict[tuple[int, int, int], int] = {}
_rank_lock = threading.Lock()


def rank_of_appearance(params: LucasParams, p: int) -> int:
    """Least k >= 1 with p | U_k, by scanning the sequence mod p (cap p^2)."""
    key = (params.a, params.b, p)
    with _rank_lock:
        hit = _rank_cache.get(key)
    if hit is not None:
        return hit
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a, b = params.a % p, params.b % p
    u0, u1 = 0, 1
    for k in range(1, p * p + 1):
        u0, u1 = u1, (a * u1 + b * u0) % p
        if u0 == 0:
            with _rank_lock:
                _rank_cache[key] = k
            return k
    raise RuntimeError(f"rank of appearance of {p} in U{params.a, params.b} exceeds p^2")


def nu_p_of_lucas(params: LucasParams, p: int, m: int) -> int:
    """nu_p(U_m) from the case table (no factorization of U_m)."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if p == 2:
        if params.a % 2 == 0:
            if m % 2:
                return 0
            return nu(lucas_u(params, 2), 2) + nu(m // 2, 2)
        if m % 6 == 3:
            return nu(lucas_u(params, 3), 2)
        if m % 6 == 0:
            return nu(lucas_u(params, 6), 2) + nu(m // 2, 2)
        return 0
    f = rank_of_appearance(params, p)
    if m % f:
        return 0
    return nu(lucas_u(params, f), p) + nu(m // f, p)


def delta_p2(params: LucasParams, p: int) -> int:
    """Correction in nu_p(U_m) <= nu_p(U_{f_p}) + nu_p(m) + delta_p2: nu_2((a^2 + 3b)/2) for
    p = 2 and a odd, else 0."""
    if p != 2 or params.a % 2 == 0:
        return 0
    return nu((params.a ** 2 + 3 * params.b) // 2, 2)


def valuation_excess_holds(params: LucasParams, p: int, m: int) -> bool:
    """nu_p(U_m) <= nu_p(U_{f_p}) + nu_p(m) + delta_p2, from the table."""
    f = rank_of_appearance(params, p)
    rhs = nu(lucas_u(params, f), p) + nu(m, p) + delta_p2(params, p)
    return nu_p_of_lucas(params, p, m) <= rhs


def valuation_report(params: LucasParams, p: int, m: int, direct: bool = True) -> ValuationReport:
    table = nu_p_of_lucas(params, p, m)
    oracle = nu(lucas_u(params, m), p) if direct else None
    return ValuationReport(p, m, table, oracle, rank_of_appearance(params, p))


def s_part(params: LucasParams, S, m: int) -> int:
    """(U_m)_S = prod_{p in S} p^nu_p(U_m)."""
    out = 1
    for p in PrimeSet(S):
        out *= p ** nu_p_of_lucas(params, p, m)
    return out


def check_valuation_bound(params: LucasParams, S, m: int, precision_bits: int = 128) -> bool:
    """(U_m)_S <= alpha^2 m lcm[U_{f_p} : p in S], with an upper enclosure of alpha^2."""
    if params.a < 1:
        raise ValueError("the valuation bound is stated for a >= 1")
    S = PrimeSet(S)
    lhs = s_part(params, S, m)
    l = 1
    for p in S:
        l = lcm(l, abs(lucas_u(params, rank_of_appearance(params, p))))
    alpha = alpha_approx(params, precision_bits)
    with iv_workprec(precision_bits):
        rhs = alpha.interval() ** 2 * m * l
        return bool(lhs <= rhs.a)

"""Least exponent s with U_m | U_{n+k}^s - U_n^s, and the grid scan of the bound
m < 20000 (s k)^2 for s outside {1, 2, 4}.

All work is on residues t = U_{n+k} mod U_m and w = U_n mod U_m with running
powers; no inverse is ever taken, so gcd(U_n, U_m) > 1 needs no special case.

Two facts keep the n-search short:

* U_{n+4m} = U_n (mod U_m), so n ranges over one period [1, 4m];
* U_{n+m} = c U_n (mod U_m) with c = U_{m+1} a unit (c^4 = 1), so the
  divisibility at n and at n + m holds for exactly the same s. The least
  minimizing n therefore lies in [1, m] and only that window is searched.

When no s exists at some n it is usually for a reason visible without any
search: a prime of U_m divides exactly one of t and w. `_obstructed` checks
this exactly with gcds.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from .lucas_core import DEGENERATE_PAIRS, LucasParams, lucas_table, lucas_u

__all__ = [
    "NMode",
    "Status",
    "DivRecord",
    "ScanConfig",
    "TheoremViolation",
    "min_s_at_n",
    "solve_at_n",
    "min_s_over_n",
    "structural_s",
    "verify_klt_bound",
    "solve_record",
    "verify_theorem",
    "bound_holds",
]

BOUND_CONSTANT = 20000
STRUCTURAL = frozenset({1, 2, 4})


class NMode(enum.Enum):
    PER_N = "per_n"
    MIN_OVER_N = "min_over_n"


class Status(enum.Enum):
    FOUND = "found"
    NONE_EXISTS = "none_exists"  # certified: no s >= 1 works at any n
    CAP = "cap"                  # search stopped at s_cap without an answer


class TheoremViolation(RuntimeError):
    def __init__(self, record: "DivRecord"):
        super().__init__(f"bound violated or undecided: {record}")
        self.record = record


@dataclass(frozen=True)
class DivRecord:
    a: int
    b: int
    k: int
    m: int
    s_min: int | None
    n_witness: int | None
    structural: bool
    bound_ok: bool
    status: Status = field(default=Status.FOUND, compare=False)


def bound_holds(m: int, s: int, k: int) -> bool:
    return m < BOUND_CONSTANT * (s * k) ** 2


@dataclass(frozen=True)
class ScanConfig:
    a_range: tuple[int, int]
    b_values: tuple[int, ...] = (-1, 1)
    k_max: int = 1
    m_max: int = 100
    s_cap: int | None = None  # None: 4 m per record
    n_mode: NMode = NMode.MIN_OVER_N
    k_min: int = 1
    m_min: int = 2

    def __post_init__(self):
        if self.s_cap is not None and self.s_cap < 4:
            raise ValueError("s_cap must be >= 4")
        if self.n_mode is NMode.PER_N:
            raise ValueError("a theorem scan needs MIN_OVER_N; use min_s_at_n for single n")
        if self.m_min < 2:
            raise ValueError("m_min must be >= 2")
        if not set(self.b_values) <= {-1, 1}:
            raise ValueError("b_values must be a subset of {-1, 1}")

    def cap_for(self, m: int) -> int:
        return self.s_cap if self.s_cap is not None else 4 * m

    def params(self) -> list[LucasParams]:
        lo, hi = self.a_range
        out = []
        for a in range(lo, hi + 1):
            for b in sorted(self.b_values):
                if (a, b) in DEGENERATE_PAIRS or a * a + 4 * b <= 0:
                    continue
                out.append(LucasParams(a, b))
        return out

    def coordinates(self) -> Iterator[tuple[int, int, int, int]]:
        """Grid points (a, b, k, m) in emission order."""
        for p in self.params():
            for k in range(self.k_min, self.k_max + 1):
                for m in range(self.m_min, self.m_max + 1):
                    yield (p.a, p.b, k, m)


def _check_m(m: int) -> None:
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")


def _obstructed(t: int, w: int, M: int) -> bool:
    """True if some prime of M divides exactly one of t, w (then t^s != w^s mod M for all s)."""
    for x, y in ((t, w), (w, t)):
        r = gcd(x, M)
        while r > 1:
            g = gcd(r, y)
            if g == 1:
                return True
            while r % g == 0:
                r //= g
    return False


def min_s_at_n(params: LucasParams, k: int, m: int, n: int, s_cap: int | None = None) -> int | None:
    """Least s in [1, s_cap] with U_m | U_{n+k}^s - U_n^s, else None."""
    return solve_at_n(params, k, m, n, s_cap)[0]


def solve_at_n(params: LucasParams, k: int, m: int, n: int,
               s_cap: int | None = None) -> tuple[int | None, Status]:
    """min_s_at_n plus the reason when there is no answer (NONE_EXISTS or CAP)."""
    _check_m(m)
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if s_cap is None:
        s_cap = 4 * m
    M = abs(lucas_u(params, m))
    if M == 1:
        return 1, Status.FOUND
    t = lucas_u(params, n + k) % M
    w = lucas_u(params, n) % M
    if _obstructed(t, w, M):
        return None, Status.NONE_EXISTS
    tp, wp = t, w
    for s in range(1, s_cap + 1):
        if tp == wp:
            return s, Status.FOUND
        tp = tp * t % M
        wp = wp * w % M
    return None, Status.CAP


def min_s_over_n(params: LucasParams, k: int, m: int, s_cap: int | None = None,
                 allow_n_zero: bool = False) -> tuple[int, int] | None:
    """(least s, least n achieving it) over n >= 1 (or n >= 0); None if no n works up to s_cap."""
    return _min_over_n(params, k, m, s_cap, allow_n_zero)[0]


def _min_over_n(params: LucasParams, k: int, m: int, s_cap: int | None,
                allow_n_zero: bool = False) -> tuple[tuple[int, int] | None, Status]:
    _check_m(m)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if s_cap is None:
        s_cap = 4 * m
    M = abs(lucas_u(params, m))
    n_lo = 0 if allow_n_zero else 1
    if M == 1:
        return (1, n_lo), Status.FOUND
    # n in [n_lo, n_lo + m - 1] covers every class mod m (see module docstring)
    rows = lucas_table(params, n_lo + m - 1 + k, M)
    ns, ts, ws = [], [], []
    for n in range(n_lo, n_lo + m):
        t, w = rows[n + k].u, rows[n].u
        if not _obstructed(t, w, M):
            ns.append(n)
            ts.append(t)
            ws.append(w)
    if not ns:
        return None, Status.NONE_EXISTS
    tp, wp = list(ts), list(ws)
    for s in range(1, s_cap + 1):
        for i, n in enumerate(ns):
            if tp[i] == wp[i]:
                return (s, n), Status.FOUND
        tp = [x * y % M for x, y in zip(tp, ts)]
        wp = [x * y % M for x, y in zip(wp, ws)]
    return None, Status.CAP


def structural_s(params: LucasParams, k: int, m: int) -> tuple[int, int] | None:
    """(s, n) forced by a closed-form factorization, when m has the matching shape.

    k even, m = n + k/2:   U_{n+k} - U_n = U_m V_{k/2} (b = 1, k = 2 mod 4)  -> s = 1
                           U_{n+k} + U_n = U_m V_{k/2} (otherwise)           -> s = 2
    k odd, b = 1, m = 2n + k:  U_{n+k}^2 + U_n^2 = U_m U_k                   -> s = 4
    """
    if k % 2 == 0:
        n = m - k // 2
        if n < 1:
            return None
        return (1 if params.b == 1 and k % 4 == 2 else 2), n
    if params.b == 1 and (m - k) % 2 == 0 and m - k >= 2:
        return 4, (m - k) // 2
    return None


def verify_klt_bound(m: int, s: int) -> bool:
    """Fibonacci-era bound m < 500 s^2, meaningful only for s outside {1, 2, 4}."""
    if s in STRUCTURAL:
        raise ValueError("the bound m < 500 s^2 is only claimed for s not in {1, 2, 4}")
    if m < 1 or s < 1:
        raise ValueError("m and s must be positive")
    return m < 500 * s * s


def solve_record(a: int, b: int, k: int, m: int, s_cap: int | None = None) -> DivRecord:
    params = LucasParams(a, b)
    best, status = _min_over_n(params, k, m, s_cap)
    if best is None:
        s_min = n_wit = None
        structural = False
        # no s exists: the theorem's hypothesis is empty
        bound_ok = status is Status.NONE_EXISTS
    else:
        s_min, n_wit = best
        structural = s_min in STRUCTURAL
        bound_ok = structural or bound_holds(m, s_min, k)
    return DivRecord(a, b, k, m, s_min, n_wit, structural, bound_ok, status)


def _solve_chunk(args):
    (a, b, k, m_lo, m_hi, cap) = args
    return [solve_record(a, b, k, m, cap) for m in range(m_lo, m_hi + 1)]


def _chunks(config: ScanConfig, chunk: int):
    # records are independent; chunks only batch IPC
    for p in config.params():
        for k in range(config.k_min, config.k_max + 1):
            m = config.m_min
            while m <= config.m_max:
                hi = min(config.m_max, m + chunk - 1)
                yield (p.a, p.b, k, m, hi, config.s_cap)
                m = hi + 1


def verify_theorem(config: ScanConfig, workers: int | None = None, chunk: int = 8,
                   start_after: tuple[int, int, int, int] | None = None,
                   raise_on_violation: bool = True) -> Iterator[DivRecord]:
    """Yield one DivRecord per grid point in (a, b, k, m) order.

    Emission order is lexicographic in (a, b, k, m), so `start_after` resumes a
    scan by skipping every coordinate <= that tuple. With `workers` > 1 chunks
    go to a process pool; `executor.map` preserves submission order, so the
    stream is identical for every worker count. Raises TheoremViolation on the
    first record with bound_ok False.
    """
    if workers is None:
        workers = os.cpu_count() or 1
    jobs = list(_chunks(config, chunk))
    if start_after is not None:
        start_after = tuple(start_after)
        jobs = [j for j in jobs if (j[0], j[1], j[2], j[4]) > start_after]

    def emit(batches):
        for batch in batches:
            for rec in batch:
                if start_after is not None and (rec.a, rec.b, rec.k, rec.m) <= start_after:
                    continue
                if raise_on_violation and not rec.bound_ok:
                    raise TheoremViolation(rec)
                yield rec

    if workers <= 1 or len(jobs) <= 1:
        yield from emit(map(_solve_chunk, jobs))
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from emit(pool.map(_solve_chunk, jobs))

"""Lucas sequences U(a, b), V(a, b) with b = +-1.

U_0 = 0, U_1 = 1, V_0 = 2, V_1 = a and both satisfy X_{n+2} = a X_{n+1} + b X_n.
Evaluation is O(log n) via the doubling ladder on (U_n, U_{n+1}):

    U_{2n}   = U_n (2 U_{n+1} - a U_n)
    U_{2n+1} = U_{n+1}^2 + b U_n^2

which needs no division, so the same ladder runs modulo any integer.
"""
from __future__ import annotations

import contextlib
import enum
import os
from dataclasses import dataclass

import mpmath

__all__ = [
    "DEGENERATE_PAIRS",
    "DegenerateParamsError",
    "LucasParams",
    "LucasPair",
    "RealQuadApprox",
    "Identity",
    "default_precision",
    "lucas_u",
    "lucas_v",
    "lucas_pair",
    "lucas_u_mod",
    "lucas_table",
    "check_periodicity_identity",
    "check_comment_identity",
    "check_near_miss",
    "alpha_approx",
]

# alpha/beta is a root of unity (or Delta <= 0) exactly for these pairs
DEGENERATE_PAIRS = frozenset({(0, 1), (0, -1), (1, -1), (-1, -1), (2, -1), (-2, -1)})

DEFAULT_PRECISION = 128


class DegenerateParamsError(ValueError):
    pass


@contextlib.contextmanager
def iv_workprec(bits: int):
    """Temporarily set the precision of mpmath's interval context."""
    saved = mpmath.iv.prec
    mpmath.iv.prec = bits
    try:
        yield mpmath.iv
    finally:
        mpmath.iv.prec = saved


def default_precision() -> int:
    """Working precision in bits; LUCASDIV_PRECISION overrides the default of 128."""
    raw = os.environ.get("LUCASDIV_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    bits = int(raw)
    if bits < 16:
        raise ValueError(f"LUCASDIV_PRECISION must be >= 16, got {bits}")
    return bits


@dataclass(frozen=True)
class LucasParams:
    a: int
    b: int

    def __post_init__(self):
        if self.b not in (-1, 1):
            raise ValueError(f"b must be +1 or -1, got {self.b}")
        if (self.a, self.b) in DEGENERATE_PAIRS:
            raise DegenerateParamsError(
                f"(a, b) = ({self.a}, {self.b}) is degenerate: need a != 0 and "
                "(a, b) not in {(+-1, -1), (+-2, -1)}"
            )
        if self.delta <= 0:
            raise DegenerateParamsError(f"discriminant a^2 + 4b = {self.delta} must be positive")

    @property
    def delta(self) -> int:
        return self.a * self.a + 4 * self.b

    @property
    def q(self) -> int:
        """Product of the roots, alpha * beta = -b."""
        return -self.b

    def flipped(self) -> "LucasParams":
        return LucasParams(-self.a, self.b)


@dataclass(frozen=True)
class LucasPair:
    u: int
    v: int
    index: int


@dataclass(frozen=True)
class RealQuadApprox:
    """A real number known to relative error <= 2**(1 - precision_bits)."""

    value: mpmath.mpf
    precision_bits: int

    @property
    def rel_error(self) -> mpmath.mpf:
        return mpmath.mpf(2) ** (1 - self.precision_bits)

    def interval(self):
        """Enclosing interval (mpmath.iv) that accounts for the stated error."""
        err = abs(self.value) * self.rel_error
        with iv_workprec(self.precision_bits + 8):
            return mpmath.iv.mpf([self.value - err, self.value + err])


def _ladder(a: int, b: int, n: int, mod: int | None = None) -> tuple[int, int]:
    """Return (U_n, U_{n+1}), reduced modulo `mod` if given."""
    u0, u1 = 0, 1
    for bit in bin(n)[2:]:
        # (U_k, U_{k+1}) -> (U_{2k}, U_{2k+1})
        u2k = u0 * (2 * u1 - a * u0)
        u2k1 = u1 * u1 + b * u0 * u0
        if bit == "1":
            u0, u1 = u2k1, a * u2k1 + b * u2k
        else:
            u0, u1 = u2k, u2k1
        if mod is not None:
            u0 %= mod
            u1 %= mod
    return u0, u1


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")


def lucas_pair(params: LucasParams, n: int) -> LucasPair:
    """Exact (U_n, V_n), self-checked against Delta U_n^2 + 4 (-b)^n = V_n^2."""
    _check_n(n)
    u, u_next = _ladder(params.a, params.b, n)
    v = 2 * u_next - params.a * u
    if params.delta * u * u + 4 * params.q**n != v * v:
        raise ArithmeticError(f"Lucas pair self-check failed at {params}, n={n}")
    return LucasPair(u, v, n)


def lucas_u(params: LucasParams, n: int) -> int:
    _check_n(n)
    return _ladder(params.a, params.b, n)[0]


def lucas_v(params: LucasParams, n: int) -> int:
    _check_n(n)
    u, u_next = _ladder(params.a, params.b, n)
    return 2 * u_next - params.a * u


def lucas_u_mod(params: LucasParams, n: int, modulus: int) -> int:
    """U_n mod `modulus` in [0, modulus), without forming U_n."""
    _check_n(n)
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    return _ladder(params.a, params.b, n, modulus)[0]


def lucas_table(params: LucasParams, n_max: int, modulus: int | None = None) -> list[LucasPair]:
    """Rows (U_n, V_n) for n = 0..n_max by plain iteration."""
    a, b = params.a, params.b
    u0, u1, v0, v1 = 0, 1, 2, a
    if modulus is not None:
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        u1 %= modulus
        v0 %= modulus
        v1 %= modulus
    rows = []
    for n in range(n_max + 1):
        rows.append(LucasPair(u0, v0, n))
        u0, u1 = u1, a * u1 + b * u0
        v0, v1 = v1, a * v1 + b * v0
        if modulus is not None:
            u1 %= modulus
            v1 %= modulus
    return rows


def check_periodicity_identity(params: LucasParams, m: int, n: int) -> bool:
    """Exact test of U_{n+4m} - U_n = U_m V_m V_{n+2m}."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    _check_n(n)
    lhs = lucas_u(params, n + 4 * m) - lucas_u(params, n)
    pm = lucas_pair(params, m)
    return lhs == pm.u * pm.v * lucas_v(params, n + 2 * m)


class Identity(enum.Enum):
    DIFF = "diff"    # U_{n+k} - U_n = U_{n+k/2} V_{k/2}, b = 1, k = 2 mod 4
    SUM = "sum"      # U_{n+k} + U_n = U_{n+k/2} V_{k/2}, b = 1 and 4 | k, or b = -1 and k even
    SQSUM = "sqsum"  # U_{n+k}^2 + U_n^2 = U_{2n+k} U_k, b = 1, k odd


def identity_applies(params: LucasParams, k: int, which: Identity) -> bool:
    if which is Identity.DIFF:
        return params.b == 1 and k % 4 == 2
    if which is Identity.SUM:
        return (params.b == 1 and k % 4 == 0) or (params.b == -1 and k % 2 == 0)
    return params.b == 1 and k % 2 == 1


def check_comment_identity(params: LucasParams, k: int, n: int, which: Identity | str) -> bool:
    which = Identity(which) if not isinstance(which, Identity) else which
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    _check_n(n)
    if not identity_applies(params, k, which):
        raise ValueError(f"identity {which.name} does not apply to b={params.b}, k={k}")
    if which is Identity.SQSUM:
        lhs = lucas_u(params, n + k) ** 2 + lucas_u(params, n) ** 2
        return lhs == lucas_u(params, 2 * n + k) * lucas_u(params, k)
    sign = -1 if which is Identity.DIFF else 1
    lhs = lucas_u(params, n + k) + sign * lucas_u(params, n)
    return lhs == lucas_u(params, n + k // 2) * lucas_v(params, k // 2)


_NEAR_MISS = LucasParams(4, -1)


def check_near_miss(n: int) -> bool:
    """For (a, b) = (4, -1): does U_{4n+2} divide 4 (U_{n+1}^6 - U_n^6)?"""
    _check_n(n)
    p = _NEAR_MISS
    target = 4 * (lucas_u(p, n + 1) ** 6 - lucas_u(p, n) ** 6)
    return target % lucas_u(p, 4 * n + 2) == 0


def alpha_approx(params: LucasParams, precision_bits: int | None = None) -> RealQuadApprox:
    """alpha = (|a| + sqrt(Delta)) / 2 > 1, the dominant root for |a| in place of a."""
    if precision_bits is None:
        precision_bits = default_precision()
    if precision_bits < 16:
        raise ValueError(f"precision_bits must be >= 16, got {precision_bits}")
    with mpmath.workprec(precision_bits + 4):
        value = (abs(params.a) + mpmath.sqrt(params.delta)) / 2
    return RealQuadApprox(value, precision_bits)

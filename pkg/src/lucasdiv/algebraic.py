"""Exact quadratic and cyclotomic arithmetic around alpha and
xi = (alpha^k - delta conj(zeta)) / (alpha^k - zeta), delta = (-b)^k.

Dependence witnesses are found numerically and then certified exactly in
Q(zeta_N) with N = lcm(T, D0), T = lcm(2v, 12) and D0 the fundamental
discriminant of Q(alpha). Q(sqrt(D0)) sits inside Q(zeta_D0) through the
quadratic Gauss sum, so every quantity involved is a polynomial in zeta_N with
rational coefficients and equality is coefficient equality modulo Phi_N.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

import mpmath

from .lucas_core import DEGENERATE_PAIRS, LucasParams, iv_workprec
from .numtheory import cyclotomic, divisors, euler_phi, factorize, moebius

__all__ = [
    "InsufficientPrecision",
    "QuadElem",
    "CyclotomicField",
    "CycloElem",
    "DependenceWitness",
    "ComplexApprox",
    "kronecker",
    "fundamental_discriminant",
    "is_fundamental_discriminant",
    "quad_alpha",
    "v_star",
    "xi_value",
    "find_dependence",
    "find_dependence_auto",
    "check_exceptional_catalogue",
    "in_catalogue",
    "sample_outside_catalogue",
    "UNLISTED",
    "norm_identity_sides",
    "check_norm_identity",
    "quad_in_cyclotomic",
    "unit_difference_norm",
    "unit_difference_check",
    "torsion_bound",
]


class InsufficientPrecision(ArithmeticError):
    """Raised when a numerical decision is too close to call; retry with more bits."""


# --- Q(sqrt(D)) -------------------------------------------------------------

@dataclass(frozen=True)
class QuadElem:
    """x + y sqrt(disc), exact rationals, disc a positive nonsquare."""

    x: Fraction
    y: Fraction
    disc: int

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        r = isqrt(self.disc) if self.disc >= 0 else 0
        if self.disc <= 0 or r * r == self.disc:
            raise ValueError(f"disc must be a positive nonsquare, got {self.disc}")

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.disc != self.disc:
                raise ValueError("mixed discriminants")
            return other
        return QuadElem(Fraction(other), Fraction(0), self.disc)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.x + o.x, self.y + o.y, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.disc)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadElem(self.x * o.x + self.disc * self.y * o.y, self.x * o.y + self.y * o.x, self.disc)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.disc)

    def norm(self) -> Fraction:
        return self.x * self.x - self.disc * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return QuadElem(c.x / n, c.y / n, self.disc)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadElem(1, 0, self.disc)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y, self.disc))

    def to_mpf(self):
        """Real value with sqrt(disc) > 0, at the current mpmath precision."""
        return mpmath.mpf(self.x.numerator) / self.x.denominator + \
            mpmath.mpf(self.y.numerator) / self.y.denominator * mpmath.sqrt(self.disc)


def quad_alpha(params: LucasParams) -> QuadElem:
    """alpha = (a + sqrt(Delta)) / 2, so trace a and norm -b."""
    return QuadElem(Fraction(params.a, 2), Fraction(1, 2), params.delta)


# --- Kronecker symbol, discriminants ---------------------------------------

def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d / n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    return result * _jacobi(d, n) if n > 1 else result


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d <= 1:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and _squarefree(q)
    return False


def fundamental_discriminant(delta: int) -> tuple[int, int]:
    """(D0, f) with delta = f^2 D0 and D0 fundamental (delta a positive nonsquare discriminant)."""
    core = 1
    for p, e in factorize(delta).items():
        if e % 2:
            core *= p
    d0 = core if core % 4 == 1 else 4 * core
    f2, rem = divmod(delta, d0)
    f = isqrt(f2)
    if rem or f * f != f2:
        raise ValueError(f"{delta} is not f^2 times a fundamental discriminant")
    return d0, f


def quad_in_cyclotomic(disc_fundamental: int, v: int) -> bool:
    """Does Q(sqrt(D0)) lie in Q(zeta_v)? By the conductor rule: iff D0 | v."""
    if not is_fundamental_discriminant(disc_fundamental):
        raise ValueError(f"{disc_fundamental} is not a positive fundamental discriminant")
    if v < 1:
        raise ValueError("v must be positive")
    return v % disc_fundamental == 0


def v_star(v: int, delta: int) -> int:
    """Order of delta * conj(zeta) when zeta has order v."""
    if v < 1 or delta not in (-1, 1):
        raise ValueError("need v >= 1 and delta = +-1")
    if v % 4 == 0 or delta == 1:
        return v
    if v % 2 == 0:
        return v // 2
    return 2 * v


def torsion_bound(v: int) -> int:
    return lcm(2 * v, 12)


# --- Q(zeta_N) --------------------------------------------------------------

class CyclotomicField:
    """Q(zeta_N) as Q[X] / Phi_N(X), elements in the power basis."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.modulus = cyclotomic(N).coeffs
        self.degree = len(self.modulus) - 1

    def _reduce(self, coeffs: list) -> tuple:
        d, mod = self.degree, self.modulus
        c = list(coeffs)
        for i in range(len(c) - 1, d - 1, -1):
            top = c[i]
            if top:
                for j in range(d):
                    if mod[j]:
                        c[i - d + j] -= top * mod[j]
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return tuple(Fraction(x) for x in c)

    def element(self, coeffs) -> "CycloElem":
        return CycloElem(self, self._reduce(list(coeffs)))

    def scalar(self, q) -> "CycloElem":
        return self.element([Fraction(q)])

    def root(self, e: int) -> "CycloElem":
        """zeta_N^e."""
        e %= self.N
        return self.element([0] * e + [1])

    def sqrt_fundamental(self, d0: int) -> "CycloElem":
        """+sqrt(D0) via the Gauss sum sum_x (D0/x) zeta_D0^x; requires D0 | N."""
        if self.N % d0:
            raise ValueError(f"sqrt({d0}) is not in Q(zeta_{self.N})")
        step = self.N // d0
        coeffs = [0] * self.N
        for x in range(1, d0):
            coeffs[x * step] = kronecker(d0, x)
        return self.element(coeffs)

    def embed_quad(self, q: QuadElem) -> "CycloElem":
        d0, f = fundamental_discriminant(q.disc)
        return self.scalar(q.x) + self.sqrt_fundamental(d0) * (q.y * f)


@dataclass(frozen=True, eq=False)
class CycloElem:
    field: CyclotomicField
    coeffs: tuple

    def _other(self, o) -> "CycloElem":
        if isinstance(o, CycloElem):
            if o.field.N != self.field.N:
                raise ValueError("elements of different cyclotomic fields")
            return o
        return self.field.scalar(o)

    def __add__(self, o):
        o = self._other(o)
        return CycloElem(self.field, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        prod = [Fraction(0)] * (2 * self.field.degree - 1 or 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    if y:
                        prod[i + j] += x * y
        return self.field.element(prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = self.field.scalar(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, o):
        return (self - self._other(o)).is_zero()

    __hash__ = None

    def to_mpc(self):
        z = mpmath.expjpi(mpmath.mpf(2) / self.field.N)
        return mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.coeffs)], z)


# --- xi and dependence witnesses -------------------------------------------

@dataclass(frozen=True)
class ComplexApprox:
    """Midpoint `value` with |true - value| <= `radius` (rigorous, from interval arithmetic)."""

    value: mpmath.mpc
    radius: mpmath.mpf
    precision_bits: int


@dataclass(frozen=True)
class DependenceWitness:
    """alpha^R xi^S = 1 exactly, with (R, S) = torsion_order * (R0, S0) and
    alpha^R0 xi^S0 = zeta_T^eta_exponent a root of unity of order torsion_order."""

    R: int
    S: int
    torsion_order: int
    R0: int
    S0: int
    eta_exponent: int
    torsion_modulus: int
    degenerate: bool = False

    @property
    def relation(self) -> str:
        if self.torsion_order == 1:
            return f"alpha^{self.R} * xi^{self.S} = 1"
        eta = f"zeta_{self.torsion_modulus}^{self.eta_exponent}"
        return f"alpha^{self.R0} * xi^{self.S0} = {eta}, so alpha^{self.R} * xi^{self.S} = 1"


def _check_xi_args(params: LucasParams, k: int, v: int, j: int) -> None:
    if params.a < 1:
        raise ValueError("xi is defined for a >= 1")
    if k < 1 or v < 1:
        raise ValueError("k and v must be positive")
    if gcd(j, v) != 1:
        raise ValueError(f"j={j} is not coprime to v={v}")


def xi_value(params: LucasParams, k: int, v: int, j: int, precision_bits: int = 128) -> ComplexApprox:
    """xi = (alpha^k - delta conj(zeta)) / (alpha^k - zeta), zeta = exp(2 pi i j / v)."""
    _check_xi_args(params, k, v, j)
    delta = (-params.b) ** k
    with iv_workprec(precision_bits + 16) as iv:
        alpha1 = ((params.a + iv.sqrt(params.delta)) / 2) ** k
        t = 2 * iv.pi * j / v
        c, s = iv.cos(t), iv.sin(t)
        xi = iv.mpc(alpha1 - delta * c, delta * s) / iv.mpc(alpha1 - c, -s)
    with mpmath.workprec(precision_bits + 16):
        re_lo, re_hi = mpmath.mpf(xi.real.a), mpmath.mpf(xi.real.b)
        im_lo, im_hi = mpmath.mpf(xi.imag.a), mpmath.mpf(xi.imag.b)
        mid = mpmath.mpc((re_lo + re_hi) / 2, (im_lo + im_hi) / 2)
        radius = mpmath.hypot(re_hi - re_lo, im_hi - im_lo) / 2
    return ComplexApprox(mid, radius, precision_bits)


def _xi_float(params, k, v, j):
    # numerics at the current mpmath precision
    alpha = (params.a + mpmath.sqrt(params.delta)) / 2
    alpha1 = alpha**k
    zeta = mpmath.expjpi(mpmath.mpf(2 * j) / v)
    delta = (-params.b) ** k
    return alpha, (alpha1 - delta * mpmath.conj(zeta)) / (alpha1 - zeta)


@lru_cache(maxsize=64)
def _field(N: int) -> CyclotomicField:
    return CyclotomicField(N)


def _certify(params: LucasParams, k: int, v: int, j: int, R0: int, S0: int, e: int, T: int) -> bool:
    """Exact test of alpha^R0 (alpha^k - delta conj(zeta))^S0 = zeta_T^e (alpha^k - zeta)^S0."""
    alpha = quad_alpha(params)
    d0, _ = fundamental_discriminant(params.delta)
    K = _field(lcm(T, d0))
    step = K.N // v
    zeta, zeta_bar = K.root(step * j), K.root(-step * j)
    eta = K.root((K.N // T) * e)
    delta = (-params.b) ** k
    alpha1 = K.embed_quad(alpha**k)
    lhs = (alpha1 - zeta_bar * delta) ** S0
    rhs = eta * (alpha1 - zeta) ** S0
    if R0 >= 0:
        lhs = lhs * K.embed_quad(alpha**R0)
    else:
        rhs = rhs * K.embed_quad(alpha ** (-R0))
    return lhs == rhs


def find_dependence(params: LucasParams, k: int, v: int, j: int, B: int = 20,
                    precision_bits: int = 256) -> DependenceWitness | None:
    """Smallest (R0, S0), |R0|, |S0| <= B, with alpha^R0 xi^S0 a root of unity of order | lcm(2v, 12).

    Candidates are picked numerically and accepted only after exact
    certification; a numerical candidate that fails certification raises
    InsufficientPrecision.
    """
    _check_xi_args(params, k, v, j)
    if B < 1:
        raise ValueError("B must be positive")
    T = torsion_bound(v)
    with mpmath.workprec(precision_bits):
        alpha, xi = _xi_float(params, k, v, j)
        log_alpha = mpmath.log(alpha)
        log_abs = mpmath.log(abs(xi))
        turns = mpmath.arg(xi) * T / (2 * mpmath.pi)
        tol = mpmath.mpf(2) ** (-(precision_bits // 2))
        # S0 = 0 would make alpha^R0 a root of unity, so S0 >= 1 after fixing the sign
        for S0 in range(1, B + 1):
            R0 = int(mpmath.nint(-S0 * log_abs / log_alpha))
            if abs(R0) > B or abs(R0 * log_alpha + S0 * log_abs) > tol:
                continue
            e_real = S0 * turns
            e = int(mpmath.nint(e_real))
            if abs(e_real - e) > tol:
                continue
            e %= T
            if not _certify(params, k, v, j, R0, S0, e, T):
                raise InsufficientPrecision(
                    f"numerical relation (R0={R0}, S0={S0}) failed exact certification")
            order = T // gcd(e, T)
            degenerate = _zeta_squared_is_delta(v, (-params.b) ** k)
            return DependenceWitness(order * R0, order * S0, order, R0, S0, e, T, degenerate)
    return None


def find_dependence_auto(params: LucasParams, k: int, v: int, j: int, B: int = 20,
                         precision_bits: int = 256, max_bits: int = 4096) -> DependenceWitness | None:
    """find_dependence, doubling the precision on InsufficientPrecision up to `max_bits`."""
    bits = precision_bits
    while True:
        try:
            return find_dependence(params, k, v, j, B, bits)
        except InsufficientPrecision:
            bits *= 2
            if bits > max_bits:
                raise


def _zeta_squared_is_delta(v: int, delta: int) -> bool:
    # zeta^2 has order v / gcd(v, 2); it equals delta = 1 iff v | 2, delta = -1 iff v = 4
    return (v in (1, 2) and delta == 1) or (v == 4 and delta == -1)


def in_catalogue(params: LucasParams, k: int, v: int) -> str | None:
    """Which exceptional option (i)-(iv) covers (a, b, k, v), if any."""
    delta = (-params.b) ** k
    if delta == -1 and v == 4:
        return "i"
    if (params.a, params.b, k) in {(1, 1, 1), (2, 1, 1)} and v in (1, 2):
        return "ii"
    if delta == 1 and v in (1, 2):
        return "iii"
    if (params.a, params.b, k) == (4, -1, 1) and v in (4, 6):
        return "iv"
    return None


CATALOGUE = {
    "i": [(1, 1, 1, 4), (3, 1, 1, 4), (5, 1, 3, 4), (2, 1, 1, 4)],
    "ii": [(1, 1, 1, 1), (1, 1, 1, 2), (2, 1, 1, 1), (2, 1, 1, 2)],
    "iii": [(3, -1, 1, 1), (3, -1, 1, 2), (1, 1, 2, 1), (4, -1, 2, 2), (3, 1, 2, 1)],
    "iv": [(4, -1, 1, 4), (4, -1, 1, 6)],
}


# Dependences outside options (i)-(iv), each certified exactly by find_dependence
# (found by sweeping a <= 12, k <= 4, v <= 60 at B = 20):
#   alpha^k = phi^2 = (3 + sqrt5)/2 with v = 10: xi is a primitive 10th root of unity
#   alpha^k = phi^3 = 2 + sqrt5 with v in {1, 2}: xi = phi^{-+1}, so alpha^{-+1} xi^3 = 1
UNLISTED = [(1, 1, 2, 10), (3, -1, 1, 10), (1, 1, 3, 1), (1, 1, 3, 2), (4, 1, 1, 1), (4, 1, 1, 2)]


def sample_outside_catalogue(count: int, seed: int = 0, a_max: int = 12, k_max: int = 4,
                             v_max: int = 60) -> list[tuple[int, int, int, int, int]]:
    """Distinct random (a, b, k, v, j) with v not in {1, 2, 3, 4, 6} and (a, b, k, v) not catalogued."""
    rng = random.Random(seed)
    out: set = set()
    while len(out) < count:
        a = rng.randint(1, a_max)
        b = rng.choice((-1, 1))
        k = rng.randint(1, k_max)
        v = rng.randint(5, v_max)
        if v == 6 or (a, b) in DEGENERATE_PAIRS or in_catalogue(LucasParams(a, b), k, v):
            continue
        j = rng.choice([j for j in range(1, v + 1) if gcd(j, v) == 1])
        out.add((a, b, k, v, j))
    return sorted(out)


def check_exceptional_catalogue(B: int = 20, precision_bits: int = 256) -> list[dict]:
    """Certify a witness for every catalogued exceptional (a, b, k, v) and every j.

    Raises AssertionError if any catalogued case has no witness.
    """
    rows = []
    for option, cases in CATALOGUE.items():
        for a, b, k, v in cases:
            params = LucasParams(a, b)
            delta = (-b) ** k
            for j in range(1, v + 1):
                if gcd(j, v) != 1:
                    continue
                w = find_dependence_auto(params, k, v, j, B, precision_bits)
                degenerate = _zeta_squared_is_delta(v, delta)
                if w is None:
                    raise AssertionError(f"option ({option}) case {(a, b, k, v, j)} has no witness")
                if degenerate and (w.R0, w.S0, w.eta_exponent) != (0, 1, 0):
                    raise AssertionError(f"degenerate case {(a, b, k, v, j)} did not collapse to xi = 1")
                rows.append({"option": option, "a": a, "b": b, "k": k, "v": v, "j": j,
                             "degenerate": degenerate, "R": w.R, "S": w.S,
                             "torsion": w.torsion_order, "relation": w.relation})
    return rows


# --- norm identity -----------------------------------------------------------

def _phi_value(v: int, x):
    acc = mpmath.mpf(1)
    for d in divisors(v):
        mu = moebius(v // d)
        if mu == 1:
            acc *= x**d - 1
        elif mu == -1:
            acc /= x**d - 1
    return acc


def norm_identity_sides(params: LucasParams, k: int, v: int, j: int, precision_bits: int = 256):
    """(|N_{M/Q}(alpha^k - zeta)|, (alpha1^-phi(v) Phi_v(alpha1) Phi_{v*}(alpha1))^([M:L]/2), [M:L]).

    The left side is the product of |sigma(alpha^k) - sigma(zeta)| over the
    embeddings sigma of M = Q(alpha, zeta). If alpha lies in L = Q(zeta_v),
    sigma_c : zeta_v -> zeta_v^c sends sqrt(D0) to kronecker(D0, c) sqrt(D0).
    """
    _check_xi_args(params, k, v, j)
    delta = (-params.b) ** k
    d0, _ = fundamental_discriminant(params.delta)
    inside = quad_in_cyclotomic(d0, v)
    with mpmath.workprec(precision_bits + 16):
        root = mpmath.sqrt(params.delta)
        alpha1 = ((params.a + root) / 2) ** k
        beta1 = ((params.a - root) / 2) ** k
        lhs = mpmath.mpf(1)
        for c in range(1, v + 1):
            if gcd(c, v) != 1:
                continue
            z = mpmath.expjpi(mpmath.mpf(2 * ((c * j) % v)) / v)
            if inside:
                lhs *= abs((alpha1 if kronecker(d0, c) == 1 else beta1) - z)
            else:
                lhs *= abs(alpha1 - z) * abs(beta1 - z)
        degree = 1 if inside else 2
        inner = alpha1 ** (-euler_phi(v)) * _phi_value(v, alpha1) * _phi_value(v_star(v, delta), alpha1)
        rhs = inner ** (mpmath.mpf(degree) / 2)
    return lhs, rhs, degree


def check_norm_identity(params: LucasParams, k: int, v: int, j: int, precision_bits: int = 256,
                        rel_tol=None) -> bool:
    """Both sides of the norm identity agree to relative tolerance (default 2^(8 - precision_bits))."""
    lhs, rhs, _ = norm_identity_sides(params, k, v, j, precision_bits)
    if rel_tol is None:
        rel_tol = mpmath.mpf(2) ** (8 - precision_bits)
    with mpmath.workprec(precision_bits + 16):
        return bool(abs(lhs - rhs) <= rel_tol * abs(rhs))


# --- unit differences ----------------------------------------------------------

def unit_difference_norm(ord1: int, ord2: int, precision_bits: int = 128) -> int:
    """prod |zeta' - xi'| over primitive roots of orders ord1, ord2, rounded to an integer.

    Raises InsufficientPrecision unless the interval enclosure pins a unique integer.
    """
    if ord1 < 2 or ord2 < 2:
        raise ValueError("orders must be >= 2")
    if gcd(ord1, ord2) != 1:
        raise ValueError(f"orders {ord1} and {ord2} are not coprime")
    with iv_workprec(precision_bits) as iv:
        prod = iv.mpf(1)
        for c1 in range(1, ord1):
            if gcd(c1, ord1) != 1:
                continue
            t1 = 2 * iv.pi * c1 / ord1
            for c2 in range(1, ord2):
                if gcd(c2, ord2) != 1:
                    continue
                t2 = 2 * iv.pi * c2 / ord2
                diff = iv.mpc(iv.cos(t1) - iv.cos(t2), iv.sin(t1) - iv.sin(t2))
                prod = prod * abs(diff)
        lo, hi = prod.a, prod.b
        n = int(mpmath.nint(prod.mid))
        if not (n - 0.5 < lo and hi < n + 0.5):
            raise InsufficientPrecision(f"enclosure [{lo}, {hi}] does not isolate an integer")
    return n


def unit_difference_check(ord1: int, ord2: int, precision_bits: int = 128) -> bool:
    """Is zeta - xi a unit for roots of unity of coprime orders ord1, ord2 (norm exactly 1)?"""
    return unit_difference_norm(ord1, ord2, precision_bits) == 1

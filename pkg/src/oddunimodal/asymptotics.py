"""Floating-point checks of the asymptotic main terms.

Contents:

* Ingham-type main terms and the two explicit main terms for ``ou(n)`` and
  ``ou*(n)``, all evaluated in log space;
* numerical evaluation of ``F(q) = sum ou(*)(n) q^n`` at ``q = e^{-t}`` (and at
  complex ``z`` for the wedge smoke test) by summing the defining series;
* the shifted Euler-Maclaurin formula in one and two dimensions with direct
  summation companions, for test functions whose derivatives are known;
* the special functions ``E`` and ``beta`` and the termwise decomposition of
  the indefinite theta series into ``Theta + Theta^-``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
import numpy as np
from scipy.special import erfcx

FAMILY_ALIASES = {"ou": "ou", "oustar": "oustar", "ou*": "oustar"}


def _family(name: str) -> str:
    try:
        return FAMILY_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected 'ou' or 'oustar'") from None


# -- main terms --------------------------------------------------------------------


@dataclass(frozen=True)
class InghamParams:
    """``F(e^{-t}) ~ lam t^beta e^{gamma/t}``."""

    lam: float
    beta: float
    gamma: float

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")

    def log_main_term(self, n: float) -> float:
        if n < 1:
            raise ValueError("n must be >= 1")
        b, g = self.beta, self.gamma
        return (math.log(self.lam) + (b / 2 + 0.25) * math.log(g) - math.log(2 * math.sqrt(math.pi))
                - (b / 2 + 0.75) * math.log(n) + 2 * math.sqrt(g * n))

    def main_term(self, n: float) -> float:
        return math.exp(self.log_main_term(n))


def ingham_main_term(p: InghamParams, n: float) -> float:
    return p.main_term(n)


INGHAM = {
    "ou": InghamParams(0.25, 0.0, math.pi ** 2 / 6),
    "oustar": InghamParams(0.5, 0.0, math.pi ** 2 / 12),
}


def log_main_term(family: str, n: float) -> float:
    """Log of the closed-form main term for ``ou(n)`` or ``ou*(n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fam = _family(family)
    ln = math.log(n)
    if fam == "ou":
        return math.pi * math.sqrt(2 * n / 3) - 3.25 * math.log(2) - 0.25 * math.log(3) - 0.75 * ln
    return math.pi * math.sqrt(n / 3) - 2.5 * math.log(2) - 0.25 * math.log(3) - 0.75 * ln


def main_term(family: str, n: float) -> float:
    return math.exp(log_main_term(family, n))


def coefficient_ratio(family: str, n: int, coeff: int) -> float:
    """``coeff / main_term(family, n)`` computed through logs (coeff may be huge)."""
    if coeff <= 0:
        raise ValueError("coefficient must be positive")
    return math.exp(math.log(coeff) - log_main_term(family, n))


# |r(4000) - 1| bounds, about twice the deviations seen on the exact tables
RATIO_TOLERANCE = {"ou": 0.019, "oustar": 0.023}


def is_weakly_increasing(table: Sequence[int], start: int = 0) -> bool:
    return all(table[n] <= table[n + 1] for n in range(start, len(table) - 1))


# -- evaluating the generating functions -----------------------------------------------


class ConvergenceError(RuntimeError):
    pass


MAX_TERMS = 10 ** 6


def _sum_F(family: str, q: complex, max_terms: int = MAX_TERMS) -> complex:
    """Sum the defining single series at a point ``|q| < 1``.

    ou:  sum q^{2n+1} / (q;q^2)_{n+1}^2      ou*: sum (-q;q^2)_n^2 q^{2n+1}
    Stops once a term falls below 1e-16 of the running sum (or of the largest
    partial sum seen, for complex ``q`` where cancellation is possible).
    """
    fam = _family(family)
    q2 = q * q
    if fam == "ou":
        term = q / (1 - q) ** 2
    else:
        term = q
    total = term
    scale = abs(total)
    for n in range(1, max_terms):
        if fam == "ou":
            term = term * q2 / (1 - q ** (2 * n + 1)) ** 2
        else:
            term = term * q2 * (1 + q ** (2 * n - 1)) ** 2
        total += term
        scale = max(scale, abs(total))
        if abs(term) < 1e-16 * scale:
            return total
    raise ConvergenceError(f"no convergence within {max_terms} terms")


def eval_F(family: str, t: float) -> float:
    """``sum ou(*)(n) e^{-nt}`` for ``0.01 <= t <= 1``."""
    if not 0.01 <= t <= 1:
        raise ValueError("t must lie in [0.01, 1]")
    return float(_sum_F(family, math.exp(-t)).real)


def eval_F_complex(family: str, z: complex) -> complex:
    if z.real <= 0:
        raise ValueError("need Re z > 0")
    return complex(_sum_F(family, cmath.exp(-z)))


def eval_F_ratio(family: str, t: float) -> float:
    """``F(e^{-t}) / (lam e^{gamma/t})``, which tends to 1 as t -> 0."""
    p = INGHAM[_family(family)]
    return math.exp(math.log(eval_F(family, t)) - math.log(p.lam) - p.gamma / t)


T_GRID = (0.3, 0.2, 0.1, 0.05)


def wedge_profile(family: str, xs: Sequence[float], delta: float = 1.0) -> list[float]:
    """``max_{+-} |F(e^{-z})| e^{-gamma/|z|}`` at ``z = x (1 +- i delta/2)``."""
    p = INGHAM[_family(family)]
    out = []
    for x in xs:
        vals = []
        for s in (1, -1):
            z = complex(x, s * delta * x / 2)
            vals.append(math.exp(math.log(abs(eval_F_complex(family, z))) - p.gamma / abs(z)))
        out.append(max(vals))
    return out


# -- Euler-Maclaurin ------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_poly(n: int, x: float) -> float:
    return float(mpmath.bernpoly(n, x))


def _check_wedge(z: complex) -> None:
    if z == 0 or abs(cmath.phase(z)) >= math.pi / 2:
        raise ValueError(f"z = {z} is outside the wedge |arg z| < pi/2")


class Gaussian:
    """``f(w) = e^{-c w^2}``."""

    def __init__(self, c: float = 1.0):
        self.c = c

    def __call__(self, w):
        return cmath.exp(-self.c * w * w) if isinstance(w, complex) else math.exp(-self.c * w * w)

    def derivative_at_zero(self, n: int) -> float:
        if n % 2:
            return 0.0
        k = n // 2
        return (-self.c) ** k * math.factorial(n) / math.factorial(k)

    def integral(self) -> float:
        return math.sqrt(math.pi / self.c) / 2

    def cutoff(self) -> float:
        """Beyond this argument the function is below 1e-18."""
        return math.sqrt(42 / self.c)


class Exponential:
    """``f(w) = e^{-k w}``."""

    def __init__(self, k: float = 1.0):
        self.k = k

    def __call__(self, w):
        return cmath.exp(-self.k * w) if isinstance(w, complex) else math.exp(-self.k * w)

    def derivative_at_zero(self, n: int) -> float:
        return (-self.k) ** n

    def integral(self) -> float:
        return 1 / self.k

    def cutoff(self) -> float:
        return 42 / self.k


def euler_maclaurin_1d(f, a: float, z: complex, N: int) -> complex:
    """``z^-1 int_0^oo f - sum_{n<N} B_{n+1}(a) f^(n)(0) z^n / (n+1)!``."""
    _check_wedge(complex(z))
    out = f.integral() / z
    for n in range(N):
        out -= bernoulli_poly(n + 1, a) * f.derivative_at_zero(n) * z ** n / math.factorial(n + 1)
    return out


def direct_sum_1d(f, a: float, z: complex) -> complex:
    """``sum_{m>=0} f((m + a) z)``, cut where the summand is negligible."""
    _check_wedge(complex(z))
    # along the ray the argument grows like (m + a)|z| cos(arg z) in the real direction
    reach = f.cutoff() / (abs(z) * max(math.cos(cmath.phase(z)), 1e-3))
    m_max = int(reach - a) + 2
    vals = [f((m + a) * z) for m in range(max(m_max, 1))]
    if isinstance(z, complex) and z.imag:
        return complex(sum(vals))
    return math.fsum(vals)


def empirical_order(f, a: float, N: int, zs: Sequence[float]) -> float:
    """Log-log slope of ``|direct - approximation|`` against ``z``."""
    errs = [abs(direct_sum_1d(f, a, z) - euler_maclaurin_1d(f, a, z, N)) for z in zs]
    slope, _ = np.polyfit(np.log(zs), np.log(errs), 1)
    return float(slope)


EM_STEPS = (0.1, 0.05, 0.025, 0.0125)


def em_orders(Ns: Sequence[int] = (2, 3, 4), a: float = 2 / 3, c: float = 12.0,
              zs: Sequence[float] = EM_STEPS) -> dict[int, float]:
    """Empirical orders of the 1-D formula for ``e^{-c w^2}`` with shift ``a``.

    The Gaussian is even, so its odd derivatives at 0 vanish and the error for
    odd ``N`` is really of order ``N + 1``.
    """
    f = Gaussian(c)
    return {N: empirical_order(f, a, N, zs) for N in Ns}


class SeparableGaussian2D:
    """``f(x1, x2) = e^{-c1 x1^2 - c2 x2^2}``."""

    def __init__(self, c1: float = 1.0, c2: float = 1.0):
        self.g1, self.g2 = Gaussian(c1), Gaussian(c2)

    def __call__(self, x1, x2):
        return self.g1(x1) * self.g2(x2)

    def double_integral(self) -> float:
        return self.g1.integral() * self.g2.integral()

    def edge_integral_1(self, n1: int) -> float:
        """``int_0^oo f^(n1,0)(0, w) dw``."""
        return self.g1.derivative_at_zero(n1) * self.g2.integral()

    def edge_integral_2(self, n2: int) -> float:
        return self.g2.derivative_at_zero(n2) * self.g1.integral()

    def corner(self, n1: int, n2: int) -> float:
        return self.g1.derivative_at_zero(n1) * self.g2.derivative_at_zero(n2)

    def cutoff(self) -> tuple[float, float]:
        return self.g1.cutoff(), self.g2.cutoff()


class NumericFunction2D:
    """A real-analytic ``f(x1, x2)`` given as an mpmath-friendly callable.

    Derivatives and integrals are obtained with mpmath (numerical
    differentiation and tanh-sinh quadrature), so this is only meant for a
    handful of low-order terms.
    """

    def __init__(self, fn: Callable, cutoff: tuple[float, float] = (8.0, 8.0)):
        self.fn = fn
        self._cutoff = cutoff

    def __call__(self, x1, x2):
        return float(self.fn(mpmath.mpf(x1), mpmath.mpf(x2)))

    def double_integral(self) -> float:
        return float(mpmath.quad(self.fn, [0, self._cutoff[0]], [0, self._cutoff[1]]))

    def edge_integral_1(self, n1: int) -> float:
        g = (lambda w: mpmath.diff(lambda x: self.fn(x, w), 0, n1)) if n1 else (lambda w: self.fn(0, w))
        return float(mpmath.quad(g, [0, self._cutoff[1]]))

    def edge_integral_2(self, n2: int) -> float:
        g = (lambda w: mpmath.diff(lambda y: self.fn(w, y), 0, n2)) if n2 else (lambda w: self.fn(w, 0))
        return float(mpmath.quad(g, [0, self._cutoff[0]]))

    def corner(self, n1: int, n2: int) -> float:
        return float(mpmath.diff(self.fn, (0, 0), (n1, n2)))

    def cutoff(self) -> tuple[float, float]:
        return self._cutoff


@dataclass(frozen=True)
class EM2DTerms:
    """The four pieces of the two-dimensional formula (their sum is the approximation)."""

    double: complex
    edge1: complex
    edge2: complex
    corner: complex

    @property
    def total(self) -> complex:
        return self.double + self.edge1 + self.edge2 + self.corner


def euler_maclaurin_2d_terms(f, a: tuple[float, float], z: complex, N: int) -> EM2DTerms:
    _check_wedge(complex(z))
    a1, a2 = a
    double = f.double_integral() / z ** 2
    edge1 = -sum(bernoulli_poly(n + 1, a1) / math.factorial(n + 1) * z ** n * f.edge_integral_1(n)
                 for n in range(N)) / z
    edge2 = -sum(bernoulli_poly(n + 1, a2) / math.factorial(n + 1) * z ** n * f.edge_integral_2(n)
                 for n in range(N)) / z
    corner = sum(bernoulli_poly(n1 + 1, a1) * bernoulli_poly(n2 + 1, a2) * f.corner(n1, n2)
                 / (math.factorial(n1 + 1) * math.factorial(n2 + 1)) * z ** (n1 + n2)
                 for n1 in range(N) for n2 in range(N - n1))
    return EM2DTerms(double, edge1, edge2, corner)


def euler_maclaurin_2d(f, a: tuple[float, float], z: complex, N: int) -> complex:
    return euler_maclaurin_2d_terms(f, a, z, N).total


def direct_sum_2d(f, a: tuple[float, float], z: float) -> float:
    """``sum_{m in N_0^2} f((m + a) z)`` for real ``z > 0``."""
    _check_wedge(complex(z))
    c1, c2 = f.cutoff()
    m1 = int(c1 / z - a[0]) + 2
    m2 = int(c2 / z - a[1]) + 2
    return math.fsum(f((i + a[0]) * z, (j + a[1]) * z) for i in range(m1) for j in range(m2))


def empirical_order_2d(f, a: tuple[float, float], N: int, zs: Sequence[float]) -> float:
    errs = [abs(direct_sum_2d(f, a, z) - euler_maclaurin_2d(f, a, z, N)) for z in zs]
    slope, _ = np.polyfit(np.log(zs), np.log(errs), 1)
    return float(slope)


# The alternating theta sum sum_n (-1)^n e^{-(n^2+n) z}: splitting by parity gives
# e^{z/4} sum_m (f((m + 1/4) 2 sqrt z) - f((m + 3/4) 2 sqrt z)) with f = e^{-w^2}; the
# integrals cancel and the constant terms leave -B_1(1/4) + B_1(3/4).


def alternating_theta_limit() -> float:
    return -bernoulli_poly(1, 0.25) + bernoulli_poly(1, 0.75)


def alternating_theta_sum(z: float) -> float:
    vals = []
    n = 0
    while (n * n + n) * z < 60:
        vals.append((-1) ** n * math.exp(-(n * n + n) * z))
        n += 1
    return math.fsum(vals)


def alternating_theta_em(z: float, N: int) -> float:
    f = Gaussian(1.0)
    w = 2 * math.sqrt(z)
    return math.exp(z / 4) * (euler_maclaurin_1d(f, 0.25, w, N) - euler_maclaurin_1d(f, 0.75, w, N)).real


# -- special functions and the theta decomposition ----------------------------------------


def special_beta(x: float) -> float:
    """``beta(x) = erfc(sqrt(pi x))`` for ``x >= 0``."""
    if x < 0:
        raise ValueError("beta is defined for x >= 0")
    return math.erfc(math.sqrt(math.pi * x))


def special_E(x: float) -> float:
    """``E(x) = 2 int_0^x e^{-pi t^2} dt = sgn(x) (1 - beta(x^2))``."""
    return math.erf(math.sqrt(math.pi) * x)


def _sgn(x: float) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ThetaData:
    """Quadratic form ``3 n1^2 + 4 n1 n2 + n2^2`` with its cone vectors and characteristics."""

    A: tuple[tuple[int, int], tuple[int, int]] = ((6, 4), (4, 2))
    c1: tuple[int, int] = (1, -2)
    c2: tuple[int, int] = (2, -3)
    a: tuple[float, float] = (0.5, 0.0)
    b: tuple[float, float] = (-0.25, 0.5)

    def Q(self, x):
        """``x^T A x / 2``; exact (a Fraction, or int when integral) for integer ``x``."""
        (p, r), (_, s) = self.A
        num = p * x[0] * x[0] + 2 * r * x[0] * x[1] + s * x[1] * x[1]
        if all(isinstance(v, int) for v in x):
            half = Fraction(num, 2)
            return int(half) if half.denominator == 1 else half
        return num / 2

    def B(self, x, y) -> float:
        return self.Q((x[0] + y[0], x[1] + y[1])) - self.Q(x) - self.Q(y)

    def same_cone(self) -> bool:
        return self.Q(self.c1) < 0 and self.Q(self.c2) < 0 and self.B(self.c1, self.c2) < 0


def theta_decomposition_residuals(td: ThetaData, v: float, box: int,
                                  flip: str | None = None) -> np.ndarray:
    """Termwise ``|sgn part - (E part + beta part)|`` on the box ``|n_i - a_i| <= box``.

    ``flip`` in {"beta1", "beta2"} negates one beta term (negative control).
    """
    if v <= 0:
        raise ValueError("v must be positive")
    sv = math.sqrt(v)
    q1, q2 = td.Q(td.c1), td.Q(td.c2)
    s1 = -1.0 if flip == "beta1" else 1.0
    s2 = -1.0 if flip == "beta2" else 1.0
    out = np.zeros((2 * box + 1, 2 * box + 1))
    for i, k1 in enumerate(range(-box, box + 1)):
        for j, k2 in enumerate(range(-box, box + 1)):
            n = (k1 + td.a[0], k2 + td.a[1])
            B1, B2 = td.B(td.c1, n), td.B(td.c2, n)
            n1, n2 = -B1 / 2, B2 / 2
            lhs = _sgn(B1) - _sgn(B2)
            e_part = special_E(B1 * sv / math.sqrt(-q1)) - special_E(B2 * sv / math.sqrt(-q2))
            beta_part = -(s1 * _sgn(n1) * special_beta(4 * n1 * n1 * v)
                          + s2 * _sgn(n2) * special_beta(4 * n2 * n2 * v / 3))
            out[i, j] = abs(lhs - (e_part + beta_part))
    return out


def theta_decomposition_check(td: ThetaData, v: float, box: int = 30, flip: str | None = None) -> float:
    """Largest termwise residual of ``g = Theta + Theta^-``."""
    return float(theta_decomposition_residuals(td, v, box, flip).max())


def identification_check(td: ThetaData, box: int = 30) -> bool:
    """``n1 = -B(c1, n)/2`` and ``n2 = B(c2, n)/2`` for every lattice point in the box."""
    for k1 in range(-box, box + 1):
        for k2 in range(-box, box + 1):
            n = (k1 + td.a[0], k2 + td.a[1])
            if -td.B(td.c1, n) / 2 != n[0] or td.B(td.c2, n) / 2 != n[1]:
                return False
    return True


def _beta_times_exp(x: float, log_weight: float) -> float:
    """``beta(x) e^{log_weight}`` without overflow when log_weight is large."""
    y = math.sqrt(math.pi * x)
    return float(erfcx(y)) * math.exp(log_weight - y * y)


def theta_minus(t: float, box: int | None = None) -> float:
    """``Theta^-`` at ``tau = i t / (2 pi)`` by direct lattice summation."""
    if t <= 0:
        raise ValueError("t must be positive")
    v = t / (2 * math.pi)
    M = box if box is not None else int(12 / math.sqrt(t)) + 5
    terms = []
    for k1 in range(-M, M):
        n1 = k1 + 0.5
        sign = -1 if k1 % 2 else 1
        for n2 in range(-M, M):
            w = -(3 * n1 * n1 + 4 * n1 * n2 + n2 * n2) * t
            val = math.copysign(1, n1) * _beta_times_exp(4 * n1 * n1 * v, w)
            if n2:
                val += _sgn(n2) * _beta_times_exp(4 * n2 * n2 * v / 3, w)
            terms.append(sign * val)
    return math.fsum(terms)


def hecke_G(t: float, box: int | None = None) -> float:
    """``(sum_{n,r>=0} - sum_{n,r<0}) (-1)^n q^{3n^2+4nr+r^2+3n+2r}`` at ``q = e^{-t}``."""
    M = box if box is not None else int(12 / math.sqrt(t)) + 5
    terms = []
    for n in range(-M, M):
        for r in range(-M, M):
            if (n >= 0) != (r >= 0):
                continue
            e = 3 * n * n + 4 * n * r + r * r + 3 * n + 2 * r
            if e * t > 60:
                continue
            terms.append((1 if n >= 0 else -1) * (-1) ** n * math.exp(-e * t))
    return math.fsum(terms)

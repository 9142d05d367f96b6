"""Bailey pairs as checkable truncated identities.

A pair ``(alpha_n, beta_n)`` relative to ``(a, q^s)`` with ``a = q^{a_exponent}``
must satisfy

    beta_n = sum_{k=0}^{n} alpha_k / ((q^s; q^s)_{n-k} (a q^s; q^s)_{n+k}).

Each pair below carries closed-form generators for ``alpha_n`` and ``beta_n``
returning a :class:`RankSeries` through a requested order; :func:`bailey_check`
expands both sides and compares them coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..series import PochSpec, QSeries, RankSeries, pochhammer, neg_one_pow

Term = Callable[[int, int], RankSeries]


@dataclass(frozen=True)
class BaileyPair:
    """``alpha``/``beta`` generators ``(n, order) -> RankSeries``."""

    name: str
    a_exponent: int
    step: int
    alpha: Term = field(repr=False)
    beta: Term = field(repr=False)

    def perturbed(self, index: int, delta: int = 1) -> "BaileyPair":
        """Copy with ``alpha_index`` shifted by the constant ``delta`` (a negative control)."""
        base = self.alpha

        def alpha(n, order):
            a = base(n, order)
            return a + RankSeries.monomial(delta, 0, 0, order) if n == index else a

        return BaileyPair(f"{self.name}[alpha_{index}{delta:+d}]", self.a_exponent, self.step,
                          alpha, self.beta)


@dataclass(frozen=True)
class BaileyCheck:
    pair: str
    n_max: int
    order: int
    failed: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failed

    def __bool__(self) -> bool:
        return self.ok


def _poly(terms: dict[int, int], order: int) -> RankSeries:
    return RankSeries.from_terms([(c, 0, e) for e, c in terms.items()], order)


def _geometric(length: int, step: int, order: int) -> dict[int, int]:
    """``(1 - q^{step*length}) / (1 - q^step)`` as ``{exponent: 1}``."""
    return {step * i: 1 for i in range(length) if step * i <= order}


# -- the pairs ----------------------------------------------------------------


def ou_pair() -> BaileyPair:
    """Pair relative to ``(q^2, q^2)`` behind the Hecke form of the odd unimodal function.

    alpha_n = (-1)^n q^{n^2+n} (1 - q^{4n+2}) / ((1 - q^2)(1 - zeta q^{2n+1})(1 - zeta^-1 q^{2n+1}))
    beta_n  = 1 / (zeta q, zeta^-1 q; q^2)_{n+1}
    """

    def alpha(n, order):
        e0 = n * n + n
        num = {e0 + e: neg_one_pow(n) for e in _geometric(2 * n + 1, 2, order - e0)} if e0 <= order else {}
        w = 2 * n + 1
        return _poly(num, order).div_binomial(-1, 1, w).div_binomial(-1, -1, w)

    def beta(n, order):
        f = RankSeries.one(order)
        for k in range(n + 1):
            f = f.div_binomial(-1, 1, 2 * k + 1).div_binomial(-1, -1, 2 * k + 1)
        return f

    return BaileyPair("ou", 2, 2, alpha, beta)


def andrews_pair(w: tuple[int, int, int] = (-1, 1, 1), step: int = 2) -> BaileyPair:
    """Pair relative to ``(1, q^s)`` with a monomial parameter ``w = sign zeta^e q^c``.

    alpha_0 = 1, alpha_n = (-1)^n (w^n q^{s n(n-1)/2} + w^{-n} q^{s n(n+1)/2}),
    beta_n = (w, q^s/w; q^s)_n / (q^s; q^s)_{2n}.

    The default ``w = -zeta q`` with ``s = 2`` is the specialisation used for
    the odd strongly unimodal Hecke form.
    """
    sign, e, c = w
    if sign not in (1, -1) or not 0 <= c <= step or (sign == 1 and e == 0 and c in (0, step)):
        raise ValueError("w must be +-zeta^e q^c with 0 <= c <= step and no factor 1 - 1")

    def alpha(n, order):
        if n == 0:
            return RankSeries.one(order)
        s = neg_one_pow(n)
        # sign^-n = sign^n since sign = +-1
        t1 = (s * sign ** n, e * n, c * n + step * n * (n - 1) // 2)
        t2 = (s * sign ** n, -e * n, -c * n + step * n * (n + 1) // 2)
        return RankSeries.from_terms([t for t in (t1, t2) if t[2] <= order], order)

    def beta(n, order):
        f = pochhammer(PochSpec(sign, e, c, step, n), order)
        f = pochhammer(PochSpec(sign, -e, step - c, step, n), into=f)
        return pochhammer(PochSpec(1, 0, step, step, 2 * n), into=f, inverse=True)

    return BaileyPair(f"andrews(w={w},s={step})", 0, step, alpha, beta)


def qq_pair(step: int = 1) -> BaileyPair:
    """Pair relative to ``(q^s, q^s)`` with ``beta_n = 1``.

    alpha_n = q^{s(2n^2+n)} (1 - q^{s(2n+1)}) / (1 - q^s) * sum_{|j|<=n} (-1)^j q^{-s j(3j+1)/2}
    """

    def alpha(n, order):
        inner: dict[int, int] = {}
        for j in range(-n, n + 1):
            e = step * (2 * n * n + n) - step * (j * (3 * j + 1) // 2)
            inner[e] = inner.get(e, 0) + neg_one_pow(j)
        out: dict[int, int] = {}
        for e, v in inner.items():
            for g in _geometric(2 * n + 1, step, order):
                if e + g <= order:
                    out[e + g] = out.get(e + g, 0) + v
        return _poly(out, order)

    def beta(n, order):
        return RankSeries.one(order)

    return BaileyPair(f"qq(s={step})", step, step, alpha, beta)


def perturbed_ou_pair() -> BaileyPair:
    return ou_pair().perturbed(2)


# -- the defining relation ----------------------------------------------------


def _denominator_inverse(pair: BaileyPair, n: int, k: int, order: int) -> QSeries:
    s = pair.step
    f = pochhammer(PochSpec(1, 0, s, s, n - k), order, inverse=True)
    return pochhammer(PochSpec(1, 0, pair.a_exponent + s, s, n + k), into=f, inverse=True)


def bailey_rhs(pair: BaileyPair, n: int, order: int) -> RankSeries:
    out = RankSeries.zero(order)
    for k in range(n + 1):
        out = out + pair.alpha(k, order) * _denominator_inverse(pair, n, k, order)
    return out


def bailey_check(pair: BaileyPair, n_max: int = 12, order: int = 60) -> BaileyCheck:
    """Verify the defining relation for ``0 <= n <= n_max`` through ``q^order``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    failed = tuple(n for n in range(n_max + 1) if pair.beta(n, order) != bailey_rhs(pair, n, order))
    return BaileyCheck(pair.name, n_max, order, failed)


def standard_pairs() -> list[BaileyPair]:
    """The three pairs behind the Hecke-type forms."""
    return [ou_pair(), andrews_pair(), qq_pair()]

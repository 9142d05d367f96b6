"""Exact truncated power series in ``q`` and in ``(zeta, q)``.

Two value types live here:

* :class:`QSeries` -- a dense vector of Python integers ``c[0..N]`` standing
  for ``c[0] + c[1] q + ... + c[N] q^N + O(q^{N+1})``.
* :class:`RankSeries` -- the same, except that every coefficient is a Laurent
  polynomial in ``zeta`` stored as a sparse ``{rank: coefficient}`` map.

Both are immutable.  Every operation is exact through the stated truncation
order and silently drops higher terms; combining two operands of different
orders yields the smaller order.

Products of the shape ``(1 + c zeta^e q^j)`` and their reciprocals are the
workhorses of every generating function in this package, so both types carry
dedicated O(N) methods :meth:`mul_binomial` and :meth:`div_binomial` for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "QSeries",
    "RankSeries",
    "PochSpec",
    "pochhammer",
    "expand_bilateral_factor",
]


def _object_array(values: Iterable[int], size: int) -> np.ndarray:
    arr = np.zeros(size, dtype=object)
    vals = [int(v) for v in values][:size]
    arr[: len(vals)] = vals
    return arr


class QSeries:
    """Truncated power series in ``q`` with arbitrary-precision coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        if isinstance(coeffs, np.ndarray):
            vals = coeffs.tolist()
        else:
            vals = list(coeffs)
        if order is None:
            order = len(vals) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        arr = _object_array(vals, order + 1)
        arr.flags.writeable = False
        self._c = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "QSeries":
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._c = arr
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, coeff: int, exponent: int, order: int) -> "QSeries":
        if exponent < 0:
            raise ValueError("negative q-exponent")
        arr = np.zeros(order + 1, dtype=object)
        if exponent <= order:
            arr[exponent] = int(coeff)
        return cls._wrap(arr)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], order: int) -> "QSeries":
        arr = np.zeros(order + 1, dtype=object)
        for k, v in terms.items():
            if k < 0:
                raise ValueError("negative q-exponent")
            if k <= order:
                arr[k] += int(v)
        return cls._wrap(arr)

    # -- access -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> list[int]:
        return self._c.tolist()

    def array(self) -> np.ndarray:
        """Read-only object array of the coefficients."""
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c.tolist())

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._c[n].tolist()
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient q^{n} outside [0, {self.order}]")
        return self._c[n]

    def __repr__(self) -> str:
        terms = [f"{c}*q^{k}" for k, c in enumerate(self._c) if c]
        body = " + ".join(terms[:8]) or "0"
        if len(terms) > 8:
            body += " + ..."
        return f"QSeries({body} + O(q^{self.order + 1}))"

    def __eq__(self, other) -> bool:
        if isinstance(other, RankSeries):
            return other == RankSeries.from_qseries(self)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and bool(np.all(self._c == other._c))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self._c)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return QSeries._wrap(self._c[: order + 1].copy())

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, np.integer)):
            return QSeries([int(other)], self.order)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, RankSeries):
            return RankSeries.from_qseries(self) + other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return QSeries._wrap(self._c[:n] + other._c[:n])

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._wrap(-self._c)

    def __sub__(self, other):
        if isinstance(other, RankSeries):
            return RankSeries.from_qseries(self) - other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return QSeries._wrap(self._c[:n] - other._c[:n])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return QSeries._wrap(self._c * int(other))
        if isinstance(other, RankSeries):
            return other * self
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        a, b = self._c[:n], other._c[:n]
        # np.convolve is O(n^2) on object arrays but runs the loop in C.
        return QSeries._wrap(np.convolve(a, b)[:n].astype(object))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.invert() ** (-k)
        out = QSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q^k`` (``k >= 0``), keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        arr = np.zeros(len(self._c), dtype=object)
        if k <= self.order:
            arr[k:] = self._c[: len(self._c) - k]
        return QSeries._wrap(arr)

    def mul_binomial(self, c: int, k: int) -> "QSeries":
        """Multiply by ``1 + c q^k``."""
        if k < 0:
            raise ValueError("negative exponent")
        arr = self._c.copy()
        if k == 0:
            return QSeries._wrap(arr * (1 + c))
        if k <= self.order:
            arr[k:] = arr[k:] + c * self._c[: len(arr) - k]
        return QSeries._wrap(arr)

    def div_binomial(self, c: int, k: int) -> "QSeries":
        """Divide by ``1 + c q^k`` with ``k >= 1``."""
        if k < 1:
            raise ValueError("divisor 1 + c q^k needs k >= 1")
        arr = self._c.copy()
        size = len(arr)
        # b[n] = a[n] - c b[n-k]; each block of length k depends only on the
        # previous block, which is already final.
        for start in range(k, size, k):
            stop = min(start + k, size)
            arr[start:stop] = arr[start:stop] - c * arr[start - k : stop - k]
        return QSeries._wrap(arr)

    def invert(self) -> "QSeries":
        a0 = self._c[0]
        if a0 not in (1, -1):
            raise ValueError(f"constant term {a0} is not a unit")
        a = self._c
        size = len(a)
        nz = [k for k in range(1, size) if a[k]]
        if len(nz) <= 1:
            out = QSeries([a0], self.order)
            if nz:
                # 1 / (a0 + c q^k) = a0 / (1 + a0 c q^k)
                out = out.div_binomial(a0 * a[nz[0]], nz[0])
            return out
        b = [0] * size
        b[0] = a0
        for n in range(1, size):
            s = 0
            for k in nz:
                if k > n:
                    break
                s += a[k] * b[n - k]
            b[n] = -a0 * s
        return QSeries(b, self.order)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def specialize(self) -> "QSeries":
        return self


class RankSeries:
    """Truncated series in ``q`` whose coefficients are Laurent polynomials in ``zeta``.

    ``coeffs[n]`` is a mapping ``rank m -> integer`` giving the coefficient of
    ``zeta^m q^n``.  Zero entries are never stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Mapping[int, int]], order: int | None = None):
        rows = [dict(d) for d in coeffs]
        if order is None:
            order = len(rows) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        rows = rows[: order + 1] + [{} for _ in range(order + 1 - len(rows))]
        self._c = tuple(_clean(r) for r in rows)

    @classmethod
    def _wrap(cls, rows: list[dict]) -> "RankSeries":
        obj = cls.__new__(cls)
        obj._c = tuple(_clean(r) for r in rows)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "RankSeries":
        return cls._wrap([{} for _ in range(order + 1)])

    @classmethod
    def one(cls, order: int) -> "RankSeries":
        return cls.monomial(1, 0, 0, order)

    @classmethod
    def monomial(cls, coeff: int, rank: int, exponent: int, order: int) -> "RankSeries":
        """``coeff * zeta^rank * q^exponent``."""
        if exponent < 0:
            raise ValueError("negative q-exponent")
        rows = [{} for _ in range(order + 1)]
        if exponent <= order:
            rows[exponent][rank] = int(coeff)
        return cls._wrap(rows)

    @classmethod
    def from_qseries(cls, f: QSeries) -> "RankSeries":
        return cls._wrap([{0: c} if c else {} for c in f.coeffs])

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, int]], order: int) -> "RankSeries":
        """Build from ``(coeff, rank, exponent)`` triples; terms above order are dropped."""
        rows = [{} for _ in range(order + 1)]
        for c, m, n in terms:
            if n < 0:
                raise ValueError("negative q-exponent")
            if n <= order:
                row = rows[n]
                row[m] = row.get(m, 0) + c
        return cls._wrap(rows)

    # -- access -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, n: int) -> dict[int, int]:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient q^{n} outside [0, {self.order}]")
        return dict(self._c[n])

    def coeff(self, n: int, m: int) -> int:
        return self._c[n].get(m, 0)

    def rows(self):
        """Iterate over ``(n, {m: c})`` with read-only views of the rows."""
        return enumerate(self._c)

    def __repr__(self) -> str:
        parts = []
        for n, row in enumerate(self._c):
            for m in sorted(row):
                parts.append(f"{row[m]}*z^{m}*q^{n}")
        body = " + ".join(parts[:8]) or "0"
        if len(parts) > 8:
            body += " + ..."
        return f"RankSeries({body} + O(q^{self.order + 1}))"

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            other = RankSeries.from_qseries(other)
        if not isinstance(other, RankSeries):
            return NotImplemented
        return self._c == other._c

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self._c)

    def truncate(self, order: int) -> "RankSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return RankSeries._wrap([dict(r) for r in self._c[: order + 1]])

    def specialize(self) -> QSeries:
        """Set ``zeta = 1``."""
        return QSeries([sum(r.values()) for r in self._c], self.order)

    def evaluate_zeta(self, zeta: int) -> QSeries:
        """Set ``zeta`` to ``+1`` or ``-1``."""
        if zeta not in (1, -1):
            raise ValueError("only zeta = +1 or -1 keeps integer coefficients")
        return QSeries([sum(c * zeta ** (m & 1) for m, c in r.items()) for r in self._c], self.order)

    def within_rank_bound(self) -> bool:
        """True when every stored rank at level n satisfies ``|m| <= n``."""
        return all(abs(m) <= n for n, r in enumerate(self._c) for m in r)

    # -- ring operations --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RankSeries):
            return other
        if isinstance(other, QSeries):
            return RankSeries.from_qseries(other)
        if isinstance(other, (int, np.integer)):
            return RankSeries.monomial(int(other), 0, 0, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        rows = []
        for a, b in zip(self._c[:n], other._c[:n]):
            r = dict(a)
            for m, c in b.items():
                r[m] = r.get(m, 0) + c
            rows.append(r)
        return RankSeries._wrap(rows)

    __radd__ = __add__

    def __neg__(self) -> "RankSeries":
        return RankSeries._wrap([{m: -c for m, c in r.items()} for r in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            k = int(other)
            return RankSeries._wrap([{m: k * c for m, c in r.items()} for r in self._c])
        if isinstance(other, QSeries):
            return self._mul_qseries(other)
        if not isinstance(other, RankSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        out = [{} for _ in range(n)]
        for n1 in range(n):
            a = self._c[n1]
            if not a:
                continue
            for n2 in range(n - n1):
                b = other._c[n2]
                if not b:
                    continue
                row = out[n1 + n2]
                for m1, c1 in a.items():
                    for m2, c2 in b.items():
                        m = m1 + m2
                        row[m] = row.get(m, 0) + c1 * c2
        return RankSeries._wrap(out)

    __rmul__ = __mul__

    def _mul_qseries(self, f: QSeries) -> "RankSeries":
        n = min(self.order, f.order) + 1
        fc = f.coeffs
        nz = [(k, fc[k]) for k in range(n) if fc[k]]
        out = [{} for _ in range(n)]
        for n1 in range(n):
            a = self._c[n1]
            if not a:
                continue
            for k, c in nz:
                if n1 + k >= n:
                    break
                row = out[n1 + k]
                for m, v in a.items():
                    row[m] = row.get(m, 0) + c * v
        return RankSeries._wrap(out)

    def shift(self, rank: int, exponent: int) -> "RankSeries":
        """Multiply by ``zeta^rank q^exponent``.

        A negative exponent is allowed only when the rows it would push below
        ``q^0`` are empty; the truncation order drops by the same amount.
        """
        if exponent < 0:
            k = -exponent
            if any(self._c[:k]):
                raise ValueError(f"q^{exponent} would leave negative powers of q")
            if k > self.order:
                raise ValueError("shift leaves no known coefficients")
            return RankSeries._wrap([{m + rank: c for m, c in r.items()} for r in self._c[k:]])
        size = len(self._c)
        rows = [{} for _ in range(size)]
        for n in range(size - exponent):
            rows[n + exponent] = {m + rank: c for m, c in self._c[n].items()}
        return RankSeries._wrap(rows)

    def mul_binomial(self, c: int, rank: int, exponent: int) -> "RankSeries":
        """Multiply by ``1 + c zeta^rank q^exponent`` (``exponent >= 0``)."""
        if exponent < 0:
            raise ValueError("negative exponent")
        rows = [dict(r) for r in self._c]
        for n in range(len(rows) - 1, exponent - 1, -1):
            src = self._c[n - exponent]
            row = rows[n]
            for m, v in src.items():
                key = m + rank
                row[key] = row.get(key, 0) + c * v
        return RankSeries._wrap(rows)

    def div_binomial(self, c: int, rank: int, exponent: int) -> "RankSeries":
        """Divide by ``1 + c zeta^rank q^exponent``.

        A negative exponent is rewritten as
        ``1/(1 + c z^e q^w) = c z^-e q^-w / (1 + c z^-e q^-w)`` (``c = +-1``),
        which is the unique expansion in nonnegative powers of ``q``.
        """
        if exponent == 0:
            raise ValueError("pole at q^0: 1 + c zeta^e cannot be expanded")
        if exponent < 0:
            if c not in (1, -1):
                raise ValueError("negative-exponent rewrite needs c = +-1")
            return (self * c).shift(-rank, -exponent).div_binomial(c, -rank, -exponent)
        rows = [dict(r) for r in self._c]
        for n in range(exponent, len(rows)):
            row = rows[n]
            for m, v in rows[n - exponent].items():
                key = m + rank
                row[key] = row.get(key, 0) - c * v
            for m in [m for m, v in row.items() if not v]:
                del row[m]
        return RankSeries._wrap(rows)

    def invert(self) -> "RankSeries":
        head = self._c[0]
        if set(head) != {0} or head[0] not in (1, -1):
            raise ValueError(f"constant term {head} is not +-1")
        a0 = head[0]
        size = len(self._c)
        out = [{} for _ in range(size)]
        out[0] = {0: a0}
        nz = [k for k in range(1, size) if self._c[k]]
        for n in range(1, size):
            acc: dict[int, int] = {}
            for k in nz:
                if k > n:
                    break
                for m1, c1 in self._c[k].items():
                    for m2, c2 in out[n - k].items():
                        m = m1 + m2
                        acc[m] = acc.get(m, 0) + c1 * c2
            out[n] = _clean({m: -a0 * v for m, v in acc.items()})
        return RankSeries._wrap(out)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        if isinstance(other, RankSeries):
            return self * other.invert()
        return NotImplemented


def neg_one_pow(k: int) -> int:
    """``(-1)^k`` as an int for any integer ``k`` (``(-1) ** -1`` is a float)."""
    return -1 if k % 2 else 1


def _clean(row: dict) -> dict:
    return {m: c for m, c in row.items() if c}


@dataclass(frozen=True)
class PochSpec:
    """``(sign * zeta^zeta_exponent * q^q_offset ; q^q_step)_length``.

    ``length=None`` means the (truncated) infinite product.  Negative lengths
    use the reciprocal rule ``(a;q)_{-n} = 1 / prod_{j=1}^{n} (1 - a q^{-j})``.
    """

    sign: int = 1
    zeta_exponent: int = 0
    q_offset: int = 1
    q_step: int = 1
    length: int | None = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.q_step < 1:
            raise ValueError("q_step must be positive")
        if self.q_offset < 0:
            raise ValueError("q_offset must be nonnegative")
        if self.length is None and self.q_offset < 1:
            raise ValueError("infinite product (a;q)_inf needs a q_offset >= 1")


def pochhammer(spec: PochSpec, order: int | None = None, into=None, inverse: bool = False):
    """Expand a q-Pochhammer symbol through ``q^order``.

    Returns a :class:`QSeries` when ``zeta`` does not occur and a
    :class:`RankSeries` otherwise.  With ``into`` the product is multiplied
    onto that series (whose order then wins) instead of onto ``1``; with
    ``inverse=True`` the series is divided by the product instead.
    """
    if into is not None:
        order = into.order
    if order is None:
        raise TypeError("need an order or a series to multiply into")
    s, e, j, d = spec.sign, spec.zeta_exponent, spec.q_offset, spec.q_step
    if spec.length is None:
        # factors with q-exponent beyond the order are 1 + O(q^{order+1})
        exps = list(range(j, order + 1, d))
    elif spec.length >= 0:
        exps = [j + d * k for k in range(spec.length)]
    else:
        exps = [j - d * k for k in range(1, -spec.length + 1)]
        inverse = not inverse

    if e == 0 and not isinstance(into, RankSeries) and min(exps, default=1) >= 0:
        out = QSeries.one(order) if into is None else into
        for w in exps:
            if w == 0:
                if inverse:
                    raise ValueError("cannot divide by a constant factor over the integers")
                out = out * (1 - s)
                continue
            out = out.div_binomial(-s, w) if inverse else out.mul_binomial(-s, w)
        return out

    if into is None:
        out = RankSeries.one(order)
    elif isinstance(into, QSeries):
        out = RankSeries.from_qseries(into)
    else:
        out = into
    for w in exps:
        if w == 0 and e == 0:
            if inverse:
                raise ValueError("cannot divide by a constant factor over the integers")
            out = out * (1 - s)
        elif w == 0 and inverse:
            raise ValueError("1 / (1 - a zeta^e) has no power-series expansion in q")
        elif inverse:
            out = out.div_binomial(-s, e, w)
        elif w >= 0:
            out = out.mul_binomial(-s, e, w)
        else:
            # 1 - s z^e q^w with w < 0 is not a power series; it only makes
            # sense inside an expression that clears the pole.
            raise ValueError("finite product with a negative q-exponent factor")
    return out


def expand_bilateral_factor(sign: int, zeta_exponent: int, q_exponent: int, order: int) -> RankSeries:
    """Expand ``1 / (1 + sign * zeta^e * q^w)`` in nonnegative powers of ``q``.

    For ``w > 0`` this is the geometric series ``sum_k (-sign)^k zeta^{ek} q^{wk}``;
    for ``w < 0`` the factor is first rewritten in terms of ``zeta^{-e} q^{-w}``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return RankSeries.one(order).div_binomial(sign, zeta_exponent, q_exponent)

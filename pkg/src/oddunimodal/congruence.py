"""Parity and mod-4 behaviour of ou*(n).

Everything is computed on exact integer tables and reduced only at the end,
with one exception: :func:`odd_polynomial_check` is a statement about
polynomials mod 4 and reduces as it goes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .genfun.forms import oustar_counts
from .series import PochSpec, QSeries, pochhammer


# -- coefficient tables --------------------------------------------------------


def nu_coeffs(N: int) -> list[int]:
    """c(0..N) for nu(q) = sum_{n>=0} (q;q^2)_n (-q)^n."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    total = np.zeros(N + 1, dtype=object)
    p = np.zeros(N + 1, dtype=object)
    p[0] = 1
    for n in range(N + 1):
        if n:
            k = 2 * n - 1
            if k <= N:
                p[k:] = p[k:] - p[: N + 1 - k]
        total[n:] += (-1) ** n * p[: N + 1 - n]
    return [int(x) for x in total]


def eo_coeffs(N: int) -> list[int]:
    """EO(0..N) from (q^4;q^4)_inf^3 / (q^2;q^2)_inf^2."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    f = QSeries.one(N)
    for _ in range(3):
        f = pochhammer(PochSpec(1, 0, 4, 4, None), into=f)
    for _ in range(2):
        f = pochhammer(PochSpec(1, 0, 2, 2, None), into=f, inverse=True)
    return f.coeffs


@dataclass(frozen=True)
class MockCoeffTable:
    horizon: int
    c: tuple[int, ...]
    eo: tuple[int, ...]

    @classmethod
    def build(cls, N: int) -> "MockCoeffTable":
        return cls(N, tuple(nu_coeffs(N)), tuple(eo_coeffs(N)))

    def even_part_matches(self) -> bool:
        return all(self.c[n] == self.eo[n] for n in range(0, self.horizon + 1, 2))


def oustar_table(N: int) -> list[int]:
    return oustar_counts(N).coeffs


# -- parity and the odd-polynomial lemma ------------------------------------------


def parity_check(N: int, table: list[int] | None = None) -> list[int]:
    """Weights ``1 <= n <= N`` where "ou*(n) odd" and "6n - 2 is a square" disagree."""
    t = oustar_table(N) if table is None else table
    bad = []
    for n in range(1, N + 1):
        m = 6 * n - 2
        square = math.isqrt(m) ** 2 == m
        if (t[n] % 2 == 1) != square:
            bad.append(n)
    return bad


def _mul_binomial_mod(p: list[int], c: int, k: int, mod: int) -> list[int]:
    out = p + [0] * k
    for i, v in enumerate(p):
        out[i + k] = (out[i + k] + c * v) % mod
    return out


def odd_polynomial_check(n_max: int, N: int | None = None) -> bool:
    """(-q;q^2)_n^2 - (-q^2;q^4)_n has only odd powers mod 4, for 1 <= n <= n_max.

    Both products are polynomials of degree ``2n^2``; ``N`` (if given) must
    cover that degree.
    """
    if N is not None and N < 2 * n_max * n_max:
        raise ValueError("N must be at least 2 n_max^2")
    a = [1]
    b = [1]
    for n in range(1, n_max + 1):
        k = 2 * n - 1
        a = _mul_binomial_mod(_mul_binomial_mod(a, 1, k, 4), 1, k, 4)
        b = _mul_binomial_mod(b, 1, 2 * k, 4)
        diff = [(x - y) % 4 for x, y in zip(a, b + [0] * (len(a) - len(b)))]
        if any(diff[e] for e in range(0, len(diff), 2)):
            return False
    return True


def mock_relation_check(N: int, table: list[int] | None = None) -> bool:
    """ou*(2n+1) = (-1)^n c(n) (mod 4) for every 2n + 1 <= N."""
    t = oustar_table(N) if table is None else table
    c = nu_coeffs((N - 1) // 2)
    return all((t[2 * n + 1] - (-1) ** n * c[n]) % 4 == 0 for n in range((N - 1) // 2 + 1))


# -- residue families ----------------------------------------------------------------


class InadmissibleError(ValueError):
    """The hypotheses of the residue formula are not met."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def prime_square_residues(primes: tuple[int, ...] | list[int], j: int) -> tuple[int, int]:
    """Progression ``(M, r)`` with ``ou*(M n + r) = 0 (mod 4)`` for the given primes and ``j``.

    With ``P = prod p_i^2`` and ``p = primes[-1]``: ``M = 4P`` and
    ``r = 2 (P/p) j + (8P + 1)/3`` for odd ``j``, ``r = 2 (P/p) j + (2P + 1)/3``
    for even ``j``, reduced into ``[0, M)``.
    """
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise InadmissibleError("need at least one prime")
    for p in primes:
        if p < 5 or not _is_prime(p):
            raise InadmissibleError(f"{p} is not a prime >= 5")
    p = primes[-1]
    if j % p == 0:
        raise InadmissibleError(f"j = {j} is divisible by p = {p}")
    if p % 24 in (7, 13) and legendre(3 * j, p) != -1:
        raise InadmissibleError(f"p = {p} = {p % 24} (mod 24) requires (3j/p) = -1, got +1 for j = {j}")
    P = reduce(lambda x, y: x * y, (q * q for q in primes))
    M = 4 * P
    if j % 2:
        r = 2 * (P // p) * j + (8 * P + 1) // 3
    else:
        r = 2 * (P // p) * j + (2 * P + 1) // 3
    return M, r % M


@dataclass(frozen=True)
class CongruenceFamily:
    modulus: int
    residues: frozenset[int]
    provenance: str = "stated"
    congruence_modulus: int = 4

    def __post_init__(self):
        object.__setattr__(self, "residues", frozenset(int(r) for r in self.residues))
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        bad = [r for r in self.residues if not 0 <= r < self.modulus]
        if bad:
            raise ValueError(f"residues {sorted(bad)} not in [0, {self.modulus})")

    def label(self) -> str:
        return f"{sorted(self.residues)} mod {self.modulus}"


def prime_square_family(primes: tuple[int, ...] | list[int]) -> CongruenceFamily:
    """Union over all admissible ``j`` (``j`` only matters mod ``2p``)."""
    primes = tuple(primes)
    p = primes[-1]
    M = None
    residues = set()
    for j in range(1, 2 * p):
        try:
            M, r = prime_square_residues(primes, j)
        except InadmissibleError:
            continue
        residues.add(r)
    if M is None:
        raise InadmissibleError(f"no admissible j for primes {primes}")
    k = len(primes) - 1
    return CongruenceFamily(M, frozenset(residues), f"prime-square(k={k}, primes={primes})")


# The progressions listed as computational observations.
STATED_FAMILIES = {
    "mod100": CongruenceFamily(100, frozenset({37, 57, 77, 97})),
    "mod196": CongruenceFamily(196, frozenset({61, 89, 145})),
    "mod484": CongruenceFamily(484, frozenset({125, 169, 213, 257, 301, 345, 389, 433, 477, 521 % 484})),
    "mod50": CongruenceFamily(50, frozenset({37, 47}), "conjectural-scan"),
    "mod98": CongruenceFamily(98, frozenset({47, 61}), "conjectural-scan"),
}


def reduce_family(fam: CongruenceFamily, modulus: int) -> CongruenceFamily:
    if fam.modulus % modulus:
        raise ValueError(f"{modulus} does not divide {fam.modulus}")
    return CongruenceFamily(modulus, frozenset(r % modulus for r in fam.residues),
                            f"{fam.provenance} reduced mod {modulus}")


@dataclass(frozen=True)
class FamilyReport:
    family: CongruenceFamily
    horizon: int
    checked: int
    violations: tuple[tuple[int, int], ...] = field(default=())  # (weight, ou* mod 4)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify_family(fam: CongruenceFamily, N: int, table: list[int] | None = None) -> FamilyReport:
    t = oustar_table(N) if table is None else table
    checked = 0
    bad = []
    for r in sorted(fam.residues):
        for w in range(r, N + 1, fam.modulus):
            checked += 1
            v = t[w] % fam.congruence_modulus
            if v:
                bad.append((w, v))
    bad.sort()
    return FamilyReport(fam, N, checked, tuple(bad))


@dataclass(frozen=True)
class ScanResult:
    modulus: int
    horizon: int
    residues: tuple[int, ...]
    unconfirmed: tuple[int, ...]
    min_witnesses: int

    def family(self) -> CongruenceFamily:
        return CongruenceFamily(self.modulus, frozenset(self.residues),
                                f"conjectural-scan(N={self.horizon})")


def _scan_chunk(args):
    M, residues, mod4 = args
    out = []
    for r in residues:
        vals = mod4[r::M]
        out.append((r, len(vals), not any(vals)))
    return out


def scan(M: int, N: int, table: list[int] | None = None, min_witnesses: int = 5,
         jobs: int = 1) -> ScanResult:
    """Residues ``r`` in ``[0, M)`` with ``ou*(M n + r) = 0 (mod 4)`` for every ``M n + r <= N``.

    Residues with fewer than ``min_witnesses`` sampled weights are reported
    separately as unconfirmed.
    """
    if M < 1:
        raise ValueError("M must be positive")
    t = oustar_table(N) if table is None else table
    mod4 = [int(x) % 4 for x in t[: N + 1]]
    residues = list(range(min(M, N + 1)))
    if jobs > 1 and len(residues) > 1:
        chunks = [residues[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, [(M, c, mod4) for c in chunks]))
        rows = sorted(x for part in parts for x in part)
    else:
        rows = _scan_chunk((M, residues, mod4))
    good = tuple(r for r, k, ok in rows if ok and k >= min_witnesses)
    weak = tuple(r for r, k, ok in rows if ok and k < min_witnesses)
    return ScanResult(M, N, good, weak, min_witnesses)

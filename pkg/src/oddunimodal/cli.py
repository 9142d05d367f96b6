"""Command-line interface.

    oddunimodal coeffs ou direct 20 --ranks
    oddunimodal verify identities 60
    oddunimodal scan 50 2000
    oddunimodal asymptotics oustar --n 500 4000 --t 0.2 0.1
    oddunimodal enumerate ou* 6

Output is JSON Lines by default (one record per line, big integers as decimal
strings), or CSV / plain text.  A single metadata line carrying a timestamp is
printed first unless ``--no-header`` is given; everything after it depends only
on the arguments.  Exit codes: 0 success, 1 a verification failed, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

from . import __version__

ENGINE_VERSION = f"{__version__}/table-1"
CACHE_ENV = "ODDUNIMODAL_CACHE_DIR"
SUITES = ("identities", "bailey", "congruences", "parity", "asymptotics", "decomposition")
FAMILY_NAMES = {"ou": "ou", "oustar": "oustar", "ou*": "oustar"}
DEFAULT_N = {"identities": 60, "bailey": 80, "congruences": 4000, "parity": 2000,
             "asymptotics": 4000, "decomposition": 30}


class UsageError(Exception):
    pass


# -- records and formats ---------------------------------------------------------


@dataclass
class Output:
    fmt: str = "json"
    header: bool = True
    stream: io.TextIOBase = field(default_factory=lambda: sys.stdout)

    def meta(self, command: str, args: dict) -> None:
        if not self.header:
            return
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        meta = {"engine_version": ENGINE_VERSION, "command": command, "args": args, "timestamp": stamp}
        line = json.dumps({"_meta": meta}, sort_keys=True, separators=(",", ":"))
        self.stream.write(line + "\n" if self.fmt == "json" else f"# {line}\n")

    def records(self, rows: Iterable[dict], columns: list[str]) -> None:
        if self.fmt == "json":
            for r in rows:
                self.stream.write(json.dumps(r, separators=(",", ":")) + "\n")
        elif self.fmt == "csv":
            w = csv.writer(self.stream, lineterminator="\n")
            w.writerow(columns)
            for r in rows:
                w.writerow([_flat(r.get(c, "")) for c in columns])
        else:
            for r in rows:
                self.stream.write("  ".join(f"{c}={_flat(r[c])}" for c in columns if c in r) + "\n")


def _flat(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


# -- table cache -------------------------------------------------------------------------


class TableCache:
    """Flat-file cache of coefficient tables keyed by (engine version, family, form, n_max, ranks)."""

    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None

    def _header(self, family, form, n_max, ranks) -> dict:
        return {"engine_version": ENGINE_VERSION, "family": family, "form": form,
                "n_max": n_max, "ranks": ranks}

    def _path(self, family, form, n_max, ranks) -> Path:
        tag = "ranks" if ranks else "counts"
        return self.root / f"{family}-{form}-{n_max}-{tag}.json"

    def load(self, family, form, n_max, ranks):
        if self.root is None:
            return None
        p = self._path(family, form, n_max, ranks)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if data.get("header") != self._header(family, form, n_max, ranks):
            return None
        if ranks:
            return [{int(m): int(c) for m, c in row} for row in data["rows"]]
        return [int(c) for c in data["rows"]]

    def store(self, family, form, n_max, ranks, table) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        if ranks:
            rows = [[[str(m), str(c)] for m, c in sorted(row.items())] for row in table]
        else:
            rows = [str(c) for c in table]
        payload = {"header": self._header(family, form, n_max, ranks), "rows": rows}
        p = self._path(family, form, n_max, ranks)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, separators=(",", ":")))
        tmp.replace(p)


def coefficient_table(family: str, form: str, n_max: int, ranks: bool, cache: TableCache):
    from .genfun import FORMS, gf, ou_counts, oustar_counts

    if family not in FORMS:
        raise UsageError(f"unknown family {family!r}")
    if form not in FORMS[family]:
        raise UsageError(f"family {family!r} has no form {form!r}; choose from {', '.join(FORMS[family])}")
    hit = cache.load(family, form, n_max, ranks)
    if hit is not None:
        return hit
    if ranks:
        g = gf(family, form, n_max)
        table = [dict(sorted(g[n].items())) for n in range(n_max + 1)]
    elif form == "direct":
        table = (ou_counts if family == "ou" else oustar_counts)(n_max).coeffs
    else:
        table = gf(family, form, n_max).specialize().coeffs
    cache.store(family, form, n_max, ranks, table)
    return table


# -- commands ------------------------------------------------------------------------------


def cmd_coeffs(args, out: Output, cache: TableCache) -> int:
    family = _family(args.family)
    if args.n_max < 0:
        raise UsageError("n_max must be nonnegative")
    table = coefficient_table(family, args.form, args.n_max, args.ranks, cache)
    out.meta("coeffs", {"family": family, "form": args.form, "n_max": args.n_max, "ranks": args.ranks})
    if args.ranks:
        if out.fmt == "csv":
            rows = ({"n": n, "m": m, "count": str(c)} for n in range(1, args.n_max + 1)
                    for m, c in sorted(table[n].items()))
            out.records(rows, ["n", "m", "count"])
        else:
            rows = ({"n": n, "ranks": {str(m): str(c) for m, c in sorted(table[n].items())}}
                    for n in range(1, args.n_max + 1))
            out.records(rows, ["n", "ranks"])
    else:
        out.records(({"n": n, "count": str(table[n])} for n in range(1, args.n_max + 1)), ["n", "count"])
    return 0


def _check(suite: str, name: str, ok: bool, detail=None) -> dict:
    r = {"suite": suite, "check": name, "ok": bool(ok)}
    if detail is not None:
        r["detail"] = detail
    return r


def _suite_identities(N: int, jobs: int) -> Iterator[dict]:
    from .genfun import FORMS, gf
    from .genfun.lemmas import lemma_identities

    for family, forms in FORMS.items():
        ref = gf(family, forms[0], N)
        for form in forms[1:]:
            other = gf(family, form, N)
            detail = None
            if other != ref:
                n = next(k for k in range(N + 1) if other[k] != ref[k])
                detail = {"n": n, forms[0]: {str(m): str(c) for m, c in sorted(ref[n].items())},
                          form: {str(m): str(c) for m, c in sorted(other[n].items())}}
            yield _check("identities", f"{family}:{forms[0]}={form}", other == ref, detail)
    for r in lemma_identities(max(N, 40)):
        yield _check("identities", r.name, r.ok, r.detail or None)


def _suite_bailey(N: int, jobs: int) -> Iterator[dict]:
    from .genfun.bailey import bailey_check, perturbed_ou_pair, standard_pairs

    for pair in standard_pairs():
        res = bailey_check(pair, 12, N)
        yield _check("bailey", pair.name, res.ok, {"failed_n": list(res.failed)} if res.failed else None)
    neg = bailey_check(perturbed_ou_pair(), 12, N)
    yield _check("bailey", "negative_control_detected", not neg.ok, {"failed_n": list(neg.failed)})


def _suite_congruences(N: int, jobs: int) -> Iterator[dict]:
    from .congruence import (STATED_FAMILIES, MockCoeffTable, mock_relation_check, oustar_table,
                             reduce_family, scan, prime_square_family, verify_family)

    table = oustar_table(N)
    for p in (5, 7, 11, 13):
        fam = prime_square_family((p,))
        rep = verify_family(fam, N, table)
        yield _check("congruences", f"prime_square:p={p}:{fam.label()}", rep.ok,
                     {"checked": rep.checked, "first_violation": list(rep.violations[0])} if rep.violations
                     else {"checked": rep.checked})
    for name, fam in STATED_FAMILIES.items():
        rep = verify_family(fam, N, table)
        yield _check("congruences", f"stated:{name}", rep.ok,
                     {"checked": rep.checked, "first_violation": list(rep.violations[0])} if rep.violations
                     else {"checked": rep.checked})
    target = reduce_family(STATED_FAMILIES["mod484"], 242)
    s = scan(242, N, table, jobs=jobs)
    missing = sorted(target.residues - set(s.residues))
    yield _check("congruences", "scan242_covers_mod484", not missing, {"missing": missing} if missing else None)
    half = min(N, 1000)
    yield _check("congruences", "c(2n)=EO(2n)", MockCoeffTable.build(half).even_part_matches())
    yield _check("congruences", "mock_relation_mod4", mock_relation_check(min(N, 2000), table))


def _suite_parity(N: int, jobs: int) -> Iterator[dict]:
    from .congruence import odd_polynomial_check, parity_check

    bad = parity_check(N)
    yield _check("parity", "ou*(n)_odd_iff_6n-2_square", not bad, {"first_violation": bad[0]} if bad else None)
    yield _check("parity", "odd_polynomial_mod4_n<=8", odd_polynomial_check(8, 128))


def _suite_asymptotics(N: int, jobs: int) -> Iterator[dict]:
    from . import asymptotics as asy
    from .genfun import ou_counts, oustar_counts

    horizon = max(N, 4000)
    for family, counts in (("ou", ou_counts), ("oustar", oustar_counts)):
        table = counts(horizon).coeffs
        r500 = asy.coefficient_ratio(family, 500, table[500])
        r4000 = asy.coefficient_ratio(family, 4000, table[4000])
        ok = abs(r4000 - 1) < abs(r500 - 1) and abs(r4000 - 1) < asy.RATIO_TOLERANCE[family]
        yield _check("asymptotics", f"{family}:coefficient_ratio", ok,
                     {"r500": _fmt_float(r500), "r4000": _fmt_float(r4000)})
        start = 1 if family == "ou" else 3
        yield _check("asymptotics", f"{family}:monotone", asy.is_weakly_increasing(table, start))
        ratios = [asy.eval_F_ratio(family, t) for t in asy.T_GRID]
        devs = [abs(r - 1) for r in ratios]
        yield _check("asymptotics", f"{family}:eval_F_ratio", all(a > b for a, b in zip(devs, devs[1:])),
                     {"t": list(asy.T_GRID), "ratio": [_fmt_float(r) for r in ratios]})
    for n, order in asy.em_orders().items():
        yield _check("asymptotics", f"euler_maclaurin_order_N={n}", abs(order - n) <= 0.3,
                     {"order": _fmt_float(order)})
    lim, val = asy.alternating_theta_limit(), asy.alternating_theta_sum(1e-3)
    yield _check("asymptotics", "alternating_theta_limit", abs(val - lim) < 1e-3,
                 {"limit": _fmt_float(lim), "sum_at_z=1e-3": _fmt_float(val)})


def _suite_decomposition(N: int, jobs: int) -> Iterator[dict]:
    from .asymptotics import ThetaData, identification_check, theta_decomposition_check

    td = ThetaData()
    yield _check("decomposition", "Q(c1)=-1,Q(c2)=-3", td.Q(td.c1) == -1 and td.Q(td.c2) == -3)
    yield _check("decomposition", "c1,c2_same_cone", td.same_cone())
    yield _check("decomposition", "n_identifications", identification_check(td, N))
    for v in (0.1, 0.5, 1.0):
        res = theta_decomposition_check(td, v, N)
        yield _check("decomposition", f"termwise_v={v}", res < 1e-10, {"residual": _fmt_float(res)})


def _fmt_float(x: float) -> str:
    return repr(float(x))


SUITE_RUNNERS = {
    "identities": _suite_identities,
    "bailey": _suite_bailey,
    "congruences": _suite_congruences,
    "parity": _suite_parity,
    "asymptotics": _suite_asymptotics,
    "decomposition": _suite_decomposition,
}


def cmd_verify(args, out: Output, cache: TableCache) -> int:
    N = args.n_max if args.n_max is not None else DEFAULT_N[args.suite]
    if N < 1:
        raise UsageError("n_max must be positive")
    if args.suite == "identities" and N < 1:
        raise UsageError("identities need n_max >= 1")
    rows = list(SUITE_RUNNERS[args.suite](N, args.jobs))
    failures = [r for r in rows if not r["ok"]]
    summary = {"suite": args.suite, "check": "summary", "ok": not failures,
               "detail": {"checks": len(rows), "failed": len(failures)}}
    if failures:
        summary["detail"]["first_failure"] = failures[0]
    out.meta("verify", {"suite": args.suite, "n_max": N})
    out.records(rows + [summary], ["suite", "check", "ok", "detail"])
    return 0 if not failures else 1


def cmd_scan(args, out: Output, cache: TableCache) -> int:
    from .congruence import scan

    if args.modulus < 2:
        raise UsageError("modulus must be at least 2")
    if args.n_max < 0:
        raise UsageError("n_max must be nonnegative")
    table = coefficient_table("oustar", "direct", args.n_max, False, cache)
    res = scan(args.modulus, args.n_max, table, min_witnesses=args.min_witnesses, jobs=args.jobs)
    out.meta("scan", {"modulus": args.modulus, "n_max": args.n_max, "min_witnesses": args.min_witnesses})
    rows = []
    for r in sorted(res.residues + res.unconfirmed):
        witnesses = len(range(r, args.n_max + 1, args.modulus))
        rows.append({"modulus": args.modulus, "residue": r, "witnesses": witnesses,
                     "status": "confirmed" if r in res.residues else "unconfirmed"})
    out.records(rows, ["modulus", "residue", "witnesses", "status"])
    return 0


def cmd_asymptotics(args, out: Output, cache: TableCache) -> int:
    from . import asymptotics as asy

    family = _family(args.family)
    ns = sorted(set(args.n))
    if any(n < 1 for n in ns):
        raise UsageError("weights must be >= 1")
    ts = sorted(set(args.t), reverse=True)
    if any(not 0.01 <= t <= 1 for t in ts):
        raise UsageError("t values must lie in [0.01, 1]")
    rows = []
    if ns:
        table = coefficient_table(family, "direct", max(ns), False, cache)
        for n in ns:
            c = table[n]
            rows.append({"kind": "coefficient", "n": n, "value": str(c),
                         "main_term": _fmt_float(asy.main_term(family, n)),
                         "ratio": _fmt_float(asy.coefficient_ratio(family, n, c)) if c > 0 else "nan"})
    for t in ts:
        rows.append({"kind": "generating_function", "t": t, "value": _fmt_float(asy.eval_F(family, t)),
                     "ratio": _fmt_float(asy.eval_F_ratio(family, t))})
    out.meta("asymptotics", {"family": family, "n": ns, "t": ts})
    out.records(rows, ["kind", "n", "t", "value", "main_term", "ratio"])
    return 0


def cmd_enumerate(args, out: Output, cache: TableCache) -> int:
    from .enumeration import KINDS, enumerate_kind

    if args.kind not in KINDS:
        raise UsageError(f"unknown kind {args.kind!r}; choose from {', '.join(KINDS)}")
    if not 0 <= args.weight <= 40:
        raise UsageError("weight must lie in [0, 40]")
    seqs = sorted(enumerate_kind(args.kind, args.weight), key=lambda s: (s.rank, s.left, s.peak, s.right))
    out.meta("enumerate", {"kind": args.kind, "weight": args.weight})
    rows = ({"sequence": str(s), "rank": s.rank, "left": list(s.left), "peak": s.peak,
             "right": list(s.right)} for s in seqs)
    out.records(rows, ["sequence", "rank", "left", "peak", "right"])
    return 0


def _family(name: str) -> str:
    try:
        return FAMILY_NAMES[name]
    except KeyError:
        raise UsageError(f"unknown family {name!r}; expected ou or oustar") from None


# -- argument parsing --------------------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv", "plain"), default=d("json"))
    parser.add_argument("--cache-dir", default=d(None),
                        help=f"table cache directory (default: ${CACHE_ENV}, else no cache)")
    parser.add_argument("--no-header", action="store_true", default=d(False),
                        help="omit the metadata line")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for scans")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddunimodal", description=__doc__.split("\n\n")[0])
    _global_flags(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="coefficient table of a generating function")
    c.add_argument("family", help="ou or oustar")
    c.add_argument("form", help="direct, ramanujan, hecke (ou); direct, appell, hecke, hecke2 (oustar)")
    c.add_argument("n_max", type=int)
    c.add_argument("--ranks", action="store_true", help="rank-refined counts")
    c.set_defaults(func=cmd_coeffs)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("n_max", type=int, nargs="?", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", parents=[common], help="residues r with ou*(Mn+r) = 0 mod 4")
    s.add_argument("modulus", type=int)
    s.add_argument("n_max", type=int)
    s.add_argument("--min-witnesses", type=int, default=5)
    s.set_defaults(func=cmd_scan)

    a = sub.add_parser("asymptotics", parents=[common], help="main-term ratios")
    a.add_argument("family")
    a.add_argument("--n", type=int, nargs="*", default=[500, 1000, 2000, 4000])
    a.add_argument("--t", type=float, nargs="*", default=[0.3, 0.2, 0.1, 0.05])
    a.set_defaults(func=cmd_asymptotics)

    e = sub.add_parser("enumerate", parents=[common], help="list sequences of one weight")
    e.add_argument("kind", help="u, u*, ou or ou*")
    e.add_argument("weight", type=int)
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    out = Output(args.format, not args.no_header, stream or sys.stdout)
    cache = TableCache(args.cache_dir or os.environ.get(CACHE_ENV))
    try:
        return args.func(args, out, cache)
    except UsageError as exc:
        print(f"oddunimodal: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

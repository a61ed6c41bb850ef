"""Command-line interface: ``sfock <command> --pair ... [options]``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field

from .cache import ResultCache
from .dual_pairs import PairSpec, invariant_basis, invariant_dim, is_invariant
from .errors import SfockError
from .fock import (
    FockState, dirac_defect, energy, monomial_states, quantize, random_quantizable,
)
from .hw_reps import kernel_rep_count, stratum_rep_count, stratum_rep_rows
from .orbit_rings import graded_dim, graded_dim_eval

CSV_COLUMNS = ("case", "params", "stratum", "degree", "dim", "method")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    params: dict
    rows: list = field(default_factory=list)
    csv_rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = ""):
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> str:
        doc = {"command": self.command, "params": self.params, "rows": self.rows,
               "checks": self.checks, "verdict": "PASS" if self.passed else "FAIL"}
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in self.csv_rows:
            w.writerow({k: r.get(k, "") for k in CSV_COLUMNS})
        return buf.getvalue()

    def to_pretty(self) -> str:
        head = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.command}: {head}"]
        if self.rows:
            keys = list(self.rows[0])
            cells = [[_fmt(r.get(k)) for k in keys] for r in self.rows]
            widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
            lines.append("  ".join(k.rjust(w) for k, w in zip(keys, widths)))
            for c in cells:
                lines.append("  ".join(x.rjust(w) for x, w in zip(c, widths)))
        for c in self.checks:
            tag = "PASS" if c["ok"] else "FAIL"
            lines.append(f"{tag} {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
        lines.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "pretty": self.to_pretty}[fmt]()


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return "" if v is None else str(v)


# ---------------------------------------------------------------------------
# argument handling


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not -(2 ** 63) <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def parse_strata(text: str | None, rank: int, default: list[int]) -> list[int]:
    """``"1"``, ``"0-2"`` or ``"0,2"``; every value must lie in ``0..rank``."""
    if text is None:
        return default
    out: list[int] = []
    try:
        for part in text.split(","):
            lo, sep, hi = part.strip().partition("-")
            vals = range(int(lo), int(hi) + 1) if sep else [int(lo)]
            out.extend(vals)
    except ValueError:
        raise UsageError(f"bad stratum range {text!r}") from None
    if not out or any(not 0 <= s <= rank for s in out):
        raise UsageError(f"strata must lie in 0..{rank}")
    return sorted(set(out))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pair", help="dual pair, e.g. sp-o:l=3,s=2")
    common.add_argument("--max-degree", type=_nonneg, default=3, metavar="K")
    common.add_argument("--stratum", help="stratum s' or a range like 0-2")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--height", type=_positive, default=10,
                        help="bound on numerators/denominators of random points")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--cache", help="JSON-lines cache file (SFOCK_CACHE overrides)")
    common.add_argument("--self-test", action="store_true",
                        help="inject a sign-flip mutation; the checks must then FAIL")

    parser = argparse.ArgumentParser(prog="sfock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("dirac", parents=[common], help="Dirac condition on Fock states")
    d.add_argument("--m", type=_positive, default=2, help="number of complex coordinates")
    d.add_argument("--pairs", type=_positive, default=20, help="random observable pairs")
    sub.add_parser("commute", parents=[common], help="invariants vs orbit rings vs representations")
    sub.add_parser("chain", parents=[common], help="costratified chain of graded pieces")
    sub.add_parser("spectrum", parents=[common], help="reduced and invariant energy spectra")
    sub.add_parser("invariants", parents=[common], help="bases of the invariant pieces")
    sub.add_parser("reps", parents=[common], help="highest-weight constituents")
    return parser


def _spec(args) -> PairSpec:
    if not args.pair:
        raise UsageError(f"{args.command} needs --pair")
    try:
        return PairSpec.parse(args.pair)
    except SfockError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands


def cmd_dirac(args, cache: ResultCache) -> Report:
    m, K = args.m, args.max_degree
    sign = -1 if args.self_test else 1
    rep = Report("dirac", {"m": m, "max_degree": K, "pairs": args.pairs, "seed": args.seed,
                           "self_test": args.self_test})
    rng = random.Random(args.seed)
    states = monomial_states(m, K)
    failure = None
    for _ in range(args.pairs):
        f = random_quantizable(m, rng)
        g = random_quantizable(m, rng)
        for st in states:
            if not dirac_defect(f, g, st, bracket_sign=sign).is_zero():
                failure = (f, g, st)
                break
        if failure:
            break
    for d in range(K + 1):
        n = sum(1 for st in states if st.phi.degree() == d)
        rep.rows.append({"degree": d, "states": n})
        rep.csv_rows.append({"case": "fock", "params": f"m={m}", "stratum": "", "degree": d,
                             "dim": n, "method": "dirac"})
    detail = ""
    if failure:
        f, g, st = failure
        detail = f"f = {f}; g = {g}; state = {st}"
    rep.check("dirac defect vanishes", failure is None, detail)
    return rep


def _cells(cache: ResultCache, spec: PairSpec):
    """Cached scalar quantities for one dual pair."""
    key = str(spec)

    def inv(d, flip=False):
        sp = spec
        return cache.compute("invariant_dim", str(sp), [d, flip],
                             lambda: invariant_dim(sp, d, flip))

    def ideal(s, k):
        return cache.compute("graded_dim", key, [s, k], lambda: graded_dim(spec, s, k))

    def evaluation(s, k, seed, height):
        return cache.compute("graded_dim_eval", key, [s, k, seed, height],
                             lambda: graded_dim_eval(spec, s, k, seed=seed, height=height))

    def reps(s, k):
        return cache.compute("stratum_rep_count", key, [s, k],
                             lambda: stratum_rep_count(spec, s, k))

    return inv, ideal, evaluation, reps


def cmd_commute(args, cache: ResultCache) -> Report:
    spec = _spec(args)
    K = args.max_degree
    strata = parse_strata(args.stratum, spec.rank, list(range(spec.rank + 1)))
    flip = args.self_test
    rep = Report("commute", {"pair": str(spec), "max_degree": K, "self_test": flip})
    _, ideal, _, reps = _cells(cache, spec)
    bad = []
    odd_bad = []
    for s in strata:
        sub = spec.with_s(s)
        inv = _cells(cache, sub)[0]
        for k in range(K + 1):
            a, b, c = inv(2 * k, flip), ideal(s, k), reps(s, k)
            odd = inv(2 * k - 1, flip) if k else 0
            ok = a == b == c
            if not ok:
                bad.append(f"s'={s} k={k}: {a},{b},{c}")
            if odd:
                odd_bad.append(f"s'={s} degree {2 * k - 1}: {odd}")
            rep.rows.append({"stratum": s, "degree": k, "invariant": a, "ideal_rank": b,
                             "rep_count": c, "odd": odd, "verdict": "PASS" if ok else "FAIL"})
            for meth, v in (("invariant", a), ("ideal-rank", b), ("representation-count", c)):
                rep.csv_rows.append({"case": spec.case, "params": str(spec), "stratum": s,
                                     "degree": k, "dim": v, "method": meth})
    rep.check("triple equality", not bad, "; ".join(bad))
    rep.check("odd invariant pieces vanish", not odd_bad, "; ".join(odd_bad))
    return rep


def cmd_chain(args, cache: ResultCache) -> Report:
    spec = _spec(args)
    K = args.max_degree
    strata = parse_strata(args.stratum, spec.rank, list(range(spec.rank + 1)))
    sign = -1 if args.self_test else 1
    rep = Report("chain", {"pair": str(spec), "max_degree": K, "seed": args.seed,
                           "height": args.height, "self_test": args.self_test})
    _, ideal, evaluation, _ = _cells(cache, spec)
    bad_kernel, bad_mono, bad_eval, bad_deg1 = [], [], [], []
    for s in strata:
        dims = [ideal(s, k) for k in range(K + 1)]
        evals = [evaluation(s, k, args.seed, args.height) for k in range(K + 1)]
        row = {"stratum": s, "dims": dims, "evaluation": evals}
        if evals != dims:
            bad_eval.append(f"s'={s}")
        if s >= 1:
            kernels = [sign * (dims[k] - ideal(s - 1, k)) for k in range(K + 1)]
            expected = [kernel_rep_count(spec, s, k) for k in range(K + 1)]
            row["kernels"] = kernels
            row["kernel_reps"] = expected
            if any(x < 0 for x in kernels):
                bad_mono.append(f"s'={s}")
            if kernels != expected:
                bad_kernel.append(f"s'={s}: {kernels} vs {expected}")
            if K >= 1 and dims[1] != ideal(max(1, s - 1), 1):
                bad_deg1.append(f"s'={s}")
        else:
            row["kernels"] = None
            row["kernel_reps"] = None
        rep.rows.append(row)
        for k in range(K + 1):
            for meth, v in (("ideal-rank", dims[k]), ("evaluation", evals[k])):
                rep.csv_rows.append({"case": spec.case, "params": str(spec), "stratum": s,
                                     "degree": k, "dim": v, "method": meth})
    rep.check("restriction maps are onto (monotone dims)", not bad_mono, "; ".join(bad_mono))
    rep.check("kernel dims match kernel_rep_count", not bad_kernel, "; ".join(bad_kernel))
    rep.check("evaluation oracle agrees", not bad_eval, "; ".join(bad_eval))
    rep.check("degree-1 dims constant on strata >= 1", not bad_deg1, "; ".join(bad_deg1))
    return rep


def cmd_spectrum(args, cache: ResultCache) -> Report:
    spec = _spec(args)
    K = args.max_degree
    strata = parse_strata(args.stratum, spec.rank, [spec.s])
    sign = -1 if args.self_test else 1
    rep = Report("spectrum", {"pair": str(spec), "max_degree": K, "self_test": args.self_test})
    _, ideal, _, _ = _cells(cache, spec)
    problems = []
    for s in strata:
        sub = spec.with_s(s)
        inv = _cells(cache, sub)[0]
        f = energy(sub.m).f.scale(sign)
        reduced = {2 * k: ideal(s, k) for k in range(K + 1)}
        for d in range(2 * K + 1):
            mult = inv(d)
            eig_ok = True
            if mult:
                for P in invariant_basis(sub, d):
                    if quantize(f, FockState(P)).phi != P.scale(d):
                        eig_ok = False
                        break
            red = reduced.get(d, 0)
            if mult and (not eig_ok or d % 2 or sign * d < 0):
                problems.append(f"s'={s} eigenvalue {sign * d}")
            if mult != red:
                problems.append(f"s'={s} eigenvalue {d}: {mult} vs {red}")
            if mult or red:
                rep.rows.append({"stratum": s, "eigenvalue": sign * d, "reduced": red,
                                 "invariant": mult})
                rep.csv_rows.append({"case": spec.case, "params": str(spec), "stratum": s,
                                     "degree": d // 2, "dim": red, "method": "reduced-energy"})
    rep.check("spectra coincide and are even", not problems, "; ".join(problems))
    return rep


def cmd_invariants(args, cache: ResultCache) -> Report:
    spec = _spec(args)
    K = args.max_degree
    flip = args.self_test
    rep = Report("invariants", {"pair": str(spec), "max_degree": K, "self_test": flip})
    inv = _cells(cache, spec)[0]
    problems = []
    for d in range(K + 1):
        basis = invariant_basis(spec, d)
        dim = inv(d, flip)
        if len(basis) != dim:
            problems.append(f"degree {d}: basis {len(basis)} vs dim {dim}")
        if not all(is_invariant(spec, P, flip) for P in basis):
            problems.append(f"degree {d}: basis not invariant")
        rep.rows.append({"degree": d, "dim": dim, "basis": [str(P) for P in basis]})
        rep.csv_rows.append({"case": spec.case, "params": str(spec), "stratum": spec.s,
                             "degree": d, "dim": dim, "method": "invariant"})
    rep.check("bases are invariant and complete", not problems, "; ".join(problems))
    return rep


def cmd_reps(args, cache: ResultCache) -> Report:
    spec = _spec(args)
    K = args.max_degree
    strata = parse_strata(args.stratum, spec.rank, list(range(spec.rank + 1)))
    flip = args.self_test
    rep = Report("reps", {"pair": str(spec), "max_degree": K, "self_test": flip})
    problems = []
    for s in strata:
        inv = _cells(cache, spec.with_s(s))[0]
        for k in range(K + 1):
            rows = stratum_rep_rows(spec, s, k)
            for r in rows:
                rep.rows.append({"case": spec.case, "params": str(spec), "stratum": s,
                                 "degree": k, "monomial": list(r["monomial"]),
                                 "weight": _weight_json(r["weight"]), "dim": r["dim"]})
            total = sum(r["dim"] for r in rows)
            rep.csv_rows.append({"case": spec.case, "params": str(spec), "stratum": s,
                                 "degree": k, "dim": total, "method": "representation-count"})
            target = inv(2 * k, flip)
            if total != target:
                problems.append(f"s'={s} k={k}: {total} vs {target}")
    rep.check("constituent dims add up to the invariant dims", not problems, "; ".join(problems))
    return rep


def _weight_json(w):
    if w is None:
        return None
    if w and isinstance(w[0], tuple):
        return [list(x) for x in w]
    return list(w)


COMMANDS = {
    "dirac": cmd_dirac, "commute": cmd_commute, "chain": cmd_chain,
    "spectrum": cmd_spectrum, "invariants": cmd_invariants, "reps": cmd_reps,
}


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cache = ResultCache.from_settings(args.cache)
    try:
        report = COMMANDS[args.command](args, cache)
    except UsageError as exc:
        print(f"sfock: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(report.render(args.format))
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

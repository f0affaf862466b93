"""Command-line front end: ``generate``, ``profile``, ``check`` and ``series``.

Outputs are data only (sequence files, CSV, JSON); plotting is left to other
tools. Exit status is 0 on success, 1 when a check fails and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import sys
from pathlib import Path

from . import theory_checks as tc
from .estimators import (
    InsufficientDataError,
    entropy_profile,
    estimate_h_info,
    estimate_h_loc,
    series_scheme_profile,
)
from .generators import (
    BernoulliSpec,
    RandomSource,
    bernoulli_realization,
    champernowne_binary,
    cramer_spec,
    markov_sequence,
    periodic_sequence,
    prime_indicator,
    quadratic_residue_word,
)
from .words import SymbolSequence, read_sequence, sequence_chunks

GENERATORS = ("primes", "residues", "champernowne", "bernoulli", "cramer", "periodic", "markov")


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    """Integer that may be written as ``1e7``."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _int_list(text: str) -> list[int]:
    return [_int(t) for t in text.split(",") if t.strip()]


def _seed_list(text: str) -> list[int]:
    if "-" in text and "," not in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return _int_list(text)


def _matrix(text: str) -> list[list[int]]:
    return [[int(c) for c in row.strip()] for row in text.split(",")]


def _add_generator_flags(p: argparse.ArgumentParser):
    p.add_argument("--N", type=_int, help="sequence length")
    p.add_argument("--q", type=float, help="prime modulus (residues) or probability (bernoulli)")
    p.add_argument("--seed", type=_int, default=0)
    p.add_argument("--pattern", help="periodic pattern, e.g. 001")
    p.add_argument("--matrix", help="markov transition rows, e.g. 11,10")
    p.add_argument("--start", type=int, default=0, help="markov start symbol")
    one = p.add_mutually_exclusive_group()
    one.add_argument("--include-one", dest="include_one", action="store_true", default=True,
                     help="mark position 1 in the prime indicator (default)")
    one.add_argument("--exclude-one", dest="include_one", action="store_false")


def build_sequence(args) -> SymbolSequence:
    g = args.generator
    need_N = g not in ("residues",)
    if need_N and not args.N:
        raise UsageError(f"generator {g!r} needs --N")
    if g == "primes":
        return prime_indicator(args.N, args.include_one)
    if g == "residues":
        if args.q is None or args.q != int(args.q):
            raise UsageError("residues needs an integer --q")
        return quadratic_residue_word(int(args.q))
    if g == "champernowne":
        return champernowne_binary(args.N)
    if g == "bernoulli":
        if args.q is None:
            raise UsageError("bernoulli needs --q")
        return bernoulli_realization(BernoulliSpec(q=args.q), args.N, RandomSource(args.seed))
    if g == "cramer":
        return bernoulli_realization(cramer_spec(), args.N, RandomSource(args.seed))
    if g == "periodic":
        if not args.pattern:
            raise UsageError("periodic needs --pattern")
        return periodic_sequence(args.pattern, args.N)
    if g == "markov":
        if not args.matrix:
            raise UsageError("markov needs --matrix")
        return markov_sequence(_matrix(args.matrix), args.start, args.N, RandomSource(args.seed))
    raise UsageError(f"unknown generator {g!r}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------

def cmd_generate(args) -> int:
    x = build_sequence(args)
    digest = hashlib.sha256()
    sink = open(args.out, "wb") if args.out else sys.stdout.buffer
    try:
        for chunk in sequence_chunks(x):
            digest.update(chunk)
            sink.write(chunk)
    finally:
        if args.out:
            sink.close()
        else:
            sink.flush()
    print(f"N={x.N} sha256={digest.hexdigest()}", file=sys.stdout if args.out else sys.stderr)
    return 0


def _estimates(prof) -> dict:
    out = {"reliability_cutoff": prof.reliability_cutoff}
    for key, fn in (("h_loc", estimate_h_loc), ("h_info", estimate_h_info)):
        try:
            e = fn(prof)
        except InsufficientDataError as exc:
            out[key] = {"error": str(exc)}
            continue
        out[key] = {"lower": e.lower, "upper": e.upper, "n_window": list(e.n_window),
                    "method": e.method, "plateau": e.plateau}
    return out


def cmd_profile(args) -> int:
    if args.input:
        x = read_sequence(args.input)
    elif args.generator:
        x = build_sequence(args)
    else:
        raise UsageError("profile needs a generator or --in PATH")
    if args.n_max >= x.N:
        raise UsageError(f"--n-max {args.n_max} must be smaller than N={x.N}")
    prof = entropy_profile(x, args.n_max, miller_madow=args.miller_madow)
    est = _estimates(prof)
    if args.format == "json":
        text = json.dumps(tc._jsonable({"profile": prof.to_dict(), "estimates": est}), indent=2) + "\n"
    else:
        lines = [prof.to_csv()]
        lines.append(f"# reliability_cutoff={prof.reliability_cutoff}\n")
        for key in ("h_loc", "h_info"):
            e = est[key]
            if "error" in e:
                lines.append(f"# {key} error={e['error']}\n")
            else:
                flag = "" if e["plateau"] else " non-plateau"
                lines.append(f"# {key} lower={e['lower']!r} upper={e['upper']!r} "
                             f"n={e['n_window'][0]}..{e['n_window'][1]}{flag}\n")
        text = "".join(lines)
    _emit(text, args.out)
    return 0


def _run_check(args) -> tc.CheckReport:
    name = args.name
    if name == "prime-counting":
        return tc.check_prime_counting(args.N_list or [10**4, 10**6])
    if name == "residue-equidistribution":
        if args.q is None:
            raise UsageError("residue-equidistribution needs --q")
        return tc.check_residue_equidistribution(int(args.q), args.n_max or 8, args.n_min)
    if name == "cramer-curve":
        return tc.cramer_entropy_curve(args.n or [10**3, 10**5, 10**7], args.threshold)
    if name == "cramer-empirical":
        spec = BernoulliSpec(q=args.q) if args.q is not None else None
        return tc.check_cramer_empirical(args.N or 10**6, args.n_max or 8,
                                         args.seeds or list(range(30)), spec)
    if name == "prime-entropy":
        return tc.check_prime_entropy_bound(args.N or 10**7, args.n_max or 20, args.include_one)
    if name == "rare-ones":
        args.generator = args.generator or "primes"
        x = build_sequence(args)
        return tc.check_rare_ones(x, args.n or [2, 4, 8, 16], label=args.generator)
    if name == "perturbation-lemma":
        return tc.check_perturbation_lemma(args.C, args.alpha,
                                           args.N_list or [2**k for k in range(10, 31, 4)],
                                           args.case)
    if name == "discontinuity":
        return tc.check_discontinuity(args.k_list or [2**10, 2**16, 2**20])
    if name == "hloc-le-hinfo":
        if not args.generator:
            raise UsageError("hloc-le-hinfo needs a generator")
        x = build_sequence(args)
        return tc.check_hloc_le_hinfo({args.generator: entropy_profile(x, args.n_max or 10)})
    raise UsageError(f"unknown check {name!r}; choose from {sorted(tc.CHECKS)}")


def cmd_check(args) -> int:
    rep = _run_check(args)
    _emit(rep.to_json() + "\n", args.out)
    for inst in rep.boundaries:
        print(f"warning: boundary hit {inst['params']} lhs={inst['lhs']!r} rhs={inst['rhs']!r}",
              file=sys.stderr)
    return 0 if rep.passed else 1


SERIES_COLUMNS = ("q", "length", "reliability_cutoff", "h_loc_lower", "h_loc_upper",
                  "h_info_lower", "h_info_upper", "plateau")


def cmd_series(args) -> int:
    qs = args.q_list
    if not qs:
        raise UsageError("series needs a non-empty --q list")
    words = [quadratic_residue_word(q) for q in qs]
    if len(words) == 1:
        profiles = [(words[0].N, entropy_profile(words[0], min(args.n_max, words[0].N - 1)))]
    else:
        profiles = series_scheme_profile(words, args.n_max)
    rows = []
    for q, (length, prof) in zip(qs, profiles):
        est = _estimates(prof)
        loc, info = est["h_loc"], est["h_info"]
        ok = "error" not in loc
        rows.append({
            "q": q, "length": length, "reliability_cutoff": prof.reliability_cutoff,
            "h_loc_lower": loc.get("lower"), "h_loc_upper": loc.get("upper"),
            "h_info_lower": info.get("lower"), "h_info_upper": info.get("upper"),
            "plateau": int(ok and loc["plateau"] and info["plateau"]),
        })
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        import csv

        buf = io.StringIO()
        w = csv.DictWriter(buf, SERIES_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqentropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a sequence file")
    g.add_argument("generator", choices=GENERATORS)
    _add_generator_flags(g)
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("profile", help="entropy profile of a sequence")
    p.add_argument("generator", nargs="?", choices=GENERATORS)
    p.add_argument("--in", dest="input", help="read a sequence file instead of generating")
    _add_generator_flags(p)
    p.add_argument("--n-max", type=_int, default=12)
    p.add_argument("--miller-madow", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    c = sub.add_parser("check", help="run one theorem check, print a JSON report")
    c.add_argument("name", choices=sorted(tc.CHECKS))
    c.add_argument("generator", nargs="?", choices=GENERATORS)
    _add_generator_flags(c)
    c.add_argument("--n-max", type=_int)
    c.add_argument("--n-min", type=_int, default=1)
    c.add_argument("--n", type=_int_list, help="comma-separated list of n")
    c.add_argument("--N-list", type=_int_list)
    c.add_argument("--k-list", type=_int_list)
    c.add_argument("--seeds", type=_seed_list, help="e.g. 0-29 or 1,2,3")
    c.add_argument("--threshold", type=float)
    c.add_argument("--C", type=float, default=1.0)
    c.add_argument("--alpha", type=float, default=0.5)
    c.add_argument("--case", choices=("a", "b", "const"), default="a")
    c.add_argument("--format", choices=("json",), default="json")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("series", help="entropy estimates of residue words for several primes")
    s.add_argument("--q", dest="q_list", type=_int_list, required=True)
    s.add_argument("--n-max", type=_int, default=20)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_series)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"seqentropy: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Numerical checks of the quantitative statements about entropy, primes,
the Cramér model and quadratic residues.

Every check recomputes both sides of its inequality and returns a
:class:`CheckReport`. Nothing here hardcodes an expected intermediate value.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import combinatorics as comb
from .entropy_core import (
    MassDistribution,
    max_entropy_for_mass,
    point_entropy,
    shannon_entropy,
)
from .estimators import EntropyProfile, entropy_profile
from .generators import (
    BernoulliSpec,
    RandomSource,
    bernoulli_realization,
    binary_entropy,
    cramer_spec,
    prime_indicator,
    prime_mask,
    quadratic_residue_word,
)
from .words import (
    _as_sequence,
    count_words,
    ones_count,
    occurrences,
    word_distribution,
    zero_word_frequency,
)

PASS, BOUNDARY, FAIL = "pass", "boundary", "fail"
BOUNDARY_RTOL = 1e-12


@dataclass
class CheckReport:
    """Outcome of one check.

    JSON layout::

        {"check": str, "inputs": {...}, "claim": str,
         "instances": [{"params": {...}, "lhs": float, "rhs": float,
                        "status": "pass" | "boundary" | "fail",
                        "margin": float}, ...],
         "summary": {"passed": bool, "n_pass": int, "n_boundary": int,
                     "n_fail": int, "min_margin": float | null,
                     "failures": [...], "observed": {...}}}

    ``margin`` is the slack in the direction of the claim: positive means the
    claim holds with room to spare, zero means it sits on the boundary.
    """

    check: str
    inputs: dict
    claim: str
    instances: list[dict] = field(default_factory=list)
    observed: dict = field(default_factory=dict)

    def add(self, params: dict, lhs: float, rhs: float, relation: str = "<") -> dict:
        """Record ``lhs <relation> rhs`` for one instance.

        ``relation`` is one of ``<``, ``<=``, ``>``, ``>=``. A strict relation
        that holds with equality is recorded as a boundary hit.
        """
        lhs, rhs = float(lhs), float(rhs)
        margin = rhs - lhs if relation in ("<", "<=") else lhs - rhs
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(margin) <= BOUNDARY_RTOL * scale:
            status = BOUNDARY if relation in ("<", ">") else PASS
        elif margin > 0:
            status = PASS
        else:
            status = FAIL
        inst = {"params": params, "lhs": lhs, "rhs": rhs, "status": status, "margin": margin}
        self.instances.append(inst)
        return inst

    @property
    def failures(self) -> list[dict]:
        return [i for i in self.instances if i["status"] == FAIL]

    @property
    def boundaries(self) -> list[dict]:
        return [i for i in self.instances if i["status"] == BOUNDARY]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def summary(self) -> dict:
        margins = [i["margin"] for i in self.instances]
        return {
            "passed": self.passed,
            "n_pass": sum(i["status"] == PASS for i in self.instances),
            "n_boundary": len(self.boundaries),
            "n_fail": len(self.failures),
            "min_margin": min(margins) if margins else None,
            "failures": self.failures,
            "observed": self.observed,
        }

    def to_dict(self) -> dict:
        return _jsonable({
            "check": self.check,
            "inputs": self.inputs,
            "claim": self.claim,
            "instances": self.instances,
            "summary": self.summary,
        })

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


# -- prime counting ---------------------------------------------------------

def _prime_counts(N_list: Sequence[int]) -> dict[int, int]:
    mask = prime_mask(max(N_list))
    cs = np.cumsum(mask, dtype=np.int64)
    return {N: int(cs[N]) for N in N_list}


def check_prime_counting(N_list: Sequence[int]) -> CheckReport:
    """``N/(ln N - 2) < L1(N) < N/(ln N - 4)`` for N > 54.

    Instances use the standard count pi(N). The count with 1 treated as a
    prime is evaluated too and summarised under ``observed``.
    """
    N_list = [int(N) for N in N_list]
    if not N_list or min(N_list) <= 54:
        raise ValueError("every N must exceed 54")
    pi = _prime_counts(N_list)
    rep = CheckReport(
        "prime-counting", {"N_list": N_list},
        "N/(ln N - 2) < L1(N) < N/(ln N - 4)",
    )
    conventions = {}
    for include_one in (False, True):
        ok = True
        for N in N_list:
            L1 = pi[N] + include_one
            lo = N / (math.log(N) - 2)
            hi = N / (math.log(N) - 4)
            if include_one:
                ok &= lo < L1 < hi
                continue
            rep.add({"N": N, "side": "lower", "L1": L1}, lo, L1, "<")
            rep.add({"N": N, "side": "upper", "L1": L1}, L1, hi, "<")
        if include_one:
            conventions["include_one"] = bool(ok)
    conventions["exclude_one"] = rep.passed
    rep.observed["conventions_satisfying_both_bounds"] = conventions
    rep.observed["pi"] = {str(N): pi[N] for N in N_list}
    return rep


# -- quadratic residues -----------------------------------------------------

def check_residue_equidistribution(q: int, n_max: int, n_min: int = 1) -> CheckReport:
    """``|L(w, b_q) - q 2^-n| < (n - 1) sqrt(q) + n/2`` for every word of length n.

    All ``2**n`` words are tested, including those that never occur.
    """
    if n_max > math.log2(q):
        raise ValueError(f"n_max={n_max} exceeds log2(q)={math.log2(q):.2f}")
    b = quadratic_residue_word(q)
    rep = CheckReport(
        "residue-equidistribution", {"q": q, "n_min": n_min, "n_max": n_max},
        "|L(w, b^(q)) - q 2^-|w|| < (|w| - 1) sqrt(q) + |w|/2",
    )
    worst = {}
    for n in range(n_min, n_max + 1):
        t = count_words(b, n)
        full = np.zeros(2**n, dtype=np.int64)
        full[t.keys] = t.counts
        target = q * 2.0**-n
        bound = (n - 1) * math.sqrt(q) + n / 2
        dev = np.abs(full - target)
        for code in range(2**n):
            rep.add({"n": n, "word": format(code, f"0{n}b"), "count": int(full[code])},
                    dev[code], bound, "<")
        worst[str(n)] = float(dev.max() / bound)
    rep.observed["max_deviation_over_bound"] = worst
    return rep


# -- Cramér model -----------------------------------------------------------

def mean_entropy_rate(n_list: Iterable[int], spec: BernoulliSpec | None = None,
                      block: int = 1 << 20) -> dict[int, float]:
    """``A(n) = (1/n) sum_{k<=n} H(Ber(q_k), 1)`` for each n, summed exactly.

    With the Cramér spec ``q_1 = 0`` so the sum effectively starts at k = 2.
    """
    spec = spec or cramer_spec()
    targets = sorted(set(int(n) for n in n_list))
    out = {}
    partial = []
    k = 1
    for n in targets:
        while k <= n:
            hi = min(k + block, n + 1)
            ks = np.arange(k, hi, dtype=np.int64)
            partial.append(math.fsum(binary_entropy(spec.probabilities(ks))))
            k = hi
        out[n] = math.fsum(partial) / n
    return out


def cramer_entropy_curve(n_list: Sequence[int], threshold: float | None = None,
                         spec: BernoulliSpec | None = None) -> CheckReport:
    """Decay of the analytic entropy rate of the Cramér process.

    Passes iff A decreases along ``n_list``, ``A(max) < A(min)/2`` whenever
    ``max/min >= 1000``, and (if given) ``A(max) < threshold``.
    """
    n_list = sorted(int(n) for n in n_list)
    if len(n_list) < 2:
        raise ValueError("need at least two values of n")
    A = mean_entropy_rate(n_list, spec)
    rep = CheckReport(
        "cramer-curve", {"n_list": n_list, "threshold": threshold,
                         "spec": getattr(spec, "name", None) or "cramer"},
        "A(n) = (1/n) sum_k H(Ber(q_k),1) decreases; A(n_max) < A(n_min)/2",
    )
    for a, b in zip(n_list, n_list[1:]):
        rep.add({"pair": [a, b]}, A[b], A[a], "<")
    lo, hi = n_list[0], n_list[-1]
    if hi / lo >= 1e3:
        rep.add({"halving": [lo, hi]}, A[hi], A[lo] / 2, "<")
    if threshold is not None:
        rep.add({"threshold_at": hi}, A[hi], threshold, "<")
    rep.observed["A"] = {str(n): A[n] for n in n_list}
    return rep


def window_mixture_entropy(spec: BernoulliSpec, N: int, n: int, chunk: int = 1 << 14) -> float:
    """Entropy (bits) of the expected window distribution of Ber(q) over ``N``.

    This is the distribution of a length-``n`` word read at a uniformly random
    start among the ``N - n + 1`` windows, computed exactly from the q_k.
    """
    W = N - n + 1
    q = spec.probabilities(np.arange(1, N + 1, dtype=np.int64))
    acc = np.zeros(2**n)
    for lo in range(0, W, chunk):
        hi = min(lo + chunk, W)
        P = np.ones((1, hi - lo))
        for j in range(n):
            qj = q[lo + j : hi + j]
            P = np.concatenate([P * (1 - qj), P * qj])
        acc += P.sum(axis=1)
    return shannon_entropy(MassDistribution(acc / W, 2**n))


def check_cramer_empirical(N: int, n: int, seeds: Sequence[int],
                           spec: BernoulliSpec | None = None,
                           tolerance: float = 0.05) -> CheckReport:
    """Median over seeds of ``(1/n) H(p(x, n, N))`` against the ensemble value."""
    seeds = list(seeds)
    if len(seeds) < 30:
        raise ValueError("need at least 30 seeds")
    spec = spec or cramer_spec()
    ref = window_mixture_entropy(spec, N, n) / n
    vals = []
    for seed in seeds:
        x = bernoulli_realization(spec, N, RandomSource(seed))
        vals.append(shannon_entropy(word_distribution(count_words(x, n))) / n)
    med = statistics.median(vals)
    rep = CheckReport(
        "cramer-empirical",
        {"N": N, "n": n, "seeds": seeds, "spec": spec.name or f"q={spec.q}"},
        "|median_seeds (1/n) H(p(x,n,N)) - ensemble value| <= tolerance",
    )
    rep.add({"median": med, "reference": ref, "tolerance": tolerance},
            abs(med - ref), tolerance, "<=")
    rep.observed.update({
        "values": vals,
        "reference": ref,
        "min": min(vals),
        "max": max(vals),
        "stdev": statistics.pstdev(vals),
    })
    return rep


# -- primes and golden ratio ------------------------------------------------

def coverage_fraction(t, n: int) -> float:
    """Share of 11-avoiding words of length ``n`` that occur in the table."""
    keys = t.keys
    avoiding = np.count_nonzero((keys & (keys >> 1)) == 0)
    return avoiding / comb.avoid_count("11", n)


def check_prime_entropy_bound(N: int, n_max: int, include_one: bool = True,
                              tolerance: float = 0.01,
                              profile: EntropyProfile | None = None) -> CheckReport:
    """Golden-ratio bound on the information entropy of the prime indicator.

    (i) no ``11`` starts at position 3 or later, (ii) the number of distinct
    words of length n is at most Q(n, 11) + 3, (iii) at the reliability
    cutoff ``(1/n) log2 L <= log2(golden ratio) + tolerance``. The share of
    11-avoiding words actually seen is reported for n <= 16.
    """
    b = prime_indicator(N, include_one)
    prof = profile or entropy_profile(b, n_max)
    counter = comb.AvoidanceCounter((1, 1))
    rate = math.log2(comb.growth_rate("11"))
    rep = CheckReport(
        "prime-entropy",
        {"N": N, "n_max": n_max, "include_one": include_one, "tolerance": tolerance},
        "no 11 after position 2; L(b,n,N) <= Q(n,11) + 3; "
        "(1/n) log2 L <= log2((1+sqrt5)/2) + tol at the cutoff",
    )
    tail = _as_sequence(b.symbols[2:], 2)
    late = occurrences(tail, (1, 1)) if tail.N >= 2 else 0
    rep.add({"sub": "i"}, late, 0, "<=")
    for row in prof.rows:
        rep.add({"sub": "ii", "n": row.n}, row.distinct, counter.count(row.n) + 3, "<=")
    c = prof.reliability_cutoff
    rep.add({"sub": "iii", "n": c}, prof.row(c).info_value, rate + tolerance, "<=")
    cover = {}
    for n in range(1, min(16, n_max) + 1):
        cover[str(n)] = coverage_fraction(count_words(b, n), n)
    rep.observed.update({
        "log2_golden_ratio": rate,
        "info_values": {str(r.n): r.info_value for r in prof.rows},
        "local_values": {str(r.n): r.local_value for r in prof.rows},
        "coverage_of_11_avoiding_words": cover,
        "reliability_cutoff": c,
    })
    return rep


def check_rare_ones(b, n_list: Sequence[int], label: str = "") -> CheckReport:
    """``Q(b,n,N) >= 1 - (M/N) n/(1 - n/N) - 2/(N - n)`` with M the number of ones.

    Also reports ``M log2(N) / N`` and ``M ln(N) / N``, the empirical constants
    for a density of ones of order ``1/log N``.
    """
    b = _as_sequence(b, 2)
    N = b.N
    M = ones_count(b)
    rep = CheckReport(
        "rare-ones", {"N": N, "n_list": list(n_list), "label": label},
        "Q(b,n,N) >= 1 - (M(b,1,N)/N) * n/(1 - n/N) - 2/(N - n)",
    )
    for n in n_list:
        Q = zero_word_frequency(b, n, N)
        rhs = 1 - (M / N) * n / (1 - n / N) - 2 / (N - n)
        rep.add({"n": n}, Q, rhs, ">=")
    rep.observed.update({
        "ones": M,
        "C_log2": M * math.log2(N) / N,
        "C_ln": M * math.log(N) / N,
    })
    return rep


# -- static entropy families ------------------------------------------------

def uniform_family_entropy(eps: float, N: int) -> float:
    """Entropy of mass ``eps`` spread evenly on ``N`` atoms, atom by atom."""
    return N * point_entropy(eps / N)


def check_perturbation_lemma(C: float, alpha: float, N_list: Sequence[int],
                             case: str = "a", tolerance: float | None = None) -> CheckReport:
    """Entropy of the uniform families with vanishing total mass.

    case ``a``: mass ``C N^-alpha``, entropy must drop below ``tolerance``
    (default 0.01) at the largest N. case ``b``: mass ``C / log2 N``, entropy
    must be within ``tolerance`` (relative, default 5%) of C. case ``const``:
    mass 1, entropy equals ``log2 N`` and grows without bound.

    Every N is also checked against the closed form ``eps log2(N / eps)``.
    """
    N_list = sorted(int(N) for N in N_list)
    if case == "a":
        eps_of = lambda N: min(1.0, C * N ** -alpha)  # noqa: E731
        tol = 0.01 if tolerance is None else tolerance
    elif case == "b":
        eps_of = lambda N: min(1.0, C / math.log2(N))  # noqa: E731
        tol = 0.05 if tolerance is None else tolerance
    elif case == "const":
        eps_of = lambda N: 1.0  # noqa: E731
        tol = 0.0
    else:
        raise ValueError(f"unknown case {case!r}")
    rep = CheckReport(
        "perturbation-lemma",
        {"C": C, "alpha": alpha, "N_list": N_list, "case": case, "tolerance": tol},
        {"a": "H(p^(N)) -> 0 for ||p^(N)|| <= C N^-alpha",
         "b": "H(p^(N)) -> C for ||p^(N)|| = C / log N",
         "const": "H(p^(N)) = log2 N for the uniform probability"}[case],
    )
    H = {}
    for N in N_list:
        eps = eps_of(N)
        H[N] = uniform_family_entropy(eps, N)
        closed = max_entropy_for_mass(eps, N)
        rep.add({"N": N, "eps": eps, "kind": "closed_form"}, H[N], closed * (1 + 1e-9), "<=")
    top = N_list[-1]
    if case == "a":
        rep.add({"N": top, "kind": "limit"}, H[top], tol, "<")
    elif case == "b":
        rep.add({"N": top, "kind": "limit"}, abs(H[top] - C), tol * C, "<=")
    else:
        rep.add({"N": top, "kind": "limit"}, abs(H[top] - math.log2(top)), 1e-9, "<=")
    rep.observed["H"] = {str(N): H[N] for N in N_list}
    return rep


def discontinuity_family(k: int) -> tuple[MassDistribution, float]:
    """One unit mass plus ``k`` masses ``1 / (k log2 k)``; returns (p, l1 distance)."""
    small = 1.0 / (k * math.log2(k))
    masses = np.full(k + 1, small)
    masses[0] = 1.0
    return MassDistribution(masses, None), k * small


def check_discontinuity(k_list: Sequence[int] = (2**10, 2**16, 2**20)) -> CheckReport:
    """Entropy does not follow l1 convergence on an infinite outcome space."""
    rep = CheckReport(
        "discontinuity", {"k_list": list(k_list)},
        "||p^(k) - delta||_1 -> 0 while H(p^(k)) - H(delta) >= 1",
    )
    dist = {}
    for k in k_list:
        p, d = discontinuity_family(k)
        dist[str(k)] = d
        rep.add({"k": k, "l1_distance": d}, shannon_entropy(p), 1.0, ">=")
    rep.observed["l1_distance"] = dist
    return rep


def check_hloc_le_hinfo(profiles: Sequence[EntropyProfile] | dict) -> CheckReport:
    """Row-wise ``local <= info + 1e-12`` and ``info <= log2 r``."""
    items = profiles.items() if isinstance(profiles, dict) else enumerate(profiles)
    rep = CheckReport("hloc-le-hinfo", {}, "local_value <= info_value <= log2 r")
    names = []
    for name, prof in items:
        names.append(str(name))
        cap = math.log2(prof.alphabet_size)
        for row in prof.rows:
            rep.add({"profile": str(name), "n": row.n}, row.local_value,
                    row.info_value + 1e-12, "<=")
            rep.add({"profile": str(name), "n": row.n, "kind": "cap"}, row.info_value,
                    cap + 1e-12, "<=")
    rep.inputs["profiles"] = names
    return rep


CHECKS = {
    "prime-counting": check_prime_counting,
    "residue-equidistribution": check_residue_equidistribution,
    "cramer-curve": cramer_entropy_curve,
    "cramer-empirical": check_cramer_empirical,
    "prime-entropy": check_prime_entropy_bound,
    "rare-ones": check_rare_ones,
    "perturbation-lemma": check_perturbation_lemma,
    "discontinuity": check_discontinuity,
    "hloc-le-hinfo": check_hloc_le_hinfo,
}

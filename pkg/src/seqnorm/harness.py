"""Registry of reproducible claims and the runner behind ``seqnorm verify``.

Each :class:`Claim` pairs an expected value with a deterministic computation
of the observed one.  Numeric claims pass when ``|expected - observed| <=
tolerance``; boolean claims need equality.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from . import conditions as cond
from . import matrices as mg
from . import sampling
from .norms import grid_oracle, norm_estimate, sweep_diagnostics, truncation_sweep
from .rearrangement import (
    construct_R_member,
    enumerate_R_union,
    is_in_R_gamma_lambda,
    make_Bx_decreasing,
)
from .spaces import SpaceSpec, WeightSeq, decreasing_rearrangement, ps_majorization_holds, \
    ps_violation_witness, space_norm

PROVENANCES = ("paper", "derived", "trivial")
L1, L2, LINF = SpaceSpec.lp(1), SpaceSpec.lp(2), SpaceSpec.lp(math.inf)


@dataclass
class ClaimResult:
    claim_id: str
    expected: object
    observed: object
    tolerance: float
    passed: bool
    provenance: str
    applicable: bool = True
    detail: str = ""

    def to_dict(self):
        d = asdict(self)
        for key in ("expected", "observed"):
            if isinstance(d[key], (np.floating, np.bool_)):
                d[key] = d[key].item()
        return d


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    citation: str
    provenance: str
    expected: object
    tolerance: float
    compute: Callable

    def evaluate(self, observed, detail=""):
        if isinstance(self.expected, bool):
            passed = observed is not None and bool(observed) == self.expected
        else:
            passed = observed is not None and abs(float(observed) - self.expected) <= self.tolerance
        return ClaimResult(self.claim_id, self.expected, observed, self.tolerance, bool(passed),
                           self.provenance, True, detail)


# -- reusable checks -------------------------------------------------------------------

def sufficient_condition(A, enumerate_limit=12):
    """Name of the first sufficient condition satisfied by ``A`` (or its transpose), else ``None``."""
    At = A.T
    tests = [
        ("C412", lambda: cond.check_c412(A)),
        ("C41", lambda: cond.check_c41(A)),
        ("C41star", lambda: cond.check_c41star(A)),
        ("C41 (transpose)", lambda: cond.check_c41(At)),
        ("C41star (transpose)", lambda: cond.check_c41star(At)),
        ("C44", lambda: mg.is_summability(A) and cond.check_c44(A)),
        ("C44 (transpose)", lambda: mg.is_summability(At) and cond.check_c44(At)),
    ]
    if A.shape[0] <= enumerate_limit:
        tests.append(("C12", lambda: cond.check_c12(A)))
    for name, test in tests:
        if test():
            return name
    return None


def theorem_32_check(family, E, F, size, samples=500, tol=1e-6, seed=0):
    """Check ``||Ax*||_F >= ||Ax||_F`` on random ``x >= 0`` and ``||A|| = ||A||_dec``.

    Runs on the leading ``size x size`` section, and only when a sufficient
    condition is verified first; otherwise the result is marked not
    applicable.
    """
    A = family.section(size) if isinstance(family, mg.MatrixFamily) else np.asarray(family, float)
    claim_id = "theorem_32"
    premise = sufficient_condition(A)
    if premise is None:
        return ClaimResult(claim_id, True, None, tol, False, "paper", False,
                           "no sufficient condition verified")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = rng.random(A.shape[1]) * (rng.random(A.shape[1]) < 0.7)
        lhs = space_norm(F, A @ decreasing_rearrangement(x))
        rhs = space_norm(F, A @ x)
        worst = max(worst, (rhs - lhs) / max(1.0, rhs))
    gap = norm_estimate(A, E, F, False).value - norm_estimate(A, E, F, True).value
    ok = worst <= tol and abs(gap) <= tol
    return ClaimResult(claim_id, True, bool(ok), tol, bool(ok), "paper", True,
                       f"premise {premise}; worst sample deficit {worst:.3e}; norm gap {gap:.3e}")


def block_form_trials(trials=1000, seed=0, max_n=7):
    """Fraction of random matrices whose greedy block form passes the membership test."""
    rng = np.random.default_rng(seed)
    good = 0
    for _ in range(trials):
        n, m = (int(v) for v in rng.integers(1, max_n + 1, size=2))
        A = sampling.structured_matrix(rng, n, m, levels=int(rng.choice([1, 2, 4, 64])))
        form = construct_R_member(A)
        good += is_in_R_gamma_lambda(A[list(form.perm)], form.gamma, form.lam)
    return good / trials


def decreasing_image_trials(trials=1000, seed=0, max_n=7):
    """Fraction of random ``(A, x)`` where the rearranged ``Bx`` is non-increasing and ``B`` in block form."""
    rng = np.random.default_rng(seed)
    good = 0
    for _ in range(trials):
        n, m = (int(v) for v in rng.integers(1, max_n + 1, size=2))
        A = sampling.structured_matrix(rng, n, m, levels=int(rng.choice([1, 2, 4, 64])))
        x = rng.random(m) * (rng.random(m) < 0.8)
        B, form = make_Bx_decreasing(A, x)
        y = np.sum(B * x, axis=1)
        good += bool(np.all(y[:-1] >= y[1:])) and is_in_R_gamma_lambda(B, form.gamma, form.lam)
    return good / trials


def prefix_domination_trials(trials=1000, seed=0, max_n=8):
    """Fraction of sampled ``(v, u, x)`` with ``(v, u)`` passing the prefix condition where domination holds."""
    rng = np.random.default_rng(seed)
    good = 0
    for _ in range(trials):
        n = int(rng.integers(1, max_n + 1))
        v, u = sampling.c31_pair(rng, n)
        assert cond.check_c31(v, u).holds
        x = rng.random(n) * (rng.random(n) < 0.8)
        good += cond.rearrangement_dominates(v, u, x)
    return good / trials


def oracle_agreement(instances=50, resolution=200, seed=0, ps=(1, 2, 3, math.inf)):
    """Largest ``|norm_estimate - grid_oracle|`` over random 3x3 matrices and all ``(p, q)``."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        A = rng.random((3, 3))
        for p in ps:
            for q in ps:
                E, F = SpaceSpec.lp(p), SpaceSpec.lp(q)
                for restricted in (False, True):
                    est = norm_estimate(A, E, F, restricted).value
                    worst = max(worst, abs(est - grid_oracle(A, E, F, restricted, resolution)))
    return worst


def union_matrices(A, allow_singleton_middle):
    return {B.tobytes() for B, _ in enumerate_R_union(A, allow_singleton_middle=allow_singleton_middle)}


def _harmonic(n):
    return WeightSeq.from_function(lambda k: 1.0 / k, n)


def _wm_equality_gap():
    gaps = []
    for n in (10, 20, 30):
        A = mg.weighted_mean(_harmonic(n), n)
        for M in (A, A.T):
            gaps.append(abs(norm_estimate(M, L2, L2).value - norm_estimate(M, L2, L2, True).value))
    return max(gaps)


def _hilbert_gap(F):
    H = mg.hilbert(30)
    return abs(norm_estimate(H, L2, F).value - norm_estimate(H, L2, F, True).value)


def _cesaro_anchor():
    sizes = (10, 50, 200)
    ests = truncation_sweep(mg.MatrixFamily("cesaro", alpha=1), L2, L2, sizes)
    diag = sweep_diagnostics(ests)
    svd = [np.linalg.svd(mg.cesaro(1, n), compute_uv=False)[0] for n in sizes]
    increasing = all(d > 0 for d in diag["differences"])
    return (increasing and max(diag["values"]) < 2
            and np.allclose(diag["values"], svd, rtol=1e-8, atol=0))


def _c44_witness_sound():
    A = mg.counterexample_l1(5)
    rep = cond.check_c44(A)
    if rep.holds:
        return False
    j, k = rep.witness["j"] - 1, rep.witness["k"] - 1
    below = [A[j + 1, k]] + ([A[j + 1, k + 1]] if k + 1 < A.shape[1] else [])
    return A[j, k] < max(below)


def _linf_rearranged():
    A = mg.counterexample_linf()
    x = np.array([0.0, 1.0])
    return space_norm(LINF, A @ decreasing_rearrangement(x)) == 0 and space_norm(LINF, A @ x) == 1


def _ps_failure():
    w = WeightSeq.from_function(lambda k: k ** -3.0, 3)
    spec = SpaceSpec.weighted(2, w)
    found = ps_violation_witness(spec, 3)
    if found is None:
        return False
    x, y = found
    return ps_majorization_holds(x, y) and space_norm(spec, y) > space_norm(spec, x)


def _l2_maximizer_error():
    est = norm_estimate(mg.counterexample_l2(), L2, L2)
    return float(np.max(np.abs(est.maximizer - np.array([0, 1, 1]) / math.sqrt(2))))


def _cx_l1_not_applicable():
    A = mg.counterexample_l1(5)
    res = theorem_32_check(A, L1, L1, 5)
    full, dec = norm_estimate(A, L1, L1).value, norm_estimate(A, L1, L1, True).value
    return not res.applicable and abs(full - 1.5) < 1e-12 and abs(dec - 1.25) < 1e-12


def _singleton_middle_invariance():
    mats = [mg.hilbert(4), mg.counterexample_l1(5), mg.counterexample_l2(2, 3),
            mg.weighted_mean(_harmonic(4), 4).T, mg.cesaro(0.5, 4), mg.norlund([1, 2, 3, 4], 4)]
    rng = np.random.default_rng(7)
    mats += [sampling.structured_matrix(rng, 4, 4) for _ in range(20)]
    return all(union_matrices(A, False) == union_matrices(A, True) for A in mats)


def _implication_claim(name, trials=300):
    def compute():
        sampler = sampling.summability_sampler(5) if name == "C44=>C12" else sampling.matrix_sampler(5)
        tally = cond.implication_suite(sampler, trials, [name], seed=11)[name]
        return len(tally.violations)
    return compute


_REGISTRY = [
    Claim("bennett_wm_equality", "weighted mean w_n=1/n and transpose: ||A||_2 = ||A||_2,dec (n=10,20,30)",
          "introduction; weighted mean corollary, decreasing weights", "paper", 0.0, 1e-4, _wm_equality_gap),
    Claim("binomial_concave_ratio", "binomial weights have w_{n+1}/w_n <= w_n/w_{n-1} for alpha >= 1",
          "ratio display for the binomial weights", "paper", True, 0.0,
          lambda: all(mg.binomial_weights(a, 200).has_concave_ratio for a in (1, 1.5, 2, 3))),
    Claim("cesaro_c44", "C(alpha), alpha in {0.25, 0.5, 1}, satisfies C44",
          "remark on Cesaro matrices after the Norlund corollary", "paper", True, 0.0,
          lambda: all(cond.check_c44(mg.cesaro(a, 30)).holds for a in (0.25, 0.5, 1))),
    Claim("cesaro_hardy_anchor", "C(1) l2 sections increase below Hardy's constant 2 and match the SVD",
          "external: classical Hardy inequality", "derived", True, 0.0, _cesaro_anchor),
    Claim("cx_4_9_c44_fails", "the l1 counterexample violates C44 with a sound witness",
          "l1 counterexample", "derived", True, 0.0, _c44_witness_sound),
    Claim("cx_4_9_full_norm", "l1 counterexample: ||A||_{1,1} = ||A e_2||_1 = 3/2",
          "\"||A||=||Ae_2||_1=3/2\"", "paper", 1.5, 1e-12,
          lambda: norm_estimate(mg.counterexample_l1(5), L1, L1).value),
    Claim("cx_4_9_not_applicable", "l1 counterexample meets no sufficient condition; gap 3/2 vs 5/4 asserted",
          "l1 counterexample", "paper", True, 0.0, _cx_l1_not_applicable),
    Claim("cx_4_9_restricted_norm", "l1 counterexample: norm on decreasing inputs is 5/4",
          "l1 counterexample", "paper", 1.25, 1e-9,
          lambda: norm_estimate(mg.counterexample_l1(5), L1, L1, True).value),
    Claim("cx_4_9_summability", "l1 counterexample is a summability matrix",
          "l1 counterexample, displayed matrix", "paper", True, 0.0,
          lambda: mg.is_summability(mg.counterexample_l1(5))),
    Claim("cx_l2_c13_fails", "a11=a22=a23=1 violates C13 at n=2",
          "l2 counterexample following the block condition theorem", "derived", True, 0.0,
          lambda: not cond.check_c13(mg.counterexample_l2(2, 3), 2).holds),
    Claim("cx_l2_c411_holds", "a11=a22=a23=1 satisfies C411",
          "l2 counterexample following the block condition theorem", "paper", True, 0.0,
          lambda: cond.check_c411(mg.counterexample_l2(3, 3)).holds),
    Claim("cx_l2_full_norm", "a11=a22=a23=1: ||A||_{2,2} = sqrt(2)",
          "l2 counterexample following the block condition theorem", "paper", math.sqrt(2), 1e-6,
          lambda: norm_estimate(mg.counterexample_l2(), L2, L2).value),
    Claim("cx_l2_maximizer", "a11=a22=a23=1: maximizer (0, 1/sqrt2, 1/sqrt2)",
          "l2 counterexample following the block condition theorem", "paper", 0.0, 1e-4, _l2_maximizer_error),
    Claim("cx_l2_restricted_norm", "a11=a22=a23=1: norm on decreasing inputs is sqrt(5/3)",
          "derived by boundary analysis", "derived", math.sqrt(5 / 3), 1e-6,
          lambda: norm_estimate(mg.counterexample_l2(), L2, L2, True).value),
    Claim("cx_linf_rearranged", "a22=1, x=e_2: ||Ax*||_inf = 0 < 1 = ||Ax||_inf",
          "l_inf example following the main equality theorem", "paper", True, 0.0, _linf_rearranged),
    Claim("hilbert_c412", "the Hilbert matrix is row decreasing",
          "Hilbert corollary", "paper", True, 0.0,
          lambda: cond.check_c412(mg.hilbert(50, 50)).holds),
    Claim("hilbert_equality_l2", "Hilbert 30x30: ||H||_{2,2} = ||H||_{2,2,dec}",
          "Hilbert corollary", "paper", 0.0, 1e-4, lambda: _hilbert_gap(L2)),
    Claim("hilbert_equality_l2w", "Hilbert 30x30: ||H||_{2,2(w)} = ||H||_{2,2(w),dec}, w_n = 1/n",
          "Hilbert corollary; weighted codomain theorem", "paper", 0.0, 1e-4,
          lambda: _hilbert_gap(SpaceSpec.weighted(2, _harmonic(30)))),
    Claim("block_form_realization", "greedy block form passes the membership test",
          "block form lemma", "paper", 1.0, 0.0, lambda: block_form_trials(1000)),
    Claim("decreasing_image_realization", "rearranged Bx is non-increasing with B in block form",
          "decreasing image lemma", "paper", 1.0, 0.0, lambda: decreasing_image_trials(1000)),
    Claim("prefix_domination_property", "prefix condition implies sum v x* >= sum u x",
          "prefix domination lemma", "paper", 1.0, 0.0, lambda: prefix_domination_trials(1000)),
    Claim("nm_decreasing_c44", "Norlund matrix with decreasing weights satisfies C44",
          "Norlund corollary, proof", "paper", True, 0.0,
          lambda: all(cond.check_c44(mg.norlund(w, 40)).holds
                      for w in (_harmonic(40), mg.binomial_weights(0.3, 40), np.ones(40)))),
    Claim("oracle_agreement", "norm_estimate within 2/200 of the grid oracle, 3x3, p,q in {1,2,3,inf}",
          "independent oracle", "derived", 0.0, 2 / 200, lambda: oracle_agreement(10)),
    Claim("ps_failure_witness", "l2(w), w_n = n^-3, fails (PS): witness with premise true, norm larger",
          "remark on property (PS) for weighted l_p", "paper", True, 0.0, _ps_failure),
    Claim("singleton_middle_invariance", "singleton-middle convention leaves the set of block forms unchanged",
          "block form definition, middle block", "derived", True, 0.0, _singleton_middle_invariance),
    Claim("equality_check_hilbert", "Hilbert 30x30, l2 -> l2: rearrangement and norm equality",
          "Hilbert corollary", "paper", True, 0.0,
          lambda: theorem_32_check(mg.MatrixFamily("hilbert"), L2, L2, 30).passed),
    Claim("equality_check_norlund_transpose_weighted",
          "C(2)^t (w_n = n increasing, concave ratio), l2 -> l2(1/n), size 20",
          "weighted mean corollary, increasing weights; weighted codomain theorem", "paper", True, 0.0,
          lambda: theorem_32_check(mg.MatrixFamily("cesaro", alpha=2).T(), L2,
                                   SpaceSpec.weighted(2, _harmonic(20)), 20).passed),
    Claim("equality_check_wm_transpose", "weighted mean (w_n = 1/n) transposed, l2 -> l2, size 30",
          "weighted mean corollary, decreasing weights", "paper", True, 0.0,
          lambda: theorem_32_check(mg.MatrixFamily("wm", weights=lambda k: 1.0 / k).T(),
                                   L2, L2, 30).passed),
    Claim("wm_transpose_c41", "transposed weighted mean with decreasing weights satisfies C41",
          "weighted mean corollary, proof", "paper", True, 0.0,
          lambda: all(cond.check_c41(mg.weighted_mean(w, 40).T).holds
                      for w in (_harmonic(40), mg.binomial_weights(0.5, 40), np.ones(40)))),
] + [
    Claim(f"implication_{name}", f"no sampled violation of {name.replace('=>', ' => ')}",
          cite, "paper", 0.0, 0.0, _implication_claim(name))
    for name, cite in (
        ("C12=>C13", "introduction"), ("C41star=>C12", "column condition corollary"),
        ("C41=>C12", "row condition theorem"), ("C410star=>C13", "block condition theorem"),
        ("C410star=>C410", "block condition equivalence"), ("C410=>C410star", "block condition equivalence"),
        ("C412=>C410star", "row decreasing remark before the Hilbert corollary"), ("C44=>C12", "summability corollary"),
    )
]

CLAIMS = {c.claim_id: c for c in sorted(_REGISTRY, key=lambda c: c.claim_id)}


def registry_checksum():
    """SHA-256 over the (id, expected, citation) of every claim with provenance ``paper``."""
    rows = [(c.claim_id, repr(c.expected), c.citation) for c in CLAIMS.values() if c.provenance == "paper"]
    return hashlib.sha256(json.dumps(rows).encode()).hexdigest()


def run_claim(claim_id):
    try:
        claim = CLAIMS[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim {claim_id!r}") from None
    return claim.evaluate(claim.compute())


def _threads():
    try:
        return max(1, int(os.environ.get("SEQNORM_THREADS", "1")))
    except ValueError:
        return 1


def run_all(pattern: Optional[str] = None, threads=None):
    """Run every registered claim (or those whose id contains ``pattern``), ordered by id."""
    ids = [cid for cid in CLAIMS if pattern is None or pattern in cid]
    with ThreadPoolExecutor(max_workers=threads or _threads()) as pool:
        return list(pool.map(run_claim, ids))


# -- report rendering -------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)) or v is None:
        return str(v)
    return f"{float(v):.9g}"


def to_markdown(results):
    lines = ["| claim | expected | observed | tol | passed |", "|---|---|---|---|---|"]
    for r in results:
        lines.append(f"| {r.claim_id} | {_fmt(r.expected)} | {_fmt(r.observed)} | "
                     f"{r.tolerance:g} | {'yes' if r.passed else 'NO'} |")
    failed = sum(not r.passed for r in results)
    lines.append("")
    lines.append(f"{len(results) - failed}/{len(results)} claims passed")
    return "\n".join(lines)


def to_json(results):
    return json.dumps([r.to_dict() for r in results], indent=2, default=float)


def to_csv(results):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["claim_id", "expected", "observed", "tol", "passed"])
    for r in results:
        writer.writerow([r.claim_id, r.expected, r.observed, r.tolerance, r.passed])
    return buf.getvalue()


def explore_open_question(trials=200, n=8, seed=0):
    """Search transposed Norlund matrices with increasing weights but no ratio condition for C12 failures.

    Exploratory only: a hit means C12 fails for that section, which by
    itself does not settle whether the norm equality fails.  The l2 gap
    between the full and decreasing-input norms is reported for each hit.
    """
    rng = np.random.default_rng(seed)
    hits = []
    tried = 0
    for _ in range(trials):
        w = np.cumsum(rng.integers(0, 5, size=n)).astype(float) + 1.0
        if WeightSeq(w).has_concave_ratio:
            continue
        tried += 1
        A = mg.norlund(w, n).T
        if not cond.check_c12(A).holds:
            gap = norm_estimate(A, L2, L2).value - norm_estimate(A, L2, L2, True).value
            hits.append((w.tolist(), gap))
    gaps = [g for _, g in hits]
    return {"sampled": tried, "c12_failures": len(hits),
            "max_l2_gap_on_failures": max(gaps, default=0.0),
            "examples": [{"weights": w, "l2_gap": g} for w, g in hits[:5]]}

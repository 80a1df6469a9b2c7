"""Verification suites over desk-scale enumeration and seeded random trials.

Every check walks a virtual index space [0, total) so that it can be
partitioned across a process pool; chunks are merged in index order, making
results identical for any worker count.  Random trials derive their RNG from
(seed, check, index) arithmetic only, never from hashing, for the same reason.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from . import cocycle, symbols, words
from .cyclotomic import make_context
from .triangle import mul, power_S, power_U, sgn, chebyshev_table
from .words import Syllable, Word

SUITE_NAMES = ("lemmas", "theorem", "classical", "cocycle", "linking")


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: str | None = None
    skipped: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "skipped": self.skipped,
            "note": self.note,
        }


def _trial_rng(seed: int, salt: int, index: int) -> Random:
    # int-only mixing; str hashes are randomized per process and would break
    # cross-worker determinism
    return Random(((seed & 0xFFFFFFFF) << 40) ^ (salt << 28) ^ index)


def _random_pair_word(rng: Random, ctx, max_r: int) -> Word:
    syls = []
    for _ in range(rng.randint(1, max_r)):
        syls.append(Syllable("S", rng.randrange(1, ctx.p)))
        syls.append(Syllable("U", rng.randrange(1, ctx.q)))
    return Word(rng.choice((1, -1)), tuple(syls))


def _random_general_word(rng: Random, ctx, max_syllables: int) -> Word:
    gen = rng.choice("SU")
    syls = []
    for _ in range(rng.randint(1, max_syllables)):
        hi = ctx.p if gen == "S" else ctx.q
        syls.append(Syllable(gen, rng.randrange(1, hi)))
        gen = "U" if gen == "S" else "S"
    return Word(rng.choice((1, -1)), tuple(syls))


def _positive_words(ctx, r_max):
    return (w for w in words.enumerate_words(ctx, r_max) if w.sign > 0)


def _count_positive(ctx, r_max: int) -> int:
    base = (ctx.p - 1) * (ctx.q - 1)
    return sum(base ** r for r in range(1, r_max + 1))


def _count_alternating(ctx, max_syllables: int) -> int:
    total = 0
    for length in range(1, max_syllables + 1):
        for start_s in (True, False):
            n_s = (length + 1) // 2 if start_s else length // 2
            n_u = length - n_s
            total += (ctx.p - 1) ** n_s * (ctx.q - 1) ** n_u
    return 2 * total


class _WordPool:
    """Enumerated words with lazily evaluated matrices, for random draws."""

    def __init__(self, ctx, r_max: int):
        self.ctx = ctx
        self.items = list(words.enumerate_words(ctx, r_max))
        self._matrices: dict[int, object] = {}

    def matrix(self, index: int):
        m = self._matrices.get(index)
        if m is None:
            m = words.word_to_matrix(self.items[index], self.ctx)
            self._matrices[index] = m
        return m


# --- individual checks; each runs indices [lo, hi) and reports
# (cases, failures, first_failure_or_None) ---------------------------------

def _check_generator_signs(ctx, params, lo, hi):
    p, q = ctx.p, ctx.q
    cases = failures = 0
    first = None
    for i in range(lo, hi):
        if i < p:
            n = i + 1
            g = power_S(ctx, n)
            ok = sgn(g) == (-1 if n == p else 1)
            if ok and 0 < n < p:
                expected_w = 1 if n == p - 1 else 0
                ok = cocycle.asai_w(power_S(ctx, 1), g) == expected_w
            desc = f"S^{n}"
        else:
            m = i - p + 1
            g = power_U(ctx, m)
            ok = sgn(g) == (-1 if m == q else 1)
            if ok and 0 < m < q:
                expected_w = 1 if m == q - 1 else 0
                ok = cocycle.asai_w(power_U(ctx, 1), g) == expected_w
            desc = f"U^{m}"
        cases += 1
        if not ok:
            failures += 1
            first = first or f"sign/W table failed at {desc}"
    return cases, failures, first


def _check_chebyshev_positivity(ctx, params, lo, hi):
    p, q = ctx.p, ctx.q
    t = chebyshev_table(ctx)
    cases = failures = 0
    first = None
    for i in range(lo, hi):
        if i <= p:
            n, val, period, label = i, t.c_s(i), p, "C_n(s)"
        else:
            n = i - p - 1
            val, period, label = t.c_u(n), q, "C_n(u)"
        expected = 0 if n in (0, period) else 1
        cases += 1
        if val.sign() != expected:
            failures += 1
            first = first or f"{label} sign wrong at n={n}"
    return cases, failures, first


def _check_entry_sign_pattern(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    pool = itertools.islice(_positive_words(ctx, params["max_r"]), lo, hi)
    for w in pool:
        m = words.word_to_matrix(w, ctx)
        r = len(w.syllables) // 2
        sa, sb = m.a.sign(), m.b.sign()
        sc, sd = m.c.sign(), m.d.sign()
        if r % 2:
            ok = sa < 0 and sd < 0 and sb >= 0 and sc >= 0
        else:
            ok = sa > 0 and sd > 0 and sb <= 0 and sc <= 0
        cases += 1
        if not ok:
            failures += 1
            first = first or f"entry sign pattern failed for {w}"
    return cases, failures, first


def _check_psi_generator_powers(ctx, params, lo, hi):
    p, q = ctx.p, ctx.q
    cases = failures = 0
    first = None
    for i in range(lo, hi):
        if i < p - 1:
            n = i + 1
            ok = symbols.psi(Word(1, (Syllable("S", n),)), ctx) == -n * q
            desc = f"psi(S^{n})"
        elif i < p - 1 + q - 1:
            m = i - (p - 1) + 1
            ok = symbols.psi(Word(1, (Syllable("U", m),)), ctx) == -m * p
            desc = f"psi(U^{m})"
        else:
            ok = symbols.psi(Word(-1, ()), ctx) == p * q
            desc = "psi(-I)"
        cases += 1
        if not ok:
            failures += 1
            first = first or f"{desc} has the wrong value"
    return cases, failures, first


def _check_theorem_formula(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    for w in itertools.islice(_positive_words(ctx, params["max_r"]), lo, hi):
        via_cocycle = symbols.rademacher_symbol(w, ctx)
        via_formula = symbols.rademacher_formula(words.cyclic_key(w, ctx), ctx)
        cases += 1
        if via_cocycle != via_formula:
            failures += 1
            first = first or f"{w}: cocycle {via_cocycle} != formula {via_formula}"
    return cases, failures, first


def _check_conjugacy(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    for i in range(lo, hi):
        rng = _trial_rng(params["seed"], 11, i)
        w = _random_pair_word(rng, ctx, params["max_r"])
        g = _random_general_word(rng, ctx, 4)
        base = symbols.rademacher_symbol(w, ctx)
        negated = symbols.rademacher_symbol(-w, ctx)
        conj = symbols.rademacher_symbol(
            words.concat(words.inverse(g), w, g), ctx)
        cases += 1
        if not (base == negated == conj):
            failures += 1
            first = first or (
                f"trial {i}: Psi({w})={base}, Psi(-w)={negated}, "
                f"Psi(g^-1 w g)={conj} with g={g}")
    return cases, failures, first


def _check_satz8(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    for w in itertools.islice(_positive_words(ctx, 4), lo, hi):
        expected = sum(1 if s.exp == 1 else -1 for s in w.syllables if s.gen == "U")
        got = symbols.rademacher_symbol(w, ctx)
        cases += 1
        if got != expected:
            failures += 1
            first = first or f"{w}: Psi={got}, epsilon sum={expected}"
    return cases, failures, first


def _check_word_roundtrip(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    pool = itertools.islice(words.enumerate_alternating(ctx, 4), lo, hi)
    for w in pool:
        m = words.word_to_matrix(w, ctx)
        try:
            again = words.matrix_to_word(m, ctx, max_syllables=len(w.syllables) + 2)
            ok = words.word_to_matrix(again, ctx) == m
        except words.WordNotFoundError:
            ok = False
        cases += 1
        if not ok:
            failures += 1
            first = first or f"round trip failed for {w}"
    return cases, failures, first


def _check_classical(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    for w in itertools.islice(words.enumerate_words(ctx, params["max_r"]), lo, hi):
        via_cocycle = symbols.rademacher_symbol(w, ctx)
        m = symbols.group_matrix_to_int(words.word_to_matrix(w, ctx))
        via_sums = symbols.rademacher_classical(m)
        cases += 1
        if via_cocycle != via_sums:
            failures += 1
            first = first or f"{w}: cocycle {via_cocycle} != Dedekind {via_sums}"
    return cases, failures, first


def _check_cocycle_cases(ctx, params, lo, hi):
    cases = failures = 0
    first = None
    combos = list(itertools.product((-1, 1), repeat=3))
    for i in range(lo, hi):
        s1, s2, s12 = combos[i]
        cases += 1
        if cocycle.w_from_signs(s1, s2, s12) != cocycle.w_from_sign_cases(s1, s2, s12):
            failures += 1
            first = first or f"sign combo {(s1, s2, s12)} disagrees"
    return cases, failures, first


def _check_cocycle_identity(ctx, params, lo, hi):
    pool = _WordPool(ctx, params["max_r"])
    size = len(pool.items)
    cases = failures = 0
    first = None
    for i in range(lo, hi):
        rng = _trial_rng(params["seed"], 23, i)
        i1, i2, i3 = (rng.randrange(size) for _ in range(3))
        g1, g2, g3 = pool.matrix(i1), pool.matrix(i2), pool.matrix(i3)
        g12, g23 = mul(g1, g2), mul(g2, g3)
        lhs = cocycle.asai_w(g12, g3) + cocycle.asai_w(g1, g2)
        rhs = cocycle.asai_w(g1, g23) + cocycle.asai_w(g2, g3)
        cases += 1
        if lhs != rhs:
            failures += 1
            first = first or (
                f"trial {i}: words {pool.items[i1]} | {pool.items[i2]} | "
                f"{pool.items[i3]} break the 2-cocycle identity")
    return cases, failures, first


def _check_cocycle_log(ctx, params, lo, hi):
    pool = _WordPool(ctx, params["max_r"])
    size = len(pool.items)
    cases = failures = 0
    first = None
    for i in range(lo, hi):
        rng = _trial_rng(params["seed"], 37, i)
        i1, i2 = rng.randrange(size), rng.randrange(size)
        g1, g2 = pool.matrix(i1), pool.matrix(i2)
        exact = cocycle.asai_w(g1, g2)
        try:
            value = cocycle.log_cocycle_value(g1, g2)
        except cocycle.BranchBoundaryError:
            value = cocycle.log_cocycle_value(g1, g2, cocycle.FALLBACK_BASE_POINT)
        nearest = round(value)
        cases += 1
        if nearest != exact or abs(value - nearest) >= 1e-6:
            failures += 1
            first = first or (
                f"trial {i}: log value {value} vs exact {exact} "
                f"for {pool.items[i1]} | {pool.items[i2]}")
    return cases, failures, first


def _check_linking(ctx, params, lo, hi):
    p, q = ctx.p, ctx.q
    cases = failures = 0
    first = None
    for w in itertools.islice(_positive_words(ctx, params["max_r"]), lo, hi):
        key = words.cyclic_key(w, ctx)
        lk = symbols.dehornoy_linking(key, ctx)
        formula = symbols.rademacher_formula(key, ctx)
        ok = lk * (p * q - p - q) == Fraction(formula)
        if ok and (p, q) == (2, 3) and key.pairs == ((1, 1),):
            ok = lk == 1 and formula == 1
        cases += 1
        if not ok:
            failures += 1
            first = first or f"{w}: lk {lk} * (pq-p-q) != {formula}"
    return cases, failures, first


_CHECKS = {
    "generator-signs": (_check_generator_signs, lambda ctx, pr: ctx.p + ctx.q),
    "chebyshev-positivity": (_check_chebyshev_positivity, lambda ctx, pr: ctx.p + ctx.q + 2),
    "entry-sign-pattern": (_check_entry_sign_pattern,
                           lambda ctx, pr: _count_positive(ctx, pr["max_r"])),
    "psi-generator-powers": (_check_psi_generator_powers,
                             lambda ctx, pr: (ctx.p - 1) + (ctx.q - 1) + 1),
    "theorem-formula": (_check_theorem_formula,
                        lambda ctx, pr: _count_positive(ctx, pr["max_r"])),
    "conjugacy-invariance": (_check_conjugacy, lambda ctx, pr: pr["trials"]),
    "satz8-recovery": (_check_satz8, lambda ctx, pr: _count_positive(ctx, 4)),
    "word-roundtrip": (_check_word_roundtrip, lambda ctx, pr: _count_alternating(ctx, 4)),
    "classical-agreement": (_check_classical,
                            lambda ctx, pr: 2 * _count_positive(ctx, pr["max_r"])),
    "cocycle-case-form": (_check_cocycle_cases, lambda ctx, pr: 8),
    "cocycle-identity": (_check_cocycle_identity, lambda ctx, pr: pr["trials"]),
    "cocycle-log-crosscheck": (_check_cocycle_log, lambda ctx, pr: pr["log_pairs"]),
    "linking-corollary": (_check_linking,
                          lambda ctx, pr: _count_positive(ctx, pr["max_r"])),
}

_SUITE_CHECKS = {
    "lemmas": ("generator-signs", "chebyshev-positivity", "entry-sign-pattern",
               "psi-generator-powers"),
    "theorem": ("theorem-formula", "conjugacy-invariance", "satz8-recovery",
                "word-roundtrip"),
    "classical": ("classical-agreement",),
    "cocycle": ("cocycle-case-form", "cocycle-identity", "cocycle-log-crosscheck"),
    "linking": ("linking-corollary",),
}

_SL2Z_ONLY = {"satz8-recovery", "classical-agreement"}


def _chunk_entry(args):
    p, q, name, params, lo, hi = args
    ctx = make_context(p, q)
    return _CHECKS[name][0](ctx, params, lo, hi)


def run_check(p: int, q: int, name: str, params: dict, workers: int = 1) -> SuiteResult:
    ctx = make_context(p, q)
    if name in _SL2Z_ONLY and (p, q) != (2, 3):
        return SuiteResult(name=name, skipped=True,
                           note="only defined for (p, q) = (2, 3)")
    check, total_fn = _CHECKS[name]
    total = total_fn(ctx, params)
    if workers <= 1 or total < 128:
        cases, failures, first = check(ctx, params, 0, total)
    else:
        chunk = max(1, -(-total // (workers * 4)))
        jobs = [(p, q, name, params, lo, min(lo + chunk, total))
                for lo in range(0, total, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_entry, jobs))
        cases = sum(part[0] for part in parts)
        failures = sum(part[1] for part in parts)
        first = next((part[2] for part in parts if part[2]), None)
    return SuiteResult(name=name, cases=cases, failures=failures, first_failure=first)


def run_suites(p: int, q: int, suite: str = "all", max_r: int = 3, seed: int = 0,
               trials: int = 1000, log_pairs: int = 500,
               workers: int = 1) -> list[SuiteResult]:
    """Run one named suite (or all of them); deterministic for fixed inputs."""
    if suite == "all":
        names = SUITE_NAMES
    elif suite in _SUITE_CHECKS:
        names = (suite,)
    else:
        raise ValueError(
            f"unknown suite {suite!r}; expected one of all, {', '.join(SUITE_NAMES)}")
    params = {"max_r": max_r, "seed": seed, "trials": trials, "log_pairs": log_pairs}
    results = []
    for name in names:
        for check_name in _SUITE_CHECKS[name]:
            results.append(run_check(p, q, check_name, params, workers=workers))
    return results

"""Rademacher symbols on triangle groups, by three independent routes.

* cocycle path: fold psi over the letters of a word using psi(S_p) = -q,
  psi(U_q) = -p and psi(g h) = psi(g) + psi(h) + 2pq W(g, h), then correct
  by (pq/2) sgn(gamma) (1 - sgn tr(gamma));
* closed-form path: sum of (pq - q n_j - p m_j) over the exponent pairs of
  the cyclic normal form;
* classical path (only Gamma_{2,3} = SL_2(Z)): Dedekind's Phi from Dedekind
  sums, Psi = Phi - 3 sgn(c(a+d)).

Dehornoy-style linking numbers of the associated modular knots are the
closed form divided by pq - p - q, kept as exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CyclotomicContext
from .triangle import GroupMatrix, identity, mul_by_S, mul_by_U, sgn, trace_sign
from .words import CyclicKey, NotCyclicallyAlternating, Word, cyclic_key, normalize


class NonIntegralSymbolError(ArithmeticError):
    """The half-integer correction failed to produce an integer (a bug trap;
    the symbol is integer-valued on the whole group)."""


def _sign_int(x: int) -> int:
    return (x > 0) - (x < 0)


def psi_and_matrix(w: Word, ctx: CyclotomicContext) -> tuple[int, GroupMatrix]:
    """psi of the word's group element plus the evaluated matrix.

    Letter-level fold; a leading -I is expanded as S_p^p.  The value only
    depends on the group element (uniqueness of psi), not on the word.
    """
    w = normalize(w, ctx)
    p, q = ctx.p, ctx.q
    two_pq = 2 * p * q
    m = identity(ctx)
    s_run = 1
    acc = 0
    seq = [("S", p)] if w.sign < 0 else []
    seq.extend((s.gen, s.exp) for s in w.syllables)
    for gen, exp in seq:
        base, step = (-q, mul_by_S) if gen == "S" else (-p, mul_by_U)
        for _ in range(exp):
            m = step(m)
            s_new = sgn(m)
            # the appended generator has sign +1, so W = 1 iff the sign drops
            acc += base + two_pq * ((1 + s_run) * (1 - s_new) // 4)
            s_run = s_new
    return acc, m


def psi(w: Word, ctx: CyclotomicContext) -> int:
    return psi_and_matrix(w, ctx)[0]


def _correct(psi_value: int, m: GroupMatrix) -> int:
    ctx = m.ctx
    total = psi_value + Fraction(ctx.p * ctx.q, 2) * sgn(m) * (1 - trace_sign(m))
    if total.denominator != 1:
        raise NonIntegralSymbolError(
            f"psi={psi_value}, correction left denominator {total.denominator}")
    return int(total)


def rademacher_symbol(w: Word, ctx: CyclotomicContext) -> int:
    """Psi of the word's element via the cocycle path; always an integer."""
    psi_value, m = psi_and_matrix(w, ctx)
    return _correct(psi_value, m)


def rademacher_formula(key: CyclicKey, ctx: CyclotomicContext) -> int:
    """Closed form: sum of (pq - q n_j - p m_j) over the key's pairs."""
    p, q = ctx.p, ctx.q
    total = 0
    for n, m in key.pairs:
        if not 0 < n < p:
            raise ValueError(f"S exponent {n} outside (0, {p})")
        if not 0 < m < q:
            raise ValueError(f"U exponent {m} outside (0, {q})")
        total += p * q - q * n - p * m
    return total


def sawtooth(x) -> Fraction:
    """((x)) = x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(a: int, c: int) -> Fraction:
    """sum_{k=1}^{|c|-1} ((k/c)) ((ka/c)) as an exact rational; c != 0."""
    if c == 0:
        raise ValueError("dedekind_sum needs c != 0")
    total = Fraction(0)
    for k in range(1, abs(c)):
        total += sawtooth(Fraction(k, c)) * sawtooth(Fraction(k * a, c))
    return total


def _int_matrix(m) -> tuple[int, int, int, int]:
    try:
        (a, b), (c, d) = m
    except (TypeError, ValueError):
        raise ValueError("expected a 2x2 matrix as ((a, b), (c, d))") from None
    entries = (a, b, c, d)
    if not all(isinstance(x, int) for x in entries):
        raise ValueError("classical symbols need integer entries")
    if a * d - b * c != 1:
        raise ValueError(f"matrix is not unimodular: det = {a * d - b * c}")
    return entries


def dedekind_phi(m) -> int:
    """Dedekind's Phi on SL_2(Z): (a+d)/c - 12 sgn(c) s(a, c), and b/d when
    c = 0.  The total is an integer; this is asserted, not truncated."""
    a, b, c, d = _int_matrix(m)
    if c == 0:
        return b * d  # d = +-1, so b/d = b*d
    value = Fraction(a + d, c) - 12 * _sign_int(c) * dedekind_sum(a, c)
    if value.denominator != 1:
        raise ArithmeticError(f"Phi came out non-integral: {value}")
    return int(value)


def rademacher_classical(m) -> int:
    """Psi on SL_2(Z): Phi(gamma) - 3 sgn(c(a+d)), with sgn(0) = 0."""
    a, _, c, d = _int_matrix(m)
    return dedekind_phi(m) - 3 * _sign_int(c * (a + d))


def dehornoy_linking(key: CyclicKey, ctx: CyclotomicContext) -> Fraction:
    """Linking number of the modular knot with the base torus knot:
    pq/(pq-p-q) * sum_j ((p/2 - n_j)/p + (q/2 - m_j)/q), exact."""
    p, q = ctx.p, ctx.q
    total = Fraction(0)
    for n, m in key.pairs:
        if not 0 < n < p:
            raise ValueError(f"S exponent {n} outside (0, {p})")
        if not 0 < m < q:
            raise ValueError(f"U exponent {m} outside (0, {q})")
        total += Fraction(p - 2 * n, 2 * p) + Fraction(q - 2 * m, 2 * q)
    return Fraction(p * q, p * q - p - q) * total


def group_matrix_to_int(g: GroupMatrix) -> tuple[tuple[int, int], tuple[int, int]]:
    """Entries as rational integers; raises if any entry is not one."""
    a, b, c, d = (e.to_int() for e in g.entries())
    return ((a, b), (c, d))


@dataclass
class SymbolReport:
    """Everything the artifact can say about one group element."""
    p: int
    q: int
    word: Word
    psi: int
    psi_symbol: int                    # Psi via the cocycle path
    psi_formula: int | None            # Psi via the closed form, when a key exists
    psi_classical: int | None          # Dedekind-sum Psi, only for (2, 3)
    trace_sign: int
    linking: Fraction | None
    agreement: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "word": str(self.word),
            "word_json": self.word.to_json(),
            "psi": self.psi,
            "Psi_cocycle": self.psi_symbol,
            "Psi_formula": self.psi_formula,
            "Psi_classical": self.psi_classical,
            "trace_sign": self.trace_sign,
            "linking": None if self.linking is None else
                       f"{self.linking.numerator}/{self.linking.denominator}",
            "agreement": self.agreement,
        }


def compute_report(w: Word, ctx: CyclotomicContext) -> SymbolReport:
    """All symbol paths for one word, with the cross-path agreement flag."""
    w = normalize(w, ctx)
    psi_value, m = psi_and_matrix(w, ctx)
    psi_cocycle = _correct(psi_value, m)

    psi_formula = None
    linking = None
    try:
        key = cyclic_key(w, ctx)
    except NotCyclicallyAlternating:
        key = None
    if key is not None:
        psi_formula = rademacher_formula(key, ctx)
        linking = dehornoy_linking(key, ctx)

    psi_classical = None
    if (ctx.p, ctx.q) == (2, 3):
        psi_classical = rademacher_classical(group_matrix_to_int(m))

    values = [v for v in (psi_cocycle, psi_formula, psi_classical) if v is not None]
    return SymbolReport(
        p=ctx.p,
        q=ctx.q,
        word=w,
        psi=psi_value,
        psi_symbol=psi_cocycle,
        psi_formula=psi_formula,
        psi_classical=psi_classical,
        trace_sign=trace_sign(m),
        linking=linking,
        agreement=all(v == values[0] for v in values),
    )

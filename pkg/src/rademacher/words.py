"""Words in the generators S, U: parsing, normal forms, evaluation,
decomposition of matrices back into words, and the cyclic conjugacy key.

A normalized word is +-S^{n_1} U^{m_1} ... with strictly alternating
generators and exponents in (0, p) resp. (0, q); the empty word denotes
+-I.  Normalization repeatedly merges adjacent equal-generator syllables and
wraps exponents through S^p = U^q = -I, flipping the sign per wrap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .cyclotomic import ContextMismatchError, CyclotomicContext
from .triangle import GroupMatrix, identity, mul, power_S, power_U


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class NotCyclicallyAlternating(ValueError):
    """Word has no cyclically reduced S...U alternating form (torsion etc.)."""


class WordNotFoundError(LookupError):
    """No word within the search bound evaluates to the matrix.

    Indistinguishable by construction from the matrix not lying in the
    group at all; enlarge the bound to push the ambiguity further out.
    """


@dataclass(frozen=True)
class Syllable:
    gen: str
    exp: int

    def __post_init__(self):
        if self.gen not in ("S", "U"):
            raise ValueError(f"generator must be 'S' or 'U', got {self.gen!r}")
        if not isinstance(self.exp, int):
            raise ValueError("exponent must be an integer")


@dataclass(frozen=True)
class Word:
    sign: int
    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def __str__(self):
        body = " ".join(
            s.gen if s.exp == 1 else f"{s.gen}^{s.exp}" for s in self.syllables)
        if not body:
            body = "I"
        return ("-" if self.sign < 0 else "") + body

    def __neg__(self):
        return Word(-self.sign, self.syllables)

    def to_json(self) -> dict:
        return {"sign": self.sign, "syllables": [[s.gen, s.exp] for s in self.syllables]}


def word_from_json(data: dict) -> Word:
    try:
        return Word(data["sign"], tuple(Syllable(g, e) for g, e in data["syllables"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad word JSON: {exc}") from exc


def concat(*parts: Word) -> Word:
    sign = 1
    syls: tuple[Syllable, ...] = ()
    for w in parts:
        sign *= w.sign
        syls += w.syllables
    return Word(sign, syls)


def inverse(w: Word) -> Word:
    return Word(w.sign, tuple(Syllable(s.gen, -s.exp) for s in reversed(w.syllables)))


def parse_word(text: str) -> Word:
    """Parse `['-'] term+` with term = ('S'|'U') ['^' digits]; 'I' is accepted
    for the empty word.  Exponents are kept literally; normalization is a
    separate step."""
    i, n = 0, len(text)
    sign = 1
    syllables: list[Syllable] = []

    def skip_ws():
        nonlocal i
        while i < n and text[i].isspace():
            i += 1

    skip_ws()
    if i < n and text[i] == "-":
        sign = -1
        i += 1
        skip_ws()
    if i < n and text[i] == "I":
        i += 1
        skip_ws()
        if i != n:
            raise WordSyntaxError("'I' must stand alone", i)
        return Word(sign, ())
    while i < n:
        ch = text[i]
        if ch not in ("S", "U"):
            raise WordSyntaxError(f"expected 'S' or 'U', found {ch!r}", i)
        gen = ch
        i += 1
        exp = 1
        if i < n and text[i] == "^":
            i += 1
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if start == i:
                raise WordSyntaxError("expected digits after '^'", i)
            exp = int(text[start:i])
        syllables.append(Syllable(gen, exp))
        skip_ws()
    if not syllables:
        raise WordSyntaxError("empty word (write 'I' for the identity)", i)
    return Word(sign, tuple(syllables))


def _wrap_exponent(gen: str, exp: int, ctx: CyclotomicContext) -> tuple[int, int]:
    # S^e = (-1)^k S^r with e = k*p + r, 0 <= r < p; likewise for U with q
    period = ctx.p if gen == "S" else ctx.q
    k, r = divmod(exp, period)
    return (-1 if k % 2 else 1), r


def normalize(w: Word, ctx: CyclotomicContext) -> Word:
    """Fixpoint of merge/wrap/delete; evaluates to the same matrix."""
    sign = w.sign
    out: list[list] = []
    for syl in w.syllables:
        gen, exp = syl.gen, syl.exp
        if out and out[-1][0] == gen:
            exp += out.pop()[1]
        s, r = _wrap_exponent(gen, exp, ctx)
        sign *= s
        if r:
            out.append([gen, r])
    return Word(sign, tuple(Syllable(g, e) for g, e in out))


def word_to_matrix(w: Word, ctx: CyclotomicContext) -> GroupMatrix:
    m = identity(ctx)
    for syl in w.syllables:
        step = power_S(ctx, syl.exp) if syl.gen == "S" else power_U(ctx, syl.exp)
        m = mul(m, step)
    return m if w.sign > 0 else -m


def _complexity(m: GroupMatrix):
    a, b, c, d = m.entries()
    return a * a + b * b + c * c + d * d


def matrix_to_word(g: GroupMatrix, ctx: CyclotomicContext, max_syllables: int = 8) -> Word:
    """A normalized word evaluating exactly to g.

    Greedy left-stripping: peel the prefix S^n or U^m whose removal strictly
    shrinks the exact complexity a^2+b^2+c^2+d^2; if no strip helps, fall
    back to iterative deepening over normalized words up to max_syllables.
    The result is certified by re-evaluation before returning.
    """
    if g.ctx != ctx:
        raise ContextMismatchError("matrix belongs to a different context")
    eye = identity(ctx)
    neye = -eye
    strips: list[Syllable] = []
    m = g
    cur = _complexity(m)
    sign = None
    for _ in range(max(64, 4 * max_syllables)):
        if m == eye:
            sign = 1
            break
        if m == neye:
            sign = -1
            break
        best = None
        for gen, hi, powfn in (("S", ctx.p, power_S), ("U", ctx.q, power_U)):
            for e in range(1, hi):
                cand = mul(powfn(ctx, -e), m)
                cc = _complexity(cand)
                if (cc - cur).sign() < 0 and (best is None or (cc - best[0]).sign() < 0):
                    best = (cc, gen, e, cand)
        if best is None:
            break
        cur, gen, e, m = best
        strips.append(Syllable(gen, e))
    if sign is None:
        return _deepening_search(g, ctx, max_syllables)
    word = normalize(Word(sign, tuple(strips)), ctx)
    assert word_to_matrix(word, ctx) == g
    return word


def _alternating_shapes(ctx: CyclotomicContext, length: int) -> Iterator[tuple[Syllable, ...]]:
    ranges = {"S": range(1, ctx.p), "U": range(1, ctx.q)}
    for start in ("S", "U"):
        gens = [start if i % 2 == 0 else ("U" if start == "S" else "S") for i in range(length)]
        for exps in itertools.product(*(ranges[g] for g in gens)):
            yield tuple(Syllable(g, e) for g, e in zip(gens, exps))


def _deepening_search(g: GroupMatrix, ctx: CyclotomicContext, max_syllables: int) -> Word:
    eye = identity(ctx)
    neg_g = -g
    if g == eye:
        return Word(1, ())
    if neg_g == eye:
        return Word(-1, ())
    for length in range(1, max_syllables + 1):
        for syls in _alternating_shapes(ctx, length):
            m = word_to_matrix(Word(1, syls), ctx)
            if m == g:
                return Word(1, syls)
            if m == neg_g:
                return Word(-1, syls)
    raise WordNotFoundError(
        f"no word of at most {max_syllables} syllables evaluates to the matrix; "
        "it may not belong to the group, or the bound may be too small")


def enumerate_alternating(ctx: CyclotomicContext, max_syllables: int) -> Iterator[Word]:
    """All normalized words (either starting generator) with 1..max_syllables
    syllables, both signs, in a fixed deterministic order."""
    for length in range(1, max_syllables + 1):
        for syls in _alternating_shapes(ctx, length):
            yield Word(1, syls)
            yield Word(-1, syls)


def enumerate_words(ctx: CyclotomicContext, r_max: int) -> Iterator[Word]:
    """All +-S^{n_1}U^{m_1}...S^{n_r}U^{m_r} with 1 <= r <= r_max, exponents in
    range, in deterministic lexicographic order; 2 * sum_r ((p-1)(q-1))^r words."""
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    pair_choices = [(n, m) for n in range(1, ctx.p) for m in range(1, ctx.q)]
    for r in range(1, r_max + 1):
        for combo in itertools.product(pair_choices, repeat=r):
            syls = tuple(
                Syllable(g, e)
                for n, m in combo
                for g, e in (("S", n), ("U", m)))
            yield Word(1, syls)
            yield Word(-1, syls)


def count_words(ctx: CyclotomicContext, r_max: int) -> int:
    base = (ctx.p - 1) * (ctx.q - 1)
    return 2 * sum(base ** r for r in range(1, r_max + 1))


@dataclass(frozen=True)
class CyclicKey:
    """Conjugacy-class label of a cyclically alternating word: its exponent
    pairs in lexicographically minimal rotation, taken modulo +-I."""
    pairs: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.pairs)


def minimal_rotation_index(seq) -> int:
    """Booth's linear-time least-rotation algorithm; index of the minimal
    rotation of seq under lexicographic order."""
    n = len(seq)
    if n <= 1:
        return 0
    s = tuple(seq) + tuple(seq)
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def cyclic_key(w: Word, ctx: CyclotomicContext) -> CyclicKey:
    """Canonical key of the cyclic class of w.

    The word is normalized, then cyclically reduced (wrap-around merges of
    equal generators, exponents wrapped through the torsion relations), and
    must come out as an even strictly alternating cycle; it is rotated to
    start with S and to its minimal rotation.  Torsion powers and other
    words without such a form raise NotCyclicallyAlternating.
    """
    w = normalize(w, ctx)
    syls = [[s.gen, s.exp] for s in w.syllables]
    if not syls:
        raise NotCyclicallyAlternating("+-I has no alternating cyclic form")
    while len(syls) > 1 and syls[0][0] == syls[-1][0]:
        gen, last_exp = syls.pop()
        _, r = _wrap_exponent(gen, syls[0][1] + last_exp, ctx)
        if r:
            syls[0][1] = r
        else:
            syls.pop(0)
            if not syls:
                raise NotCyclicallyAlternating("word collapses to +-I cyclically")
    size = len(syls)
    if size % 2 or any(syls[i][0] == syls[(i + 1) % size][0] for i in range(size)):
        raise NotCyclicallyAlternating(
            f"no S...U alternating cyclic form for {w}")
    if syls[0][0] == "U":
        syls = syls[1:] + syls[:1]
    pairs = tuple((syls[2 * i][1], syls[2 * i + 1][1]) for i in range(size // 2))
    k = minimal_rotation_index(pairs)
    return CyclicKey(pairs[k:] + pairs[:k])

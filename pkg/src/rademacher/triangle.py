"""Matrices of the triangle group Gamma_{p,q} over the real cyclotomic field.

The group is generated by
    S_p = [[0, -1], [1, 2cos(pi/p)]],   U_q = [[2cos(pi/q), -1], [1, 0]]
with S_p^p = U_q^q = -I.  Integer powers come from the second-kind Chebyshev
recursion C_0 = 0, C_1 = 1, C_{n+1} = 2x C_n - C_{n-1} (so C_n(cos t) =
sin nt / sin t), evaluated exactly at s = cos(pi/p) and u = cos(pi/q).
"""

from __future__ import annotations

from .cyclotomic import AlgebraicReal, ContextMismatchError, CyclotomicContext, algebraic_from_json


class ChebyshevTable:
    """Memoized C_n(s) and C_n(u) for n in [-1, max(p,q) + 1].

    C_{-1} = -1 (the recursion run backwards) keeps n = 0 uniform.  The
    boundary zeros C_p(s) = C_q(u) = 0 are asserted at construction.
    """

    def __init__(self, ctx: CyclotomicContext):
        self.ctx = ctx
        self.two_s = ctx.two_cos(ctx.q)   # 2cos(pi/p)
        self.two_u = ctx.two_cos(ctx.p)   # 2cos(pi/q)
        nmax = max(ctx.p, ctx.q) + 1
        self._at_s = self._run(self.two_s, nmax)
        self._at_u = self._run(self.two_u, nmax)
        assert self.c_s(ctx.p).is_zero(), "C_p(cos(pi/p)) must vanish"
        assert self.c_u(ctx.q).is_zero(), "C_q(cos(pi/q)) must vanish"

    def _run(self, two_x: AlgebraicReal, nmax: int) -> list[AlgebraicReal]:
        ctx = self.ctx
        vals = [ctx.constant(-1), ctx.zero, ctx.one]
        for _ in range(1, nmax):
            vals.append(two_x * vals[-1] - vals[-2])
        return vals

    def c_s(self, n: int) -> AlgebraicReal:
        return self._at_s[n + 1]

    def c_u(self, n: int) -> AlgebraicReal:
        return self._at_u[n + 1]


def chebyshev_table(ctx: CyclotomicContext) -> ChebyshevTable:
    table = getattr(ctx, "_chebyshev_table", None)
    if table is None:
        table = ChebyshevTable(ctx)
        ctx._chebyshev_table = table
    return table


class GroupMatrix:
    """Immutable 2x2 matrix with real entries and determinant exactly 1."""

    __slots__ = ("ctx", "a", "b", "c", "d", "_sgn")

    def __init__(self, ctx, a, b, c, d, check: bool = True):
        self.ctx = ctx
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self._sgn = None
        if check:
            for name, entry in (("a", a), ("b", b), ("c", c), ("d", d)):
                if entry.ctx != ctx:
                    raise ContextMismatchError(f"entry {name} belongs to {entry.ctx!r}")
                if not entry.is_real():
                    raise ValueError(f"entry {name} is not real: {entry!r}")
            if not self.det() == 1:
                raise ValueError("matrix is not unimodular (det != 1)")

    def det(self) -> AlgebraicReal:
        return self.a * self.d - self.b * self.c

    def trace(self) -> AlgebraicReal:
        return self.a + self.d

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        return mul(self, other)

    def __neg__(self):
        return GroupMatrix(self.ctx, -self.a, -self.b, -self.c, -self.d, check=False)

    def __eq__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        return self.ctx == other.ctx and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.q) + tuple(e.coeffs for e in self.entries()))

    def __repr__(self):
        return f"GroupMatrix({self.a!r}, {self.b!r}; {self.c!r}, {self.d!r})"

    def inverse(self) -> "GroupMatrix":
        return GroupMatrix(self.ctx, self.d, -self.b, -self.c, self.a, check=False)

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "q": self.ctx.q,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "d": self.d.to_json(),
        }


def matrix_from_json(ctx: CyclotomicContext, data: dict) -> GroupMatrix:
    """Parse a matrix from its JSON form, validating det = 1 and realness.

    Entries accept the shapes of `algebraic_from_json`; an optional p/q pair
    in the object must match the context.
    """
    if not isinstance(data, dict):
        raise ValueError("matrix JSON must be an object with entries a, b, c, d")
    for key in ("p", "q"):
        if key in data and data[key] != getattr(ctx, key):
            raise ValueError(f"matrix {key}={data[key]} does not match context {key}={getattr(ctx, key)}")
    missing = [k for k in ("a", "b", "c", "d") if k not in data]
    if missing:
        raise ValueError(f"matrix JSON is missing entries: {', '.join(missing)}")
    entries = {k: algebraic_from_json(ctx, data[k]) for k in ("a", "b", "c", "d")}
    return GroupMatrix(ctx, entries["a"], entries["b"], entries["c"], entries["d"])


def identity(ctx: CyclotomicContext) -> GroupMatrix:
    m = getattr(ctx, "_identity_matrix", None)
    if m is None:
        m = GroupMatrix(ctx, ctx.one, ctx.zero, ctx.zero, ctx.one, check=False)
        ctx._identity_matrix = m
    return m


def generator_S(ctx: CyclotomicContext) -> GroupMatrix:
    t = chebyshev_table(ctx)
    return GroupMatrix(ctx, ctx.zero, -ctx.one, ctx.one, t.two_s, check=False)


def generator_U(ctx: CyclotomicContext) -> GroupMatrix:
    t = chebyshev_table(ctx)
    return GroupMatrix(ctx, t.two_u, -ctx.one, ctx.one, ctx.zero, check=False)


def power_S(ctx: CyclotomicContext, n: int) -> GroupMatrix:
    """S_p^n for any integer n, reduced by the exact period S_p^{2p} = I."""
    k = n % (2 * ctx.p)
    negate = k >= ctx.p
    if negate:
        k -= ctx.p
    t = chebyshev_table(ctx)
    m = GroupMatrix(ctx, -t.c_s(k - 1), -t.c_s(k), t.c_s(k), t.c_s(k + 1), check=False)
    return -m if negate else m


def power_U(ctx: CyclotomicContext, n: int) -> GroupMatrix:
    """U_q^n for any integer n, reduced by the exact period U_q^{2q} = I."""
    k = n % (2 * ctx.q)
    negate = k >= ctx.q
    if negate:
        k -= ctx.q
    t = chebyshev_table(ctx)
    m = GroupMatrix(ctx, t.c_u(k + 1), -t.c_u(k), t.c_u(k), -t.c_u(k - 1), check=False)
    return -m if negate else m


def mul(g1: GroupMatrix, g2: GroupMatrix) -> GroupMatrix:
    if g1.ctx != g2.ctx:
        raise ContextMismatchError("matrix contexts differ")
    return GroupMatrix(
        g1.ctx,
        g1.a * g2.a + g1.b * g2.c,
        g1.a * g2.b + g1.b * g2.d,
        g1.c * g2.a + g1.d * g2.c,
        g1.c * g2.b + g1.d * g2.d,
        check=False,
    )


def mul_by_S(m: GroupMatrix) -> GroupMatrix:
    # m * S_p, expanded: only two products since S_p is almost a permutation
    two_s = chebyshev_table(m.ctx).two_s
    return GroupMatrix(m.ctx, m.b, two_s * m.b - m.a, m.d, two_s * m.d - m.c, check=False)


def mul_by_U(m: GroupMatrix) -> GroupMatrix:
    # m * U_q
    two_u = chebyshev_table(m.ctx).two_u
    return GroupMatrix(m.ctx, two_u * m.a + m.b, -m.a, two_u * m.c + m.d, -m.c, check=False)


def sgn(g: GroupMatrix) -> int:
    """Sign of the c entry, or of d when c = 0 (d cannot then vanish)."""
    if g._sgn is None:
        s = g.c.sign()
        g._sgn = s if s else g.d.sign()
    return g._sgn


def trace_sign(g: GroupMatrix) -> int:
    return g.trace().sign()


def is_trace_greater_than_two(g: GroupMatrix) -> bool:
    return (g.trace() - 2).sign() > 0

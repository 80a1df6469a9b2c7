"""Exact arithmetic in Z[zeta] for zeta = exp(2*pi*i/(2pq)).

Elements are coefficient vectors reduced modulo the cyclotomic polynomial
Phi_{2pq}, so equality of values is equality of canonical forms.  The real
subfield (fixed by zeta -> 1/zeta) contains 2cos(k*pi/(pq)) for every k and
hence every matrix entry of the triangle group Gamma_{p,q}.

Signs of real elements are decided exactly: zero is read off the canonical
form, and a nonzero value is separated from zero by interval evaluation at
adaptively doubled precision (terminates because the value is nonzero).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath


class ContextMismatchError(ValueError):
    """Combined elements belong to different cyclotomic contexts."""


class NotRealError(ValueError):
    """Sign or order was requested for an element not fixed by conjugation."""


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _exact_poly_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic and divides num exactly over Z
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        out[i] = c
        if c:
            for k in range(dd + 1):
                num[i + k] -= c * den[k]
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n in ascending order.

    Computed by exact division of x^n - 1 by Phi_d for every proper divisor
    d of n; deterministic and factorization-free.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_poly_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _canon_coeff(x):
    """Coefficients are ints, or Fractions only when genuinely non-integral."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x._numerator if x._denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, str):
        return _canon_coeff(Fraction(x))
    raise TypeError(f"unsupported coefficient type: {type(x).__name__}")


class CyclotomicContext:
    """Shared tables for one modulus 2pq: Phi_{2pq}, the canonical forms of
    all powers of zeta, the conjugation map, and float enclosures of
    cos(2*pi*k/2pq) used by the sign fast path.

    Immutable after construction; safe to share across workers.
    """

    def __init__(self, p: int, q: int):
        if not isinstance(p, int) or not isinstance(q, int):
            raise ValueError("p and q must be integers")
        if p < 2:
            raise ValueError(f"p must be at least 2, got p={p}")
        if q <= p:
            raise ValueError(f"q must exceed p, got p={p}, q={q}")
        g = math.gcd(p, q)
        if g != 1:
            raise ValueError(f"p and q must be coprime, gcd({p}, {q}) = {g}")
        self.p = p
        self.q = q
        self.modulus_order = n = 2 * p * q
        self.cyclotomic_poly = phi = cyclotomic_polynomial(n)
        self.degree = d = len(phi) - 1

        # canonical form of zeta^e for 0 <= e < n (zeta^n = 1)
        pows: list[tuple[int, ...]] = []
        for e in range(d):
            pows.append(tuple(1 if k == e else 0 for k in range(d)))
        x_to_d = tuple(-c for c in phi[:d])
        pows.append(x_to_d)
        for _ in range(d + 1, n):
            prev = pows[-1]
            top = prev[d - 1]
            row = [0] + list(prev[: d - 1])
            if top:
                for k in range(d):
                    row[k] += top * x_to_d[k]
            pows.append(tuple(row))
        self._zeta_pow = tuple(pows)
        self._conj_basis = tuple(pows[(n - k) % n] for k in range(d))

        ivc = mpmath.ctx_iv.MPIntervalContext()
        ivc.prec = 96
        cos_lo, cos_hi, cos_mid = [], [], []
        for k in range(d):
            enc = ivc.cos(2 * ivc.pi * k / n)
            lo = math.nextafter(float(enc.a), -math.inf)
            hi = math.nextafter(float(enc.b), math.inf)
            cos_lo.append(lo)
            cos_hi.append(hi)
            cos_mid.append((lo + hi) / 2.0)
        self._cos_lo = tuple(cos_lo)
        self._cos_hi = tuple(cos_hi)
        self._cos_mid = tuple(cos_mid)

        self.zero = AlgebraicReal(self, (0,) * d)
        self.one = AlgebraicReal(self, self._zeta_pow[0])

    def __eq__(self, other):
        return isinstance(other, CyclotomicContext) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"CyclotomicContext(p={self.p}, q={self.q})"

    def constant(self, value) -> AlgebraicReal:
        c = _canon_coeff(value)
        return AlgebraicReal(self, (c,) + (0,) * (self.degree - 1))

    def zeta(self) -> AlgebraicReal:
        """The generator zeta itself (not real unless the field is trivial)."""
        return AlgebraicReal(self, self._zeta_pow[1 % self.modulus_order])

    def element(self, coeffs) -> AlgebraicReal:
        """Element from coefficients in ascending powers of zeta.

        Vectors longer than deg Phi_{2pq} are reduced; shorter ones padded.
        """
        vec = [_canon_coeff(c) for c in coeffs]
        d, n = self.degree, self.modulus_order
        if len(vec) < d:
            vec.extend([0] * (d - len(vec)))
        while len(vec) > d:
            top = vec.pop()
            if top:
                row = self._zeta_pow[len(vec) % n]
                for k in range(d):
                    if row[k]:
                        vec[k] += top * row[k]
        return AlgebraicReal(self, tuple(_canon_coeff(c) for c in vec))

    def two_cos(self, k: int) -> AlgebraicReal:
        """zeta^k + zeta^(-k) = 2*cos(k*pi/(p*q)), in canonical form."""
        n = self.modulus_order
        a = self._zeta_pow[k % n]
        b = self._zeta_pow[(-k) % n]
        return AlgebraicReal(self, tuple(x + y for x, y in zip(a, b)))


@lru_cache(maxsize=None)
def make_context(p: int, q: int) -> CyclotomicContext:
    return CyclotomicContext(p, q)


class AlgebraicReal:
    """Element of Z[zeta] (rational coefficients permitted) in canonical form.

    Instances are immutable value objects; `ctx.element(...)` is the public
    constructor and performs reduction.  Arithmetic operators return new
    canonical elements and refuse to mix contexts.
    """

    __slots__ = ("ctx", "coeffs", "_real", "_sign")

    def __init__(self, ctx: CyclotomicContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs
        self._real = None
        self._sign = None

    def _coerce(self, other):
        if isinstance(other, AlgebraicReal):
            if other.ctx != self.ctx:
                raise ContextMismatchError(
                    f"cannot combine elements of {self.ctx!r} and {other.ctx!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicReal(
            self.ctx, tuple(_canon_coeff(x + y) for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicReal(
            self.ctx, tuple(_canon_coeff(x - y) for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraicReal(self.ctx, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ctx.zero
            return AlgebraicReal(self.ctx, tuple(_canon_coeff(x * other) for x in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        d = ctx.degree
        a, b = self.coeffs, o.coeffs
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:d]
        zp = ctx._zeta_pow
        for j in range(d, 2 * d - 1):
            cj = prod[j]
            if cj:
                row = zp[j]
                for k in range(d):
                    if row[k]:
                        out[k] += cj * row[k]
        return AlgebraicReal(ctx, tuple(_canon_coeff(x) for x in out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicReal):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.ctx.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.q, self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{k}" if k else f"{c}")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} mod Phi_{self.ctx.modulus_order}>"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def conjugate(self) -> AlgebraicReal:
        """Image under zeta -> zeta^(-1) (complex conjugation on Z[zeta])."""
        ctx = self.ctx
        d = ctx.degree
        out = [0] * d
        for k, c in enumerate(self.coeffs):
            if c:
                row = ctx._conj_basis[k]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return AlgebraicReal(ctx, tuple(_canon_coeff(x) for x in out))

    def is_real(self) -> bool:
        if self._real is None:
            self._real = self.conjugate().coeffs == self.coeffs
        return self._real

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}; requires a real element."""
        if self._sign is not None:
            return self._sign
        if not self.is_real():
            raise NotRealError(f"sign of a non-real element: {self!r}")
        if not any(self.coeffs):
            s = 0
        else:
            s = self._interval_sign_float()
            if s is None:
                s = self._interval_sign_mp()
        self._sign = s
        return s

    def _interval_sign_float(self):
        # Rigorous double-precision interval pass; None when 0 stays inside.
        ctx = self.ctx
        nextafter = math.nextafter
        inf = math.inf
        lo_t = 0.0
        hi_t = 0.0
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            try:
                fc = float(c)
            except OverflowError:
                return None
            if fc == c:
                cl = ch = fc
            else:
                cl = nextafter(fc, -inf)
                ch = nextafter(fc, inf)
            kl = ctx._cos_lo[k]
            kh = ctx._cos_hi[k]
            p1, p2, p3, p4 = cl * kl, cl * kh, ch * kl, ch * kh
            lo_t = nextafter(lo_t + nextafter(min(p1, p2, p3, p4), -inf), -inf)
            hi_t = nextafter(hi_t + nextafter(max(p1, p2, p3, p4), inf), inf)
        if lo_t > 0.0:
            return 1
        if hi_t < 0.0:
            return -1
        return None

    def _interval_sign_mp(self):
        # Adaptive escalation: 64-bit intervals, doubling until zero is excluded.
        n = self.ctx.modulus_order
        prec = 64
        while prec <= (1 << 16):
            ivc = mpmath.ctx_iv.MPIntervalContext()
            ivc.prec = prec
            total = ivc.mpf(0)
            two_pi = 2 * ivc.pi
            for k, c in enumerate(self.coeffs):
                if not c:
                    continue
                if isinstance(c, Fraction):
                    cv = ivc.mpf(c.numerator) / ivc.mpf(c.denominator)
                else:
                    cv = ivc.mpf(c)
                total += cv * ivc.cos(two_pi * k / n)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
        raise RuntimeError("sign still undecided at 65536 bits; "
                           "nonzero canonical form should have separated by now")

    def __lt__(self, other):
        return compare(self, self._coerce(other)) < 0

    def __le__(self, other):
        return compare(self, self._coerce(other)) <= 0

    def __gt__(self, other):
        return compare(self, self._coerce(other)) > 0

    def __ge__(self, other):
        return compare(self, self._coerce(other)) >= 0

    def __float__(self):
        # non-rigorous; sanity checks only, the exact sign path is authoritative
        return float(sum(float(c) * m for c, m in zip(self.coeffs, self.ctx._cos_mid) if c))

    def evaluate_mp(self, mp_ctx):
        """Real value as an mpf in the given mpmath context (element must be real)."""
        if not self.is_real():
            raise NotRealError("numeric evaluation is defined for real elements only")
        n = self.ctx.modulus_order
        total = mp_ctx.mpf(0)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if isinstance(c, Fraction):
                cv = mp_ctx.mpf(c.numerator) / mp_ctx.mpf(c.denominator)
            else:
                cv = mp_ctx.mpf(c)
            total += cv * mp_ctx.cos(2 * mp_ctx.pi * k / n)
        return total

    def to_int(self) -> int:
        """The value as a rational integer; raises unless the canonical form is
        a constant integer vector."""
        if any(self.coeffs[1:]):
            raise ValueError(f"not a rational integer: {self!r}")
        c = self.coeffs[0]
        if not isinstance(c, int):
            raise ValueError(f"not a rational integer: {self!r}")
        return c

    def to_json(self) -> dict:
        return {
            "order": self.ctx.modulus_order,
            "coeffs": [str(c) for c in self.coeffs],
        }


def algebraic_from_json(ctx: CyclotomicContext, data) -> AlgebraicReal:
    """Parse the JSON forms of an element.

    Accepted: the canonical {"order": 2pq, "coeffs": [...]} object, a bare
    coefficient array, or a single integer / "num/den" string meaning a
    constant.  Coefficient entries may be ints or exact decimal strings.
    """
    if isinstance(data, dict):
        if "coeffs" not in data:
            raise ValueError("element object needs a 'coeffs' field")
        order = data.get("order")
        if order is not None and order != ctx.modulus_order:
            raise ValueError(
                f"element has modulus order {order}, context needs {ctx.modulus_order}")
        return ctx.element(data["coeffs"])
    if isinstance(data, list):
        return ctx.element(data)
    if isinstance(data, (int, str)):
        return ctx.constant(_canon_coeff(data))
    raise ValueError(f"cannot parse an element from {type(data).__name__}")


def sign_of(a: AlgebraicReal) -> int:
    return a.sign()


def compare(a: AlgebraicReal, b: AlgebraicReal) -> int:
    """-1, 0 or +1 as a < b, a = b, a > b (both real, same context)."""
    return (a - b).sign()

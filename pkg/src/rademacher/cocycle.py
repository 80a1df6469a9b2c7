"""Asai's 2-cocycle W on SL_2(R).

W(g1, g2) = (log j(g1, g2 z) + log j(g2, z) - log j(g1 g2, z)) / 2 pi i with
j(g, z) = cz + d and the branch Im log in [-pi, pi); the value is an integer
in {-1, 0, 1}, independent of z, and equals the sign formula

    (sgn(g1) + sgn(g2) - sgn(g1 g2) - sgn(g1) sgn(g2) sgn(g1 g2)) / 4.

The sign formula is the authoritative exact path; the logarithmic branch
computation exists as a floating-point validation oracle.
"""

from __future__ import annotations

import os

import mpmath

from .triangle import GroupMatrix, mul, sgn

DEFAULT_BASE_POINT = complex(0.0, 1.0)
FALLBACK_BASE_POINT = complex(0.31, 1.07)
BRANCH_TOLERANCE = 1e-9


class BranchBoundaryError(ArithmeticError):
    """A log argument fell within rounding distance of the branch cut."""


def w_from_signs(s1: int, s2: int, s12: int) -> int:
    num = s1 + s2 - s12 - s1 * s2 * s12
    assert num % 4 == 0
    return num // 4


def w_from_sign_cases(s1: int, s2: int, s12: int) -> int:
    # the three-case form; must agree with w_from_signs on all combinations
    if s1 == s2 == 1 and s12 == -1:
        return 1
    if s1 == s2 == -1 and s12 == 1:
        return -1
    return 0


def asai_w(g1: GroupMatrix, g2: GroupMatrix) -> int:
    """Exact W(g1, g2) in {-1, 0, +1} via the sign formula."""
    w = w_from_signs(sgn(g1), sgn(g2), sgn(mul(g1, g2)))
    assert w in (-1, 0, 1)
    return w


def _initial_precision(precision_bits) -> int:
    if precision_bits is not None:
        return int(precision_bits)
    env = os.environ.get("RADEMACHER_PRECISION_BITS")
    return int(env) if env else 64


def _branch_angle(c_entry, d_entry, z, mp):
    """Im log(cz + d) with the branch in [-pi, pi).

    c = 0 is decided exactly (then cz + d is the real number d, and the
    branch puts negative reals at -pi).  Otherwise the angle comes from
    atan2 and a value within BRANCH_TOLERANCE of +-pi is refused.
    """
    if c_entry.is_zero():
        if d_entry.sign() < 0:
            return -mp.pi
        return mp.mpf(0)
    j = c_entry.evaluate_mp(mp) * z + d_entry.evaluate_mp(mp)
    theta = mp.atan2(mp.im(j), mp.re(j))
    if mp.pi - abs(theta) < BRANCH_TOLERANCE:
        raise BranchBoundaryError(
            "log argument within 1e-9 of the branch cut; retry with another base point")
    return theta


def log_cocycle_value(g1: GroupMatrix, g2: GroupMatrix,
                      base_point: complex = DEFAULT_BASE_POINT,
                      precision_bits: int | None = None) -> float:
    """The pre-rounding value of the logarithmic definition at base_point."""
    if base_point.imag <= 0:
        raise ValueError("base point must lie in the upper half-plane")
    mp = mpmath.ctx_mp.MPContext()
    mp.prec = _initial_precision(precision_bits)
    z = mp.mpc(base_point.real, base_point.imag)
    g3 = mul(g1, g2)
    j2 = g2.c.evaluate_mp(mp) * z + g2.d.evaluate_mp(mp)
    z2 = (g2.a.evaluate_mp(mp) * z + g2.b.evaluate_mp(mp)) / j2
    theta1 = _branch_angle(g1.c, g1.d, z2, mp)
    theta2 = _branch_angle(g2.c, g2.d, z, mp)
    theta3 = _branch_angle(g3.c, g3.d, z, mp)
    return float((theta1 + theta2 - theta3) / (2 * mp.pi))


def asai_w_from_log(g1: GroupMatrix, g2: GroupMatrix,
                    base_point: complex = DEFAULT_BASE_POINT,
                    precision_bits: int | None = None) -> int:
    """W via the branch-of-log definition, rounded to the nearest integer.

    Must coincide with asai_w (the definition is z-independent).  On a
    branch-boundary warning at the default base point the evaluation is
    retried once at a perturbed generic point; with an explicit base point
    the warning propagates to the caller.
    """
    try:
        value = log_cocycle_value(g1, g2, base_point, precision_bits)
    except BranchBoundaryError:
        if base_point != DEFAULT_BASE_POINT:
            raise
        value = log_cocycle_value(g1, g2, FALLBACK_BASE_POINT, precision_bits)
    return round(value)

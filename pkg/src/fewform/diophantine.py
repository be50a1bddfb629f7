"""Heights, Mahler measure and lower bounds from linear forms in two logarithms.

The constant C = 2^79 3^15 is kept as an exact integer.  Bounds are assembled
in log space and only turned into floats at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import as_fraction
from .errors import DomainError, PrecisionError
from .forms import BinaryForm, FewnomialFamily, evaluate, heights

LFL_CONSTANT = 2 ** 79 * 3 ** 15
ETA_CONSTANT = 2 ** 80 * 3 ** 15
LOG_C = 79 * math.log(2) + 15 * math.log(3)


def log_height_rational(x) -> float:
    x = as_fraction(x)
    if x == 0:
        raise DomainError("height of 0 is undefined here")
    return math.log(max(abs(x.numerator), x.denominator))


def height_rational(x) -> int:
    x = as_fraction(x)
    if x == 0:
        raise DomainError("height of 0 is undefined here")
    return max(abs(x.numerator), x.denominator)


def mahler_measure(coeffs, tol: float = 1e-12) -> float:
    """|lead| * prod max(1, |root|) for an integer polynomial, highest degree first."""
    c = [int(a) for a in coeffs]
    while c and c[0] == 0:
        c = c[1:]
    if not c:
        raise DomainError("Mahler measure of the zero polynomial")
    lead = abs(c[0])
    if len(c) == 1:
        return float(lead)
    digits = max(30, int(-math.log10(tol)) + 15)
    ctx = mpmath.MPContext()
    ctx.dps = digits
    try:
        roots = ctx.polyroots(c, maxsteps=200, extraprec=4 * digits)
    except ctx.NoConvergence as exc:
        raise PrecisionError(f"root finding failed: {exc}") from exc
    m = ctx.mpf(lead)
    for rho in roots:
        a = abs(rho)
        if a > 1:
            m *= a
    return float(m)


def algebraic_log_height(minpoly) -> float:
    """h(theta) = log M(f) / deg f for the minimal polynomial f of theta."""
    c = [int(a) for a in minpoly]
    while c and c[0] == 0:
        c = c[1:]
    if len(c) < 2:
        raise DomainError("minimal polynomial must have positive degree")
    return math.log(mahler_measure(c)) / (len(c) - 1)


@dataclass(frozen=True)
class LflParams:
    D: int
    b1: int
    b2: int
    logA1: float
    logA2: float
    B: float
    h1: float = 0.0
    h2: float = 0.0

    def __post_init__(self):
        if self.D < 1:
            raise DomainError("D must be >= 1")
        if self.b1 < 1 or self.b2 < 1:
            raise DomainError("b1, b2 must be positive")
        if self.B < max(math.e, self.b1, self.b2):
            raise DomainError("B must be >= max(e, b1, b2)")
        for la, h in ((self.logA1, self.h1), (self.logA2, self.h2)):
            if la < max(1 / self.D, h):
                raise DomainError("log A_j must be >= max(1/D, h(alpha_j))")


def lfl_lower_bound(p: LflParams) -> float:
    """Exponent E with log|alpha1^b1 alpha2^b2 - 1| >= E."""
    return -math.exp(
        LOG_C
        + math.log(math.log(p.B))
        + math.log(p.logA1)
        + math.log(p.logA2)
        + 4 * math.log(p.D)
        + math.log(max(1.0, math.log(p.D)))
    )


@dataclass(frozen=True)
class FewnomialBound:
    exponent: float
    log_lower: float
    log_anchored: float
    log_value: float

    @property
    def holds(self) -> bool:
        return self.log_value >= self.log_lower and self.log_value >= self.log_anchored


def _step(F: BinaryForm, r: int) -> int:
    d = F.degree
    if r < 1 or d % r:
        raise DomainError("r must divide the degree")
    k = d // r
    if any(c != 0 and i % k for i, c in enumerate(F.coeffs)):
        raise DomainError(f"form is not a fewnomial with step {k}")
    if F.coeffs[0] == 0 or F.coeffs[-1] == 0:
        raise DomainError("fewnomial needs a_0 a_r != 0")
    return k


def _log_penalty(r: int, d: int, a_star) -> float:
    """log of C r^(4r) (log d)(log A*)."""
    return LOG_C + 4 * r * math.log(r) + math.log(math.log(d)) + math.log(math.log(a_star))


def fewnomial_lower_bound(F: BinaryForm, r: int, x: int, y: int) -> FewnomialBound:
    """The guaranteed exponent d - C r^(4r)(log d)(log A*) and the derived log lower bounds."""
    _step(F, r)
    if not F.is_integral():
        raise DomainError("fewnomial must have integer coefficients")
    X = max(abs(x), abs(y))
    if X < 2:
        raise DomainError("max(|x|,|y|) must be >= 2")
    v = evaluate(F, x, y)
    if v == 0:
        raise DomainError("F(x, y) = 0")
    d = F.degree
    a_star = heights(F).height_star
    pen = math.exp(_log_penalty(r, d, a_star))
    exponent = d - pen
    logX = math.log(X)
    anchor = max(abs(F.coeffs[0]) * abs(x) ** d, abs(F.coeffs[-1]) * abs(y) ** d)
    log_anchor = math.log(anchor) if anchor else -math.inf
    return FewnomialBound(
        exponent=exponent,
        log_lower=exponent * logX,
        log_anchored=log_anchor - pen * logX,
        log_value=math.log(abs(v)),
    )


@dataclass(frozen=True)
class Thresholds:
    eta: Fraction
    mu_max: Fraction
    M: int | None


def _floor_log_ratio(theta: Fraction, n: int, r: int) -> int:
    """floor(theta log n / (r log 2)) decided exactly: k is admissible iff n^theta >= 2^(k r)."""
    v = float(theta) * math.log(n) / (r * math.log(2))
    k = math.floor(v)
    p, q = theta.numerator, theta.denominator
    while k > 0 and n ** p < 2 ** (k * r * q):
        k -= 1
    while n ** p >= 2 ** ((k + 1) * r * q):
        k += 1
    return k


def thresholds(eps, r: int, lam, m: int | None = None, theta=None) -> Thresholds:
    """eta, the admissible bound on mu, and the degree cut M_0 (or M_1 when m is N)."""
    eps, lam = as_fraction(eps), as_fraction(lam)
    if r < 1:
        raise DomainError("r must be >= 1")
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    if lam <= 2:
        raise DomainError("lambda must exceed 2")
    rr = r ** (4 * r)
    eta = eps / (ETA_CONSTANT * rr)
    mu_max = (lam - 2) / (LFL_CONSTANT * rr * lam)
    M = None
    if m is not None:
        if theta is None:
            raise DomainError("theta is required with m")
        n = abs(int(m))
        if n < 2:
            raise DomainError("|m| must be >= 2")
        M = _floor_log_ratio(as_fraction(theta), n, r)
    return Thresholds(eta, mu_max, M)


@dataclass(frozen=True)
class GrowthReport:
    passed: bool
    first_violation: tuple | None
    threshold_degree: int | None
    checked: tuple


def family_growth_check(family: FewnomialFamily, eta, d0: int) -> GrowthReport:
    """Check max A*(F) <= exp(eta d / log d) at every family degree d >= d0."""
    eta = float(eta)
    worst: dict[int, Fraction] = {}
    for k, idx, F in family.forms(min_degree=max(d0, 3)):
        a = heights(F).height_star
        worst[F.degree] = max(worst.get(F.degree, a), a)
    checked = []
    first = None
    ok_from = None
    for d in sorted(worst):
        lhs = math.log(worst[d])
        rhs = eta * d / math.log(d)
        good = lhs <= rhs * (1 + 1e-12)
        checked.append((d, worst[d], good))
        if not good:
            first = first or (d, worst[d])
            ok_from = None
        elif ok_from is None:
            ok_from = d
    return GrowthReport(first is None, first, ok_from, tuple(checked))

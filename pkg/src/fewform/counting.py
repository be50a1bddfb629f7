"""Represented integers, the area A_F, and comparison with the C_F N^(2/d) main term."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import CapRequiredError, DomainError, PrecisionError
from .forms import BinaryForm, FewnomialFamily, discriminant, evaluate
from .isomorphy import AutGroup, automorphism_group, projective_roots, w_constant

_SAFETY = 1e-9


@dataclass(frozen=True)
class RepresentationTriple:
    x: int
    y: int
    form_id: str
    m: int


@dataclass
class CountReport:
    N: int
    count: int
    predicted: float | None
    ratio: float | None
    error_exponent: float | None
    per_degree: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    truncated: bool = False

    def csv_row(self) -> str:
        def f(v):
            return "" if v is None else (repr(v) if isinstance(v, int) else f"{v:.12g}")

        return ",".join(f(v) for v in (self.N, self.count, self.predicted, self.ratio, self.error_exponent))


CSV_HEADER = "N,count,predicted,ratio,error_exponent"


def _int_coeffs(F: BinaryForm) -> list[int]:
    if not F.is_integral():
        raise DomainError("counting needs integer coefficients")
    return F.integer_coeffs()


def has_real_root(F: BinaryForm) -> bool:
    """Whether F has a zero on P^1(R), judged from numpy roots of F(1, t)."""
    a = F.coeffs
    if a[0] == 0:
        return True
    p = np.array([float(c) for c in a])
    roots = np.roots(p)
    scale = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    return bool(np.any(np.abs(roots.imag) <= 1e-7 * scale))


def _min_abs_on_line(coeffs: list[int]) -> float:
    """inf over real t of |p(t)| for p without real roots, p given highest degree first."""
    p = np.array(coeffs, dtype=float)
    crit = np.roots(np.polyder(p)) if len(p) > 2 else np.array([])
    cand = [0.0] + [c.real for c in crit if abs(c.imag) <= 1e-6 * max(1.0, abs(c))]
    return float(min(abs(np.polyval(p, t)) for t in cand))


def x_sweep_bound(F: BinaryForm, N: int) -> float | None:
    """Largest |x| with some real y and |F(x,y)| <= N, or None when unbounded.

    |F(x,y)| = |x|^d |F(1, y/x)| >= |x|^d min_t |F(1,t)|.
    """
    if has_real_root(F):
        return None
    a = _int_coeffs(F)
    mu = _min_abs_on_line(a[::-1])
    mu *= 1 - _SAFETY
    return (N / mu) ** (1.0 / F.degree)


def _y_candidates(py: list[int], N: int, ylim: int | None) -> set[int]:
    """Integers y with possibly |p(y)| <= N; p has integer coefficients, highest degree first."""
    while len(py) > 1 and py[0] == 0:
        py = py[1:]
    if len(py) == 1:
        if abs(py[0]) <= N:
            if ylim is None:
                raise CapRequiredError("a whole line of points is represented; a cap is required")
            return set(range(-ylim, ylim + 1))
        return set()
    p = np.array(py, dtype=float)
    breaks = []
    for shift in (N, -N):
        q = p.copy()
        q[-1] -= shift
        for r in np.roots(q):
            if abs(r.imag) <= 1e-6 * max(1.0, abs(r)):
                breaks.append(r.real)
    breaks.sort()
    out = set()
    # near-tangencies can turn a pair of breakpoints complex; critical points cover them
    if len(p) > 2:
        for c in np.roots(np.polyder(p)):
            if abs(c.imag) <= 1e-3 * max(1.0, abs(c)):
                f = math.floor(c.real)
                out.update(range(f - 1, f + 3))
    for b in breaks:
        c = math.floor(b)
        out.update(range(c - 2, c + 4))
    edges = [-math.inf] + breaks + [math.inf]
    for lo, hi in zip(edges, edges[1:]):
        if lo == -math.inf and hi == math.inf:
            mid = 0.0
        elif lo == -math.inf:
            mid = hi - 1.0
        elif hi == math.inf:
            mid = lo + 1.0
        else:
            mid = (lo + hi) / 2
        if abs(np.polyval(p, mid)) > N:
            continue
        if lo == -math.inf or hi == math.inf:
            if ylim is None:
                raise CapRequiredError("unbounded region; a cap is required")
            lo = max(lo, -ylim - 1)
            hi = min(hi, ylim + 1)
        out.update(range(math.floor(lo) - 2, math.ceil(hi) + 3))
    if ylim is not None:
        out = {y for y in out if -ylim <= y <= ylim}
    return out


def _poly_in_y(a: list[int], x: int) -> list[int]:
    d = len(a) - 1
    # coefficient of y^i is a_i x^(d-i); return highest degree first
    return [a[i] * x ** (d - i) for i in range(d, -1, -1)]


def representations_in_region(
    F: BinaryForm, N: int, cap: int | None = None, form_id: str | None = None
) -> list[RepresentationTriple]:
    """All (x, y) with |F(x,y)| <= N and max(|x|,|y|) >= 2.

    Definite forms have a bounded region and need no cap.  Otherwise the search
    is restricted to the box max(|x|,|y|) <= cap and a warning is issued.
    When a cap is given the result never leaves that box.
    """
    if N < 0:
        raise DomainError("N must be nonnegative")
    if F.degree >= 2 and discriminant(F) == 0:
        raise DomainError("form must have nonzero discriminant")
    a = _int_coeffs(F)
    fid = form_id if form_id is not None else str(F)
    bound = x_sweep_bound(F, N) if N > 0 else x_sweep_bound(F, 1)
    if bound is None:
        if cap is None:
            raise CapRequiredError("form has real roots; the region is unbounded and needs --cap")
        warnings.warn(f"region truncated at cap {cap}: count is a lower bound", stacklevel=2)
        X = cap
    else:
        X = math.floor(bound) + 1
        if cap is not None:
            X = min(X, cap)
    out = []
    for x in range(-X, X + 1):
        ys = _y_candidates(_poly_in_y(a, x), N, cap)
        for y in sorted(ys):
            if max(abs(x), abs(y)) < 2:
                continue
            m = evaluate(F, x, y)
            if abs(m) <= N:
                out.append(RepresentationTriple(x, y, fid, int(m)))
    return out


def naive_box(F: BinaryForm, N: int, B: int) -> list[RepresentationTriple]:
    """Brute force over max(|x|,|y|) <= B."""
    a = _int_coeffs(F)
    d = len(a) - 1
    fid = str(F)
    out = []
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            if max(abs(x), abs(y)) < 2:
                continue
            m = sum(a[i] * x ** (d - i) * y ** i for i in range(d + 1))
            if abs(m) <= N:
                out.append(RepresentationTriple(x, y, fid, m))
    return out


def _family_members(family, d: int, theta: float | None, N: int):
    """(id, form) for members of degree >= d; ``family`` may also be a plain list of forms."""
    if not isinstance(family, FewnomialFamily):
        for i, F in enumerate(family):
            if F.degree >= d:
                yield f"#{i}", F
        return
    kmax = None
    if theta is not None and N >= 2:
        kmax = math.floor(theta * math.log2(N) / family.r)
    for k, idx, F in family.forms(min_degree=d):
        if kmax is not None and k > kmax:
            continue
        yield f"k={k}#{idx}", F


def _degrees(family) -> list[int]:
    """Degrees carried by a family, a list of forms, or a collection of degrees."""
    if isinstance(family, FewnomialFamily):
        return family.degrees()
    return sorted({x if isinstance(x, int) else x.degree for x in family})


def r_count(
    family, d: int, N: int, cap: int | None = None, theta: float | None = None
) -> CountReport:
    """Number of m in [-N, N] represented by a member of degree >= d with max(|x|,|y|) >= 2."""
    ms: set[int] = set()
    per_degree: dict[int, int] = {}
    truncated = False
    for fid, F in _family_members(family, d, theta, N):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            reps = representations_in_region(F, N, cap, fid)
        truncated = truncated or bool(w)
        vals = {t.m for t in reps}
        per_degree[F.degree] = per_degree.get(F.degree, 0) + len(vals)
        ms |= vals
    if truncated:
        warnings.warn("some regions were truncated at the cap", stacklevel=2)
    return CountReport(N, len(ms), None, None, None, per_degree, {}, truncated)


def g_set(
    family, d: int, m: int, cap: int | None = None, theta: float | None = None
) -> list[RepresentationTriple]:
    """All (x, y, F) with F(x, y) = m, deg F >= d and max(|x|,|y|) >= 2."""
    if abs(m) <= 1:
        raise DomainError("m must satisfy |m| >= 2")
    out = []
    for fid, F in _family_members(family, d, theta, abs(m)):
        out.extend(t for t in representations_in_region(F, abs(m), cap, fid) if t.m == m)
    return sorted(out, key=lambda t: (t.form_id, t.x, t.y))


# ---------------------------------------------------------------------------
# area of |F| <= 1

def _factor_data(F: BinaryForm):
    """Angles of real zeros (in [0, pi)) with their scales, and the complex linear factors."""
    rs = projective_roots(F, 64)
    real, cplx = [], []
    for p in rs.points:
        x, t = p.as_complex()
        # linear factor t*X - x*Y
        if abs(x.imag) <= 1e-12 and abs(t.imag) <= 1e-12:
            al, be = x.real, t.real
            R = math.hypot(al, be)
            phi = math.atan2(be, al) % math.pi
            # (be cos - al sin) = +-R sin(phi - theta)
            real.append((phi, R))
        else:
            cplx.append((x, t))
    return sorted(real), cplx


def _abs_factor_product(theta, real, cplx, skip=()):
    c, s = np.cos(theta), np.sin(theta)
    val = np.ones_like(theta, dtype=float)
    for x, t in cplx:
        val = val * np.abs(t * c - x * s)
    for j, (phi, R) in enumerate(real):
        if j in skip:
            continue
        val = val * R * np.abs(np.sin(phi - theta))
    return val


def area_AF(F: BinaryForm, tol: float = 1e-8, limit: int = 200) -> float:
    """Area of {(x, y) in R^2 : |F(x, y)| <= 1} as the integral of |F(cos, sin)|^(-2/d) over [0, pi].

    Real zeros give integrable endpoint singularities |theta - phi|^(-2/d); each
    panel between consecutive zeros is integrated with an algebraic weight.
    """
    d = F.degree
    if d < 3:
        raise DomainError("area_AF needs degree >= 3")
    if discriminant(F) == 0:
        raise DomainError("zero discriminant")
    real, cplx = _factor_data(F)
    e = 2.0 / d
    # constant factor c with F = c * prod(linear factors)
    probe = 0.123456789
    while any(abs(math.sin(phi - probe)) < 1e-3 for phi, _ in real):
        probe += 0.1
    fval = sum(float(a) * math.cos(probe) ** (d - i) * math.sin(probe) ** i for i, a in enumerate(F.coeffs))
    cabs = abs(fval) / float(_abs_factor_product(np.array([probe]), real, cplx)[0])
    scale = cabs ** (-e)

    total = 0.0
    err = 0.0
    if not real:
        val, ab = integrate.quad(
            lambda th: scale * _abs_factor_product(np.array([th]), real, cplx)[0] ** (-e),
            0.0,
            math.pi,
            epsabs=tol / 2,
            epsrel=0,
            limit=limit,
        )
        total, err = val, ab
    else:
        n = len(real)
        phis = [phi for phi, _ in real]
        for j in range(n):
            lo = phis[j]
            hi = phis[j + 1] if j + 1 < n else phis[0] + math.pi
            same = n == 1
            jl = j
            jr = (j + 1) % n

            def h(th, lo=lo, hi=hi, jl=jl, jr=jr, same=same):
                th_arr = np.array([th])
                rest = _abs_factor_product(th_arr, real, cplx, skip={jl, jr})[0]
                u = th - lo
                v = hi - th
                if same:
                    R = real[jl][1]
                    # |sin(u)| = u v g(u) with g smooth on [0, pi]
                    g = math.sin(u) / (u * v) if u * v > 0 else 1 / math.pi
                    reg = (R * g) ** (-e)
                else:
                    Rl, Rr = real[jl][1], real[jr][1]
                    gl = math.sin(u) / u if u > 0 else 1.0
                    gr = math.sin(v) / v if v > 0 else 1.0
                    reg = (Rl * gl) ** (-e) * (Rr * gr) ** (-e)
                return scale * rest ** (-e) * reg

            val, ab = integrate.quad(
                h, lo, hi, weight="alg", wvar=(-e, -e), epsabs=tol / (2 * n), epsrel=0, limit=limit
            )
            total += val
            err += ab
    if err > tol:
        raise PrecisionError(f"quadrature error {err:.3g} exceeds tol {tol:.3g}")
    return total


def _mu(F: BinaryForm) -> tuple[float, float]:
    """min over the real line of |F(1,t)| and |F(t,1)| for a definite form."""
    a = [float(c) for c in F.coeffs]
    return _min_abs_on_line(a[::-1]), _min_abs_on_line(a)


def area_monte_carlo(F: BinaryForm, samples: int = 10 ** 6, seed: int = 0, chunk: int = 10 ** 7) -> tuple[float, float]:
    """Rejection-sampling estimate of A_F and its standard error; definite forms only."""
    if has_real_root(F):
        raise DomainError("Monte Carlo oracle needs a bounded region")
    d = F.degree
    mx, my = _mu(F)
    bx = (1 / (mx * (1 - 1e-6))) ** (1 / d)
    by = (1 / (my * (1 - 1e-6))) ** (1 / d)
    rng = np.random.default_rng(seed)
    a = [float(c) for c in F.coeffs]
    hits = 0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        x = rng.uniform(-bx, bx, n)
        y = rng.uniform(-by, by, n)
        v = sum(c * x ** (d - i) * y ** i for i, c in enumerate(a) if c)
        hits += int(np.count_nonzero(np.abs(v) <= 1))
        done += n
    box = 4 * bx * by
    p = hits / samples
    return box * p, box * math.sqrt(p * (1 - p) / samples)


# ---------------------------------------------------------------------------
# constants and tables

def c_constant(F: BinaryForm, group: AutGroup | None = None, tol: float = 1e-8) -> float:
    return area_AF(F, tol) * float(w_constant(F, group))


def theta_d(d: int) -> float:
    if d < 3:
        raise DomainError("theta_d needs d >= 3")
    if d == 3:
        r3 = math.sqrt(3)
        return (24 * r3 + 73) / (60 * r3 + 73)
    if d <= 20:
        r = math.sqrt(d)
        return (2 * r + 9) / (4 * d * r - 6 * r + 9)
    return 1 / (d - 1)


def d_dagger(family, d: int) -> float:
    """Next degree above d carried by the family, or infinity."""
    nxt = [e for e in _degrees(family) if e > d]
    return min(nxt) if nxt else math.inf


def asymptotic_table(
    family,
    d: int,
    Ns,
    eps: float = 0.0,
    cap: int | None = None,
    tol: float = 1e-8,
) -> list[CountReport]:
    members = [F for _, F in _family_members(family, d, None, 0) if F.degree == d]
    constants = {}
    total_c = 0.0
    for F in members:
        grp = automorphism_group(F)
        A = area_AF(F, tol)
        W = w_constant(F, grp)
        constants[str(F)] = {"A_F": A, "W_F": str(W), "C_F": A * float(W), "group": grp.label()}
        total_c += A * float(W)
    dd = d_dagger(family, d)
    err_exp = max(theta_d(d) + eps, 0.0 if dd == math.inf else 2 / dd) if d >= 3 else None
    out = []
    for N in Ns:
        rep = r_count(family, d, N, cap)
        pred = total_c * N ** (2 / d)
        rep.predicted = pred
        rep.ratio = rep.count / pred if pred > 0 else None
        rep.error_exponent = err_exp
        rep.constants = constants
        out.append(rep)
    return out

"""Isomorphisms F o gamma = nu G by matching projective root sets, with an exact gate.

A matrix gamma with F o gamma proportional to G maps the zero set of G onto the
zero set of F, acting linearly on representatives (x, t).  We fix three zeros
of G, try every ordered triple of zeros of F as images, screen the resulting
maps in double precision, confirm survivors with mpmath, rationalize, and keep
only matrices that pass an exact rational check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import arith
from .errors import DegenerateError, DomainError, InconclusiveError, PrecisionError, UnsupportedGroupError
from .forms import BinaryForm, discriminant, squared_arguments
from .homography import IDENTITY, ProjectiveMap, act_on_form

DEFAULT_PRECISION = 128
MAX_PRECISION = 1024
DEFAULT_DENOM_CAP = 10 ** 12
SCREEN_TOL = 1e-6


def _context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class ProjectivePoint:
    """Representative (x, t) of a point of P^1 scaled so that max(|x|, |t|) = 1."""

    x: object
    t: object

    @classmethod
    def normalized(cls, x, t, ctx=mpmath.mp) -> "ProjectivePoint":
        x, t = ctx.mpc(x), ctx.mpc(t)
        if abs(x) >= abs(t):
            if x == 0:
                raise DegenerateError("(0:0) is not a projective point")
            return cls(ctx.mpc(1), t / x)
        return cls(x / t, ctx.mpc(1))

    @classmethod
    def affine(cls, z, ctx=mpmath.mp) -> "ProjectivePoint":
        return cls.normalized(z, 1, ctx)

    @classmethod
    def infinity(cls, ctx=mpmath.mp) -> "ProjectivePoint":
        return cls(ctx.mpc(1), ctx.mpc(0))

    def as_complex(self) -> tuple[complex, complex]:
        return complex(self.x), complex(self.t)

    def chordal(self, other: "ProjectivePoint") -> float:
        num = abs(self.x * other.t - self.t * other.x)
        den = mpmath.sqrt((abs(self.x) ** 2 + abs(self.t) ** 2) * (abs(other.x) ** 2 + abs(other.t) ** 2))
        return num / den

    def key(self):
        x, t = self.as_complex()
        if abs(t) == 1.0 and t == 1:
            return (0, round(x.real, 12), round(x.imag, 12))
        return (1, round(t.real, 12), round(t.imag, 12))


@dataclass(frozen=True)
class RootSet:
    points: tuple[ProjectivePoint, ...]
    precision_bits: int
    separation: float

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array([p.as_complex() for p in self.points], dtype=complex)


def _horner(ctx, coeffs, z):
    p = ctx.mpc(0)
    dp = ctx.mpc(0)
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _polish(ctx, coeffs, seeds, bits):
    eps = ctx.mpf(2) ** (-bits + 8)
    out = []
    for z in seeds:
        z = ctx.mpc(z)
        for _ in range(200):
            p, dp = _horner(ctx, coeffs, z)
            if dp == 0:
                return None
            step = p / dp
            z -= step
            if abs(step) <= eps * max(1, abs(z)):
                break
        else:
            return None
        out.append(z)
    return out


def _min_separation(ctx, pts) -> float:
    best = mpmath.inf
    for a, b in itertools.combinations(pts, 2):
        best = min(best, a.chordal(b))
    return best


def projective_roots(F: BinaryForm, precision_bits: int = DEFAULT_PRECISION) -> RootSet:
    """The d points of the zero set of F, polished to the requested precision."""
    if F.degree < 2 or discriminant(F) == 0:
        raise DomainError("projective_roots needs a form with nonzero discriminant")
    ctx = _context(precision_bits + 32)
    coeffs = arith.poly_trim(list(F.coeffs))
    pts = []
    if F.coeffs[0] == 0:
        pts.append(ProjectivePoint.infinity(ctx))
    if len(coeffs) > 1:
        mcoeffs = [ctx.mpf(c.numerator) / c.denominator for c in coeffs]
        lead = mcoeffs[0]
        mcoeffs = [c / lead for c in mcoeffs]
        try:
            seeds = np.roots([float(c) for c in mcoeffs])
            roots = _polish(ctx, mcoeffs, seeds, precision_bits + 32)
        except (OverflowError, ValueError, np.linalg.LinAlgError):
            roots = None
        cand = None
        if roots is not None:
            cand = [ProjectivePoint.affine(z, ctx) for z in roots]
            if _min_separation(ctx, cand) <= ctx.mpf(2) ** (-precision_bits // 2):
                cand = None
        if cand is None:
            try:
                roots = ctx.polyroots(mcoeffs, maxsteps=400, extraprec=2 * precision_bits)
            except ctx.NoConvergence:
                raise PrecisionError(
                    f"root finding did not converge at {precision_bits} bits; retry with a larger precision"
                ) from None
            cand = [ProjectivePoint.affine(z, ctx) for z in roots]
        pts.extend(cand)
    pts.sort(key=lambda p: p.key())
    sep = _min_separation(ctx, pts)
    if sep <= ctx.mpf(2) ** (-precision_bits // 2):
        raise PrecisionError("roots not separated at this precision")
    return RootSet(tuple(pts), precision_bits, float(sep) / 2)


# ---------------------------------------------------------------------------
# maps from triples

def _split(p):
    if isinstance(p, ProjectivePoint):
        return p.x, p.t
    return p


def map_from_three_pairs(pairs, ctx=mpmath.mp):
    """The 2x2 matrix (up to scalar) sending p_i to q_i for three pairs of projective points.

    Points may be ProjectivePoints or (x, t) tuples; returns an mpmath matrix.
    """
    (p1, q1), (p2, q2), (p3, q3) = [(_split(p), _split(q)) for p, q in pairs]

    def frame(a, b, c):
        det = a[0] * b[1] - a[1] * b[0]
        if abs(det) == 0:
            raise DegenerateError("coincident points")
        al = (c[0] * b[1] - c[1] * b[0]) / det
        be = (a[0] * c[1] - a[1] * c[0]) / det
        if abs(al) == 0 or abs(be) == 0:
            raise DegenerateError("coincident points")
        return ctx.matrix([[al * a[0], be * b[0]], [al * a[1], be * b[1]]])

    A = frame(p1, p2, p3)
    B = frame(q1, q2, q3)
    return B * ctx.inverse(A)


def _frames_np(q1, q2, q3):
    """Vectorized frame matrices, shape (n, 2, 2); NaN where degenerate."""
    det = q1[:, 0] * q2[:, 1] - q1[:, 1] * q2[:, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        al = (q3[:, 0] * q2[:, 1] - q3[:, 1] * q2[:, 0]) / det
        be = (q1[:, 0] * q3[:, 1] - q1[:, 1] * q3[:, 0]) / det
    B = np.empty((len(q1), 2, 2), dtype=complex)
    B[:, 0, 0] = al * q1[:, 0]
    B[:, 1, 0] = al * q1[:, 1]
    B[:, 0, 1] = be * q2[:, 0]
    B[:, 1, 1] = be * q2[:, 1]
    return B


def _match_distance_np(M, src, dst):
    """Worst chordal distance from M(src) to the nearest point of dst, shape (n,)."""
    img = np.einsum("nij,kj->nki", M, src)
    nrm = np.linalg.norm(img, axis=2, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        img = img / nrm
    dn = dst / np.linalg.norm(dst, axis=1, keepdims=True)
    cross = np.abs(img[:, :, None, 0] * dn[None, None, :, 1] - img[:, :, None, 1] * dn[None, None, :, 0])
    nearest = cross.min(axis=2)
    return np.nan_to_num(nearest.max(axis=1), nan=np.inf)


def _screen(src: RootSet, dst: RootSet) -> list[tuple[int, int, int]]:
    """Ordered target triples whose map sends src onto dst in double precision."""
    S = src.as_array()
    D = dst.as_array()
    d = len(S)
    triples = np.array(list(itertools.permutations(range(d), 3)), dtype=int)
    try:
        A = _frames_np(S[None, 0], S[None, 1], S[None, 2])[0]
        Ainv = np.linalg.inv(A)
    except np.linalg.LinAlgError:
        raise DegenerateError("source points coincide") from None
    B = _frames_np(D[triples[:, 0]], D[triples[:, 1]], D[triples[:, 2]])
    M = B @ Ainv
    dist = _match_distance_np(M, S, D)
    keep = np.nonzero(dist < SCREEN_TOL)[0]
    return [tuple(int(i) for i in triples[k]) for k in keep]


def _confirm(src: RootSet, dst: RootSet, triple, bits: int):
    """Recompute the map in mpmath; return (matrix, worst distance)."""
    ctx = _context(bits)
    s = src.points
    t = dst.points
    M = map_from_three_pairs([(s[0], t[triple[0]]), (s[1], t[triple[1]]), (s[2], t[triple[2]])], ctx)
    worst = ctx.mpf(0)
    for p in s:
        x = M[0, 0] * p.x + M[0, 1] * p.t
        y = M[1, 0] * p.x + M[1, 1] * p.t
        img = ProjectivePoint.normalized(x, y, ctx)
        worst = max(worst, min(img.chordal(q) for q in t))
    return M, worst


def _candidates_at(F: BinaryForm, G: BinaryForm, bits: int):
    """Confirmed complex maps (mpmath matrices) and an ambiguity flag."""
    zF = projective_roots(F, bits)
    zG = projective_roots(G, bits)
    tight = mpmath.mpf(2) ** (-bits // 2)
    loose = mpmath.mpf(2) ** (-bits // 4)
    maps = []
    ambiguous = False
    for triple in _screen(zG, zF):
        M, worst = _confirm(zG, zF, triple, bits)
        if worst <= tight:
            maps.append(M)
        elif worst <= loose:
            ambiguous = True
    return maps, ambiguous


def _normalize_complex(M):
    entries = [M[0, 0], M[0, 1], M[1, 0], M[1, 1]]
    big = max(entries, key=abs)
    return [e / big for e in entries]


def projective_candidates(F: BinaryForm, G: BinaryForm, precision_bits: int = DEFAULT_PRECISION) -> list[list[complex]]:
    """All complex maps (normalized by the largest entry) with F o gamma proportional to G.

    Returned as flat [u1, u2, u3, u4] lists of Python complex numbers.
    """
    _check_pair(F, G)
    bits = precision_bits
    while True:
        maps, ambiguous = _candidates_at(F, G, bits)
        if not ambiguous:
            break
        if bits >= MAX_PRECISION:
            raise InconclusiveError("root matching stayed ambiguous up to the maximal precision")
        bits *= 2
    out = [[complex(e) for e in _normalize_complex(M)] for M in maps]
    out.sort(key=lambda v: [(round(e.real, 9), round(e.imag, 9)) for e in v])
    return out


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _rationalize(entries, bits: int, cap: int):
    """Rational approximations of nearly real entries, or None."""
    tol = mpmath.mpf(2) ** (-bits // 3)
    out = []
    for e in entries:
        if abs(mpmath.im(e)) > tol:
            return None
        fr = _mpf_to_fraction(mpmath.re(e)).limit_denominator(cap)
        if abs(mpmath.re(e) - mpmath.mpf(fr.numerator) / fr.denominator) > tol:
            return None
        out.append(fr)
    return out


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class IsomorphismCertificate:
    gamma: ProjectiveMap
    nu: Fraction
    exact: bool = True

    def verify(self, F: BinaryForm, G: BinaryForm) -> bool:
        return act_on_form(F, self.gamma) == G.scale(self.nu)


def _check_pair(F: BinaryForm, G: BinaryForm):
    if F.degree != G.degree:
        raise DomainError("forms must have equal degree")
    if F.degree < 3:
        raise DomainError("isomorphism search needs degree >= 3")
    if discriminant(F) == 0 or discriminant(G) == 0:
        raise DomainError("forms must have nonzero discriminant")


def _proportionality(H: BinaryForm, G: BinaryForm) -> Fraction | None:
    i = next(k for k, c in enumerate(G.coeffs) if c != 0)
    if H.coeffs[i] == 0:
        return None
    c = H.coeffs[i] / G.coeffs[i]
    if all(h == c * g for h, g in zip(H.coeffs, G.coeffs)):
        return c
    return None


def _primitive(entries: list[Fraction]) -> list[Fraction]:
    den = 1
    for e in entries:
        den = den * e.denominator // arith.math.gcd(den, e.denominator)
    ints = [int(e * den) for e in entries]
    g = arith.math.gcd(*ints)
    ints = [i // g for i in ints]
    lead = next(i for i in ints if i != 0)
    if lead < 0:
        ints = [-i for i in ints]
    return [Fraction(i) for i in ints]


def _sort_key(cert: IsomorphismCertificate):
    return tuple(cert.gamma.entries()) + (cert.nu,)


def isomorphisms(
    F: BinaryForm,
    G: BinaryForm,
    allow_scalar: bool = False,
    precision_bits: int = DEFAULT_PRECISION,
    denom_cap: int = DEFAULT_DENOM_CAP,
) -> list[IsomorphismCertificate]:
    """Rational gamma with F o gamma = G, or F o gamma = nu G when allow_scalar.

    Without allow_scalar every gamma is returned (including scalar multiples such
    as -gamma when d is even).  With allow_scalar one primitive integer
    representative per projective class is returned together with nu.
    """
    _check_pair(F, G)
    d = F.degree
    bits = precision_bits
    while True:
        maps, ambiguous = _candidates_at(F, G, bits)
        if not ambiguous:
            break
        if bits >= MAX_PRECISION:
            raise InconclusiveError("root matching stayed ambiguous up to the maximal precision")
        bits *= 2
    found: dict[tuple, IsomorphismCertificate] = {}
    for M in maps:
        ent = _rationalize(_normalize_complex(M), bits, denom_cap)
        if ent is None:
            continue
        try:
            M0 = ProjectiveMap(*ent)
        except DomainError:
            continue
        H = act_on_form(F, M0)
        c = _proportionality(H, G)
        if c is None:
            continue
        if allow_scalar:
            gam = ProjectiveMap(*_primitive(list(M0.entries())))
            nu = _proportionality(act_on_form(F, gam), G)
            cert = IsomorphismCertificate(gam, nu)
            found[_sort_key(cert)] = cert
        else:
            for lam in arith.rational_nth_roots(1 / c, d):
                gam = M0.scaled(lam)
                cert = IsomorphismCertificate(gam, Fraction(1))
                found[_sort_key(cert)] = cert
    out = [found[k] for k in sorted(found)]
    for cert in out:
        if not cert.verify(F, G):
            raise AssertionError("exact gate violated")
    return out


def is_isomorphic(F: BinaryForm, G: BinaryForm, **kw) -> bool:
    return bool(isomorphisms(F, G, **kw))


# ---------------------------------------------------------------------------
# automorphisms

ID = "Id"
PM_ID = "±Id"
D2 = "D2"
OTHER = "Other"

_MINUS_ID = ProjectiveMap(-1, 0, 0, -1)
_D2 = {IDENTITY, _MINUS_ID, ProjectiveMap(1, 0, 0, -1), ProjectiveMap(-1, 0, 0, 1)}


@dataclass(frozen=True)
class AutGroup:
    """Rational automorphisms of a form.  ``generators`` lists every element."""

    generators: tuple[ProjectiveMap, ...]
    classification: str
    order: int = field(default=0)

    def __contains__(self, gamma: ProjectiveMap) -> bool:
        return gamma in self.generators

    def label(self) -> str:
        if self.classification == OTHER:
            return f"Other({self.order})"
        return self.classification


def automorphism_group(F: BinaryForm, precision_bits: int = DEFAULT_PRECISION, denom_cap: int = DEFAULT_DENOM_CAP) -> AutGroup:
    certs = isomorphisms(F, F, allow_scalar=False, precision_bits=precision_bits, denom_cap=denom_cap)
    elems = tuple(c.gamma for c in certs)
    es = set(elems)
    if es == {IDENTITY}:
        cls = ID
    elif es == {IDENTITY, _MINUS_ID}:
        cls = PM_ID
    elif es == _D2:
        cls = D2
    else:
        cls = OTHER
    return AutGroup(elems, cls, len(elems))


_W = {ID: Fraction(1), PM_ID: Fraction(1, 2), D2: Fraction(1, 4)}


def w_constant(F: BinaryForm, group: AutGroup | None = None) -> Fraction:
    """W_F for the three supported groups."""
    group = group or automorphism_group(F)
    if group.classification not in _W:
        raise UnsupportedGroupError(
            f"W_F is only tabulated for Id, ±Id and D2; this form has {group.label()}"
        )
    return _W[group.classification]


def expected_rigid_class(F: BinaryForm) -> str:
    if squared_arguments(F) is not None:
        return D2
    return PM_ID if F.degree % 2 == 0 else ID


def is_rigid(F: BinaryForm, group: AutGroup | None = None) -> bool:
    group = group or automorphism_group(F)
    return group.classification == expected_rigid_class(F)


def is_diagonal(entries, tol: float = 1e-9) -> bool:
    u1, u2, u3, u4 = entries
    return abs(u2) < tol and abs(u3) < tol


def is_antidiagonal(entries, tol: float = 1e-9) -> bool:
    u1, u2, u3, u4 = entries
    return abs(u1) < tol and abs(u4) < tol

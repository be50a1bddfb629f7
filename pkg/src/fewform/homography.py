"""Homographies acting on monic polynomials, and the binomial linear systems they induce.

Conventions: an affine homography h_{q,r} is t -> qt + r with matrix (q, r; 0, 1);
a non-affine one h_{q,r,s} is t -> q + r/(t - s) with matrix (q, r - qs; 1, -s).
We write h(f) = g when h maps the roots of f onto the roots of g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import arith
from .arith import as_fraction, binom
from .errors import DegenerateError, DomainError
from .forms import BinaryForm, MonicPolynomial


@dataclass(frozen=True)
class Affine:
    q: Fraction
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        object.__setattr__(self, "r", as_fraction(self.r))
        if self.q == 0:
            raise DomainError("affine homography needs q != 0")

    def __call__(self, t):
        return self.q * t + self.r

    def matrix(self) -> "ProjectiveMap":
        return ProjectiveMap(self.q, self.r, 0, 1)


@dataclass(frozen=True)
class NonAffine:
    q: Fraction
    r: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("q", "r", "s"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.r == 0:
            raise DomainError("non-affine homography needs r != 0")

    def __call__(self, t):
        return self.q + self.r / (t - self.s)

    def matrix(self) -> "ProjectiveMap":
        return ProjectiveMap(self.q, self.r - self.q * self.s, 1, -self.s)


Homography = Affine | NonAffine


@dataclass(frozen=True)
class ProjectiveMap:
    """2x2 matrix (u1, u2; u3, u4) acting on forms by (X,Y) -> (u1X+u2Y, u3X+u4Y)."""

    u1: Fraction
    u2: Fraction
    u3: Fraction
    u4: Fraction

    def __post_init__(self):
        for name in ("u1", "u2", "u3", "u4"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.det == 0:
            raise DomainError("singular matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ProjectiveMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> Fraction:
        return self.u1 * self.u4 - self.u2 * self.u3

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.u1, self.u2, self.u3, self.u4)

    def rows(self) -> list[list[Fraction]]:
        return [[self.u1, self.u2], [self.u3, self.u4]]

    def __matmul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        a = self
        b = other
        return ProjectiveMap(
            a.u1 * b.u1 + a.u2 * b.u3,
            a.u1 * b.u2 + a.u2 * b.u4,
            a.u3 * b.u1 + a.u4 * b.u3,
            a.u3 * b.u2 + a.u4 * b.u4,
        )

    def scaled(self, c) -> "ProjectiveMap":
        c = as_fraction(c)
        return ProjectiveMap(c * self.u1, c * self.u2, c * self.u3, c * self.u4)

    def inverse(self) -> "ProjectiveMap":
        D = self.det
        return ProjectiveMap(self.u4 / D, -self.u2 / D, -self.u3 / D, self.u1 / D)

    def __str__(self) -> str:
        f = lambda x: str(x)
        return f"({f(self.u1)},{f(self.u2)};{f(self.u3)},{f(self.u4)})"


IDENTITY = ProjectiveMap(1, 0, 0, 1)


def homography_of(gamma: ProjectiveMap) -> Homography:
    """The homography t -> (u1 t + u2)/(u3 t + u4) in (q, r[, s]) coordinates."""
    u1, u2, u3, u4 = gamma.entries()
    if u3 == 0:
        return Affine(u1 / u4, u2 / u4)
    return NonAffine(u1 / u3, (u2 * u3 - u1 * u4) / u3 ** 2, -u4 / u3)


def inverse(h: Homography) -> Homography:
    if isinstance(h, Affine):
        return Affine(1 / h.q, -h.r / h.q)
    return NonAffine(h.s, h.r, h.q)


def apply(h: Homography, f: MonicPolynomial) -> MonicPolynomial:
    """The monic g whose roots are the images of the roots of f under h."""
    d = f.degree
    a = f.coeffs
    if isinstance(h, Affine):
        # g(z) = q^d f((z - r)/q) = sum a_i (z - r)^(d-i) q^i
        out = [Fraction(0)] * (d + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            term = arith.poly_scale(arith.poly_shift_binomial(1, -h.r, d - i), ai * h.q ** i)
            out = arith.poly_add(out, term)
        return MonicPolynomial(out)
    fs = f(h.s)
    if fs == 0:
        raise DegenerateError("root sent to infinity: f(s) = 0")
    # g(z) f(s) = sum a_i (s(z-q) + r)^(d-i) (z-q)^i
    lin = [h.s, h.r - h.s * h.q]
    zq = [Fraction(1), -h.q]
    out = [Fraction(0)] * (d + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        term = arith.poly_mul(arith.poly_pow(lin, d - i), arith.poly_pow(zq, i))
        term = [Fraction(0)] * (d + 1 - len(term)) + term
        out = arith.poly_add(out, arith.poly_scale(term, ai))
    return MonicPolynomial([c / fs for c in out])


def act_on_form(F: BinaryForm, gamma: ProjectiveMap) -> BinaryForm:
    """(F o gamma)(X, Y) = F(u1X + u2Y, u3X + u4Y)."""
    if gamma.det == 0:
        raise DomainError("singular matrix")
    d = F.degree
    u1, u2, u3, u4 = gamma.entries()
    # dehomogenize at Y = 1 and expand each a_i (u1 z + u2)^(d-i) (u3 z + u4)^i
    p1 = [arith.poly_shift_binomial(u1, u2, k) for k in range(d + 1)]
    p2 = [arith.poly_shift_binomial(u3, u4, k) for k in range(d + 1)]
    out = [Fraction(0)] * (d + 1)
    for i, ai in enumerate(F.coeffs):
        if ai == 0:
            continue
        term = arith.poly_mul(p1[d - i], p2[i])
        out = [o + ai * t for o, t in zip(out, term)]
    return BinaryForm(out)


def scale_factor(gamma: ProjectiveMap, g: MonicPolynomial) -> Fraction:
    """c(gamma, g) = u3^d g(u1/u3), or u1^d when u3 = 0."""
    d = g.degree
    u1, _, u3, _ = gamma.entries()
    c = u1 ** d if u3 == 0 else u3 ** d * g(u1 / u3)
    if c == 0:
        raise DegenerateError("scale factor vanishes: gamma sends a root of g to infinity")
    return c


# ---------------------------------------------------------------------------
# binomial systems

@dataclass(frozen=True)
class TransitionMatrices:
    d: int
    A: tuple[tuple[int, ...], ...]
    A_inv: tuple[tuple[int, ...], ...]


def transition_matrices(d: int) -> TransitionMatrices:
    """A = ((-1)^(i+j) C(d-i, j-i)) and its inverse (C(d-i, j-i)), rows indexed by j."""
    if d < 1:
        raise DomainError("d must be positive")
    n = d + 1
    A = tuple(tuple((-1) ** (i + j) * binom(d - i, j - i) for i in range(n)) for j in range(n))
    Ainv = tuple(tuple(binom(d - i, j - i) for i in range(n)) for j in range(n))
    return TransitionMatrices(d, A, Ainv)


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def coeffs_from_derivatives(f: MonicPolynomial, q, r, s) -> list[Fraction]:
    """Coefficients of h_{q,r,s}(f) from the Taylor data of f at s.

    beta_j f(s) = (-1)^j sum_i (-1)^i q^(j-i) r^i C(d-i, j-i) f^(i)(s)/i!
    """
    q, r, s = as_fraction(q), as_fraction(r), as_fraction(s)
    if r == 0:
        raise DomainError("r must be nonzero")
    d = f.degree
    T = f.taylor(s)
    if T[0] == 0:
        raise DomainError("f(s) = 0")
    beta = []
    for j in range(d + 1):
        acc = Fraction(0)
        for i in range(j + 1):
            acc += (-1) ** (i + j) * q ** (j - i) * r ** i * binom(d - i, j - i) * T[i]
        beta.append(acc / T[0])
    return beta


def derivatives_from_coeffs(beta: Sequence, q, r, s, fs) -> list[Fraction]:
    """Recover f^(j)(s)/j! for j = 0..d from the coefficients of g = h_{q,r,s}(f).

    General branch: r^j f^(j)(s)/(j! f(s)) = q^j y_j with y = A^{-1} B, B_i = beta_i/q^i.
    When q = 0 the relation degenerates to f^(j)(s)/j! = beta_j f(s)/r^j.
    """
    q, r, fs = as_fraction(q), as_fraction(r), as_fraction(fs)
    beta = [as_fraction(b) for b in beta]
    d = len(beta) - 1
    if r == 0:
        raise DomainError("r must be nonzero")
    if q == 0:
        return [beta[j] * fs / r ** j for j in range(d + 1)]
    Ainv = transition_matrices(d).A_inv
    B = [beta[i] / q ** i for i in range(d + 1)]
    y = [sum(Ainv[j][i] * B[i] for i in range(j + 1)) for j in range(d + 1)]
    return [q ** j * y[j] * fs / r ** j for j in range(d + 1)]


def leading_zero_criterion(f: MonicPolynomial, q, r, s, e: int) -> bool:
    """Whether f^(k)(s)/f(s) = d!/(d-k)! (q/r)^k for k = 1..e.

    For g = h_{q,r,s}(f) this is equivalent to beta_1 = ... = beta_e = 0.
    """
    q, r = as_fraction(q), as_fraction(r)
    d = f.degree
    T = f.taylor(s)
    if T[0] == 0:
        raise DomainError("f(s) = 0")
    fact = 1
    falling = 1
    for k in range(1, e + 1):
        fact *= k
        falling *= d - k + 1
        if T[k] * fact / T[0] != falling * (q / r) ** k:
            return False
    return True


@dataclass(frozen=True)
class FirstStepSolution:
    f: MonicPolynomial
    g: MonicPolynomial
    kappa: Fraction
    beta_d_minus_1: Fraction
    beta_d: Fraction
    alpha_3: Fraction


def first_step_solve(d: int, q, r, s) -> FirstStepSolution:
    """The pair (f, g) with Lambda^+(f) = 3, g = z^d + b z + c and h_{q,r,s}(f) = g.

    Solves the 3x3 system in (beta_{d-1}, beta_d, kappa) exactly.
    """
    q, r, s = as_fraction(q), as_fraction(r), as_fraction(s)
    if d < 3:
        raise DomainError("d must be at least 3")
    if q == 0 or r == 0 or s == 0:
        raise DegenerateError("q, r, s must all be nonzero")
    if r == q * s or r == (d - 1) * q * s:
        raise DegenerateError("excluded parameters: r = qs or r = (d-1)qs")
    M = [
        [q, 1, -1],
        [r - d * q * s, -d * s, 0],
        [(d * q * s - 2 * r) * s, d * s * s, 0],
    ]
    rhs = [-q ** d, -d * q ** (d - 1) * (r - q * s), -d * q ** (d - 2) * (r - q * s) ** 2]
    b1, b0, kappa = arith.solve_linear(M, rhs)
    g = MonicPolynomial([1] + [0] * (d - 2) + [b1, b0])
    f = apply(NonAffine(s, r, q), g)
    return FirstStepSolution(f, g, kappa, b1, b0, f.coeffs[3])


def _poly_A_star(ell: int, nu: int):
    """A*_ell as a polynomial in lambda' times a rational constant."""
    num = [Fraction(1)]
    den = Fraction(1)
    for i in range(2, ell + 1):
        num = arith.poly_mul(num, [Fraction(1), Fraction(i - nu)])
        den *= max(i - nu, 1)
    return [c / den for c in num]


def quotient_Q(lambda_prime: int, nu: int) -> Fraction:
    """The quotient Q built from A*_{l0}, ..., A*_{l0+3} (l0 = 2 if nu = 2, else 1).

    Q is assembled as a rational function of lambda' and reduced before
    evaluation, so the removable 0/0 at lambda' = 1 takes its limiting value.
    """
    if nu not in (0, 1, 2):
        raise DomainError("nu must be 0, 1 or 2")
    if lambda_prime < 1:
        raise DomainError("lambda' must be positive")
    l0 = 2 if nu == 2 else 1
    A = {ell: _poly_A_star(ell, nu) for ell in range(l0, l0 + 4)}
    add, mul = arith.poly_add, arith.poly_mul
    neg = lambda p: arith.poly_scale(p, -1)
    two = lambda p: arith.poly_scale(p, 2)
    n1 = add(add(A[l0], A[l0 + 2]), neg(two(A[l0 + 1])))
    n2 = add(mul(A[l0 + 2], A[l0 + 2]), neg(mul(A[l0 + 1], A[l0 + 3])))
    d1 = add(add(A[l0 + 1], A[l0 + 3]), neg(two(A[l0 + 2])))
    d2 = add(mul(A[l0 + 1], A[l0 + 1]), neg(mul(A[l0], A[l0 + 2])))
    num = arith.poly_trim(mul(n1, n2))
    den = arith.poly_trim(mul(d1, d2))
    g = arith.poly_gcd(num, den)
    num, _ = arith.poly_divmod(num, g)
    den, _ = arith.poly_divmod(den, g)
    x = Fraction(lambda_prime)
    dv = arith.poly_eval(den, x)
    if dv == 0:
        raise DomainError("Q has a pole here")
    return arith.poly_eval(num, x) / dv


def quotient_Q_literal(lambda_prime: int, nu: int) -> Fraction | None:
    """Direct evaluation of Q; None where numerator and denominator both vanish."""
    l0 = 2 if nu == 2 else 1
    A = {}
    for ell in range(l0, l0 + 4):
        v = Fraction(1)
        for i in range(2, ell + 1):
            v *= Fraction(lambda_prime + i - nu, max(i - nu, 1))
        A[ell] = v
    num = (A[l0] + A[l0 + 2] - 2 * A[l0 + 1]) * (A[l0 + 2] ** 2 - A[l0 + 1] * A[l0 + 3])
    den = (A[l0 + 1] + A[l0 + 3] - 2 * A[l0 + 2]) * (A[l0 + 1] ** 2 - A[l0] * A[l0 + 2])
    if den == 0:
        return None
    return num / den


def inversion_pair(f: MonicPolynomial, r) -> MonicPolynomial:
    """g = h_{0,r,0}(f): beta_j = alpha_{d-j} r^j / alpha_d."""
    r = as_fraction(r)
    if r == 0:
        raise DomainError("r must be nonzero")
    a = f.coeffs
    d = f.degree
    if a[d] == 0:
        raise DomainError("alpha_d must be nonzero")
    return MonicPolynomial([a[d - j] * r ** j / a[d] for j in range(d + 1)])


@dataclass(frozen=True)
class ExampleSystem:
    d: int
    lambda_prime: int
    A: int
    B: int
    delta: int
    beta_lambda: Fraction | None
    beta_d: Fraction | None
    kappa: Fraction | None


def example_system(d: int, lambda_prime: int) -> ExampleSystem:
    """Unknowns (beta_l', beta_d, kappa) making alpha_1 = alpha_3 = 0 for q=1, r=1, s=2.

    Here kappa f(t) = (t-1)^d + beta_l' (t-1)^(d-l') (t-2)^l' + beta_d (t-2)^d.
    """
    lp = lambda_prime
    if not 1 <= lp <= d - 1:
        raise DomainError("need 1 <= lambda' <= d-1")
    A = -(d + lp)
    B = -8 * binom(lp, 3) - 4 * binom(lp, 2) * (d - lp) - 2 * lp * binom(d - lp, 2) - binom(d - lp, 3)
    c3 = binom(d, 3)
    delta = 8 * A * c3 - 2 * d * B
    if delta == 0:
        return ExampleSystem(d, lp, A, B, 0, None, None, None)
    M = [[1, 1, -1], [A, -2 * d, 0], [B, -8 * c3, 0]]
    bl, bd, kappa = arith.solve_linear(M, [-1, d, c3])
    return ExampleSystem(d, lp, A, B, delta, bl, bd, kappa)


def example_f_numerator(d: int, lambda_prime: int, beta_l, beta_d) -> list[Fraction]:
    """Coefficients of (t-1)^d + beta_l (t-1)^(d-l)(t-2)^l + beta_d (t-2)^d."""
    p = arith.poly_shift_binomial(1, -1, d)
    mid = arith.poly_mul(arith.poly_shift_binomial(1, -1, d - lambda_prime), arith.poly_shift_binomial(1, -2, lambda_prime))
    last = arith.poly_shift_binomial(1, -2, d)
    out = arith.poly_add(p, arith.poly_scale(mid, as_fraction(beta_l)))
    return arith.poly_add(out, arith.poly_scale(last, as_fraction(beta_d)))

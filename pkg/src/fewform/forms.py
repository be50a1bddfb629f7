"""Binary forms, their associated monic polynomials and fewnomial families."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import arith
from .arith import as_fraction, binom
from .errors import DomainError


def _frac_tuple(coeffs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(c) for c in coeffs)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _pretty(coeffs, x: str, y: str) -> str:
    d = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = []
        if d - i:
            mono.append(x if d - i == 1 else f"{x}^{d - i}")
        if i:
            mono.append(y if i == 1 else f"{y}^{i}")
        body = "*".join(mono)
        if not body:
            terms.append(_fmt(c))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{_fmt(c)}*{body}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def _pretty_poly(coeffs, var: str) -> str:
    d = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        p = d - i
        body = "" if p == 0 else (var if p == 1 else f"{var}^{p}")
        if not body:
            terms.append(_fmt(c))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{_fmt(c)}*{body}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class BinaryForm:
    """a0 X^d + a1 X^(d-1) Y + ... + ad Y^d with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence):
        cs = _frac_tuple(coeffs)
        if len(cs) < 2:
            raise DomainError("a binary form needs degree >= 1")
        if not any(cs):
            raise DomainError("the zero form is not allowed")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __call__(self, x, y):
        return evaluate(self, x, y)

    def __str__(self) -> str:
        return _pretty(self.coeffs, "X", "Y")

    def scale(self, c) -> "BinaryForm":
        c = as_fraction(c)
        return BinaryForm([c * a for a in self.coeffs])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def content_gcd(self) -> int:
        if not self.is_integral():
            raise DomainError("gcd of coefficients needs integer coefficients")
        return math.gcd(*(int(c) for c in self.coeffs))

    def integer_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise DomainError("form has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def dehomogenize(self) -> list[Fraction]:
        """F(t, 1) as a coefficient list, highest degree first."""
        return list(self.coeffs)


@dataclass(frozen=True)
class MonicPolynomial:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence):
        cs = _frac_tuple(coeffs)
        if len(cs) < 2:
            raise DomainError("monic polynomial needs degree >= 1")
        if cs[0] != 1:
            raise DomainError("leading coefficient must be 1")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def normalized(cls, coeffs: Sequence) -> "MonicPolynomial":
        cs = _frac_tuple(coeffs)
        if cs[0] == 0:
            raise DomainError("leading coefficient vanishes")
        return cls([c / cs[0] for c in cs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __call__(self, t):
        if not isinstance(t, (complex, float)):
            t = as_fraction(t)
        return arith.poly_eval(self.coeffs, t)

    def __str__(self) -> str:
        return _pretty_poly(self.coeffs, "t")

    def taylor(self, s) -> list[Fraction]:
        """Taylor coefficients f^(j)(s)/j! for j = 0..d."""
        s = as_fraction(s)
        d = self.degree
        # coefficient of t^(d-i) is coeffs[i]
        out = []
        for j in range(d + 1):
            acc = Fraction(0)
            for i in range(d - j + 1):
                p = d - i
                acc += self.coeffs[i] * binom(p, j) * s ** (p - j)
            out.append(acc)
        return out

    def to_form(self) -> BinaryForm:
        return BinaryForm(self.coeffs)


# ---------------------------------------------------------------------------
# invariants

def discriminant(F: BinaryForm) -> Fraction:
    """Discriminant normalized so that aX^2+bXY+cY^2 gives b^2-4ac.

    Computed as (-1)^(d(d-1)/2) Res(F_X, F_Y) / d^(d-2).
    """
    d = F.degree
    if d < 2:
        raise DomainError("discriminant needs degree >= 2")
    den = math.lcm(*(c.denominator for c in F.coeffs))
    a = [int(c * den) for c in F.coeffs]
    fx = [(d - i) * a[i] for i in range(d)]
    fy = [i * a[i] for i in range(1, d + 1)]
    res = arith.det_bareiss(arith.sylvester(fx, fy))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return Fraction(sign * res, d ** (d - 2) * den ** (2 * d - 2))


def evaluate(F: BinaryForm, x, y):
    """F(x, y) by homogeneous Horner evaluation."""
    x, y = as_fraction(x), as_fraction(y)
    acc = Fraction(0)
    ypow = Fraction(1)
    # acc = sum a_i x^(d-i) y^i, evaluated as Horner in x with running y powers
    for c in F.coeffs:
        acc = acc * x + c * ypow
        ypow *= y
    return acc


def lambda_gap(F: BinaryForm, side: str = "plus") -> int:
    """Gap indices around the extreme coefficients.

    ``plus``: the first i >= 1 with a_i != 0.  ``minus``: the last i < d with
    a_i != 0 and i >= 1, or d for a binomial.  Both satisfy a_i != 0 and
    1 <= plus <= minus <= d; for non-binomials minus(F) = d - plus(F^rec).
    """
    a = F.coeffs
    d = len(a) - 1
    if a[0] == 0 or a[-1] == 0:
        raise DomainError("lambda_gap needs a0*ad != 0")
    if side in ("plus", "+"):
        return next(i for i in range(1, d + 1) if a[i] != 0)
    if side in ("minus", "-"):
        return next((i for i in range(d - 1, 0, -1) if a[i] != 0), d)
    raise DomainError(f"unknown side {side!r}")


def lambda_plus_poly(f: MonicPolynomial) -> int:
    """Lambda^+ of the homogenization of a monic f with f(0) != 0."""
    return lambda_gap(f.to_form(), "plus")


def reciprocal(F: BinaryForm) -> BinaryForm:
    return BinaryForm(F.coeffs[::-1])


def associated_polynomial(F: BinaryForm) -> MonicPolynomial:
    if F.coeffs[0] == 0:
        raise DomainError("associated polynomial needs a0 != 0")
    return MonicPolynomial.normalized(F.coeffs)


def squared_arguments(F: BinaryForm) -> BinaryForm | None:
    """H with F(X,Y) = H(X^2,Y^2), or None."""
    d = F.degree
    if d % 2 or any(F.coeffs[i] for i in range(1, d + 1, 2)):
        return None
    return BinaryForm(F.coeffs[::2])


def is_k_free(x, k: int) -> bool:
    return arith.is_k_free(x, k)


# ---------------------------------------------------------------------------
# fewnomials

@dataclass(frozen=True)
class FewnomialFamily:
    """Data (r, {E_k}): for each k a list of integer (r+1)-tuples."""

    r: int
    blocks: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 1:
            raise DomainError("r must be positive")
        clean = {}
        for k, tuples in self.blocks.items():
            k = int(k)
            if k * self.r < 3:
                raise DomainError(f"k*r must be at least 3 (k={k})")
            rows = []
            for t in tuples:
                t = tuple(int(a) for a in t)
                if len(t) != self.r + 1:
                    raise DomainError(f"tuple {t} should have {self.r + 1} entries")
                if t[0] * t[-1] == 0:
                    raise DomainError(f"tuple {t} has a0*ar = 0")
                if self.r >= 2 and discriminant(BinaryForm(t)) == 0:
                    raise DomainError(f"tuple {t} has zero discriminant")
                rows.append(t)
            clean[k] = rows
        object.__setattr__(self, "blocks", dict(sorted(clean.items())))

    def degrees(self) -> list[int]:
        return sorted({k * self.r for k, rows in self.blocks.items() if rows})

    def forms(self, min_degree: int = 0):
        """Yield (k, index, form) for every member of degree >= min_degree."""
        for k, rows in self.blocks.items():
            if k * self.r < min_degree:
                continue
            for idx in range(len(rows)):
                yield k, idx, build_fewnomial(self, k, idx)


def build_fewnomial(family: FewnomialFamily, k: int, tuple_index: int) -> BinaryForm:
    """a0 X^(kr) + a1 X^(k(r-1)) Y^k + ... + ar Y^(kr)."""
    if k not in family.blocks:
        raise KeyError(f"no block for k={k}")
    tup = family.blocks[k][tuple_index]
    d = k * family.r
    coeffs = [0] * (d + 1)
    for j, a in enumerate(tup):
        coeffs[j * k] = a
    return BinaryForm(coeffs)


@dataclass(frozen=True)
class HeightReport:
    height: Fraction
    height_star: Fraction


def heights(F) -> HeightReport:
    """Naive height max|a_i| and its floor-at-2 variant."""
    coeffs = F.coeffs if isinstance(F, BinaryForm) else _frac_tuple(F)
    h = max(abs(c) for c in coeffs)
    return HeightReport(h, max(Fraction(2), h))


def family_size_bound(height_star, r: int) -> Fraction:
    """Number of integer (r+1)-tuples of height at most A*: (2A*+1)^(r+1)."""
    return (2 * as_fraction(height_star) + 1) ** (r + 1)


# ---------------------------------------------------------------------------
# JSON

def form_to_json(F: BinaryForm) -> dict:
    return {"degree": F.degree, "coeffs": [_fmt(c) for c in F.coeffs]}


def form_from_json(obj) -> BinaryForm:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise DomainError("form JSON needs a 'coeffs' list")
    try:
        coeffs = [as_fraction(c) for c in obj["coeffs"]]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DomainError(f"bad coefficient: {exc}") from None
    F = BinaryForm(coeffs)
    if "degree" in obj and int(obj["degree"]) != F.degree:
        raise DomainError(f"degree {obj['degree']} does not match {len(coeffs)} coefficients")
    return F


def family_to_json(fam: FewnomialFamily) -> dict:
    return {"r": fam.r, "blocks": {str(k): [list(t) for t in rows] for k, rows in fam.blocks.items()}}


def family_from_json(obj) -> FewnomialFamily:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "r" not in obj or "blocks" not in obj:
        raise DomainError("family JSON needs 'r' and 'blocks'")
    return FewnomialFamily(int(obj["r"]), {int(k): v for k, v in obj["blocks"].items()})

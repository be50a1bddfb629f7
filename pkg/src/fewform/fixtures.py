"""Built-in forms with nontrivial automorphisms, and a few small worked pairs."""

from __future__ import annotations

from fractions import Fraction

from .arith import poly_mul
from .forms import BinaryForm, MonicPolynomial
from .homography import NonAffine, ProjectiveMap

# symmetric forms phi and xi with F = phi o xi^(-1); gamma = xi S xi^(-1), S the swap
PHI_3 = BinaryForm([13, 51, 51, 13])
XI_3 = ProjectiveMap(2, 1, 3, 1)
CUBIC = BinaryForm([32, 0, -30, 11])
GAMMA_3 = ProjectiveMap(5, -3, 8, -5)

PHI_4 = BinaryForm([127, 740, 1338, 740, 127])
QUARTIC = BinaryForm([256, 0, 0, -240, 111])
GAMMA_4 = GAMMA_3

PHI_10 = BinaryForm(
    [
        76210176793,
        872977899590,
        4381399953765,
        12658497992520,
        23266629555330,
        28385698168548,
        23266629555330,
        12658497992520,
        4381399953765,
        872977899590,
        76210176793,
    ]
)
XI_10 = ProjectiveMap(1, 2, 3, 5)
DECIC = BinaryForm(
    [
        -34359738368,
        0,
        0,
        0,
        0,
        0,
        49565859840,
        -74095902720,
        42402890880,
        -10956131760,
        1074852609,
    ]
)
GAMMA_10 = ProjectiveMap(-7, 3, -16, 7)

SWAP = ProjectiveMap(0, 1, 1, 0)

# t^3 + 1 and z^3 + 3z, linked by h_{1,2,1}
CUBIC_PAIR_F = MonicPolynomial([1, 0, 0, 1])
CUBIC_PAIR_G = MonicPolynomial([1, 0, 3, 0])
CUBIC_PAIR_H = NonAffine(1, 2, 1)

# X^4 + 4XY^3 - Y^4 and 4 times it, linked by (1,1;1,-1)
QUAD_LINK_F = BinaryForm([1, 0, 0, 4, -1])
QUAD_LINK_G = BinaryForm([4, 0, 0, 16, -4])
QUAD_LINK_GAMMA = ProjectiveMap(1, 1, 1, -1)

INVERSION = ProjectiveMap(0, -1, 1, 0)

# positive definite quartic with Aut = {+-Id}
DEFINITE_QUARTIC = BinaryForm([1, 1, 0, 0, 2])


def inversion_quartic(a, b) -> BinaryForm:
    """(X - aY)(X + Y/a)(X - bY)(X + Y/b); z -> -1/z permutes its zeros."""
    a, b = Fraction(a), Fraction(b)
    return BinaryForm(poly_mul(poly_mul([1, -a], [1, 1 / a]), poly_mul([1, -b], [1, 1 / b])))


def twisted_inversion_quartic(a) -> BinaryForm:
    """(X - aY)(X + Y/a)(X^2 + Y^2): z -> -1/z permutes the zeros but F o (0,-l;l,0) = -l^4 F."""
    a = Fraction(a)
    return BinaryForm(poly_mul(poly_mul([1, -a], [1, 1 / a]), [1, 0, 1]))


REFERENCE_FORMS = {
    "cubic": (CUBIC, GAMMA_3),
    "quartic": (QUARTIC, GAMMA_4),
    "decic": (DECIC, GAMMA_10),
}

from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fewform import fixtures
from fewform.arith import rational_nth_roots
from fewform.errors import DomainError
from fewform.forms import (
    BinaryForm,
    FewnomialFamily,
    MonicPolynomial,
    associated_polynomial,
    build_fewnomial,
    discriminant,
    evaluate,
    family_from_json,
    family_size_bound,
    family_to_json,
    form_from_json,
    form_to_json,
    heights,
    is_k_free,
    lambda_gap,
    reciprocal,
    squared_arguments,
)
from fewform.homography import ProjectiveMap, act_on_form

small = st.integers(-6, 6)


def forms(min_d=2, max_d=6, ends_nonzero=False):
    def build(c):
        if ends_nonzero:
            assume(c[0] != 0 and c[-1] != 0)
        assume(any(c))
        return BinaryForm(c)

    return st.integers(min_d, max_d).flatmap(lambda d: st.lists(small, min_size=d + 1, max_size=d + 1)).map(build)


def test_construction_rules():
    with pytest.raises(DomainError):
        BinaryForm([0, 0, 0])
    with pytest.raises(DomainError):
        BinaryForm([3])
    with pytest.raises(DomainError):
        MonicPolynomial([2, 1])
    assert BinaryForm(["1/2", 0, -3]).coeffs == (Fr(1, 2), 0, -3)


def test_discriminant_values():
    assert discriminant(BinaryForm([1, 3, 2])) == 1
    assert discriminant(BinaryForm([1, 0, 0, 1])) == -27
    assert discriminant(BinaryForm([1, 0, 0, 0, 1])) == 256
    assert discriminant(fixtures.DECIC) != 0
    assert discriminant(BinaryForm([1, -2, 1])) == 0
    with pytest.raises(DomainError):
        discriminant(BinaryForm([1, 1]))


@given(st.integers(-50, 50).filter(bool))
def test_discriminant_of_pure_cubic(c):
    assert discriminant(BinaryForm([1, 0, 0, c])) == -27 * c * c


@given(forms(2, 5), st.tuples(small, small, small, small))
@settings(max_examples=60)
def test_discriminant_covariance(F, g):
    gamma_det = g[0] * g[3] - g[1] * g[2]
    assume(gamma_det != 0)
    gamma = ProjectiveMap(*g)
    d = F.degree
    assert discriminant(act_on_form(F, gamma)) == Fr(gamma_det) ** (d * (d - 1)) * discriminant(F)


def test_evaluate():
    assert evaluate(fixtures.CUBIC, 5, 8) == 32
    assert evaluate(fixtures.QUARTIC, 5, 8) == 256
    assert evaluate(BinaryForm([7, 1, 2]), 1, 0) == 7


@given(forms(1, 6), small, small)
def test_evaluate_matches_direct_sum(F, x, y):
    d = F.degree
    assert evaluate(F, x, y) == sum(a * Fr(x) ** (d - i) * Fr(y) ** i for i, a in enumerate(F.coeffs))


def test_lambda_examples():
    for d in range(3, 10):
        for e in range(1, d):
            F = BinaryForm([3] + [0] * (d - e - 1) + [1] + [0] * (e - 1) + [1])
            assert lambda_gap(F) == d - e
    assert lambda_gap(BinaryForm([2, 0, 0, 0, 5])) == 4
    assert lambda_gap(BinaryForm([1, 1, 0, 0, 0, 1])) == 1
    with pytest.raises(DomainError):
        lambda_gap(BinaryForm([0, 1, 1]))


@given(forms(3, 8, ends_nonzero=True))
def test_lambda_order_and_reciprocal(F):
    d = F.degree
    plus, minus = lambda_gap(F, "plus"), lambda_gap(F, "minus")
    assert 1 <= plus <= minus <= d
    assert F.coeffs[plus] != 0 and F.coeffs[minus] != 0
    if minus < d:
        assert minus == d - lambda_gap(reciprocal(F), "plus")
    else:
        assert plus == d


def test_reciprocal():
    assert reciprocal(BinaryForm([1, 0, 0, 0, 1, 1])) == BinaryForm([1, 1, 0, 0, 0, 1])
    assert reciprocal(BinaryForm([2, 0, 5])) == BinaryForm([5, 0, 2])


@given(forms(1, 6))
def test_reciprocal_involution(F):
    assert reciprocal(reciprocal(F)) == F


def test_associated_polynomial():
    assert associated_polynomial(BinaryForm([2, 0, 0, 4])) == MonicPolynomial([1, 0, 0, 2])
    assert associated_polynomial(fixtures.CUBIC) == MonicPolynomial([1, 0, Fr(-15, 16), Fr(11, 32)])
    with pytest.raises(DomainError):
        associated_polynomial(BinaryForm([0, 1, 1]))


def test_build_fewnomial():
    fam = FewnomialFamily(1, {5: [(2, 3)]})
    assert build_fewnomial(fam, 5, 0) == BinaryForm([2, 0, 0, 0, 0, 3])
    fam = FewnomialFamily(2, {3: [(1, 4, 2)], 2: [(1, 0, 1)]})
    assert build_fewnomial(fam, 3, 0) == BinaryForm([1, 0, 0, 4, 0, 0, 2])
    assert build_fewnomial(fam, 2, 0) == BinaryForm([1, 0, 0, 0, 1])
    with pytest.raises(KeyError):
        build_fewnomial(fam, 7, 0)
    with pytest.raises(IndexError):
        build_fewnomial(fam, 3, 4)


def test_family_validation():
    with pytest.raises(DomainError):
        FewnomialFamily(1, {2: [(1, 1)]})
    with pytest.raises(DomainError):
        FewnomialFamily(2, {2: [(0, 1, 1)]})
    with pytest.raises(DomainError):
        FewnomialFamily(2, {2: [(1, 2, 1)]})


@given(st.lists(small, min_size=3, max_size=4), st.integers(1, 4))
def test_fewnomial_dehomogenization(t, k):
    r = len(t) - 1
    assume(t[0] != 0 and t[-1] != 0 and k * r >= 3)
    assume(discriminant(BinaryForm(t)) != 0)
    fam = FewnomialFamily(r, {k: [tuple(t)]})
    F = build_fewnomial(fam, k, 0)
    f = associated_polynomial(F)
    for x in (Fr(1, 2), Fr(-3), Fr(2, 7)):
        h = sum(Fr(a) * (x ** k) ** (r - j) for j, a in enumerate(t))
        assert f(x) == h / t[0]


def test_heights():
    h = heights((1, 0, 1))
    assert (h.height, h.height_star) == (1, 2)
    h = heights(BinaryForm([3, -7, 2]))
    assert (h.height, h.height_star) == (7, 7)
    assert family_size_bound(2, 1) == 25


def test_squared_arguments():
    assert squared_arguments(BinaryForm([1, 0, 3, 0, 1])) == BinaryForm([1, 3, 1])
    assert squared_arguments(BinaryForm([1, 0, 0, 1, 1])) is None
    assert squared_arguments(BinaryForm([1, 0, 0, 1])) is None


def test_is_k_free_wrapper():
    assert not is_k_free(12, 2)
    assert is_k_free(6, 2)


def test_trinomial_identity_has_no_integer_solution():
    # a^e = (-1)^d e^e (d-e)^(d-e) / d^d has no integer solution a when gcd(e, d) = 1
    from math import gcd

    for d in range(3, 13):
        for e in range(1, d):
            if gcd(e, d) != 1:
                continue
            rhs = Fr((-1) ** d * e ** e * (d - e) ** (d - e), d ** d)
            assert not [a for a in rational_nth_roots(rhs, e) if a.denominator == 1]


def test_json_round_trip():
    F = BinaryForm([Fr(1, 2), 0, -3, 7])
    assert form_from_json(form_to_json(F)) == F
    assert form_to_json(F) == {"degree": 3, "coeffs": ["1/2", "0", "-3", "7"]}
    with pytest.raises(DomainError):
        form_from_json({"degree": 4, "coeffs": ["1", "2"]})
    with pytest.raises(DomainError):
        form_from_json({"coeffs": ["x"]})
    fam = FewnomialFamily(2, {3: [(1, 4, 2)]})
    assert family_from_json(family_to_json(fam)) == fam

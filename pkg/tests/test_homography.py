from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fewform import arith, fixtures
from fewform.errors import DegenerateError, DomainError
from fewform.forms import BinaryForm, MonicPolynomial, associated_polynomial, discriminant, lambda_plus_poly
from fewform.homography import (
    IDENTITY,
    Affine,
    NonAffine,
    ProjectiveMap,
    act_on_form,
    apply,
    coeffs_from_derivatives,
    derivatives_from_coeffs,
    example_f_numerator,
    example_system,
    first_step_solve,
    homography_of,
    inverse,
    inversion_pair,
    leading_zero_criterion,
    mat_mul,
    quotient_Q,
    quotient_Q_literal,
    scale_factor,
    transition_matrices,
)

nonzero = st.integers(-5, 5).filter(bool)
rat = st.builds(Fr, st.integers(-6, 6), st.integers(1, 4))
nz_rat = rat.filter(bool)


def monic(min_d=2, max_d=6):
    return st.integers(min_d, max_d).flatmap(
        lambda d: st.lists(st.integers(-4, 4), min_size=d, max_size=d).map(lambda c: MonicPolynomial([1] + c))
    )


def homographies():
    aff = st.builds(Affine, nz_rat, rat)
    non = st.builds(NonAffine, rat, nz_rat, rat)
    return st.one_of(aff, non)


def test_apply_examples():
    assert apply(NonAffine(1, 2, 1), MonicPolynomial([1, 0, 0, 1])) == MonicPolynomial([1, 0, 3, 0])
    assert apply(Affine(2, 0), MonicPolynomial([1, 0, 1, 0])) == MonicPolynomial([1, 0, 4, 0])
    for d in (3, 5, 8):
        f = MonicPolynomial([1] + [0] * (d - 1) + [Fr(3, 2)])
        g = apply(NonAffine(0, 2, 0), f)
        assert g == MonicPolynomial([1] + [0] * (d - 1) + [Fr(2) ** d / Fr(3, 2)])


def test_apply_rejects_root_at_s():
    with pytest.raises(DegenerateError):
        apply(NonAffine(0, 1, -1), MonicPolynomial([1, 0, 0, 1]))


def test_inverse_examples():
    assert inverse(Affine(2, 3)) == Affine(Fr(1, 2), Fr(-3, 2))
    assert inverse(NonAffine(1, 2, 1)) == NonAffine(1, 2, 1)
    assert inverse(NonAffine(1, 2, 5)) == NonAffine(5, 2, 1)


@given(homographies(), monic())
@settings(max_examples=80)
def test_inverse_round_trip(h, f):
    if isinstance(h, NonAffine):
        assume(f(h.s) != 0)
    g = apply(h, f)
    assert apply(inverse(h), g) == f


@given(st.builds(NonAffine, rat, nz_rat, rat), monic())
@settings(max_examples=80)
def test_non_affine_product_relation(h, f):
    assume(f(h.s) != 0)
    g = apply(h, f)
    assert f(h.s) * g(h.q) == h.r ** f.degree


@given(homographies(), monic())
@settings(max_examples=60)
def test_roots_are_mapped(h, f):
    assume(not isinstance(h, NonAffine) or f(h.s) != 0)
    g = apply(h, f)
    for root in arith.rational_roots(list(f.coeffs)):
        if isinstance(h, NonAffine) and root == h.s:
            continue
        assert g(h(root)) == 0


def test_act_on_form_examples():
    assert act_on_form(fixtures.CUBIC, fixtures.GAMMA_3) == fixtures.CUBIC
    assert act_on_form(fixtures.QUARTIC, fixtures.GAMMA_4) == fixtures.QUARTIC
    assert act_on_form(fixtures.DECIC, fixtures.GAMMA_10) == fixtures.DECIC
    assert act_on_form(fixtures.DECIC, IDENTITY) == fixtures.DECIC
    assert act_on_form(fixtures.PHI_3, fixtures.XI_3.inverse()) == fixtures.CUBIC
    assert act_on_form(fixtures.PHI_10, fixtures.XI_10.inverse()) == fixtures.DECIC
    with pytest.raises(DomainError):
        ProjectiveMap(1, 2, 2, 4)


mats = st.tuples(nonzero, st.integers(-4, 4), st.integers(-4, 4), nonzero).filter(lambda t: t[0] * t[3] != t[1] * t[2])


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=6).filter(any), mats, mats)
@settings(max_examples=60)
def test_action_respects_composition(c, g1, g2):
    F = BinaryForm(c)
    a, b = ProjectiveMap(*g1), ProjectiveMap(*g2)
    assert act_on_form(F, a @ b) == act_on_form(act_on_form(F, a), b)


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=6), mats)
@settings(max_examples=80)
def test_form_and_polynomial_actions_agree(c, m):
    # G o gamma = nu F  <=>  h_gamma(f) = g
    F = BinaryForm([1] + c)
    gamma = ProjectiveMap(*m)
    assume(discriminant(F) != 0)
    G = act_on_form(F, gamma.inverse())
    assume(G.coeffs[0] != 0)
    h = homography_of(gamma)
    f = associated_polynomial(F)
    assume(not isinstance(h, NonAffine) or f(h.s) != 0)
    assert apply(h, f) == associated_polynomial(G)


def test_homography_matrix_round_trip():
    for h in (Affine(2, 3), NonAffine(1, 2, 1), NonAffine(Fr(1, 2), -3, 4)):
        assert homography_of(h.matrix()) == h


def test_scale_factor():
    g3 = MonicPolynomial([1, 0, 3, 0])
    assert scale_factor(ProjectiveMap(3, 0, 0, 5), g3) == 27
    assert scale_factor(ProjectiveMap(1, 2, 1, -1), g3) == 4
    assert scale_factor(ProjectiveMap(0, 1, 1, 0), MonicPolynomial([1, 0, 0, 0, 1])) == 1
    with pytest.raises(DegenerateError):
        scale_factor(ProjectiveMap(0, 1, 1, 0), g3)


def test_transition_matrices():
    T = transition_matrices(1)
    assert T.A == ((1, 0), (-1, 1))
    assert T.A_inv == ((1, 0), (1, 1))
    for d in (5, 17):
        assert transition_matrices(d).A[1][:3] == (-d, 1, 0)
    T = transition_matrices(64)
    P = mat_mul(T.A, T.A_inv)
    assert all(P[i][j] == (i == j) for i in range(65) for j in range(65))


@given(monic(), rat, nz_rat, rat)
@settings(max_examples=100)
def test_taylor_sum_agrees_with_apply(f, q, r, s):
    assume(f(s) != 0)
    assert coeffs_from_derivatives(f, q, r, s) == list(apply(NonAffine(q, r, s), f).coeffs)


@given(monic(), rat, nz_rat, rat)
@settings(max_examples=100)
def test_derivatives_round_trip(f, q, r, s):
    assume(f(s) != 0)
    beta = coeffs_from_derivatives(f, q, r, s)
    assert beta[0] == 1
    T = derivatives_from_coeffs(beta, q, r, s, f(s))
    assert T == f.taylor(s)
    assert T[0] == f(s)


def test_cubic_pair_via_taylor_sum():
    f = MonicPolynomial([1, 0, 0, 1])
    assert coeffs_from_derivatives(f, 1, 2, 1) == [1, 0, 3, 0]


@given(monic(3, 7), rat, nz_rat, rat)
@settings(max_examples=100)
def test_leading_zero_criterion(f, q, r, s):
    assume(f(s) != 0)
    beta = coeffs_from_derivatives(f, q, r, s)
    for e in range(1, f.degree):
        assert leading_zero_criterion(f, q, r, s, e) == all(b == 0 for b in beta[1:e + 1])


def test_leading_zero_criterion_on_constructed_instances():
    # pull back g with beta_1 = ... = beta_e = 0 to get f satisfying the criterion
    for d, e in ((5, 2), (7, 4), (9, 3)):
        g = MonicPolynomial([1] + [0] * e + list(range(1, d - e + 1)))
        h = NonAffine(Fr(1, 3), 2, -1)
        f = apply(inverse(h), g)
        assert leading_zero_criterion(f, h.q, h.r, h.s, e)
        assert not leading_zero_criterion(f, h.q, h.r, h.s, e + 1)


@pytest.mark.parametrize("d", range(4, 21))
def test_first_step_family(d):
    sol = first_step_solve(d, 1, 2, 1)
    assert sol.beta_d_minus_1 == d and sol.beta_d == 3 - d and sol.kappa == 4
    assert sol.g == MonicPolynomial([1] + [0] * (d - 2) + [d, 3 - d])
    assert sol.alpha_3 == arith.binom(d, 3)
    assert lambda_plus_poly(sol.f) == 3
    assert discriminant(sol.g.to_form()) != 0
    assert apply(NonAffine(1, 2, 1), sol.f) == sol.g


@given(st.integers(3, 9), nz_rat, nz_rat, nz_rat)
@settings(max_examples=60)
def test_first_step_general(d, q, r, s):
    assume(r != q * s and r != (d - 1) * q * s)
    sol = first_step_solve(d, q, r, s)
    assert sol.kappa == q ** (d - 2) * (r / s) ** 2
    assert sol.f.coeffs[1] == 0 and sol.f.coeffs[2] == 0
    assert sol.alpha_3 == arith.binom(d, 3) * q ** (d - 3) * r ** 2 * (r - q * s) / sol.kappa
    assert apply(NonAffine(q, r, s), sol.f) == sol.g


def test_first_step_excluded():
    with pytest.raises(DegenerateError):
        first_step_solve(5, 1, 1, 1)
    with pytest.raises(DegenerateError):
        first_step_solve(5, 1, 4, 1)


def test_quotient_examples():
    assert quotient_Q(2, 2) == 2
    for lp in range(1, 51):
        assert quotient_Q(lp, 2) == Fr(lp + 2, 2)
        # the defining products give (l'+3-nu)/(3-nu) for nu in {0, 1}
        assert quotient_Q(lp, 0) == Fr(lp + 3, 3)
        assert quotient_Q(lp, 1) == Fr(lp + 2, 2)
        for nu in (0, 1, 2):
            assert quotient_Q(lp, nu) != 1


def test_quotient_literal_and_reduced_agree():
    for nu in (0, 1, 2):
        for lp in range(2, 30):
            assert quotient_Q_literal(lp, nu) == quotient_Q(lp, nu)
    assert quotient_Q_literal(1, 0) is None


def test_inversion_pair():
    f = MonicPolynomial([1, 0, 0, 0, 0, 1])
    assert inversion_pair(f, 1) == f
    with pytest.raises(DomainError):
        inversion_pair(MonicPolynomial([1, 1, 0]), 2)
    # trinomial: alpha_d beta_{d-lambda} = alpha_lambda r^(d-lambda)
    d, lam, al, ad, r = 9, 4, Fr(3), Fr(-2), Fr(5, 3)
    c = [Fr(0)] * (d + 1)
    c[0], c[lam], c[d] = Fr(1), al, ad
    g = inversion_pair(MonicPolynomial(c), r)
    assert ad * g.coeffs[d - lam] == al * r ** (d - lam)
    assert ad * g.coeffs[d] == r ** d


@given(monic(2, 7), nz_rat)
@settings(max_examples=60)
def test_inversion_pair_matches_apply(f, r):
    assume(f.coeffs[-1] != 0)
    assert inversion_pair(f, r) == apply(NonAffine(0, r, 0), f)


def test_example_system_d12():
    ex = example_system(12, 3)
    assert ex.delta == 8 * ex.A * arith.binom(12, 3) - 2 * 12 * ex.B
    num = example_f_numerator(12, 3, ex.beta_lambda, ex.beta_d)
    assert num[0] == ex.kappa
    assert num[1] == 0 and num[3] == 0

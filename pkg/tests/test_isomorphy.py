import random
from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fewform import fixtures
from fewform.errors import DomainError, UnsupportedGroupError
from fewform.forms import BinaryForm, discriminant
from fewform.homography import IDENTITY, ProjectiveMap, act_on_form
from fewform.isomorphy import (
    automorphism_group,
    expected_rigid_class,
    is_antidiagonal,
    is_diagonal,
    is_isomorphic,
    is_rigid,
    isomorphisms,
    map_from_three_pairs,
    projective_roots,
    w_constant,
)


def test_projective_roots_include_infinity():
    F = BinaryForm([0, 1, 0, -1])  # Y (X^2 - Y^2) up to ordering
    rs = projective_roots(F)
    assert len(rs) == 3
    ts = sorted(abs(p.as_complex()[1]) for p in rs.points)
    assert ts[0] < 1e-20


def test_projective_roots_degree():
    rs = projective_roots(fixtures.DECIC)
    assert len(rs) == 10


def test_map_from_three_pairs():
    import mpmath

    M = [mpmath.mpc(2), mpmath.mpc(1), mpmath.mpc(3), mpmath.mpc(1)]
    pts = [(mpmath.mpc(z), mpmath.mpc(1)) for z in (0, 1, -2)]

    def image(p):
        x, t = p
        return (M[0] * x + M[1] * t, M[2] * x + M[3] * t)

    N = map_from_three_pairs([(p, image(p)) for p in pts])
    N = [N[0, 0], N[0, 1], N[1, 0], N[1, 1]]
    ratio = N[0] / M[0]
    assert all(abs(n - ratio * m) < 1e-20 for n, m in zip(N, M))


def test_quadruple_link():
    F, G = fixtures.QUAD_LINK_F, fixtures.QUAD_LINK_G
    certs = isomorphisms(F, G)
    assert ProjectiveMap(1, 1, 1, -1) in [c.gamma for c in certs]
    assert all(c.verify(F, G) for c in certs)
    # G = 4F, so projectively the identity also links them, with nu = 1/4
    projective = {c.gamma: c.nu for c in isomorphisms(F, G, allow_scalar=True)}
    assert projective[ProjectiveMap(1, 1, 1, -1)] == 1
    assert projective[IDENTITY] == Fr(1, 4)


def test_reference_forms_have_their_automorphism():
    for F, gamma in fixtures.REFERENCE_FORMS.values():
        assert gamma in automorphism_group(F)


def test_cubic_group_has_order_two():
    g = automorphism_group(fixtures.CUBIC)
    assert g.order == 2 and g.label() == "Other(2)"
    with pytest.raises(UnsupportedGroupError):
        w_constant(fixtures.CUBIC, g)


def test_definite_quartic_is_rigid():
    g = automorphism_group(fixtures.DEFINITE_QUARTIC)
    assert g.label() == "±Id"
    assert w_constant(fixtures.DEFINITE_QUARTIC, g) == Fr(1, 2)
    assert is_rigid(fixtures.DEFINITE_QUARTIC, g)


def test_squared_arguments_give_d2():
    F = BinaryForm([1, 0, 3, 0, 7])
    g = automorphism_group(F)
    assert g.label() == "D2" and w_constant(F, g) == Fr(1, 4)
    assert expected_rigid_class(F) == "D2"


def test_odd_degree_generic_is_identity_only():
    F = BinaryForm([1, 0, 0, 0, 1, 1])
    g = automorphism_group(F)
    assert g.label() == "Id" and w_constant(F, g) == 1


def test_inversion_quartic_actually_lifts():
    # (X - aY)(X + Y/a)(X - bY)(X + Y/b) o (0,-1;1,0) = +F, so the swap is an automorphism
    for a, b in ((2, 3), (Fr(1, 2), 5), (3, 7)):
        F = fixtures.inversion_quartic(a, b)
        assert act_on_form(F, fixtures.INVERSION) == F
        lam = Fr(3, 2)
        assert act_on_form(F, ProjectiveMap(0, -lam, lam, 0)) == F.scale(lam ** 4)


def test_twisted_quartic_rejects_inversion():
    F = fixtures.twisted_inversion_quartic(2)
    G = act_on_form(F, fixtures.INVERSION)
    assert G == F.scale(-1)
    group = automorphism_group(F)
    assert all(g.entries()[0] != 0 for g in group.generators)
    assert fixtures.INVERSION not in group


def test_isomorphisms_reject_bad_input():
    with pytest.raises(DomainError):
        isomorphisms(BinaryForm([1, 0, 0, 1]), BinaryForm([1, 0, 0, 0, 1]))
    with pytest.raises(DomainError):
        isomorphisms(BinaryForm([1, -2, 1]), BinaryForm([1, 0, 1]))
    with pytest.raises(DomainError):
        isomorphisms(BinaryForm([1, 0, -3, 2]), BinaryForm([1, 0, 0, 1]))


def test_non_isomorphic_pair():
    assert not is_isomorphic(BinaryForm([1, 0, 0, 0, 0, 1]), BinaryForm([1, 0, 0, 0, 1, 1]))
    # over Q the pure cubics X^3 + Y^3 and X^3 + 2Y^3 are not equivalent
    assert not is_isomorphic(BinaryForm([1, 0, 0, 1]), BinaryForm([1, 0, 0, 2]))


mats = st.tuples(*(st.integers(-3, 3),) * 4).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0)


@given(st.lists(st.integers(-5, 5), min_size=5, max_size=7), mats)
@settings(max_examples=25, deadline=None)
def test_random_transforms_are_found(c, m):
    F = BinaryForm(c)
    assume(discriminant(F) != 0)
    gamma = ProjectiveMap(*m)
    G = act_on_form(F, gamma)
    certs = isomorphisms(F, G)
    assert gamma in [cert.gamma for cert in certs]
    for cert in certs:
        assert act_on_form(F, cert.gamma) == G


def test_group_is_closed():
    rng = random.Random(5)
    for _ in range(5):
        c = [rng.randint(-4, 4) for _ in range(5)]
        F = BinaryForm(c[:2] + [0] + c[3:])
        if discriminant(F) == 0:
            continue
        G = automorphism_group(F)
        assert IDENTITY in G
        for a in G.generators:
            for b in G.generators:
                assert a @ b in G


def test_shape_helpers():
    assert is_diagonal((2, 0, 0, 3)) and not is_diagonal((2, 1, 0, 3))
    assert is_antidiagonal((0, 1, 2, 0)) and not is_antidiagonal((1, 1, 2, 0))

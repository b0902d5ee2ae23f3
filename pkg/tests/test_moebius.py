import pytest
from sympy.polys.domains import QQ, QQ_I

from classifier import Kind, classify
from errors import NonRationalNormalization, NotAnH2Element, ParseError, SingularMatrix
from moebius import (H3Class, Moebius2, Orientation, c_invariant, classify_h2, classify_h3,
                     cross_check, cross_check_h2, h2_model, half_plane_form, parse_moebius_json,
                     random_moebius, spin_lift, spin_lift_h2, square_of_reversing)
from polyring import RationalPolynomial
from qlinalg import UNIT_TRANSLATION_BLOCK, QMatrix
from rationals import format_gaussian

REV = Orientation.REVERSING


def M(rows, orientation=Orientation.PRESERVING):
    return Moebius2.of(rows, orientation)


# --- c(A) ---
def test_c_invariant_examples():
    assert format_gaussian(c_invariant(M([[1, 1], [0, 1]]))) == ['4', '0']
    assert format_gaussian(c_invariant(M([[0, -1], [1, 0]]))) == ['0', '0']
    assert format_gaussian(c_invariant(M([[2, 0], [0, 1]]))) == ['9/2', '0']


def test_c_invariant_is_scale_invariant():
    A = M([[(1, 2), 3], [(0, 1), '1/2']])
    u = QQ_I(QQ(2), QQ(-5))
    assert c_invariant(A) == c_invariant(A.scaled(u))


@pytest.mark.parametrize('rows, orientation', [
    ([[1, 1], [0, 1]], Orientation.PRESERVING),
    ([[(1, 1), 0], [0, 1]], Orientation.PRESERVING),
    ([[1, -1], [1, 0]], Orientation.PRESERVING),
    ([[0, -1], [1, 0]], REV),
    ([[0, (3, 4)], [1, 0]], REV),
    ([[-4, 0], [0, 1]], REV),
])
def test_tags_ignore_scalar_factors(rows, orientation):
    A = M(rows, orientation)
    for u in (QQ_I(QQ(2), QQ(-5)), QQ_I(QQ(-1, 3), QQ(0)), QQ_I(QQ(0), QQ(1))):
        assert classify_h3(A.scaled(u)) is classify_h3(A)


def test_c_invariant_of_singular_matrix():
    with pytest.raises(SingularMatrix):
        c_invariant(M([[1, 2], [2, 4]]))


# --- orientation-preserving taxonomy ---
@pytest.mark.parametrize('rows, tag', [
    ([[1, 1], [0, 1]], H3Class.TRANSLATION),
    ([[3, 0], [0, 3]], H3Class.IDENTITY),
    ([[0, -1], [1, 0]], H3Class.HALF_TURN),
    ([[2, 0], [0, 1]], H3Class.STRETCH),
    ([[-2, 0], [0, 1]], H3Class.STRETCH_HALF_TURN),
    ([[1, -1], [1, 0]], H3Class.ONE_ROTATORY_ELLIPTIC),
    ([[(0, 1), 0], [0, (0, -1)]], H3Class.HALF_TURN),
    ([[(1, 1), 0], [0, 1]], H3Class.LOXODROMIC),
])
def test_preserving_tags(rows, tag):
    assert classify_h3(M(rows)) is tag


# --- orientation-reversing taxonomy ---
def test_antipodal_and_inversion_in_circle():
    antipodal = M([[0, -1], [1, 0]], REV)
    assert classify_h3(antipodal) is H3Class.ANTIPODAL
    assert square_of_reversing(antipodal).rows == M([[-1, 0], [0, -1]]).rows
    assert classify_h3(M([[0, 1], [1, 0]], REV)) is H3Class.INVERSION_IN_CIRCLE
    # z -> conj(z) fixes the real line
    assert classify_h3(M([[1, 0], [0, 1]], REV)) is H3Class.INVERSION_IN_CIRCLE
    assert classify_h3(M([[(0, 1), 0], [0, 1]], REV)) is H3Class.INVERSION_IN_CIRCLE


@pytest.mark.parametrize('rows, tag', [
    ([[1, 1], [0, 1]], H3Class.ZERO_ROTATORY_PARABOLIC_INVERSION),
    ([[2, 0], [0, 1]], H3Class.ZERO_ROTATORY_HYPERBOLIC_INVERSION),
    ([[(0, 1), 0], [0, 2]], H3Class.ZERO_ROTATORY_HYPERBOLIC_INVERSION),
    ([[0, (3, 4)], [1, 0]], H3Class.ONE_ROTATORY_ELLIPTIC_INVERSION),
    ([[0, (0, 1)], [1, 0]], H3Class.ONE_ROTATORY_ELLIPTIC_INVERSION),
])
def test_reversing_tags(rows, tag):
    assert classify_h3(M(rows, REV)) is tag


def test_expected_types():
    assert H3Class.ANTIPODAL.expected_type() == (Kind.ELLIPTIC, True, 1)
    assert H3Class.INVERSION_IN_CIRCLE.expected_type() == (Kind.ELLIPTIC, True, 0)
    assert H3Class.LOXODROMIC.expected_type() == (Kind.HYPERBOLIC, False, 1)


# --- lifts ---
def test_translation_lifts_to_parabolic_block():
    lift = spin_lift(M([[1, 1], [0, 1]]))
    expected = QMatrix([
        [QQ(3, 2), 1, 0, QQ(-1, 2)],
        [1, 1, 0, -1],
        [0, 0, 1, 0],
        [QQ(1, 2), 1, 0, QQ(1, 2)],
    ])
    assert lift.matrix == expected
    c = classify(lift)
    assert (c.kind, c.k, c.l) == (Kind.PARABOLIC, 0, 4)


def test_antipodal_lift_is_point_reflection():
    lift = spin_lift(M([[0, -1], [1, 0]], REV))
    assert lift.matrix == QMatrix.diag([1, -1, -1, -1])


@pytest.mark.parametrize('rows, orientation', [
    ([[1, 1], [0, 1]], Orientation.PRESERVING),
    ([[0, -1], [1, 0]], Orientation.PRESERVING),
    ([[0, -1], [1, 0]], REV),
    ([[0, 1], [1, 0]], REV),
    ([[(3, 4), 0], [0, 1]], Orientation.PRESERVING),
    ([[0, (3, 4)], [1, 0]], REV),
    ([[2, 0], [0, 1]], REV),
    ([[1, 1], [0, 1]], REV),
])
def test_worked_examples_cross_check(rows, orientation):
    assert cross_check(M(rows, orientation))


def test_lift_needs_rational_modulus():
    with pytest.raises(NonRationalNormalization):
        spin_lift(M([[(1, 1), 0], [0, 1]]))


@pytest.mark.slow
def test_random_maps_cross_check(samples):
    for orientation in Orientation:
        for seed in range(samples('moebius')):
            assert cross_check(random_moebius(seed, orientation)), seed


def test_lift_is_a_homomorphism():
    A = M([[1, 1], [0, 1]])
    B = M([[(3, 4), 0], [0, 1]])
    assert spin_lift(A @ B).matrix == spin_lift(A).matrix @ spin_lift(B).matrix


def test_diagonal_lift_is_a_boost():
    T = spin_lift(M([[2, 0], [0, '1/2']]))
    c = classify(T)
    assert c.kind is Kind.HYPERBOLIC
    assert c.spectrum.boost.interval == (QQ(4), QQ(4))
    assert RationalPolynomial.from_roots([4, '1/4']).divides(T.char)


@pytest.mark.parametrize('rows', [
    [[(0, 3), 0], [0, 1]],
    [[0, (3, 4)], [1, 0]],
    [[2, 1], [1, 1]],
])
def test_reversing_lift_squares_to_lift_of_square(rows):
    f = M(rows, REV)
    assert spin_lift(f).matrix.power(2) == spin_lift(square_of_reversing(f)).matrix


# --- H^2 ---
def test_h2_models_and_classes():
    assert h2_model(M([[1, 1], [0, 1]])) == 'half-plane'
    assert h2_model(M([[(1, 1), 1], [1, (1, -1)]])) == 'disk'
    assert classify_h2(M([[1, 1], [0, 1]])) is H3Class.TRANSLATION
    assert classify_h2(M([[1, -1], [1, 0]])) is H3Class.ONE_ROTATORY_ELLIPTIC
    assert classify_h2(M([[4, 0], [0, 1]])) is H3Class.STRETCH
    assert classify_h2(M([[0, 1], [1, 0]], REV)) is H3Class.INVERSION_IN_CIRCLE
    assert classify_h2(M([[-4, 0], [0, 1]], REV)) is H3Class.ZERO_ROTATORY_HYPERBOLIC_INVERSION


def test_h2_rejects_wrong_shapes():
    with pytest.raises(NotAnH2Element):
        h2_model(M([[(1, 1), 0], [0, 1]]))
    with pytest.raises(NotAnH2Element):
        h2_model(M([[-1, 0], [0, 1]]))


def test_h2_lift():
    lift = spin_lift_h2(M([[1, 1], [0, 1]]))
    assert lift.matrix == UNIT_TRANSLATION_BLOCK
    assert cross_check_h2(M([[1, 1], [0, 1]]))
    assert cross_check_h2(M([[4, 0], [0, 1]]))
    assert cross_check_h2(M([[0, 1], [1, 0]], REV))


@pytest.mark.parametrize('rows, orientation, tag', [
    ([[(1, 1), 1], [1, (1, -1)]], Orientation.PRESERVING, H3Class.TRANSLATION),
    ([[(0, 1), 0], [0, (0, -1)]], Orientation.PRESERVING, H3Class.ONE_ROTATORY_ELLIPTIC),
    ([[2, (0, 1)], [(0, -1), 2]], Orientation.PRESERVING, H3Class.STRETCH),
    ([[1, 0], [0, 1]], REV, H3Class.INVERSION_IN_CIRCLE),
])
def test_disk_model_elements_lift_and_cross_check(rows, orientation, tag):
    D = M(rows, orientation)
    assert h2_model(D) == 'disk'
    assert classify_h2(D) is tag
    assert half_plane_form(D).is_all_real()
    assert cross_check_h2(D)


def test_disk_half_turn_becomes_half_turn_about_i():
    R = half_plane_form(M([[(0, 1), 0], [0, (0, -1)]]))
    assert R.rows == M([[0, 1], [-1, 0]]).rows


# --- parsing ---
def test_parse_json_entries():
    A = parse_moebius_json([['1', ['0', '1/2']], [0, '3']])
    assert A.b == QQ_I(QQ(0), QQ(1, 2))
    assert A.c == QQ_I(0, 0)


def test_parse_json_errors():
    with pytest.raises(ParseError):
        parse_moebius_json([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ParseError) as info:
        parse_moebius_json([['1', 'x'], ['0', '1']])
    assert (info.value.line, info.value.column) == (1, 2)

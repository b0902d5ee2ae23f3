import numpy as np
import pytest
from sympy.polys.domains import QQ

from classifier import (SQUARED, Kind, Verdict, are_conjugate, classify, detect_type,
                        divergence_witness, low_dim_criterion, quick_trace_test,
                        spectral_decomposition, trace_exponent_bound)
from errors import DimensionMismatch, UnsupportedDimension
from polyring import X_MINUS_ONE, evaluate, newton_power_sums, reduce
from qlinalg import (RECIPES, QMatrix, block_isometry, conjugate, jordan_chevalley, power_trace,
                     random_isometry, validate_isometry)


def samples_for(n, count):
    """Seeded samples over every recipe, reproducible run to run."""
    for i in range(count):
        recipe = RECIPES[i % len(RECIPES)]
        yield random_isometry(1000 * n + i, n, recipe)


def float_is_hyperbolic(T):
    """True or False from float eigenvalues, None when round-off could decide it.

    A unipotent block of size 3 moves float eigenvalues off the unit circle by
    about the cube root of machine epsilon times the entry size, so radii
    between 1 + 1e-9 and 1 + 1e-3 are left to the exact tests.
    """
    radius = float(np.max(np.abs(np.linalg.eigvals(T.matrix.to_numpy()))))
    if radius > 1 + 1e-3:
        return True
    if radius <= 1 + 1e-9:
        return False
    return None


# --- fixtures by hand ---
def test_identity(identity2):
    c = classify(identity2)
    assert (c.kind, c.inversion, c.k, c.l, c.m) == (Kind.ELLIPTIC, False, 0, 3, 0)
    assert c.name == '0-rotatory elliptic'


def test_boost(boost2):
    c = classify(boost2)
    assert (c.kind, c.k, c.l, c.m) == (Kind.HYPERBOLIC, 0, 1, 0)
    assert c.spectrum.boost.interval == (QQ(3), QQ(3))
    assert c.spectrum.boost.value == pytest.approx(3.0)


def test_rotation(rotation2):
    c = classify(rotation2)
    assert (c.kind, c.k, c.l) == (Kind.ELLIPTIC, 1, 1)
    assert c.rotation_partition == (1,)
    assert c.to_json()['angles'][0]['cos_interval'] == ['3/5', '3/5']


def test_reflection(reflection2):
    c = classify(reflection2)
    assert (c.kind, c.inversion, c.l, c.m, c.orientation) == (Kind.ELLIPTIC, True, 2, 1, -1)
    assert c.name == '0-rotatory elliptic inversion'


def test_parabolic(parabolic2):
    c = classify(parabolic2)
    assert (c.kind, c.inversion, c.k, c.l) == (Kind.PARABOLIC, False, 0, 3)
    assert SQUARED.divides(c.min)


def test_half_turns_count_towards_k():
    T = validate_isometry(QMatrix.diag([1, -1, -1, 1]))
    c = classify(T)
    assert (c.kind, c.k, c.m, c.orientation) == (Kind.ELLIPTIC, 1, 2, 1)
    T = validate_isometry(QMatrix.diag([1, -1, -1, -1]))
    assert classify(T).name == '1-rotatory elliptic inversion'


def test_composite_block_element():
    T = block_isometry(6, boost=2, rotations=[('3/5', '4/5'), ('3/5', '4/5')], minus=1)
    c = classify(T)
    assert (c.kind, c.inversion, c.l, c.m) == (Kind.HYPERBOLIC, True, 0, 1)
    assert c.rotation_partition == (2,)
    assert c.k == 2
    assert c.name == '2-rotatory hyperbolic inversion'


# --- conjugacy ---
@pytest.mark.slow
def test_conjugate_pairs_are_detected(samples):
    for n in (2, 3, 4):
        for T in samples_for(n, max(samples('conjugation') // 5, 2)):
            P = random_isometry(n, n, 'with-reflection')
            assert are_conjugate(T, conjugate(T, P))


def test_different_angles_are_not_conjugate(rotation2):
    other = block_isometry(2, rotations=[('5/13', '12/13')])
    assert not are_conjugate(rotation2, other)


def test_conjugacy_needs_equal_dimension(identity2):
    with pytest.raises(DimensionMismatch):
        are_conjugate(identity2, block_isometry(3))


@pytest.mark.slow
def test_classification_is_conjugation_invariant(samples):
    for n in (2, 3, 4, 5, 6):
        for i, T in enumerate(samples_for(n, samples('conjugation'))):
            P = random_isometry(n * 31 + i, n, 'semisimple-cayley')
            a, b = classify(T), classify(conjugate(T, P))
            assert (a.type, a.k, a.l, a.m) == (b.type, b.k, b.l, b.m)
            assert a.spectrum.key() == b.spectrum.key()


# --- independent checks ---
@pytest.mark.slow
def test_detect_type_agrees_with_float_oracle(samples):
    for n in (2, 3, 4, 5, 6):
        for i in range(samples('conjugation')):
            T = random_isometry(5000 * n + i, n, RECIPES[i % len(RECIPES)])
            expected = float_is_hyperbolic(T)
            if expected is not None:
                assert (detect_type(T).kind is Kind.HYPERBOLIC) == expected


def test_float_oracle_abstains_on_unipotent_round_off():
    T = validate_isometry(QMatrix([[3, -2, 2], [2, -1, 2], [2, -2, 1]]))
    assert detect_type(T).kind is Kind.PARABOLIC
    assert float_is_hyperbolic(T) is not True


@pytest.mark.parametrize('kind, blocks', [
    (Kind.ELLIPTIC, {'rotations': [('3/5', '4/5')], 'minus': 1}),
    (Kind.HYPERBOLIC, {'boost': '5/2', 'minus': 2}),
    (Kind.PARABOLIC, {'parabolic': True, 'rotations': [('5/13', '12/13')]}),
    (Kind.PARABOLIC, {'parabolic': True, 'minus': 1}),
])
def test_detect_type_survives_conjugation(kind, blocks):
    core = block_isometry(5, **blocks)
    for seed in range(3):
        T = conjugate(core, random_isometry(seed, 5, 'with-reflection'))
        assert detect_type(T).kind is kind


@pytest.mark.slow
def test_large_trace_only_for_hyperbolic(samples):
    for n in (2, 3, 4, 5, 6):
        for T in samples_for(n, samples('conjugation')):
            result = quick_trace_test(T, cap=2 * (n + 1))
            if result.verdict is Verdict.HYPERBOLIC:
                assert detect_type(T).kind is Kind.HYPERBOLIC


@pytest.mark.slow
@pytest.mark.parametrize('n', [2, 3])
def test_low_dim_criterion_agrees(n, samples):
    for T in samples_for(n, samples('conjugation')):
        assert low_dim_criterion(T) == detect_type(T)


def test_low_dim_criterion_hand_cases():
    parabolic_inversion = block_isometry(3, parabolic=True, minus=1)
    assert low_dim_criterion(parabolic_inversion).kind is Kind.PARABOLIC
    assert low_dim_criterion(parabolic_inversion).inversion
    mirror = block_isometry(3, minus=1)
    assert low_dim_criterion(mirror).kind is Kind.ELLIPTIC
    assert low_dim_criterion(block_isometry(3, boost=3, minus=2)).kind is Kind.HYPERBOLIC
    assert low_dim_criterion(block_isometry(3, parabolic=True)).kind is Kind.PARABOLIC
    with pytest.raises(UnsupportedDimension):
        low_dim_criterion(block_isometry(4))


@pytest.mark.slow
def test_newton_sums_equal_power_traces(samples):
    for n in (2, 3, 4, 5, 6):
        for T in samples_for(n, samples('newton')):
            sums = newton_power_sums(T.char, 2 * (n + 1))
            assert sums == [power_trace(T, k) for k in range(1, 2 * (n + 1) + 1)]


@pytest.mark.slow
def test_structure_of_each_type(samples):
    for n in (2, 3, 4, 5, 6):
        for T in samples_for(n, samples('conjugation')):
            c = classify(T)
            reduced = reduce(T.char)
            if c.kind is Kind.PARABOLIC:
                _, U = jordan_chevalley(T)
                N = U.matrix - QMatrix.eye(T.dim)
                assert not N.power(2).is_zero()
                assert N.power(3).is_zero()
                assert c.l >= 3
            elif c.kind is Kind.HYPERBOLIC:
                assert evaluate(reduced.chi_o, 1) < 0
                assert c.spectrum.boost.multiplicity == 1
            else:
                assert c.min.gcd(c.min.derivative()).degree == 0
                assert c.l >= 1


# --- trace criteria ---
def test_trace_exponent_bound():
    assert trace_exponent_bound(2, 3) == 2
    assert trace_exponent_bound(5, QQ(3, 2)) >= 1
    with pytest.raises(ValueError):
        trace_exponent_bound(2, 1)


def test_quick_trace_test(boost2, rotation2):
    assert quick_trace_test(boost2).to_json() == {'verdict': 'Hyperbolic', 'power': 1}
    assert quick_trace_test(boost2, boost_lower_bound=3).verdict is Verdict.HYPERBOLIC
    assert quick_trace_test(rotation2).verdict is Verdict.INCONCLUSIVE


def test_divergence_witness(boost2, parabolic2):
    # trace T^k = 1 + 3^k + 3^-k
    assert divergence_witness(boost2, 100) == 5
    assert divergence_witness(boost2, 3) == 1
    assert divergence_witness(parabolic2, 100) is None


# --- spectral decomposition ---
def test_decomposition_of_block_element():
    T = block_isometry(5, boost=3, rotations=[('3/5', '4/5')], minus=1)
    d = spectral_decomposition(T)
    assert len(d.fixed_space_basis) == 1
    assert len(d.neg_space_basis) == 1
    assert [p.dim for p in d.rotation_planes] == [2]
    assert len(d.boost_plane) == 2
    assert d.mixed_planes == ()
    assert d.dim == 6


def test_decomposition_of_parabolic_uses_semisimple_part(parabolic2):
    d = spectral_decomposition(parabolic2)
    assert len(d.fixed_space_basis) == 3
    assert d.boost_plane is None


@pytest.mark.slow
def test_decomposition_spans_random_samples(samples):
    for n in (3, 4, 5):
        for T in samples_for(n, max(samples('conjugation') // 5, 2)):
            d = spectral_decomposition(T)
            assert d.dim == T.dim
            json_form = d.to_json()
            assert set(json_form) == {'fixed', 'neg', 'rotation_planes', 'boost_plane', 'mixed_planes'}


def test_minimal_polynomial_of_x_minus_one_power(parabolic2):
    assert parabolic2.min == X_MINUS_ONE ** 3

"""Shared fixtures: a handful of hand-built isometries and the sample budget."""

import os
from pathlib import Path

import pytest

from qlinalg import UNIT_TRANSLATION_BLOCK, QMatrix, block_isometry, validate_isometry

TESTS_DIR = Path(__file__).resolve().parent
FIXTURES = TESTS_DIR / 'fixtures'
GOLDEN = TESTS_DIR / 'golden'

# random property checks: per dimension for isometries, per orientation for
# Moebius maps, in total for AN. HYPERISO_TEST_SAMPLES replaces every count.
SAMPLE_COUNTS = {
    'conjugation': 500,
    'newton': 200,
    'moebius': 500,
    'an': 1000,
}
_OVERRIDE = os.getenv('HYPERISO_TEST_SAMPLES')


def sample_count(kind):
    return int(_OVERRIDE) if _OVERRIDE else SAMPLE_COUNTS[kind]


@pytest.fixture
def samples():
    return sample_count


@pytest.fixture
def identity2():
    return validate_isometry(QMatrix.eye(3))


@pytest.fixture
def boost2():
    return block_isometry(2, boost=3)


@pytest.fixture
def rotation2():
    return block_isometry(2, rotations=[('3/5', '4/5')])


@pytest.fixture
def reflection2():
    return validate_isometry(QMatrix.diag([1, -1, 1]))


@pytest.fixture
def parabolic2():
    return validate_isometry(UNIT_TRANSLATION_BLOCK)


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


@pytest.fixture
def golden_path():
    return lambda name: GOLDEN / name

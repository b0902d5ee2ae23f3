"""
Dynamical type of an isometry of H^n in the linear model.

detect_type and classify work from the characteristic and minimal polynomials
alone: the sign of the reduced characteristic polynomial at 1 separates
hyperbolic elements, and a kernel-rank comparison for (x - 1)^2 separates
parabolic ones. The trace tests and the low-dimensional criteria are kept as
independent checks and must agree with those verdicts.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from sympy.polys.domains import QQ

import config
from errors import DimensionMismatch, TaxonomyViolation, UnsupportedDimension
from polyring import (RationalPolynomial, X_MINUS_ONE, count_roots_above, evaluate,
                      halve_self_reciprocal, newton_power_sums, reduce, root_multiplicity_at,
                      spectrum_from_reduced, unhalve)
from qlinalg import QMatrix, jordan_chevalley, kernel_rank, power_trace
from rationals import ONE, format_rational, to_float, to_qq

log = logging.getLogger(__name__)


class Kind(str, Enum):
    ELLIPTIC = 'Elliptic'
    PARABOLIC = 'Parabolic'
    HYPERBOLIC = 'Hyperbolic'


@dataclass(frozen=True)
class IsometryType:
    kind: Kind
    inversion: bool = False

    def __str__(self):
        return f"{self.kind.value}{' inversion' if self.inversion else ''}"


@dataclass(frozen=True)
class Classification:
    type: IsometryType
    k: int
    l: int
    m: int
    spectrum: object
    orientation: int
    char: RationalPolynomial
    min: RationalPolynomial

    @property
    def kind(self):
        return self.type.kind

    @property
    def inversion(self):
        return self.type.inversion

    @property
    def name(self):
        label = f"{self.k}-rotatory {self.type.kind.value.lower()}"
        return label + ' inversion' if self.type.inversion else label

    @property
    def rotation_partition(self):
        return self.spectrum.rotation_multiplicities

    def to_json(self):
        return {
            'type': self.type.kind.value,
            'inversion': self.type.inversion,
            'name': self.name,
            'k': self.k,
            'l': self.l,
            'm': self.m,
            'angles': [a.to_json() for a in self.spectrum.angles],
            'boost': self.spectrum.boost.to_json() if self.spectrum.boost else None,
            'orientation': self.orientation,
            'char': self.char.to_json(),
            'min': self.min.to_json(),
        }


SQUARED = X_MINUS_ONE * X_MINUS_ONE


def detect_type(T):
    reduced = reduce(T.char)
    inversion = reduced.m % 2 == 1
    if evaluate(reduced.chi_o, ONE) < 0:
        kind = Kind.HYPERBOLIC
    elif kernel_rank(T, SQUARED) > kernel_rank(T, X_MINUS_ONE):
        kind = Kind.PARABOLIC
    else:
        kind = Kind.ELLIPTIC
    return IsometryType(kind, inversion)


def _is_squarefree(p):
    return p.degree < 1 or p.gcd(p.derivative()).degree == 0


def classify(T):
    reduced = reduce(T.char)
    spectrum = spectrum_from_reduced(reduced.chi_o)
    kind = detect_type(T)
    minimal = T.min

    problems = []
    if spectrum.k_prime != reduced.k_prime:
        problems.append(f"spectrum accounts for {spectrum.k_prime} of k'={reduced.k_prime}")
    if (kind.kind is Kind.HYPERBOLIC) != (spectrum.boost is not None):
        problems.append('boost root present iff hyperbolic')
    if (kind.kind is Kind.PARABOLIC) != SQUARED.divides(minimal):
        problems.append('(x-1)^2 divides the minimal polynomial iff parabolic')
    if (T.orientation == 1) != (reduced.m % 2 == 0):
        problems.append(f"orientation {T.orientation} with m={reduced.m}")
    if kind.kind is Kind.ELLIPTIC:
        if reduced.l < 1:
            problems.append('elliptic element without eigenvalue 1')
        if not _is_squarefree(minimal):
            problems.append('elliptic element is not semisimple')
    if kind.kind is Kind.PARABOLIC and reduced.l < 3:
        problems.append(f"parabolic element with l={reduced.l} < 3")
    if problems:
        raise TaxonomyViolation('; '.join(problems), l=reduced.l, m=reduced.m)

    k = sum(a.multiplicity for a in spectrum.angles) + reduced.m // 2
    result = Classification(type=kind, k=k, l=reduced.l, m=reduced.m, spectrum=spectrum,
                            orientation=T.orientation, char=T.char, min=minimal)
    log.debug("classified size-%d element as %s", T.dim, result.name)
    return result


# --- CONJUGACY ---

def conjugacy_invariant(T):
    return T.char, T.min


def are_conjugate(T1, T2):
    if T1.dim != T2.dim:
        raise DimensionMismatch(f"elements of size {T1.dim} and {T2.dim}")
    return conjugacy_invariant(T1) == conjugacy_invariant(T2)


# --- SPECTRAL DECOMPOSITION ---

@dataclass(frozen=True)
class InvariantSubspace:
    """Rational basis of ker G(T_s) for G = x^d g(x + 1/x), g irreducible."""

    factor: RationalPolynomial
    multiplicity: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def to_json(self):
        return {
            'factor': self.factor.to_json(),
            'mult': self.multiplicity,
            'basis': [[format_rational(x) for x in v] for v in self.basis],
        }


@dataclass(frozen=True)
class SpectralDecomposition:
    fixed_space_basis: tuple
    neg_space_basis: tuple
    rotation_planes: tuple = ()
    boost_plane: Optional[tuple] = None
    mixed_planes: tuple = field(default=())

    def subspaces(self):
        out = [self.fixed_space_basis, self.neg_space_basis]
        out.extend(p.basis for p in self.rotation_planes)
        if self.boost_plane is not None:
            out.append(self.boost_plane)
        out.extend(p.basis for p in self.mixed_planes)
        return out

    @property
    def dim(self):
        return sum(len(basis) for basis in self.subspaces())

    def to_json(self):
        def vectors(basis):
            return [[format_rational(x) for x in v] for v in basis]

        return {
            'fixed': vectors(self.fixed_space_basis),
            'neg': vectors(self.neg_space_basis),
            'rotation_planes': [p.to_json() for p in self.rotation_planes],
            'boost_plane': vectors(self.boost_plane) if self.boost_plane is not None else None,
            'mixed_planes': [p.to_json() for p in self.mixed_planes],
        }


def spectral_decomposition(T):
    semisimple, _ = jordan_chevalley(T)
    S = semisimple.matrix
    eye = QMatrix.eye(T.dim)
    fixed = tuple(tuple(v) for v in (S - eye).nullspace())
    neg = tuple(tuple(v) for v in (S + eye).nullspace())

    reduced = reduce(T.char)
    rotations, mixed = [], []
    boost_plane = None
    if reduced.chi_o.degree > 0:
        two = QQ(2)
        for g, e in halve_self_reciprocal(reduced.chi_o).factor():
            basis = tuple(tuple(v) for v in S.evaluate(unhalve(g)).nullspace())
            has_boost = count_roots_above(g, two) > 0
            subspace = InvariantSubspace(factor=g, multiplicity=e, basis=basis)
            if not has_boost:
                rotations.append(subspace)
            elif g.degree == 1:
                boost_plane = basis
            else:
                mixed.append(subspace)

    result = SpectralDecomposition(fixed_space_basis=fixed, neg_space_basis=neg,
                                   rotation_planes=tuple(rotations), boost_plane=boost_plane,
                                   mixed_planes=tuple(mixed))
    _check_orthogonal(T, result)
    return result


def _check_orthogonal(T, decomposition):
    form = T.form
    spaces = decomposition.subspaces()
    if decomposition.dim != T.dim:
        raise TaxonomyViolation(f"subspaces span dimension {decomposition.dim}, expected {T.dim}")
    for i, first in enumerate(spaces):
        for second in spaces[i + 1:]:
            if any(form.inner(u, v) != 0 for u in first for v in second):
                raise TaxonomyViolation('invariant subspaces are not J-orthogonal')


# --- TRACE CRITERIA ---

class Verdict(str, Enum):
    HYPERBOLIC = 'Hyperbolic'
    INCONCLUSIVE = 'Inconclusive'


@dataclass(frozen=True)
class TraceTestResult:
    verdict: Verdict
    power: Optional[int] = None

    def to_json(self):
        return {'verdict': self.verdict.value, 'power': self.power}


def _as_float(x):
    return x if isinstance(x, float) else to_float(to_qq(x))


def trace_exponent_bound(n, boost_lower_bound, target=None):
    """Exponent u past which trace T^u > target, for any boost r >= boost_lower_bound."""
    target = n + 1 if target is None else max(_as_float(target), 1.0)
    a = _as_float(boost_lower_bound)
    if a <= 1:
        raise ValueError('boost lower bound must exceed 1')
    return math.floor(math.log(n - 1 + target) / math.log(a)) + 1


def quick_trace_test(T, boost_lower_bound=None, cap=None):
    """Hyperbolic as soon as some trace T^u exceeds n + 1; never wrong, possibly inconclusive."""
    if boost_lower_bound is not None:
        limit = trace_exponent_bound(T.n, boost_lower_bound)
    else:
        limit = cap or config.QUICK_TRACE_CAP
    bound = T.n + 1
    for u, trace in enumerate(newton_power_sums(T.char, limit), start=1):
        if trace > bound:
            return TraceTestResult(Verdict.HYPERBOLIC, u)
    return TraceTestResult(Verdict.INCONCLUSIVE)


def divergence_witness(T, bound):
    """Smallest k with trace T^k > bound for hyperbolic T, None otherwise."""
    reduced = reduce(T.char)
    if evaluate(reduced.chi_o, ONE) >= 0:
        return None
    low = spectrum_from_reduced(reduced.chi_o).boost.interval[0]
    bound = to_qq(bound)
    limit = trace_exponent_bound(T.n, low, target=bound) if low > 1 else 8
    while True:
        for k, trace in enumerate(newton_power_sums(T.char, limit), start=1):
            if trace > bound:
                return k
        limit *= 2


def low_dim_criterion(T):
    """Trace-and-determinant criteria for n = 2 and n = 3."""
    n = T.n
    if n not in (2, 3):
        raise UnsupportedDimension(f"low-dimensional criteria cover n = 2, 3; got n = {n}")
    trace = power_trace(T, 1)
    preserving = T.orientation == 1
    inversion = not preserving

    if n == 2 and preserving:
        if trace > 3:
            return IsometryType(Kind.HYPERBOLIC)
        if trace == 3:
            return IsometryType(Kind.ELLIPTIC if T.matrix.is_identity() else Kind.PARABOLIC)
        return IsometryType(Kind.ELLIPTIC)
    if n == 2:
        if trace > 1:
            return IsometryType(Kind.HYPERBOLIC, True)
        if trace == 1:
            return IsometryType(Kind.ELLIPTIC, True)
        raise TaxonomyViolation(f"orientation-reversing n=2 element with trace {format_rational(trace)}")

    if preserving:
        if T.matrix.is_identity():
            return IsometryType(Kind.ELLIPTIC)
        if root_multiplicity_at(T.char, ONE) == 0:
            return IsometryType(Kind.HYPERBOLIC)
        if trace > 4:
            return IsometryType(Kind.HYPERBOLIC)
        if trace == 4:
            return IsometryType(Kind.PARABOLIC)
        return IsometryType(Kind.ELLIPTIC)
    if trace > 2:
        return IsometryType(Kind.HYPERBOLIC, inversion)
    if trace < 2:
        return IsometryType(Kind.ELLIPTIC, inversion)
    # trace 2: a reflection or a parabolic inversion
    if kernel_rank(T, SQUARED) > kernel_rank(T, X_MINUS_ONE):
        return IsometryType(Kind.PARABOLIC, inversion)
    return IsometryType(Kind.ELLIPTIC, inversion)

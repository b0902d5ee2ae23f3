"""
Moebius transformations of the Riemann sphere as isometries of H^3 (and H^2).

A map is a 2x2 Gaussian-rational matrix plus an orientation flag; the reversing
ones act as z -> (a conj(z) + b) / (c conj(z) + d). Classification runs on the
scale-invariant c(A) = (trace A)^2 / det A, with B = A conj(A) standing in for
the reversing maps. spin_lift carries a map to the linear model so the verdict
can be checked against classifier.classify.
"""

import logging
from dataclasses import dataclass
from enum import Enum

from sympy.polys.domains import QQ, QQ_I

from classifier import Kind, classify
from errors import (DiagnosticError, NonRationalNormalization, NotAnH2Element, ParseError,
                    SingularMatrix)
from polyring import rational_sqrt_bounds
from qlinalg import LorentzForm, QMatrix, RationalSampler, validate_isometry
from rationals import ONE, ZERO, format_gaussian, gaussian_parts, parse_rational, to_gaussian

log = logging.getLogger(__name__)

G_ZERO = QQ_I(0, 0)
G_ONE = QQ_I(1, 0)
G_I = QQ_I(0, 1)


def is_zero(z):
    return z.x == 0 and z.y == 0


def is_real(z):
    return z.y == 0


def conj(z):
    return QQ_I(z.x, -z.y)


def norm2(z):
    """|z|^2 as a QQ element."""
    return QQ.convert(z.x * z.x + z.y * z.y)


class Orientation(str, Enum):
    PRESERVING = 'Preserving'
    REVERSING = 'Reversing'


class H3Class(str, Enum):
    LOXODROMIC = 'LoxodromicOneRotatoryHyperbolic'
    STRETCH = 'Stretch'
    STRETCH_HALF_TURN = 'StretchHalfTurn'
    ONE_ROTATORY_ELLIPTIC = 'OneRotatoryElliptic'
    HALF_TURN = 'HalfTurn'
    TRANSLATION = 'Translation'
    IDENTITY = 'Identity'
    ONE_ROTATORY_ELLIPTIC_INVERSION = 'OneRotatoryEllipticInversion'
    ZERO_ROTATORY_HYPERBOLIC_INVERSION = 'ZeroRotatoryHyperbolicInversion'
    ZERO_ROTATORY_PARABOLIC_INVERSION = 'ZeroRotatoryParabolicInversion'
    INVERSION_IN_CIRCLE = 'InversionInCircle'
    ANTIPODAL = 'Antipodal'

    def expected_type(self):
        """(kind, inversion, k) of the linear-model isometry with this tag."""
        return _EXPECTED[self]


_EXPECTED = {
    H3Class.LOXODROMIC: (Kind.HYPERBOLIC, False, 1),
    H3Class.STRETCH: (Kind.HYPERBOLIC, False, 0),
    H3Class.STRETCH_HALF_TURN: (Kind.HYPERBOLIC, False, 1),
    H3Class.ONE_ROTATORY_ELLIPTIC: (Kind.ELLIPTIC, False, 1),
    H3Class.HALF_TURN: (Kind.ELLIPTIC, False, 1),
    H3Class.TRANSLATION: (Kind.PARABOLIC, False, 0),
    H3Class.IDENTITY: (Kind.ELLIPTIC, False, 0),
    H3Class.ONE_ROTATORY_ELLIPTIC_INVERSION: (Kind.ELLIPTIC, True, 1),
    H3Class.ZERO_ROTATORY_HYPERBOLIC_INVERSION: (Kind.HYPERBOLIC, True, 0),
    H3Class.ZERO_ROTATORY_PARABOLIC_INVERSION: (Kind.PARABOLIC, True, 0),
    H3Class.INVERSION_IN_CIRCLE: (Kind.ELLIPTIC, True, 0),
    H3Class.ANTIPODAL: (Kind.ELLIPTIC, True, 1),
}


@dataclass(frozen=True)
class Moebius2:
    a: object
    b: object
    c: object
    d: object
    orientation: Orientation = Orientation.PRESERVING

    @classmethod
    def of(cls, rows, orientation=Orientation.PRESERVING):
        """rows: 2x2 of QQ_I elements, rationals, or (re, im) pairs."""
        entries = []
        for row in rows:
            for z in row:
                if isinstance(z, (tuple, list)):
                    entries.append(to_gaussian(*z))
                elif isinstance(z, QQ_I.dtype):
                    entries.append(z)
                else:
                    entries.append(to_gaussian(z))
        return cls(*entries, orientation=Orientation(orientation))

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def trace(self):
        return self.a + self.d

    @property
    def is_reversing(self):
        return self.orientation is Orientation.REVERSING

    def with_entries(self, a, b, c, d):
        return Moebius2(a, b, c, d, self.orientation)

    def with_orientation(self, orientation):
        return Moebius2(self.a, self.b, self.c, self.d, Orientation(orientation))

    def __matmul__(self, other):
        """Matrix product; the orientation of the product is left to the caller."""
        return self.with_entries(self.a * other.a + self.b * other.c,
                                 self.a * other.b + self.b * other.d,
                                 self.c * other.a + self.d * other.c,
                                 self.c * other.b + self.d * other.d)

    def conjugate_entries(self):
        return self.with_entries(conj(self.a), conj(self.b), conj(self.c), conj(self.d))

    def scaled(self, u):
        return self.with_entries(u * self.a, u * self.b, u * self.c, u * self.d)

    def inverse_matrix(self):
        det = self.det
        if is_zero(det):
            raise SingularMatrix('matrix is singular')
        return self.with_entries(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def is_scalar(self):
        return is_zero(self.b) and is_zero(self.c) and self.a == self.d

    def is_all_real(self):
        return all(is_real(z) for z in (self.a, self.b, self.c, self.d))

    def to_json(self):
        return [[format_gaussian(z) for z in row] for row in self.rows]


def parse_moebius_json(data, orientation=Orientation.PRESERVING):
    """[[e, e], [e, e]] with e either a rational string or a [re, im] pair of them."""
    if not (isinstance(data, list) and len(data) == 2 and all(
            isinstance(row, list) and len(row) == 2 for row in data)):
        raise ParseError('expected a 2x2 JSON array')
    rows = []
    for i, row in enumerate(data):
        parsed = []
        for j, entry in enumerate(row):
            try:
                if isinstance(entry, list):
                    re_part, im_part = entry
                    parsed.append(to_gaussian(parse_rational(str(re_part)),
                                              parse_rational(str(im_part))))
                else:
                    parsed.append(to_gaussian(parse_rational(str(entry))))
            except ValueError as exc:
                raise ParseError(f"entry ({i}, {j}): {exc}", line=i + 1, column=j + 1,
                                 entry=str(entry))
        rows.append(parsed)
    return Moebius2.of(rows, orientation)


# --- c(A) AND THE H^3 TAXONOMY ---

def c_invariant(M):
    det = M.det
    if is_zero(det):
        raise SingularMatrix('c(A) needs det A != 0')
    return M.trace * M.trace / det


def _preserving_tag(M):
    c = c_invariant(M)
    if not is_real(c):
        return H3Class.LOXODROMIC
    value = QQ.convert(c.x)
    if value < 0:
        return H3Class.STRETCH_HALF_TURN
    if value > 4:
        return H3Class.STRETCH
    if value == 0:
        return H3Class.HALF_TURN
    if value < 4:
        return H3Class.ONE_ROTATORY_ELLIPTIC
    return H3Class.IDENTITY if M.is_scalar() else H3Class.TRANSLATION


def square_of_reversing(M):
    """Matrix of f o f for a reversing f, namely A conj(A)."""
    product = M @ M.conjugate_entries()
    return product.with_orientation(Orientation.PRESERVING)


def _normalizer(M):
    """u with u*A = [[a', b'], [c', -conj(a')]] and b', c' real; None when b = c = 0."""
    if not is_zero(M.c):
        return conj(M.c)
    if not is_zero(M.b):
        return conj(M.b)
    return None


def _reversing_tag(M):
    B = square_of_reversing(M)
    if B.is_scalar():
        u = _normalizer(M)
        if u is None:
            # f(z) = (a/d) conj(z) with |a/d| = 1
            return H3Class.INVERSION_IN_CIRCLE
        normal = M.scaled(u)
        if conj(normal.a) != -normal.d:
            raise DiagnosticError('normalized matrix does not have the form [[a, b], [c, -conj(a)]]')
        det = normal.det
        if not is_real(det):
            raise DiagnosticError('det(uA) is not real after normalization')
        value = QQ.convert(det.x)
        if value == 0:
            raise DiagnosticError('det(uA) vanished')
        return H3Class.INVERSION_IN_CIRCLE if value < 0 else H3Class.ANTIPODAL

    cb = c_invariant(B)
    if not is_real(cb) or cb.x < 0:
        raise DiagnosticError(f"c(B) = {format_gaussian(cb)} is not a non-negative real number")
    value = QQ.convert(cb.x)
    if value < 4:
        return H3Class.ONE_ROTATORY_ELLIPTIC_INVERSION
    if value > 4:
        return H3Class.ZERO_ROTATORY_HYPERBOLIC_INVERSION
    return H3Class.ZERO_ROTATORY_PARABOLIC_INVERSION


def classify_h3(M):
    if is_zero(M.det):
        raise SingularMatrix('classification needs det A != 0')
    tag = _reversing_tag(M) if M.is_reversing else _preserving_tag(M)
    log.debug("Moebius map %s classified as %s", M.to_json(), tag.value)
    return tag


# --- H^2 ---

def h2_model(M):
    """'half-plane' for real matrices, 'disk' for SU(1,1) shape; NotAnH2Element otherwise."""
    det = M.det
    if is_zero(det):
        raise SingularMatrix('matrix is singular')
    positive = QQ.convert(det.x) > 0
    if M.is_all_real() and positive != M.is_reversing:
        return 'half-plane'
    if M.b == conj(M.c) and M.d == conj(M.a) and positive:
        return 'disk'
    if M.is_all_real():
        raise NotAnH2Element('real matrices need det > 0 to preserve and det < 0 to reverse orientation')
    raise NotAnH2Element('matrix is neither real nor of the form [[a, conj(c)], [c, conj(a)]]')


def half_plane_form(M):
    """Real matrix of the same map seen in the upper half-plane.

    A disk element [[a, conj(c)], [c, conj(a)]] is moved over by the Cayley map
    z -> (z - i)/(z + i). A reversing disk map w -> M(conj w) is first written
    as (M J)(conj z) with J = [[0, 1], [1, 0]], since conj of the Cayley map is
    its reciprocal.
    """
    if h2_model(M) == 'half-plane':
        return M
    alpha, gamma = (M.b, M.d) if M.is_reversing else (M.a, M.c)
    ra, ia = gaussian_parts(alpha)
    rc, ic = gaussian_parts(gamma)
    return Moebius2.of([[ra + rc, ia + ic], [ic - ia, ra - rc]], M.orientation)


def classify_h2(M):
    h2_model(M)
    if M.is_reversing:
        B = square_of_reversing(M)
        if B.is_scalar():
            return H3Class.INVERSION_IN_CIRCLE
        cb = c_invariant(B)
        if is_real(cb) and cb.x > 4:
            return H3Class.ZERO_ROTATORY_HYPERBOLIC_INVERSION
        raise DiagnosticError(f"reversing H^2 map with c(B) = {format_gaussian(cb)}")
    c = c_invariant(M)
    if not is_real(c) or c.x < 0:
        raise DiagnosticError(f"H^2 map with c(A) = {format_gaussian(c)}")
    value = QQ.convert(c.x)
    if value > 4:
        return H3Class.STRETCH
    if value < 4:
        return H3Class.ONE_ROTATORY_ELLIPTIC
    return H3Class.IDENTITY if M.is_scalar() else H3Class.TRANSLATION


# --- SPIN LIFT ---

def _exact_modulus(det):
    lo, hi = rational_sqrt_bounds(norm2(det))
    if lo != hi:
        raise NonRationalNormalization('|det A| is irrational; rescale A so |det A|^2 is a rational square')
    return lo


def _hermitian(x):
    x0, x1, x2, x3 = (to_gaussian(v) for v in x)
    return ((x0 + x3, x1 + x2 * G_I), (x1 - x2 * G_I, x0 - x3))


def _mul2(p, q):
    return tuple(tuple(sum((p[i][k] * q[k][j] for k in range(2)), G_ZERO) for j in range(2))
                 for i in range(2))


def _star(p):
    return tuple(tuple(conj(p[j][i]) for j in range(2)) for i in range(2))


def spin_lift(M):
    """4x4 matrix of H -> A H A* (or A H^T A*) / |det A| on Hermitian matrices."""
    det = M.det
    if is_zero(det):
        raise SingularMatrix('spin lift needs det A != 0')
    scale = _exact_modulus(det)
    A = M.rows
    columns = []
    for k in range(4):
        basis = [ZERO] * 4
        basis[k] = ONE
        H = _hermitian(basis)
        if M.is_reversing:
            H = tuple(tuple(H[j][i] for j in range(2)) for i in range(2))
        image = _mul2(_mul2(A, H), _star(A))
        h00, _ = gaussian_parts(image[0][0])
        h11, _ = gaussian_parts(image[1][1])
        re01, im01 = gaussian_parts(image[0][1])
        columns.append(((h00 + h11) / 2 / scale, re01 / scale, im01 / scale, (h00 - h11) / 2 / scale))
    matrix = QMatrix([[columns[j][i] for j in range(4)] for i in range(4)])
    return validate_isometry(matrix, LorentzForm(3))


def spin_lift_h2(M):
    """3x3 matrix of H -> M H M^T / |det M| on [[x0 + x2, x1], [x1, x0 - x2]].

    Disk-model input is moved to its real half-plane form first.
    """
    M = half_plane_form(M)
    (a, b), (c, d) = ((QQ.convert(z.x) for z in row) for row in M.rows)
    scale = abs(a * d - b * c)
    rows = [[a, b], [c, d]]
    columns = []
    for k in range(3):
        x = [ZERO] * 3
        x[k] = ONE
        H = [[x[0] + x[2], x[1]], [x[1], x[0] - x[2]]]
        MH = [[sum(rows[i][t] * H[t][j] for t in range(2)) for j in range(2)] for i in range(2)]
        image = [[sum(MH[i][t] * rows[j][t] for t in range(2)) for j in range(2)] for i in range(2)]
        columns.append(((image[0][0] + image[1][1]) / 2 / scale, image[0][1] / scale,
                        (image[0][0] - image[1][1]) / 2 / scale))
    matrix = QMatrix([[columns[j][i] for j in range(3)] for i in range(3)])
    return validate_isometry(matrix, LorentzForm(2))


def cross_check(M):
    """classify_h3(M) agrees with classify(spin_lift(M)) under the correspondence table."""
    tag = classify_h3(M)
    c = classify(spin_lift(M))
    agrees = (c.type.kind, c.type.inversion, c.k) == tag.expected_type()
    if not agrees:
        log.warning("cross-check mismatch for %s: %s vs %s", M.to_json(), tag.value, c.name)
    return agrees


def cross_check_h2(M):
    tag = classify_h2(M)
    c = classify(spin_lift_h2(M))
    return (c.type.kind, c.type.inversion, c.k) == tag.expected_type()


# --- SAMPLES ---

def _gaussian(sampler):
    return QQ_I(sampler.rational(), sampler.rational())


def _square_gaussian(sampler):
    """s * w^2 with s > 0 rational, so the modulus is rational."""
    while True:
        w = _gaussian(sampler)
        if not is_zero(w):
            return w * w * QQ_I(sampler.positive(), 0)


def _unit(sampler):
    """Gaussian rational of modulus 1 from a Pythagorean parameter."""
    t = sampler.rational()
    return QQ_I((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def _canonical(sampler, orientation):
    if orientation is Orientation.PRESERVING:
        choices = [
            lambda: ((_square_gaussian(sampler), G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((QQ_I(sampler.positive() + 1, 0), G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((QQ_I(-sampler.positive(), 0), G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((_unit(sampler), G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((-G_ONE, G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((G_ONE, G_ONE), (G_ZERO, G_ONE)),
            lambda: ((G_ONE, G_ZERO), (G_ZERO, G_ONE)),
        ]
    else:
        choices = [
            lambda: ((G_ZERO, G_ONE), (G_ONE, G_ZERO)),
            lambda: ((G_ZERO, -G_ONE), (G_ONE, G_ZERO)),
            lambda: ((QQ_I(sampler.positive() + 1, 0), G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((_unit(sampler), G_ZERO), (G_ZERO, G_ONE)),
            lambda: ((G_ONE, G_ONE), (G_ZERO, G_ONE)),
            lambda: ((G_ZERO, _unit(sampler)), (G_ONE, G_ZERO)),
            lambda: ((G_ZERO, G_I), (G_ONE, G_ZERO)),
        ]
    return Moebius2.of(sampler.choice(choices)(), orientation)


def _random_conjugator(sampler):
    while True:
        P = Moebius2.of([[_gaussian(sampler), _gaussian(sampler)],
                         [_gaussian(sampler), _gaussian(sampler)]])
        if not is_zero(P.det):
            return P


def random_moebius(seed, orientation=Orientation.PRESERVING):
    """Random map whose |det| is rational, so spin_lift applies."""
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    orientation = Orientation(orientation)
    if sampler.coin():
        # generic: pick a, b, c and a determinant s (p + qi)^2 of rational modulus
        while True:
            a, b, c = _gaussian(sampler), _gaussian(sampler), _gaussian(sampler)
            w = _gaussian(sampler)
            if is_zero(a) or is_zero(w):
                continue
            target = w * w * QQ_I(sampler.positive(), 0)
            return Moebius2(a, b, c, (target + b * c) / a, orientation)

    # conjugate of a normal form; reversing maps conjugate by P A conj(P)^-1
    N = _canonical(sampler, orientation)
    P = _random_conjugator(sampler)
    inner = P.conjugate_entries() if N.is_reversing else P
    A = P @ N @ inner.inverse_matrix()
    u = _gaussian(sampler)
    if is_zero(u):
        u = G_ONE
    return A.scaled(u).with_orientation(orientation)

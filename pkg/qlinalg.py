"""
Exact rational linear algebra over the Lorentzian form J = diag(1, -1, ..., -1).

Matrices are sympy DomainMatrix objects over QQ behind a small immutable wrapper,
so every membership test, polynomial and projection below is exact. The only
randomness lives in random_isometry, which draws integers from a numpy Generator.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

import config
from errors import (CayleySingular, DimensionMismatch, NotAnIsometry, NotOrthogonal,
                    ParseError, SingularMatrix, WrongComponent)
from polyring import RationalPolynomial
from rationals import ONE, ZERO, format_rational, parse_rational, to_float, to_qq

log = logging.getLogger(__name__)

RECIPES = ('semisimple-cayley', 'with-reflection', 'parabolic-block', 'block-sum')


# --- QMATRIX ---

class QMatrix:
    """Immutable square matrix with exact QQ entries."""

    __slots__ = ('_dm', '_rows')

    def __init__(self, rows):
        if isinstance(rows, DomainMatrix):
            # eye/zeros come back sparse; matmul refuses to mix formats
            dm = rows.convert_to(QQ).to_dense()
        else:
            rows = [[to_qq(x) for x in row] for row in rows]
            size = len(rows)
            if any(len(row) != size for row in rows):
                raise DimensionMismatch(f"matrix is not square ({size} rows)")
            dm = DomainMatrix(rows, (size, size), QQ)
        self._dm = dm
        self._rows = tuple(tuple(row) for row in dm.to_list())

    @classmethod
    def eye(cls, dim):
        return cls(DomainMatrix.eye(dim, QQ))

    @classmethod
    def zeros(cls, dim):
        return cls(DomainMatrix.zeros((dim, dim), QQ))

    @classmethod
    def diag(cls, entries):
        entries = [to_qq(e) for e in entries]
        size = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(size)] for i in range(size)])

    @classmethod
    def block_diag(cls, *blocks):
        size = sum(b.dim for b in blocks)
        rows = [[ZERO] * size for _ in range(size)]
        offset = 0
        for block in blocks:
            for i, row in enumerate(block.rows):
                rows[offset + i][offset:offset + block.dim] = row
            offset += block.dim
        return cls(rows)

    @classmethod
    def outer(cls, u, v):
        return cls([[a * b for b in v] for a in u])

    # --- views ---

    @property
    def dm(self):
        return self._dm

    @property
    def rows(self):
        return self._rows

    @property
    def dim(self):
        return len(self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def column(self, j):
        return tuple(row[j] for row in self._rows)

    def apply(self, vector):
        return tuple(sum((a * x for a, x in zip(row, vector)), ZERO) for row in self._rows)

    def trace(self):
        return sum((self._rows[i][i] for i in range(self.dim)), ZERO)

    def is_zero(self):
        return all(x == 0 for row in self._rows for x in row)

    def is_identity(self):
        return self == QMatrix.eye(self.dim)

    def to_json(self):
        return [[format_rational(x) for x in row] for row in self._rows]

    def to_numpy(self):
        return np.array([[to_float(x) for x in row] for row in self._rows], dtype=float)

    def __repr__(self):
        return f"QMatrix({self.to_json()})"

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    # --- arithmetic ---

    def __matmul__(self, other):
        return QMatrix(self._dm.matmul(other._dm))

    def __mul__(self, scalar):
        return QMatrix(self._dm * to_qq(scalar))

    __rmul__ = __mul__

    def __add__(self, other):
        return QMatrix(self._dm + other._dm)

    def __sub__(self, other):
        return QMatrix(self._dm - other._dm)

    def __neg__(self):
        return QMatrix(-self._dm)

    @property
    def T(self):
        return QMatrix(self._dm.transpose())

    def det(self):
        return self._dm.det()

    def inv(self):
        if self.det() == 0:
            raise SingularMatrix("matrix is singular")
        return QMatrix(self._dm.inv())

    def power(self, k):
        """Exact k-th power by repeated squaring."""
        result = QMatrix.eye(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rref(self):
        reduced, pivots = self._dm.rref()
        return [list(row) for row in reduced.to_list()], tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Basis of the right kernel, one tuple per vector."""
        reduced, pivots = self.rref()
        size = self.dim
        basis = []
        for free in (j for j in range(size) if j not in pivots):
            vector = [ZERO] * size
            vector[free] = ONE
            for i, p in enumerate(pivots):
                vector[p] = -reduced[i][free]
            basis.append(tuple(vector))
        return basis

    def column_space(self):
        _, pivots = self.rref()
        return [self.column(j) for j in pivots]

    def evaluate(self, p):
        """p(M) by Horner's rule."""
        size = self.dim
        acc = QMatrix.zeros(size)
        eye = QMatrix.eye(size)
        for c in reversed(p.coefficients):
            acc = acc @ self + eye * c
        return acc


def columns_to_matrix(vectors):
    """Matrix whose columns are the given vectors."""
    size = len(vectors)
    return QMatrix([[vectors[j][i] for j in range(size)] for i in range(size)])


# --- LORENTZ FORM AND ISOMETRIES ---

@dataclass(frozen=True)
class LorentzForm:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DimensionMismatch(f"hyperbolic space dimension must be at least 2, got {self.n}")

    @property
    def dim(self):
        return self.n + 1

    @cached_property
    def gram(self):
        return QMatrix.diag([ONE] + [-ONE] * self.n)

    def inner(self, u, v):
        return u[0] * v[0] - sum((a * b for a, b in zip(u[1:], v[1:])), ZERO)

    def quadratic(self, v):
        return self.inner(v, v)

    @classmethod
    def for_matrix(cls, matrix):
        return cls(matrix.dim - 1)


@dataclass(frozen=True)
class IsometryElement:
    """A validated element of I(Q); construct through validate_isometry."""

    matrix: QMatrix
    form: LorentzForm
    orientation: int
    component_preserving: bool = True

    @property
    def n(self):
        return self.form.n

    @property
    def dim(self):
        return self.form.dim

    @cached_property
    def char(self):
        return char_poly(self)

    @cached_property
    def min(self):
        return min_poly(self)

    def to_json(self):
        return self.matrix.to_json()


def validate_isometry(matrix, form=None):
    if not isinstance(matrix, QMatrix):
        matrix = QMatrix(matrix)
    if form is None:
        if matrix.dim < 3:
            raise DimensionMismatch(f"expected a matrix of size at least 3, got {matrix.dim}")
        form = LorentzForm.for_matrix(matrix)
    if matrix.dim != form.dim:
        raise DimensionMismatch(f"matrix has size {matrix.dim}, form needs {form.dim}")

    gram = form.gram
    pulled = matrix.T @ gram @ matrix
    if pulled != gram:
        i, j = next((i, j) for i in range(form.dim) for j in range(form.dim)
                    if pulled[i, j] != gram[i, j])
        raise NotOrthogonal(
            f"M^T J M differs from J at entry ({i}, {j}): {format_rational(pulled[i, j])}",
            row=i, column=j)
    if matrix[0, 0] <= 0:
        raise WrongComponent("matrix exchanges the two sheets of the hyperboloid",
                             row=0, column=0, entry=format_rational(matrix[0, 0]))
    det = matrix.det()
    if det not in (ONE, -ONE):
        raise NotAnIsometry(f"determinant {format_rational(det)} is not +1 or -1",
                            determinant=format_rational(det))
    return IsometryElement(matrix=matrix, form=form, orientation=1 if det == ONE else -1)


def identity(n):
    return validate_isometry(QMatrix.eye(n + 1))


def conjugate(T, P):
    """P T P^-1 for isometries of the same dimension."""
    if T.dim != P.dim:
        raise DimensionMismatch(f"cannot conjugate size {T.dim} by size {P.dim}")
    return validate_isometry(P.matrix @ T.matrix @ P.matrix.inv(), T.form)


# --- POLYNOMIALS OF AN ELEMENT ---

def faddeev_leverrier(matrix):
    """Characteristic polynomial via the trace recursion; integer divisions only."""
    size = matrix.dim
    coeffs = [ZERO] * (size + 1)
    coeffs[size] = ONE
    eye = QMatrix.eye(size)
    acc = QMatrix.zeros(size)
    for k in range(1, size + 1):
        acc = matrix @ acc + eye * coeffs[size - k + 1]
        coeffs[size - k] = -(matrix @ acc).trace() / k
    return RationalPolynomial(tuple(coeffs))


def char_poly(T):
    return faddeev_leverrier(T.matrix)


def min_poly(T):
    """Lower each irreducible factor's exponent while the product still annihilates T."""
    factors = [[f, k] for f, k in T.char.factor()]

    def product():
        out = RationalPolynomial((ONE,))
        for f, k in factors:
            out = out * f ** k
        return out

    for entry in factors:
        while entry[1] > 1:
            entry[1] -= 1
            if not T.matrix.evaluate(product()).is_zero():
                entry[1] += 1
                break
    result = product()
    log.debug("minimal polynomial %s (char %s)", result, T.char)
    return result


def kernel_rank(T, p):
    """dim ker p(T)."""
    return T.dim - T.matrix.evaluate(p).rank()


def power_trace(T, k):
    return T.matrix.power(k).trace()


def jordan_chevalley(T):
    """(T_s, T_u) with T = T_s T_u: T_s is I on the generalized 1-eigenspace, T_u is I off it."""
    size = T.dim
    eye = QMatrix.eye(size)
    nilpart = (T.matrix - eye).power(size)
    fixed = nilpart.nullspace()
    moving = nilpart.column_space()
    if not fixed:
        return T, identity(T.n)
    if not moving:
        return identity(T.n), T

    basis = columns_to_matrix(fixed + moving)
    selector = QMatrix.diag([ONE] * len(fixed) + [ZERO] * len(moving))
    projection = basis @ selector @ basis.inv()
    complement = eye - projection

    semisimple = validate_isometry(projection + T.matrix @ complement, T.form)
    unipotent = validate_isometry(T.matrix @ projection + complement, T.form)
    return semisimple, unipotent


# --- MATRIX TEXT FORMAT ---

def parse_matrix_text(text):
    """First line: size; then one whitespace-separated row per line. '#' starts a comment line."""
    lines = [(number, line) for number, line in enumerate(text.splitlines(), start=1)
             if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        raise ParseError("empty matrix input", line=1, column=1)

    number, header = lines[0]
    try:
        size = int(header.strip())
    except ValueError:
        raise ParseError(f"expected the matrix size, got {header.strip()!r}",
                         line=number, column=_column_of(header, header.split()[0]))
    if size < 1:
        raise ParseError(f"matrix size must be positive, got {size}", line=number, column=1)

    body = lines[1:]
    if len(body) != size:
        where = body[size][0] if len(body) > size else (body[-1][0] + 1 if body else number + 1)
        raise ParseError(f"expected {size} rows, found {len(body)}", line=where, column=1,
                         expected=size, found=len(body))

    rows = []
    for number, line in body:
        tokens = line.split()
        if len(tokens) != size:
            raise ParseError(f"expected {size} entries, found {len(tokens)}",
                             line=number, column=1, expected=size, found=len(tokens))
        row = []
        offset = 0
        for token in tokens:
            offset = line.index(token, offset)
            try:
                row.append(parse_rational(token))
            except ValueError:
                raise ParseError(f"not a rational entry: {token!r}", line=number, column=offset + 1,
                                 entry=token)
            offset += len(token)
        rows.append(row)
    return QMatrix(rows)


def _column_of(line, token):
    return line.index(token) + 1


def format_matrix_text(matrix):
    lines = [str(matrix.dim)]
    lines.extend(' '.join(format_rational(x) for x in row) for row in matrix.rows)
    return '\n'.join(lines) + '\n'


# --- CONSTRUCTIONS ---

# lift of z -> z + 1 to SO_0(2,1)
UNIT_TRANSLATION_BLOCK = QMatrix([
    [QQ(3, 2), ONE, QQ(-1, 2)],
    [ONE, ONE, -ONE],
    [QQ(1, 2), ONE, QQ(1, 2)],
])


def cayley_transform(S):
    """(I - S)(I + S)^-1."""
    eye = QMatrix.eye(S.dim)
    try:
        inverse = (eye + S).inv()
    except SingularMatrix:
        raise CayleySingular("I + S is singular")
    return (eye - S) @ inverse


def j_reflection(v, form):
    """x -> x - 2 B(x, v) / Q(v) v for a space-like v."""
    v = tuple(to_qq(x) for x in v)
    qv = form.quadratic(v)
    if qv >= 0:
        raise NotAnIsometry("reflection vector must be space-like")
    jv = form.gram.apply(v)
    matrix = QMatrix.eye(form.dim) - QMatrix.outer(v, jv) * (QQ(2) / qv)
    return validate_isometry(matrix, form)


def boost_block(rho):
    """2x2 block with eigenvalues rho and 1/rho."""
    rho = to_qq(rho)
    ch = (rho + 1 / rho) / 2
    sh = (rho - 1 / rho) / 2
    return QMatrix([[ch, sh], [sh, ch]])


def rotation_block(cos, sin):
    cos, sin = to_qq(cos), to_qq(sin)
    if cos * cos + sin * sin != 1:
        raise NotOrthogonal("rotation block needs cos^2 + sin^2 = 1")
    return QMatrix([[cos, -sin], [sin, cos]])


def pythagorean_rotation(t):
    """Rotation block with cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2)."""
    t = to_qq(t)
    return rotation_block((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def block_isometry(n, boost=None, parabolic=False, rotations=(), minus=0):
    """Block-diagonal isometry: time block, rotation blocks, then +1 and -1 entries.

    The time block is the boost block for `boost` (a rational > 1), the unit
    translation block when `parabolic`, else a single 1. `rotations` holds
    rotation blocks or (cos, sin) pairs. Leftover coordinates are +1.
    """
    if boost is not None and parabolic:
        raise DimensionMismatch("an element cannot carry both a boost and a parabolic block")
    if boost is not None:
        head = boost_block(boost)
    elif parabolic:
        head = UNIT_TRANSLATION_BLOCK
    else:
        head = QMatrix.eye(1)
    blocks = [head]
    for r in rotations:
        blocks.append(r if isinstance(r, QMatrix) else rotation_block(*r))
    used = sum(b.dim for b in blocks) + minus
    if used > n + 1:
        raise DimensionMismatch(f"blocks need dimension {used}, have {n + 1}")
    tail = [ONE] * (n + 1 - used) + [-ONE] * minus
    if tail:
        blocks.append(QMatrix.diag(tail))
    return validate_isometry(QMatrix.block_diag(*blocks), LorentzForm(n))


class RationalSampler:
    """Draws bounded rationals from a seeded numpy Generator."""

    def __init__(self, seed, bound=None):
        self.rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        self.bound = bound or config.ENTRY_BOUND

    def integer(self, low, high):
        return int(self.rng.integers(low, high + 1))

    def rational(self):
        return QQ(self.integer(-self.bound, self.bound), self.integer(1, self.bound))

    def positive(self):
        return QQ(self.integer(1, self.bound), self.integer(1, self.bound))

    def choice(self, items):
        return items[self.integer(0, len(items) - 1)]

    def coin(self):
        return self.integer(0, 1) == 1


def random_cayley(sampler, form):
    """Random det +1 element of the identity component via the Cayley transform of a J-skew matrix."""
    size = form.dim
    while True:
        entries = [[ZERO] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                value = sampler.rational()
                entries[i][j] = value
                entries[j][i] = -value
        skew = form.gram @ QMatrix(entries)
        try:
            matrix = cayley_transform(skew)
            return validate_isometry(matrix, form)
        except CayleySingular:
            log.warning("singular Cayley draw, resampling")
        except WrongComponent:
            log.debug("Cayley draw left the identity component, resampling")


def random_space_like(sampler, form):
    while True:
        v = tuple(sampler.rational() for _ in range(form.dim))
        if form.quadratic(v) < 0:
            return v


def random_rotation(sampler):
    return pythagorean_rotation(sampler.positive())


def _random_block_element(sampler, n):
    kind = sampler.choice(('elliptic', 'hyperbolic', 'parabolic'))
    head = {'elliptic': 1, 'hyperbolic': 2, 'parabolic': 3}[kind]
    spare = n + 1 - head
    count = sampler.integer(0, spare // 2)
    rotations = []
    for _ in range(count):
        # repeat the previous angle now and then so r_j > 1 shows up
        if rotations and sampler.coin():
            rotations.append(rotations[-1])
        else:
            rotations.append(random_rotation(sampler))
    minus = sampler.integer(0, spare - 2 * count)
    boost = sampler.positive() + 1 if kind == 'hyperbolic' else None
    return block_isometry(n, boost=boost, parabolic=kind == 'parabolic',
                          rotations=rotations, minus=minus)


def random_isometry(seed, n, recipe='semisimple-cayley'):
    """Random element of I(Q) for tests and demos; `seed` may be an int or a numpy Generator."""
    if n < 2:
        raise DimensionMismatch(f"n must be at least 2, got {n}")
    if recipe not in RECIPES:
        raise ValueError(f"unknown recipe {recipe!r}, expected one of {', '.join(RECIPES)}")
    sampler = RationalSampler(seed)
    form = LorentzForm(n)

    if recipe == 'semisimple-cayley':
        return random_cayley(sampler, form)
    if recipe == 'with-reflection':
        base = random_cayley(sampler, form)
        mirror = j_reflection(random_space_like(sampler, form), form)
        return validate_isometry(base.matrix @ mirror.matrix, form)

    if recipe == 'parabolic-block':
        spare = n - 2
        rotations = [random_rotation(sampler) for _ in range(spare // 2)]
        minus = (spare % 2) if sampler.coin() else 0
        core = block_isometry(n, parabolic=True, rotations=rotations, minus=minus)
    else:
        core = _random_block_element(sampler, n)
    return conjugate(core, random_cayley(sampler, form))

"""
Exact univariate polynomial algebra over the rationals.

Carries the characteristic, minimal and reduced characteristic polynomials,
strips (x - 1) and (x + 1) factors, halves self-reciprocal polynomials with the
substitution y = x + 1/x, and isolates real roots with Sturm sequences so that
rotation angles and the boost eigenvalue can be reported with exact enclosures.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from sympy import Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

import config
from errors import MalformedSpectrum, NotSelfReciprocal, OddReducedDegree
from rationals import ONE, ZERO, format_rational, parse_rational, to_float, to_qq

log = logging.getLogger(__name__)

X = Symbol('x')


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial with QQ coefficients, lowest degree first."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = [to_qq(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    # --- constructors ---

    @classmethod
    def from_poly(cls, poly):
        coeffs = [QQ.from_sympy(c) for c in poly.all_coeffs()]
        return cls(tuple(reversed(coeffs)))

    @classmethod
    def from_roots(cls, roots):
        out = cls((ONE,))
        for root in roots:
            out = out * cls((-to_qq(root), ONE))
        return out

    @classmethod
    def from_json(cls, items):
        return cls(tuple(parse_rational(str(s)) for s in items))

    @classmethod
    def x_minus(cls, c):
        return cls((-to_qq(c), ONE))

    # --- views ---

    @property
    def poly(self):
        coeffs = list(reversed(self.coefficients)) or [ZERO]
        return Poly.from_list(coeffs, X, domain=QQ)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else ZERO

    @property
    def is_zero(self):
        return not self.coefficients

    @property
    def is_monic(self):
        return self.leading == 1

    def __getitem__(self, i):
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else ZERO

    def to_json(self):
        return [format_rational(c) for c in self.coefficients]

    def __str__(self):
        return str(self.poly.as_expr())

    # --- arithmetic ---

    def __add__(self, other):
        size = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial(tuple(self[i] + other[i] for i in range(size)))

    def __neg__(self):
        return RationalPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial((to_qq(other),))
        if self.is_zero or other.is_zero:
            return RationalPolynomial()
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = RationalPolynomial((ONE,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        quo, rem = self.poly.div(other.poly)
        return RationalPolynomial.from_poly(quo), RationalPolynomial.from_poly(rem)

    def divides(self, other):
        """True iff self divides other exactly."""
        return divmod(other, self)[1].is_zero

    def monic(self):
        lead = self.leading
        return RationalPolynomial(tuple(c / lead for c in self.coefficients))

    def derivative(self):
        return RationalPolynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def gcd(self, other):
        return RationalPolynomial.from_poly(self.poly.gcd(other.poly))

    def factor(self):
        """Monic irreducible rational factors with multiplicities, in a canonical order."""
        _, factors = self.poly.factor_list()
        out = [(RationalPolynomial.from_poly(f).monic(), k) for f, k in factors]
        return sorted(out, key=lambda fk: (fk[0].degree, fk[0].coefficients, fk[1]))

    def squarefree(self):
        """Pairwise coprime monic squarefree factors with multiplicities."""
        _, factors = self.poly.sqf_list()
        out = [(RationalPolynomial.from_poly(f).monic(), k) for f, k in factors]
        return sorted(out, key=lambda fk: (fk[1], fk[0].degree, fk[0].coefficients))


X_MINUS_ONE = RationalPolynomial.x_minus(1)
X_PLUS_ONE = RationalPolynomial.x_minus(-1)


# --- FACTOR EXTRACTION ---

@dataclass(frozen=True)
class ReducedFactorization:
    l: int
    m: int
    chi_o: RationalPolynomial

    @property
    def k_prime(self):
        return self.chi_o.degree // 2


def evaluate(p, x):
    """Exact Horner evaluation."""
    x = to_qq(x)
    acc = ZERO
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def _synthetic_division(p, c):
    """Divide p by (x - c); returns (quotient, remainder)."""
    coeffs = list(reversed(p.coefficients))
    out = []
    acc = ZERO
    for a in coeffs:
        acc = acc * c + a
        out.append(acc)
    remainder = out.pop()
    return RationalPolynomial(tuple(reversed(out))), remainder


def root_multiplicity_at(p, c):
    """Largest e with (x - c)^e dividing p."""
    c = to_qq(c)
    e = 0
    while p.degree > 0:
        quotient, remainder = _synthetic_division(p, c)
        if remainder != 0:
            break
        p = quotient
        e += 1
    return e


def _strip_root(p, c, times):
    for _ in range(times):
        p, _ = _synthetic_division(p, c)
    return p


def reduce(p):
    """Split p = (x-1)^l (x+1)^m chi_o with chi_o(1) != 0 and chi_o(-1) != 0."""
    l = root_multiplicity_at(p, ONE)
    m = root_multiplicity_at(p, -ONE)
    chi_o = _strip_root(_strip_root(p, ONE, l), -ONE, m)
    if chi_o.degree % 2:
        raise OddReducedDegree(
            f"reduced characteristic polynomial {chi_o} has odd degree {chi_o.degree}")
    return ReducedFactorization(l=l, m=m, chi_o=chi_o)


def is_self_reciprocal(p):
    return p.coefficients == tuple(reversed(p.coefficients))


def halve_self_reciprocal(p):
    """q of degree d with p(x) = x^d q(x + 1/x), for palindromic p of degree 2d."""
    if p.degree % 2 or not is_self_reciprocal(p):
        raise NotSelfReciprocal(f"{p} is not a self-reciprocal polynomial of even degree")
    d = p.degree // 2
    y = RationalPolynomial((ZERO, ONE))
    # power sums x^j + x^-j as polynomials in y
    sums = [RationalPolynomial((QQ(2),)), y]
    for _ in range(2, d + 1):
        sums.append(y * sums[-1] - sums[-2])
    q = RationalPolynomial((p[d],))
    for j in range(1, d + 1):
        q = q + sums[j] * p[d + j]
    return q


def unhalve(q):
    """x^d q(x + 1/x) for q of degree d; inverse of halve_self_reciprocal."""
    d = q.degree
    x_squared_plus_one = RationalPolynomial((ONE, ZERO, ONE))
    out = RationalPolynomial()
    for j, c in enumerate(q.coefficients):
        monomial = RationalPolynomial((ZERO,) * (d - j) + (c,))
        out = out + x_squared_plus_one ** j * monomial
    return out


# --- REAL ROOT ISOLATION ---

def sturm_sequence(p):
    """p, p', then negated remainders until the remainder vanishes."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        _, remainder = divmod(seq[-2], seq[-1])
        if remainder.is_zero:
            break
        seq.append(-remainder)
    return seq


def _sign_changes(values):
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def sturm_count(seq, a, b):
    """Number of distinct real roots in (a, b]."""
    va = _sign_changes([evaluate(s, a) for s in seq])
    vb = _sign_changes([evaluate(s, b) for s in seq])
    return va - vb


def _cauchy_bound(p):
    lead = abs(p.leading)
    return ONE + max((abs(c) / lead for c in p.coefficients[:-1]), default=ZERO)


def count_roots_above(p, c):
    """Distinct real roots of p greater than c."""
    c = to_qq(c)
    total = 0
    for f, _ in p.squarefree():
        if f.degree < 1:
            continue
        bound = max(_cauchy_bound(f), abs(c) + 1)
        total += sturm_count(sturm_sequence(f), c, bound)
    return total


@dataclass(frozen=True)
class RootInterval:
    """A real root of `factor` inside (lo, hi]; lo == hi marks an exact rational root."""

    lo: object
    hi: object
    multiplicity: int
    factor: RationalPolynomial

    @property
    def is_exact(self):
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def to_float(self):
        return to_float(self.midpoint())

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]


def _refine_once(root, seq):
    """Halve the isolating interval of a simple root of root.factor."""
    if root.is_exact:
        return root
    mid = root.midpoint()
    if evaluate(root.factor, mid) == 0:
        return RootInterval(mid, mid, root.multiplicity, root.factor)
    if sturm_count(seq, root.lo, mid) == 1:
        return RootInterval(root.lo, mid, root.multiplicity, root.factor)
    return RootInterval(mid, root.hi, root.multiplicity, root.factor)


def _isolate_squarefree(f, multiplicity):
    if f.degree == 1:
        root = -f[0] / f[1]
        return [RootInterval(root, root, multiplicity, f)]
    seq = sturm_sequence(f)
    bound = _cauchy_bound(f)
    found = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        count = sturm_count(seq, a, b)
        if count == 0:
            continue
        if count == 1:
            if evaluate(f, b) == 0:
                found.append(RootInterval(b, b, multiplicity, f))
            else:
                found.append(RootInterval(a, b, multiplicity, f))
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    return found


def refine(root, width):
    seq = sturm_sequence(root.factor)
    while not root.is_exact and root.width >= width:
        root = _refine_once(root, seq)
    return root


def _overlap(r1, r2):
    return r1.lo <= r2.hi and r2.lo <= r1.hi and not (r1.hi == r2.lo and not r1.is_exact and not r2.is_exact)


def isolate_real_roots(q, bits=None):
    """Disjoint isolating intervals of the real roots of q with exact multiplicities.

    Roots are isolated per irreducible factor, so every rational root sits in a
    linear factor and comes back as an exact (q, q) interval.
    """
    bits = config.REFINE_BITS if bits is None else bits
    width = QQ(1, 2 ** bits)
    roots = []
    for f, k in q.factor():
        if f.degree >= 1:
            roots.extend(_isolate_squarefree(f, k))
    # separate roots of different irreducible factors
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: (r.lo, r.hi))
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if _overlap(a, b):
                wider = i if a.width >= b.width else i + 1
                roots[wider] = _refine_once(roots[wider], sturm_sequence(roots[wider].factor))
                changed = True
                break
    roots = [refine(r, width) for r in roots]
    log.debug("isolated %d real roots of %s", len(roots), q)
    return sorted(roots, key=lambda r: (r.lo, r.hi))


def rational_sqrt_bounds(v, bits=None):
    """Rational (lo, hi) with lo <= sqrt(v) <= hi; exact when v is a rational square."""
    bits = config.REFINE_BITS if bits is None else bits
    if v < 0:
        raise ValueError('negative input')
    num, den = int(QQ.numer(v)), int(QQ.denom(v))
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        exact = QQ(rn, rd)
        return exact, exact
    scale = 4 ** bits
    s = math.isqrt(num * den * scale)
    return QQ(s, den * 2 ** bits), QQ(s + 1, den * 2 ** bits)


# --- SPECTRUM OF THE REDUCED CHARACTERISTIC POLYNOMIAL ---

@dataclass(frozen=True)
class AngleRoot:
    theta: float
    cos_interval: tuple
    multiplicity: int
    factor: RationalPolynomial

    def to_json(self):
        return {
            'cos_interval': [format_rational(c) for c in self.cos_interval],
            'mult': self.multiplicity,
            'theta_float': float(format(self.theta, '.12g')),
        }


@dataclass(frozen=True)
class BoostRoot:
    value: float
    interval: tuple
    factor: RationalPolynomial
    multiplicity: int = 1

    def to_json(self):
        return {
            'interval': [format_rational(c) for c in self.interval],
            'r_float': float(format(self.value, '.12g')),
        }


@dataclass(frozen=True)
class ReducedSpectrum:
    boost: Optional[BoostRoot]
    angles: tuple

    @property
    def k_prime(self):
        return sum(a.multiplicity for a in self.angles) + (1 if self.boost else 0)

    @property
    def rotation_multiplicities(self):
        return tuple(sorted((a.multiplicity for a in self.angles), reverse=True))

    def key(self):
        """Exact halved irreducible factors with multiplicities."""
        items = [(a.factor.coefficients, a.multiplicity) for a in self.angles]
        if self.boost:
            items.append((self.boost.factor.coefficients, self.boost.multiplicity))
        return tuple(sorted(set(items)))


def _separate_from(root, point, seq):
    while not root.is_exact and root.lo < point < root.hi:
        root = _refine_once(root, seq)
    return root


def spectrum_from_reduced(chi_o, bits=None):
    """Rotation angles and boost eigenvalue encoded by chi_o."""
    two = QQ(2)
    if evaluate(chi_o, ONE) == 0 or evaluate(chi_o, -ONE) == 0:
        raise MalformedSpectrum(f"{chi_o} still has a root at 1 or -1")
    q = halve_self_reciprocal(chi_o)
    roots = isolate_real_roots(q, bits)
    if sum(r.multiplicity for r in roots) != q.degree:
        raise MalformedSpectrum(f"{q} has non-real roots; not a Lorentz spectrum")

    boost = None
    angles = []
    for root in roots:
        seq = sturm_sequence(root.factor)
        root = _separate_from(_separate_from(root, two, seq), -two, seq)
        if root.lo >= two:
            if root.multiplicity != 1 or boost is not None:
                raise MalformedSpectrum(f"boost root of {chi_o} is not simple")
            boost = _boost_from(root, bits)
        elif root.hi <= -two:
            raise MalformedSpectrum(f"{chi_o} has a negative real eigenvalue other than -1")
        else:
            cos_lo, cos_hi = root.lo / two, root.hi / two
            theta = math.acos(max(-1.0, min(1.0, to_float((cos_lo + cos_hi) / two))))
            angles.append(AngleRoot(theta, (cos_lo, cos_hi), root.multiplicity, root.factor))

    angles.sort(key=lambda a: -a.cos_interval[0])
    return ReducedSpectrum(boost=boost, angles=tuple(angles))


def _boost_from(root, bits):
    """r = (y + sqrt(y^2 - 4)) / 2 is increasing in y, so the y enclosure maps over."""
    four = QQ(4)
    lo_sqrt, _ = rational_sqrt_bounds(root.lo * root.lo - four, bits)
    _, hi_sqrt = rational_sqrt_bounds(root.hi * root.hi - four, bits)
    lo = (root.lo + lo_sqrt) / 2
    hi = (root.hi + hi_sqrt) / 2
    y = root.to_float()
    value = (y + math.sqrt(max(0.0, y * y - 4.0))) / 2.0
    return BoostRoot(value=value, interval=(lo, hi), factor=root.factor)


def newton_power_sums(char, k_max):
    """Power sums p_1..p_k_max of the roots of a monic polynomial.

    With char = x^N - a_1 x^(N-1) + a_2 x^(N-2) - ... , p_k for k <= N is the
    determinant of the lower Hessenberg matrix built from the a_i; beyond N
    the linear recurrence p_k = a_1 p_(k-1) - a_2 p_(k-2) + ... takes over.
    """
    N = char.degree
    a = [ONE] + [(-1) ** i * char[N - i] for i in range(1, N + 1)]
    sums = []
    for k in range(1, k_max + 1):
        if k <= N:
            rows = []
            for i in range(1, k + 1):
                row = [ZERO] * k
                row[0] = i * a[i]
                for j in range(1, i):
                    row[j] = a[i - j]
                if i < k:
                    row[i] = ONE
                rows.append(row)
            sums.append(DomainMatrix(rows, (k, k), QQ).det())
        else:
            total = ZERO
            for i in range(1, N + 1):
                total += (-1) ** (i - 1) * a[i] * sums[k - i - 1]
            sums.append(total)
    return sums


__all__ = [
    'X', 'RationalPolynomial', 'ReducedFactorization', 'ReducedSpectrum', 'AngleRoot',
    'BoostRoot', 'RootInterval', 'X_MINUS_ONE', 'X_PLUS_ONE', 'evaluate', 'root_multiplicity_at',
    'reduce', 'halve_self_reciprocal', 'unhalve', 'is_self_reciprocal', 'sturm_sequence', 'sturm_count',
    'isolate_real_roots', 'count_roots_above', 'refine', 'rational_sqrt_bounds', 'spectrum_from_reduced',
    'newton_power_sums',
]

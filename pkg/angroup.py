"""
The solvable group AN acting simply transitively on H^n.

An element (a, r) is the map x -> r x + a on the upper half-space, where a is a
translation in the boundary directions and r > 0 a dilation. Points of H^n and
elements of AN are identified through the base point (0, ..., 0, 1).
"""

import logging
from dataclasses import dataclass
from enum import Enum

from sympy.polys.domains import QQ

from errors import DiagnosticError, DimensionMismatch, ParseError
from rationals import ONE, ZERO, format_rational, parse_rational, to_qq

log = logging.getLogger(__name__)


class ANClass(str, Enum):
    IDENTITY = 'Identity'
    DILATION = 'DilationClass'
    TRANSLATION = 'TranslationClass'


@dataclass(frozen=True)
class ANElement:
    a: tuple
    r: object

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(to_qq(x) for x in self.a))
        object.__setattr__(self, 'r', to_qq(self.r))
        if self.r <= 0:
            raise ValueError('dilation factor must be positive')

    @property
    def dim(self):
        """n - 1, the number of translation coordinates."""
        return len(self.a)

    @property
    def is_identity(self):
        return self.r == 1 and not any(self.a)

    def apply(self, point):
        *x, height = point
        return tuple(self.r * xi + ai for xi, ai in zip(x, self.a)) + (self.r * height,)

    def to_json(self):
        return {'a': [format_rational(x) for x in self.a], 'r': format_rational(self.r)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(tuple(parse_rational(str(x)) for x in data['a']), parse_rational(str(data['r'])))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"expected {{\"a\": [...], \"r\": ...}}: {exc}")
        except ValueError as exc:
            raise ParseError(str(exc))


def identity(dim):
    return ANElement((ZERO,) * dim, ONE)


def translation(a):
    return ANElement(tuple(a), ONE)


def dilation(r, dim):
    return ANElement((ZERO,) * dim, r)


def compose(e1, e2):
    """e1 after e2."""
    if e1.dim != e2.dim:
        raise DimensionMismatch(f"AN elements with {e1.dim} and {e2.dim} translation coordinates")
    return ANElement(tuple(a1 + e1.r * a2 for a1, a2 in zip(e1.a, e2.a)), e1.r * e2.r)


def inverse(e):
    return ANElement(tuple(-x / e.r for x in e.a), ONE / e.r)


def conjugate_by(h, e):
    """h e h^-1."""
    return compose(h, compose(e, inverse(h)))


@dataclass(frozen=True)
class Representative:
    element: ANElement
    witness: tuple = None

    def to_json(self):
        data = {'representative': self.element.to_json()}
        if self.witness is not None:
            data['witness'] = [format_rational(x) for x in self.witness]
        return data


def conjugacy_representative(e):
    """Canonical element of the conjugacy class of e, with the witness x0 when r != 1."""
    if e.r != 1:
        factor = ONE / (e.r - 1)
        x0 = tuple(-factor * x for x in e.a)
        g = translation(x0)
        canonical = dilation(e.r, e.dim)
        if compose(inverse(g), compose(e, g)) != canonical:
            raise DiagnosticError('conjugation witness failed to verify')
        return Representative(canonical, x0)
    if e.is_identity:
        return Representative(e)
    # first coordinate of largest absolute value
    pivot = max(range(e.dim), key=lambda i: (abs(e.a[i]), -i))
    scale = ONE / abs(e.a[pivot])
    return Representative(translation(tuple(scale * x for x in e.a)))


def zclass_of(e):
    if e.is_identity:
        return ANClass.IDENTITY
    if e.r != 1:
        return ANClass.DILATION
    return ANClass.TRANSLATION


def are_conjugate(e1, e2):
    if e1.dim != e2.dim:
        raise DimensionMismatch(f"AN elements with {e1.dim} and {e2.dim} translation coordinates")
    return conjugacy_representative(e1).element == conjugacy_representative(e2).element


def random_element(sampler, dim, kind=None):
    """Random element; kind 'translation' or 'dilation' pins r."""
    a = tuple(sampler.rational() for _ in range(dim))
    if kind == 'translation':
        return translation(a)
    r = sampler.positive()
    if kind == 'dilation' and r == 1:
        r = QQ(2)
    return ANElement(a, r)

"""
Exact scalar helpers.
RationalScalar is a sympy QQ element (gmpy mpq or PythonMPQ, always in lowest terms
with a positive denominator); GaussianRational is a QQ_I element.
"""

import re

from sympy import Rational
from sympy.polys.domains import QQ, QQ_I

RationalScalar = QQ.dtype
GaussianRational = QQ_I.dtype

_FRACTION_RE = re.compile(r'^[+-]?\d+(/\d+)?$')
_DECIMAL_RE = re.compile(r'^[+-]?(\d+\.\d*|\d*\.\d+)$')

ZERO = QQ(0)
ONE = QQ(1)


def to_qq(value):
    """Coerce int, str, sympy Rational or a QQ element to a QQ element."""
    if isinstance(value, RationalScalar):
        return value
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return parse_rational(value)
    return QQ.from_sympy(Rational(value))


def parse_rational(text):
    """Parse "p/q", an integer or a finite decimal exactly. Raises ValueError."""
    token = text.strip()
    if _FRACTION_RE.match(token):
        if '/' in token:
            num, den = token.split('/')
            if int(den) == 0:
                raise ValueError(f"zero denominator in {text!r}")
            return QQ(int(num), int(den))
        return QQ(int(token))
    if _DECIMAL_RE.match(token):
        return QQ.from_sympy(Rational(token))
    raise ValueError(f"not a rational number: {text!r}")


def format_rational(q):
    num, den = int(QQ.numer(q)), int(QQ.denom(q))
    return str(num) if den == 1 else f"{num}/{den}"


def to_float(q):
    return int(QQ.numer(q)) / int(QQ.denom(q))


def sign(q):
    return (q > 0) - (q < 0)


def to_gaussian(re_part, im_part=0):
    return QQ_I(to_qq(re_part), to_qq(im_part))


def gaussian_parts(z):
    """(re, im) of a QQ_I element as QQ elements."""
    return QQ.convert(z.x), QQ.convert(z.y)


def format_gaussian(z):
    re_part, im_part = gaussian_parts(z)
    return [format_rational(re_part), format_rational(im_part)]

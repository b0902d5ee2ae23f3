"""
z-classes of I(Q): signatures, centralizer descriptors, genericity and the census.

A z-class is fixed by the type, the multiplicities l and m of the eigenvalues
1 and -1, and the partition formed by the rotation multiplicities r_j. The
angles themselves do not matter. l is always the algebraic multiplicity of the
eigenvalue 1, so a parabolic signature has l >= 3.
"""

import logging
from dataclasses import dataclass

from sympy.functions.combinatorial.numbers import partition
from sympy.utilities.iterables import partitions

from classifier import Kind, classify
from errors import DimensionMismatch, InvalidSignature

log = logging.getLogger(__name__)

_HEAD = {Kind.ELLIPTIC: 0, Kind.PARABOLIC: 0, Kind.HYPERBOLIC: 2}


@dataclass(frozen=True)
class ZClassSignature:
    kind: Kind
    l: int
    m: int
    partition: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'kind', Kind(self.kind))
        object.__setattr__(self, 'partition', tuple(sorted(self.partition, reverse=True)))

    @property
    def size(self):
        """n + 1 for the space this signature lives in."""
        return _HEAD[self.kind] + self.l + self.m + 2 * sum(self.partition)

    @property
    def n(self):
        return self.size - 1

    @property
    def k(self):
        return sum(self.partition) + self.m // 2

    @property
    def inversion(self):
        return self.m % 2 == 1

    @property
    def reduced_l(self):
        """Parabolic classes are usually written with l' = l - 3."""
        return self.l - 3 if self.kind is Kind.PARABOLIC else self.l

    @property
    def name(self):
        label = f"{self.k}-rotatory {self.kind.value.lower()}"
        return label + ' inversion' if self.inversion else label

    def key(self):
        l, m = self.l, self.m
        if self.kind is Kind.HYPERBOLIC and l > m:
            l, m = m, l
        return (self.kind.value, l, m, self.partition)

    def normalized(self):
        _, l, m, partition = self.key()
        return ZClassSignature(self.kind, l, m, partition)

    def validate(self, n=None):
        if self.l < 0 or self.m < 0 or any(r < 1 for r in self.partition):
            raise InvalidSignature(f"negative multiplicity in {self}")
        if self.kind is Kind.ELLIPTIC and self.l < 1:
            raise InvalidSignature('elliptic signatures need l >= 1')
        if self.kind is Kind.PARABOLIC and self.l < 3:
            raise InvalidSignature('parabolic signatures need l >= 3')
        if n is not None and self.n != n:
            raise InvalidSignature(f"signature {self} describes n = {self.n}, not n = {n}")
        return self

    def to_json(self):
        return {
            'type': self.kind.value,
            'l': self.l,
            'm': self.m,
            'partition': list(self.partition),
            'name': self.name,
        }

    def __str__(self):
        parts = ','.join(str(r) for r in self.partition)
        return f"{self.kind.value}(l={self.l}, m={self.m}, {{{parts}}})"


def zclass_signature(T):
    c = classify(T)
    return ZClassSignature(c.type.kind, c.l, c.m, c.rotation_partition)


def same_zclass(T1, T2):
    if T1.dim != T2.dim:
        raise DimensionMismatch(f"elements of size {T1.dim} and {T2.dim}")
    return zclass_signature(T1).key() == zclass_signature(T2).key()


# --- CENTRALIZERS ---

@dataclass(frozen=True)
class CentralizerFactor:
    """One factor of Z(T): 'I' = I(1,d), 'O' = O(d), 'I0' = I_0(1,1), 'U' = U(r), 'P' = parabolic stabilizer."""

    family: str
    param: int

    @property
    def dim(self):
        d = self.param
        if self.family == 'O':
            return d * (d - 1) // 2
        if self.family == 'I':
            return (d + 1) * d // 2
        if self.family == 'U':
            return d * d
        if self.family == 'I0':
            return 1
        # R x (R^(d-2) semidirect O(d-2)); empty translation part when d <= 2
        t = max(d - 2, 0)
        return 1 + t + t * (t - 1) // 2

    @property
    def is_abelian(self):
        if self.family in ('O', 'U'):
            return self.param <= 1
        if self.family == 'I':
            return self.param <= 0
        if self.family == 'I0':
            return True
        return self.param <= 2

    def __str__(self):
        return {
            'I': f"I(1,{self.param})",
            'O': f"O({self.param})",
            'I0': 'I0(1,1)',
            'U': f"U({self.param})",
            'P': f"ParabolicStabilizer({self.param})",
        }[self.family]


@dataclass(frozen=True)
class CentralizerDescriptor:
    factors: tuple

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    def is_abelian(self):
        return all(f.is_abelian for f in self.factors)

    def is_abelian_reductive(self):
        """Abelian with no unipotent part; the genericity test for z-classes."""
        return self.is_abelian() and not any(f.family == 'P' for f in self.factors)

    def to_json(self):
        return {'factors': [str(f) for f in self.factors], 'dim': self.dim}

    def __str__(self):
        return ' x '.join(str(f) for f in self.factors)


def centralizer_descriptor(sig, n):
    sig.validate(n)
    unitary = [CentralizerFactor('U', r) for r in sig.partition]
    if sig.kind is Kind.ELLIPTIC:
        factors = [CentralizerFactor('I', sig.l - 1)]
        if sig.m:
            factors.append(CentralizerFactor('O', sig.m))
    elif sig.kind is Kind.HYPERBOLIC:
        factors = [CentralizerFactor('I0', 1), CentralizerFactor('O', sig.l),
                   CentralizerFactor('O', sig.m)]
    else:
        # dim (W + U_1) = n' + 1 = l
        factors = [CentralizerFactor('P', sig.l - 1)]
        if sig.m:
            factors.append(CentralizerFactor('O', sig.m))
    return CentralizerDescriptor(tuple(factors + unitary))


def generic_signatures(n):
    """Normalized keys of the generic z-classes for n."""
    half = n // 2
    if n % 2 == 0:
        listed = [ZClassSignature(Kind.ELLIPTIC, 1, 0, (1,) * half),
                  ZClassSignature(Kind.HYPERBOLIC, 0, 1, (1,) * (half - 1))]
    else:
        listed = [ZClassSignature(Kind.HYPERBOLIC, 0, 0, (1,) * half),
                  ZClassSignature(Kind.ELLIPTIC, 1, 1, (1,) * half),
                  ZClassSignature(Kind.HYPERBOLIC, 1, 1, (1,) * (half - 1))]
    return {s.key() for s in listed}


def is_generic(sig, n):
    sig.validate(n)
    return sig.key() in generic_signatures(n)


# --- CENSUS ---

def partition_p(u):
    """Number of partitions of u."""
    if u < 0:
        raise ValueError(f"partition_p needs u >= 0, got {u}")
    return int(partition(u))


@dataclass(frozen=True)
class CensusRow:
    n: int
    elliptic_count: int
    hyperbolic_count: int
    parabolic_count: int

    @property
    def total(self):
        return self.elliptic_count + self.hyperbolic_count + self.parabolic_count

    def to_json(self):
        return {'n': self.n, 'elliptic': self.elliptic_count, 'hyperbolic': self.hyperbolic_count,
                'parabolic': self.parabolic_count, 'total': self.total}


def count_zclasses(n):
    if n < 2:
        raise InvalidSignature(f"census needs n >= 2, got {n}")
    h = (n - 1) // 2
    elliptic = sum((n + 1 - 2 * j) * partition_p(j) for j in range(n // 2 + 1))
    hyperbolic = sum((h + 1 - j) * partition_p(j) for j in range(h + 1))
    parabolic = sum((n - 1 - 2 * j) * partition_p(j) for j in range((n - 2) // 2 + 1))
    return CensusRow(n, elliptic, hyperbolic, parabolic)


def _partitions_of(j):
    if j == 0:
        yield ()
        return
    for p in partitions(j):
        # sympy reuses the yielded dict
        yield tuple(sorted((part for part, count in p.items() for _ in range(count)), reverse=True))


def enumerate_zclasses(n):
    if n < 2:
        raise InvalidSignature(f"enumeration needs n >= 2, got {n}")
    size = n + 1
    found = []
    for j in range(size // 2 + 1):
        for partition in _partitions_of(j):
            rest = size - 2 * j
            found.extend(ZClassSignature(Kind.ELLIPTIC, l, rest - l, partition)
                         for l in range(1, rest + 1))
            found.extend(ZClassSignature(Kind.PARABOLIC, l, rest - l, partition)
                         for l in range(3, rest + 1))
            if rest >= 2:
                found.extend(ZClassSignature(Kind.HYPERBOLIC, l, rest - 2 - l, partition)
                             for l in range((rest - 2) // 2 + 1))
    found.sort(key=lambda s: (list(Kind).index(s.kind), sum(s.partition), s.partition, s.l))
    log.debug("enumerated %d z-classes for n=%d", len(found), n)
    return found


def census_by_enumeration(n):
    counts = {kind: 0 for kind in Kind}
    for sig in enumerate_zclasses(n):
        counts[sig.kind] += 1
    return CensusRow(n, counts[Kind.ELLIPTIC], counts[Kind.HYPERBOLIC], counts[Kind.PARABOLIC])


def signature_atlas(n):
    atlas = []
    for sig in enumerate_zclasses(n):
        descriptor = centralizer_descriptor(sig, n)
        entry = sig.to_json()
        entry['centralizer'] = descriptor.to_json()
        entry['generic'] = is_generic(sig, n)
        atlas.append(entry)
    return atlas

"""
Exception hierarchy shared by every module.
Each error carries a stable code and extra context so the CLI can emit a
machine-readable error object.
"""


class HyperIsoError(Exception):
    code = 'HyperIsoError'

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        data = {'type': self.code, 'message': self.message}
        data.update({k: v for k, v in self.context.items() if v is not None})
        return data


class ConfigError(HyperIsoError):
    code = 'ConfigError'


class ParseError(HyperIsoError):
    code = 'ParseError'

    def __init__(self, message, line=None, column=None, **context):
        super().__init__(message, line=line, column=column, **context)
        self.line = line
        self.column = column


class DimensionMismatch(HyperIsoError):
    code = 'DimensionMismatch'


class NotOrthogonal(HyperIsoError):
    code = 'NotOrthogonal'


class WrongComponent(HyperIsoError):
    code = 'WrongComponent'


class NotAnIsometry(HyperIsoError):
    code = 'NotAnIsometry'


class CayleySingular(HyperIsoError):
    code = 'CayleySingular'


class OddReducedDegree(HyperIsoError):
    code = 'OddReducedDegree'


class NotSelfReciprocal(HyperIsoError):
    code = 'NotSelfReciprocal'


class MalformedSpectrum(HyperIsoError):
    code = 'MalformedSpectrum'


class TaxonomyViolation(HyperIsoError):
    code = 'TaxonomyViolation'


class InvalidSignature(HyperIsoError):
    code = 'InvalidSignature'


class UnsupportedDimension(HyperIsoError):
    code = 'UnsupportedDimension'


class SingularMatrix(HyperIsoError):
    code = 'SingularMatrix'


class NotAnH2Element(HyperIsoError):
    code = 'NotAnH2Element'


class NonRationalNormalization(HyperIsoError):
    code = 'NonRationalNormalization'


class DiagnosticError(HyperIsoError):
    code = 'DiagnosticError'


class RangeError(HyperIsoError):
    code = 'RangeError'

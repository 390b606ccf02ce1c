"""Exception hierarchy shared by all engine modules.

Every error carries a machine-readable ``code`` used by the CLI when
serializing failures into a report.
"""


class ToricError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class InfiniteBasis(ToricError):
    code = "infinite_basis"


class NotArtinian(ToricError):
    code = "not_artinian"


class NotIntegral(ToricError):
    code = "not_integral"


class InconsistentCharacter(ToricError):
    code = "inconsistent_character"


class NotFull(ToricError):
    code = "not_full"


class ConstraintViolated(ToricError):
    code = "constraint_violated"


class Wild(ToricError):
    code = "wild"


class NoSolutionInField(ToricError):
    code = "no_solution_in_field"


class NotGraded(ToricError):
    code = "not_graded"


class ClosureFailure(ToricError):
    code = "closure_failure"


class FreenessRequired(ToricError):
    code = "freeness_required"


class BoundExceeded(ToricError):
    code = "bound_exceeded"


class InfiniteIndex(ToricError):
    code = "infinite_index"


class ZeroDenominator(ToricError):
    code = "zero_denominator"


class BaseMismatch(ToricError):
    code = "base_mismatch"


class NotPurelyToric(ToricError):
    code = "not_purely_toric"


class ParseError(ToricError):
    code = "parse_error"

    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc, line=line, column=column)
        self.line = line
        self.column = column


class ValidationError(ToricError):
    code = "validation_error"

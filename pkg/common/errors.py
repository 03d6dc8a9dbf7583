from typing import Optional


class SteinerSentryError(Exception):
    """
    Base error for the whole package.
    Every subclass carries a stable string `code` and the CLI `exit_code` it maps to,
    so callers can branch on the code instead of parsing messages.
    """
    code = "internal"
    exit_code = 2

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class GraphParseError(SteinerSentryError):
    """Raised by the graph reader. `line` is 1-based; 0 means 'whole file'."""
    code = "malformed"

    def __init__(self, message: str, line: int = 0, code: Optional[str] = None):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(f"{prefix}{message}", code)


class SteinerSetError(SteinerSentryError):
    code = "too_few_steiner"


class InvalidCutError(SteinerSentryError):
    code = "invalid_cut"


class EdgeNotFoundError(SteinerSentryError):
    code = "unknown_edge"
    exit_code = 3


class DeltaOutOfRangeError(SteinerSentryError):
    code = "delta_out_of_range"
    exit_code = 4


class FlowProblemError(SteinerSentryError):
    code = "bad_flow_problem"


class EdgeTypeError(SteinerSentryError):
    code = "wrong_edge_type"


class NotVitalError(SteinerSentryError):
    code = "not_vital"


class UniquenessViolation(SteinerSentryError):
    code = "nearest_mincut_not_unique"


class LaminarityError(SteinerSentryError):
    code = "not_laminar"


class GeneratorError(SteinerSentryError):
    code = "infeasible_generator"
    exit_code = 5


class FamilySpecError(SteinerSentryError):
    code = "bad_family_spec"
    exit_code = 5


class BruteForceLimitError(SteinerSentryError):
    code = "graph_too_large"


class OracleFormatError(SteinerSentryError):
    code = "oracle_format"

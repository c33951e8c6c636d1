class ProofbenchError(Exception):
    """Base for all domain errors raised by this package."""

    code = "error"


class BudgetExceededError(ProofbenchError):
    """A step budget ran out before the computation finished.

    This is a non-answer, not a refutation: callers that can tolerate it
    catch this and report 'undecided within budget'.
    """

    code = "budget_exceeded"


class MagnitudeCapError(ProofbenchError):
    """A natural-number value grew past the configured magnitude cap."""

    code = "magnitude_cap_exceeded"


class NonCanonicalError(ProofbenchError):
    """Ordinal input violates Cantor normal form."""

    code = "non_canonical"


class OrdinalParseError(ProofbenchError):
    code = "parse_error"

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class FormulaParseError(ProofbenchError):
    code = "parse_error"

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class UnboundVariableError(ProofbenchError):
    code = "unbound_variable"


class NotClosedError(ProofbenchError):
    code = "not_closed"


class NotDelta0Error(ProofbenchError):
    code = "not_delta0"


class InsufficientBoundsError(ProofbenchError):
    code = "insufficient_bounds"


class ProofFileError(ProofbenchError):
    code = "proof_file_error"

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ShapeViolationError(ProofbenchError):
    """A transform's structural precondition does not hold."""

    code = "shape_violation"


class SideConditionError(ProofbenchError):
    """An inference's ordinal/rank/eigenvariable side condition fails."""

    code = "side_condition"

"""Exception hierarchy.

Two families: :class:`ValidationError` for bad input (CLI exit code 1) and
:class:`ComputationError` for numerical failures or undecidable results
(CLI exit code 2).
"""


class OpinionPartitionError(Exception):
    """Base class for every error raised by this package."""

    code = "Error"


class ValidationError(OpinionPartitionError, ValueError):
    code = "ValidationError"


class ComputationError(OpinionPartitionError, ArithmeticError):
    code = "ComputationError"


class ParseError(ValidationError):
    code = "ParseError"


class SelfLoop(ValidationError):
    code = "SelfLoop"


class NegativeWeight(ValidationError):
    code = "NegativeWeight"


class ConflictingEdge(ValidationError):
    code = "ConflictingEdge"


class UnknownDataset(ValidationError):
    code = "UnknownDataset"


class EmptyNodeSet(ValidationError):
    code = "EmptyNodeSet"


class LengthMismatch(ValidationError):
    code = "LengthMismatch"


class PositivityViolation(ValidationError):
    code = "PositivityViolation"


class Disconnected(ValidationError):
    code = "Disconnected"


class Degenerate(ComputationError):
    code = "Degenerate"


class NonConvergence(ComputationError):
    """Iterative method ran out of iterations; ``iterate`` holds the last estimate."""

    code = "NonConvergence"

    def __init__(self, message, iterate=None):
        super().__init__(message)
        self.iterate = iterate


class InitialStateRequired(ComputationError):
    code = "InitialStateRequired"


class IndecisivePartition(ComputationError):
    code = "IndecisivePartition"


class DivergentDiversity(ComputationError):
    code = "DivergentDiversity"


class DegenerateClusters(ComputationError):
    code = "DegenerateClusters"

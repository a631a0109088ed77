"""Exception hierarchy shared by every module of the calculus.

All domain failures derive from :class:`JudgmentError`, so callers (and the
command-line front end) can separate them from programming errors.
"""


class JudgmentError(Exception):
    """Base class for domain errors."""


# world spaces and propositions
class DuplicateAtom(JudgmentError):
    pass


class TooManyAtoms(JudgmentError):
    pass


class EmptyAtomList(JudgmentError):
    pass


class UnknownAtom(JudgmentError):
    pass


class FormulaSyntaxError(JudgmentError):
    """Malformed formula text; ``position`` is the 0-based column."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SpaceMismatch(JudgmentError):
    pass


# circumstances
class InvalidCircumstance(JudgmentError):
    pass


class Inconceivable(JudgmentError):
    """Conditioning on a proposition with no conceivable world."""


class UnknownWorld(JudgmentError):
    pass


class IncompleteSplit(JudgmentError):
    pass


class WeightOutOfRange(JudgmentError):
    pass


# information and evidence
class IndeterminateForm(JudgmentError, ArithmeticError):
    """Raised for infinity minus infinity."""


class DegenerateInput(JudgmentError):
    pass


class NotPositivelyCorrelated(JudgmentError):
    pass


class NotNegativelyCorrelated(JudgmentError):
    pass


class ProbabilitySumExceedsOne(JudgmentError):
    pass


class Infeasible(JudgmentError):
    pass


class NonFiniteContribution(JudgmentError):
    pass


# implication judgments
class PreconditionViolated(JudgmentError):
    pass


class InsufficientInformation(Infeasible):
    """The requested information content is below the lower bound."""

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound


class NotCounterfactual(JudgmentError):
    pass


# scenarios and sessions
class ConfigInvalid(JudgmentError):
    pass


class SessionFileNotFound(JudgmentError, FileNotFoundError):
    pass


class FormatVersionMismatch(JudgmentError):
    pass


class CorruptRationals(JudgmentError):
    pass

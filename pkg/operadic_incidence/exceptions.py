"""Exceptions raised by the operadic incidence engine."""

__all__ = [
    'OperadicError',
    'TreeAxiomViolation',
    'Axiom1Violation',
    'Axiom2Violation',
    'Axiom3Violation',
    'DecorationError',
    'ArityMismatch',
    'ColourMismatch',
    'MalformedTable',
    'UnsupportedNesting',
    'OperadMismatch',
    'MonoidMismatch',
    'ResidueMismatch',
    'NotMonotone',
    'EmptyTree',
    'TrivialTreeHasNoBlobbing',
    'TrivialTreeInBlobsBasis',
    'BoundsTooLargeForColourDomain',
    'TreeSyntaxError',
    'InferenceAmbiguous',
    'AxiomViolation',
]


class OperadicError(Exception):
    """Base class of every error raised by this package."""


class TreeAxiomViolation(OperadicError, ValueError):
    pass


class Axiom1Violation(TreeAxiomViolation):
    """Two nodes share an output edge."""


class Axiom2Violation(TreeAxiomViolation):
    """A non-root edge is consumed zero times or more than once, or the root is consumed."""


class Axiom3Violation(TreeAxiomViolation):
    """The walk to the root does not terminate."""


class DecorationError(OperadicError, ValueError):
    pass


class ArityMismatch(DecorationError):
    pass


class ColourMismatch(DecorationError):
    pass


class MalformedTable(OperadicError, ValueError):
    pass


class UnsupportedNesting(OperadicError, ValueError):
    pass


class OperadMismatch(OperadicError, ValueError):
    pass


class MonoidMismatch(OperadicError, ValueError):
    pass


class ResidueMismatch(OperadicError, ValueError):
    pass


class NotMonotone(OperadicError, ValueError):
    pass


class EmptyTree(OperadicError, ValueError):
    pass


class TrivialTreeHasNoBlobbing(OperadicError, ValueError):
    pass


class TrivialTreeInBlobsBasis(OperadicError, ValueError):
    pass


class BoundsTooLargeForColourDomain(OperadicError, ValueError):
    pass


class TreeSyntaxError(OperadicError, ValueError):

    def __init__(self, message: str, offset: int):
        super().__init__("{0} at offset {1}".format(message, offset))
        self.offset = offset


class InferenceAmbiguous(OperadicError, ValueError):
    pass


class AxiomViolation(OperadicError):
    """A verification report failed; the report (with its witness) is attached."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report

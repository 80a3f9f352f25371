"""Exception hierarchy.

Everything raised deliberately by the library derives from :class:`HyperhomError`.
``UserError`` subclasses are caller mistakes (bad input, violated preconditions);
the CLI maps them to exit code 2.  ``InternalError`` subclasses mean a computed
invariant failed, which is a bug; the CLI maps them to exit code 1.
"""


class HyperhomError(Exception):
    pass


class UserError(HyperhomError, ValueError):
    pass


class InternalError(HyperhomError, RuntimeError):
    pass


class ParseError(UserError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateVertexInEdge(ParseError):
    pass


class InvalidMorphism(UserError):
    pass


class PreconditionViolated(UserError):
    pass


class HypothesisViolated(PreconditionViolated):
    """The intersection condition required for the Mayer-Vietoris sequence fails."""


class NotContained(PreconditionViolated):
    pass


class DegreeOutOfRange(UserError):
    pass


class AmbientMismatch(UserError):
    pass


class NotASubgroup(UserError):
    pass


class NonIncreasingRadii(UserError):
    pass


class AsymmetricDistance(UserError):
    pass


class ValueOutOfRange(UserError):
    pass


class EmptyHypergraph(UserError):
    pass


class DomainMismatch(UserError):
    pass


class TokenCollision(UserError):
    pass


class NegativeMultiplicity(InternalError):
    pass

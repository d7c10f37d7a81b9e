"""Exception hierarchy. The CLI maps each family onto a fixed exit code."""


class TernalgError(Exception):
    """Base class for all library errors."""


class ParseError(TernalgError, ValueError):
    """Malformed input text or JSON."""


class InvariantError(TernalgError, ValueError):
    """Input parsed but violates a structural invariant (shape, field, parameters)."""


class NotPerfectError(InvariantError):
    """Operation requires an invertible structure matrix."""


class InfeasibleError(TernalgError):
    """The diagonal data admits no first component."""


class OracleBoundError(TernalgError):
    """Problem too large for the brute-force oracle."""


class DecompositionError(TernalgError):
    """A ternary automorphism did not have the expected monomial shape."""


class NotMonomialError(DecompositionError):
    pass


class PermutationMismatchError(DecompositionError):
    pass


class FirstComponentMismatchError(DecompositionError):
    pass

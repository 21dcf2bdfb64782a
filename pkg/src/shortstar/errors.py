"""Exception types shared across the package."""


class ShortstarError(Exception):
    """Base class for all errors raised by this package."""


class InconsistentSamples(ShortstarError):
    """Interpolation data disagrees with the polynomial fitted to it."""


class NotRational(ShortstarError):
    """A series prefix admits no rational function within the given bounds."""


class PoleAtParameter(ShortstarError):
    """A numeric parameter value hits a root of a denominator."""


class DescriptorMismatch(ShortstarError):
    """Two graded elements live on different cones."""


class NotInSp(ShortstarError):
    """A matrix is not in the symplectic Lie algebra."""


class SingularTransform(ShortstarError):
    """The Cayley transform (or its inverse) needs an invertible matrix."""


class RelationViolation(ShortstarError):
    """Generator images do not satisfy the sl2 relations."""


class FieldNotConjugable(ShortstarError):
    """Complex conjugation is not defined on this coefficient field."""


class DegenerateTrace(ShortstarError):
    """The Gram form of a trace is singular at some filtration level."""

    def __init__(self, degree, determinant):
        super().__init__(f"singular Gram form at degree {degree}: det = {determinant}")
        self.degree = degree
        self.determinant = determinant


class ExpansionFailure(ShortstarError):
    """An element could not be expanded in the image of a quantization map."""


class NotProportional(ShortstarError):
    """Two bilinear forms expected to be proportional are not."""


class NonzeroWeight(ShortstarError):
    """An insertion does not commute with the grading element."""


class RecursionStall(ShortstarError):
    """The character recursion failed to lower the filtration degree."""


class PoleAtOne(ShortstarError):
    """A character has a pole at t = 1."""


class SingularMatrix(ShortstarError):
    """A linear system has no unique solution."""


class OrthogonalityFailure(ShortstarError):
    """A right-orthogonal lift failed to be left-orthogonal."""

"""Exception types raised across the package."""


class AlgebraError(ValueError):
    """Base class for invalid inputs and failed structural preconditions."""


class DegreeMismatch(AlgebraError):
    pass


class NotTransitive(AlgebraError):
    def __init__(self, msg="not transitive"):
        super().__init__(msg)


class NotInvariant(AlgebraError):
    pass


class NotLatin(AlgebraError):
    def __init__(self, kind, index, value):
        self.kind = kind  # "row" or "column"
        self.index = index
        self.value = value
        super().__init__(f"{kind} {index} repeats value {value}")


class NeutralNotZero(AlgebraError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"element 0 is not neutral (fails at {index})")


class FormatError(AlgebraError):
    pass


class NoTwoSidedInverse(AlgebraError):
    def __init__(self, element, left=None, right=None):
        self.element = element
        self.left = left
        self.right = right
        super().__init__(
            f"element {element} has left inverse {left} but right inverse {right}")


class NotPowerAssociative(AlgebraError):
    pass


class NotASubloop(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class IllDefined(AssertionError):
    """Coset multiplication is not well defined. Indicates corrupted input."""


class IndexOutOfRange(AlgebraError):
    pass


class DuplicatePair(AlgebraError):
    pass


class DimensionTooLarge(AlgebraError):
    pass


class SingularTranslation(AlgebraError):
    def __init__(self, vector):
        self.vector = vector
        super().__init__(f"id + ad(v) is singular for v = {vector}")


class BilinearityFailure(AlgebraError):
    def __init__(self, u, v, w=None):
        self.witness = (u, v, w)
        super().__init__(f"bracket is not bilinear at {self.witness}")


class OrderTooLarge(AlgebraError):
    pass


class IdentityFailure(AlgebraError):
    """A structural identity that must hold failed; carries a witness."""

    def __init__(self, name, witness):
        self.name = name
        self.witness = witness
        super().__init__(f"{name} fails at {witness}")

"""Exception hierarchy."""


class ActlabError(Exception):
    """Base class for all library errors."""


class ValidationError(ActlabError):
    """A table failed an algebraic axiom; ``witness`` names the offending indices."""

    axiom = "validation"

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class IndexOutOfRange(ValidationError):
    axiom = "index-out-of-range"


class NotAssociative(ValidationError):
    axiom = "associativity"


class IdentityLawFails(ValidationError):
    axiom = "identity"


class UnitLawFails(ValidationError):
    axiom = "unit"


class ActionNotAssociative(ValidationError):
    axiom = "action-associativity"


class NotEquivariant(ValidationError):
    axiom = "equivariance"


class BoundExceeded(ActlabError):
    pass


class MixedMonoids(ActlabError):
    pass


class MismatchedEndpoints(ActlabError):
    pass


class MismatchedSource(ActlabError):
    pass


class NotEpi(ActlabError):
    pass


class NotCRM(ActlabError):
    pass


class NotWTF(ActlabError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotDivisible(ActlabError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class ClassMembershipFails(ActlabError):
    pass


class ParseError(ActlabError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason

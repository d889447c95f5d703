"""Exception hierarchy shared across planarlab modules."""


class PlanarLabError(Exception):
    """Base class for all planarlab errors."""


class NotPrime(PlanarLabError):
    pass


class EvenCharacteristic(PlanarLabError):
    pass


class ReduciblePolynomial(PlanarLabError):
    pass


class DegreeTooLarge(PlanarLabError):
    pass


class DivisionByZero(PlanarLabError):
    pass


class OddDegree(PlanarLabError):
    pass


class ZeroElement(PlanarLabError):
    pass


class FieldMismatch(PlanarLabError):
    pass


class NotDOPolynomial(PlanarLabError):
    pass


class BadExponents(PlanarLabError):
    pass


class UnknownFamily(PlanarLabError):
    pass


class InvalidSpec(PlanarLabError):
    pass


class NotClosed(PlanarLabError):
    """A restriction's image leaves the subfield."""


class SearchSpaceTooLarge(PlanarLabError):
    pass


class HypothesisNotEstablished(PlanarLabError):
    pass


class NotPlanar(PlanarLabError):
    pass

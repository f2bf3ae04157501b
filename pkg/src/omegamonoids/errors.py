"""Exception hierarchy. Every domain error derives from :class:`MonoidError`."""


class MonoidError(Exception):
    """Base class for domain errors raised by this package."""


class IncomparableKinds(MonoidError, TypeError):
    """Two exact reals live in representations that cannot be mixed."""


class BoundTooLargeForBudget(MonoidError, ValueError):
    pass


class NotNormalized(MonoidError, ValueError):
    pass


class InvalidProportions(MonoidError, ValueError):
    pass


class InsufficientElements(MonoidError, ValueError):
    pass


class NotCoprime(MonoidError, ValueError):
    def __init__(self, gcd):
        self.gcd = gcd
        super().__init__(f"generators have gcd {gcd}, expected 1")


class CeilingExceeded(MonoidError, ValueError):
    pass


class NotClosed(MonoidError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        x, y = witness
        super().__init__(f"{x} + {y} = {x + y} is missing from the set")

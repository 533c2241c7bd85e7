"""Exception hierarchy shared by all princlab modules."""


class PrincLabError(Exception):
    """Base class; the CLI maps subclasses of InvalidInput to exit status 2."""


class InvalidInput(PrincLabError):
    pass


class CyclicCovers(InvalidInput):
    pass


class NotTransitivelyReduced(InvalidInput):
    pass


class UnknownElement(InvalidInput):
    pass


class NotALattice(InvalidInput):
    def __init__(self, x, y, kind="join"):
        self.x, self.y, self.kind = x, y, kind
        super().__init__(f"no unique {kind} of {x!r} and {y!r}")


class NotComparable(InvalidInput):
    pass


class NotBounded(InvalidInput):
    pass


class NotDistributive(InvalidInput):
    pass


class NotSectionallyComplemented(InvalidInput):
    pass


class NoLargestCollapsedElement(PrincLabError):
    pass


class InvalidCandidate(InvalidInput):
    pass


class RoleMismatch(InvalidInput):
    pass


class NoGadgetFound(PrincLabError):
    pass


class GadgetContractViolated(PrincLabError):
    pass


class BoundTooLarge(InvalidInput):
    pass

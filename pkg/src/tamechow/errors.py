"""Exception taxonomy shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; plain ValueError/TypeError are reserved for programming errors.
"""


class TameChowError(Exception):
    pass


class OutOfSupportedRange(TameChowError):
    # scope caps: |d| <= 200 squarefree, q <= 81 prime power, enumeration caps
    pass


class InfiniteCokernel(TameChowError):
    # relation matrix has rank < ambient rank; quotient is not finite
    pass


class RelationViolated(TameChowError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"generator {index}: order relation not satisfied by image")


class ZeroElement(TameChowError):
    # valuation of 0 requested
    pass


class NotAUnit(TameChowError):
    # residue of a non-unit requested
    pass


class DuplicatePlace(TameChowError):
    pass


class NarrowUnsupported(TameChowError):
    # narrow variant needs real embeddings; function fields have none
    pass


class SupportMeetsModulus(TameChowError):
    pass


class PlaceInModulus(TameChowError):
    pass

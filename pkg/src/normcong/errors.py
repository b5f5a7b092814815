from __future__ import annotations


class MonoidError(Exception):
    """Base class for every error raised by normcong.

    ``details`` carries the machine-readable payload (witnesses, offending
    sizes, ...) that the CLI serializes into its error JSON.
    """

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.__class__.__name__)
        self.details = details

    def to_json(self) -> dict:
        return {
            "error": self.__class__.__name__,
            "message": str(self),
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


class MalformedTable(MonoidError):
    pass


class NotAssociative(MonoidError):
    pass


class IdentityViolation(MonoidError):
    pass


class SizeOverflow(MonoidError):
    pass


class BoundExceeded(MonoidError):
    pass


class KleinFourUndefined(MonoidError):
    pass


class EmptySubset(MonoidError):
    pass


class NotCommutative(MonoidError):
    pass


class NotSubmonoid(MonoidError):
    pass


class NotSubsemigroup(MonoidError):
    pass


class NotNormalMonoid(MonoidError):
    pass


class NotALattice(MonoidError):
    pass


class DuplicateNodes(MonoidError):
    pass


class NotIdeal(MonoidError):
    pass


class FiberMismatch(MonoidError):
    pass


class NotUnital(MonoidError):
    pass


class NotNormalSubgroup(MonoidError):
    pass


class RankOutOfRange(MonoidError):
    pass


class DimensionMismatch(MonoidError):
    pass


class NegativeGenerator(MonoidError):
    pass


class BadParameters(MonoidError):
    pass


class InternalError(MonoidError):
    """An invariant that holds by construction was found violated."""

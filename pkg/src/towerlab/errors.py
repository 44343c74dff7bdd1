"""Exception hierarchy shared by every towerlab module."""

from __future__ import annotations


class TowerlabError(Exception):
    """Base class for all errors raised by towerlab."""


class GroupError(TowerlabError, ValueError):
    pass


class NotSquare(GroupError):
    pass


class EntryOutOfRange(GroupError):
    pass


class IdentityNotAtZero(GroupError):
    pass


class NotAssociative(GroupError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"({i}*{j})*{k} != {i}*({j}*{k})")
        self.witness = (i, j, k)


class MissingInverse(GroupError):
    def __init__(self, i: int):
        super().__init__(f"element {i} has no two-sided inverse")
        self.element = i


class IndexOutOfRange(GroupError, IndexError):
    pass


class InvalidSubgroup(GroupError):
    pass


class CapExceeded(TowerlabError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class NotCenterless(GroupError):
    pass


class ParamOutsideA(TowerlabError, ValueError):
    pass


class MissingYValue(TowerlabError, ValueError):
    pass


class MissingAssignment(TowerlabError, ValueError):
    pass


class CentralizerNontrivial(TowerlabError):
    def __init__(self, level: int):
        super().__init__(f"centralizer of A is nontrivial at level {level}")
        self.level = level


class BaseNotSpecial(TowerlabError):
    pass


class NotSpecial(TowerlabError):
    pass


class HypothesesFail(TowerlabError):
    def __init__(self, condition: str, detail: str = ""):
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)
        self.condition = condition


class TooFewParams(TowerlabError, ValueError):
    pass


class EmptyA(TowerlabError, ValueError):
    pass


class AmbiguousCode(TowerlabError, ValueError):
    pass


class NotAnAutomorphism(TowerlabError, ValueError):
    pass


class FormatError(TowerlabError, ValueError):
    pass


class UnknownSuite(TowerlabError, ValueError):
    pass

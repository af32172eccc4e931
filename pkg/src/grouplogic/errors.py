"""Exception hierarchy shared by every module."""


class GroupLogicError(Exception):
    """Base class for all errors raised by this package."""


class NotAGroup(GroupLogicError):
    pass


class TooLarge(GroupLogicError):
    """A configured size cap (elements, table, lattice, sigma) was exceeded."""


class NotAbelian(GroupLogicError):
    pass


class NotNormal(GroupLogicError):
    pass


class NotSubgroup(GroupLogicError):
    pass


class ActionNotHomomorphic(GroupLogicError):
    pass


class NotHomomorphism(GroupLogicError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MembershipError(GroupLogicError):
    pass


class GroupSpecError(GroupLogicError):
    """Malformed group-spec text."""


# fo-logic
class FormulaSyntaxError(GroupLogicError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownOracle(GroupLogicError):
    pass


class UnboundVariable(GroupLogicError):
    pass


class UnboundOracle(GroupLogicError):
    pass


class DepthBudgetExceeded(GroupLogicError):
    pass


# catalog / structure / constructions
class NotDistinctPrimes(GroupLogicError):
    pass


class NoCyclicSylow(GroupLogicError):
    pass


class NotPrime(GroupLogicError):
    pass


class ConditionViolated(GroupLogicError):
    pass


class NotFound(GroupLogicError):
    pass


class BadCharacteristic(GroupLogicError):
    pass


class SplitFailed(GroupLogicError):
    pass


# supplement engine
class InsideRadical(GroupLogicError):
    pass


class CheckFailed(GroupLogicError):
    def __init__(self, message, clause=None, witness=None):
        super().__init__(message)
        self.clause = clause
        self.witness = witness

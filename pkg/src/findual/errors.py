"""Exception hierarchy shared by every module."""


class FindualError(Exception):
    """Base class. Carries an optional witness for reporting."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidInput(FindualError):
    """Input documents or arguments that cannot be interpreted."""


class ParseError(InvalidInput):
    pass


class UnknownElement(InvalidInput):
    pass


class CycleError(InvalidInput):
    pass


class SizeCapExceeded(InvalidInput):
    pass


class WrongSourceKind(InvalidInput):
    pass


class DomainMismatch(InvalidInput):
    pass


class PreconditionViolated(FindualError):
    """An operation's structural precondition does not hold."""


class NotASemilattice(PreconditionViolated):
    pass


class NotALattice(PreconditionViolated):
    pass


class NotAFrame(PreconditionViolated):
    pass


class NoBottom(PreconditionViolated):
    pass


class NotDistributive(PreconditionViolated):
    pass


class NotJoinPreserving(PreconditionViolated):
    pass


class NotMeetHom(PreconditionViolated):
    pass


class NotAlgFrmJ(PreconditionViolated):
    pass


class NotAMorphism(PreconditionViolated):
    pass


class NotAMorphismInSource(PreconditionViolated):
    pass


class NotFunctional(PreconditionViolated):
    pass


class NotStrong(PreconditionViolated):
    pass


class SourceAxiomFailure(PreconditionViolated):
    pass


class TypeMismatch(PreconditionViolated):
    pass


class InternalError(FindualError):
    """Two independent computations disagreed. Always a bug."""


class OracleMismatch(InternalError):
    pass


class InternalMismatch(InternalError):
    pass


class NoPrimeFound(InternalError):
    pass

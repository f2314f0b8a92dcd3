"""Exception hierarchy.  Every fault that carries a concrete counterexample
exposes it as ``witness``."""


class SkewGroupoidError(Exception):
    """Base class for all library errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidElement(SkewGroupoidError):
    pass


class AlgebraAxiomViolation(SkewGroupoidError):
    pass


class AssociativityFailure(AlgebraAxiomViolation):
    pass


class NotCentralIdempotent(SkewGroupoidError):
    pass


class NotASubring(SkewGroupoidError):
    pass


class GroupoidAxiomViolation(SkewGroupoidError):
    pass


class EmptyObjectSet(SkewGroupoidError):
    pass


class UnknownObject(SkewGroupoidError):
    pass


class NotConnected(SkewGroupoidError):
    pass


class PartialActionAxiomViolation(SkewGroupoidError):
    def __init__(self, axiom, message, witness=None):
        super().__init__(f"axiom {axiom}: {message}", witness)
        self.axiom = axiom


class IsoFailure(SkewGroupoidError):
    def __init__(self, step, message, witness=None):
        super().__init__(f"step {step}: {message}", witness)
        self.step = step


class CentralityFailure(SkewGroupoidError):
    pass


class FrobeniusVerificationFailure(SkewGroupoidError):
    def __init__(self, identity, message, witness=None):
        super().__init__(f"{identity}: {message}", witness)
        self.identity = identity


class ParseError(SkewGroupoidError):
    def __init__(self, message, line=None, column=None, path=None):
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        if where:
            message = f"{message} ({'; '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path

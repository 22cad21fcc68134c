"""Exception hierarchy shared by the kernel, the term engine and the constructions."""


class AnnCatError(Exception):
    pass


class NotComposable(AnnCatError):
    def __init__(self, g, f, detail=""):
        self.g, self.f = g, f
        msg = f"cannot compose {g!r} after {f!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NoInverse(AnnCatError):
    def __init__(self, f):
        self.f = f
        super().__init__(f"morphism {f!r} has no inverse")


class MissingComponent(AnnCatError):
    """A family or table has no entry for the requested arguments."""


class ShapeMismatch(AnnCatError):
    pass


class TermError(AnnCatError):
    pass


class TermSyntaxError(TermError):
    def __init__(self, message, src="", pos=0):
        self.pos = pos
        self.src = src
        super().__init__(f"{message} at position {pos}" + (f": {src[pos:pos + 20]!r}" if src else ""))


class UnknownName(TermError):
    pass


class ArityError(UnknownName):
    pass


class PreconditionFailed(AnnCatError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NoSolution(AnnCatError):
    pass


class MultipleSolutions(AnnCatError):
    pass


class BoundExceeded(AnnCatError):
    def __init__(self, size, bound):
        self.size, self.bound = size, bound
        super().__init__(f"search space of size {size} exceeds bound {bound}")


class InvalidMultiplicity(AnnCatError):
    pass


class InvalidRing(AnnCatError):
    def __init__(self, axiom, witness):
        self.axiom, self.witness = axiom, witness
        super().__init__(f"ring axiom {axiom!r} fails at {witness!r}")


class InvalidBimodule(InvalidRing):
    pass


class SchemaError(AnnCatError):
    def __init__(self, message, key=None, position=None):
        self.key, self.position = key, position
        where = ""
        if key is not None:
            where += f" [key {key}]"
        if position is not None:
            where += f" [line {position}]"
        super().__init__(message + where)


class ValidationError(AnnCatError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)

"""Exception hierarchy shared by every module of the package."""


class SchemeError(ValueError):
    """Base class for all invalid-input errors raised by this package."""


class BadIndex(SchemeError):
    pass


class NotAPartitionOfDiagonal(SchemeError):
    pass


class NoInvolution(SchemeError):
    pass


class NotRegular(SchemeError):
    def __init__(self, p, q, s, count1, count2, pairs=None):
        self.witness = (p, q, s)
        self.counts = (count1, count2)
        self.pairs = pairs
        msg = f"a[{p}][{q}][{s}] is not constant: {count1} != {count2}"
        if pairs is not None:
            msg += f" (pairs {pairs[0]} and {pairs[1]})"
        super().__init__(msg)


class NotAGroup(SchemeError):
    pass


class NotClosed(SchemeError):
    pass


class NotAMorphism(SchemeError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotNormal(SchemeError):
    pass


class NotBased(SchemeError):
    pass


class NotIso(SchemeError):
    pass


class DomainMismatch(SchemeError):
    pass


class MismatchedTauScheme(SchemeError):
    pass


class ConditionFailed(SchemeError):
    """An action violates one of its five defining conditions."""

    def __init__(self, k, witness, detail=""):
        self.k = k
        self.witness = witness
        msg = f"action condition ({k}) fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SplitError(SchemeError):
    pass


class SplitNotIso(SplitError):
    pass


class ConditionViolated(SplitError):
    def __init__(self, u, t, size_left, size_right):
        self.u = u
        self.t = t
        super().__init__(
            f"|t(ui)| != 1 for u={u}, t={t}: "
            f"|(ui)t|={size_left}, |t(ui)|={size_right}"
        )


class NoBasedIso(SchemeError):
    pass


class EtaNotIso(AssertionError):
    """The reconstruction map failed to be an isomorphism (should be impossible)."""


class ParseError(SchemeError):
    def __init__(self, line, reason, path=None):
        self.line = line
        self.reason = reason
        self.path = path
        where = f"{path}:" if path else "line "
        super().__init__(f"{where}{line}: {reason}")

"""Exception hierarchy shared by all modules."""


class TrimwindError(Exception):
    pass


class DomainError(TrimwindError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DegenerateInputError(TrimwindError, ValueError):
    """Geometry too degenerate for the requested primitive (e.g. query point on a vertex)."""


class FormatError(TrimwindError, ValueError):
    pass


class SvgParseError(FormatError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class RecursionCapError(TrimwindError, RuntimeError):
    """Bisection exceeded the depth cap; inputs are numerically inconsistent."""


class ValidityError(TrimwindError, ValueError):
    """A loop set violates a topological precondition.

    ``rule`` names the violated check: ``"cardinality"``, ``"coprime"``,
    ``"uni-class"``, ``"mixed-class"`` or ``"pairing"``.
    """

    def __init__(self, message, rule=None):
        super().__init__(message)
        self.rule = rule


class PairingError(ValidityError):
    pass

"""Exception types.  The CLI maps each family onto an exit code."""


class HodgeCyclesError(Exception):
    exit_code = 2


class ParseError(HodgeCyclesError, ValueError):
    """Malformed polynomial or problem-file text; ``offset`` is a byte offset."""

    exit_code = 1

    def __init__(self, message, offset=None, line=None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class FieldMismatchError(HodgeCyclesError, ValueError):
    pass


class RingMismatchError(HodgeCyclesError, ValueError):
    pass


class DegreeError(HodgeCyclesError, ValueError):
    """Non-homogeneous input or a degree that violates a precondition."""


class ValidationError(HodgeCyclesError, ValueError):
    """A cycle or hypersurface fails its hypotheses.  ``residual`` may carry a Poly."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class NotProportionalError(HodgeCyclesError, ValueError):
    pass


class ResourceLimitError(HodgeCyclesError, MemoryError):
    exit_code = 3

    def __init__(self, message, required=None, limit=None):
        self.required = required
        self.limit = limit
        super().__init__(message)

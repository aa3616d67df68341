"""Exception hierarchy."""


class NCDeformError(Exception):
    pass


class ParseError(NCDeformError, ValueError):
    """Malformed text input. ``line`` and ``col`` are 1-based, or None if unknown."""

    def __init__(self, message, line=None, col=None, source=None):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", col {col}"
            where += ": "
        super().__init__(where + message)


class ContractViolation(NCDeformError):
    """Input data breaks a mathematical contract (CLI exit code 2)."""


class OracleConsistencyError(ContractViolation):
    pass


class MalformedTableError(ContractViolation, ValueError):
    pass


class DegreeBoundError(NCDeformError, ValueError):
    pass

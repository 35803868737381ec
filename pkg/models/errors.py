"""Error hierarchy shared by the models, services and the CLI.

Every error carries a machine-readable ``code``; the CLI prints it as
``ERROR <code>: <message>`` and picks the exit status from the class.
"""


class ExtractionError(Exception):
    code = "error"


class InvalidInput(ExtractionError):
    code = "invalid_input"


class ConstraintViolation(InvalidInput):
    """A theorem parameter is outside its admissible range."""

    code = "constraint_violation"

    def __init__(self, constraint, message):
        super().__init__(f"{constraint}: {message}")
        self.constraint = constraint


class GraphFormatError(InvalidInput):
    code = "parse_error"

    def __init__(self, message, line_no=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}"
        if line_no is not None:
            where += f":{line_no}" if where else f"line {line_no}"
        super().__init__(f"{where}: {message}" if where else message)
        self.line_no = line_no
        self.path = path


class PreconditionViolated(ExtractionError):
    code = "precondition_violated"


class InvariantBreach(ExtractionError):
    """An inequality that the proof guarantees did not hold at runtime.

    Under valid inputs this never happens; it means a bug or corrupted input.
    """

    code = "invariant_breach"

    def __init__(self, name, observed, trace=None):
        rendered = ", ".join(f"{key}={value}" for key, value in observed.items())
        super().__init__(f"{name} failed ({rendered})")
        self.name = name
        self.observed = dict(observed)
        self.trace = trace


class BudgetExceeded(ExtractionError):
    code = "budget_exceeded"

    def __init__(self, message, best=None, trace=None):
        super().__init__(message)
        self.best = best
        self.trace = trace

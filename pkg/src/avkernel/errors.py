class KernelError(Exception):
    """Base class for every error raised by the kernel."""


class ContractViolation(KernelError, ValueError):
    pass


class NotAUnit(KernelError, ArithmeticError):
    pass


class NotMonic(KernelError, ValueError):
    pass


class NotRegular(KernelError, ValueError):
    pass


class CannotRegularize(KernelError, ValueError):
    pass


class NotHenselianInstance(KernelError, ValueError):
    pass


class PrecisionExhausted(KernelError, ArithmeticError):
    """A relation or value would depend on digits beyond the known precision."""


class DivisionByZeroAtPrecision(KernelError, ZeroDivisionError):
    pass


class BudgetExceeded(KernelError, RuntimeError):
    pass


class ParseError(KernelError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class UnboundVariable(KernelError, KeyError):
    pass

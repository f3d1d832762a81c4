"""Exception hierarchy shared by all modules."""


class LongclawError(Exception):
    pass


class GraphFormatError(LongclawError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidEsd(LongclawError):
    def __init__(self, report):
        shown = "; ".join(str(v) for v in report.violations[:5])
        super().__init__(f"invalid extended strip decomposition: {shown}")
        self.report = report


class NotRigid(LongclawError):
    pass


class PreconditionViolated(LongclawError):
    pass


class StepBudgetExceeded(LongclawError):
    pass


class PropertyViolated(LongclawError):
    pass


class NotPeripheral(LongclawError):
    pass


class BadCertificate(LongclawError):
    pass


class InvalidTreeShape(LongclawError):
    pass


class ArmTooShort(LongclawError):
    pass


class TooShort(LongclawError):
    pass


class ContractViolation(LongclawError):
    pass


class CertificationFailed(LongclawError):
    """A theorem-level claim did not hold at runtime."""

    def __init__(self, claim, detail=""):
        super().__init__(f"{claim}: {detail}" if detail else claim)
        self.claim = claim


class Inconclusive(LongclawError):
    pass

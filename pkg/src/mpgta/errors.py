"""Exception hierarchy shared by every module."""


class MpgtaError(Exception):
    """Base class for domain errors. ``code`` is reported by the CLI."""

    code = "MpgtaError"

    def __init__(self, message, **detail):
        super().__init__(message)
        self.detail = detail


class ParseError(MpgtaError):
    code = "ParseError"


class ValidationError(MpgtaError):
    code = "ValidationError"

    def __init__(self, report):
        first = report.diagnostics[0]
        super().__init__(f"{first.code}: {first.message}", report=report)
        self.report = report
        self.code = first.code


class RegionError(MpgtaError):
    code = "RegionError"


class ActionNotAvailable(MpgtaError):
    code = "ActionNotAvailable"


class TimelockDetected(MpgtaError):
    code = "TimelockDetected"


class NonIntegralGain(MpgtaError):
    code = "NonIntegralGain"

    def __init__(self, cycle, value):
        super().__init__(f"cycle of length {len(cycle)} has non-integral gain {value}",
                         cycle=cycle, value=value)
        self.cycle = cycle
        self.value = value


class NonPointCycleVertex(MpgtaError):
    code = "NonPointCycleVertex"


class IterationCapExceeded(MpgtaError):
    code = "IterationCapExceeded"


class ScaleEscalationExceeded(MpgtaError):
    code = "ScaleEscalationExceeded"


class UnreachableStateClass(MpgtaError):
    code = "UnreachableStateClass"


class ProfileSpaceTooLarge(MpgtaError):
    code = "ProfileSpaceTooLarge"

    def __init__(self, count, cap):
        super().__init__(f"{count} strategy profiles exceed the cap of {cap}", count=count, cap=cap)
        self.count = count
        self.cap = cap


class NoReachableCycle(MpgtaError):
    code = "NoReachableCycle"

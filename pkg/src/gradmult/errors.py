"""Machine-readable failure modes shared across the kernel."""


class KernelError(Exception):
    """Base for coded failures; `code` is what reports and exit codes key on."""

    code = "ERROR"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self):
        out = {"code": self.code, "message": self.message}
        out.update(self.details)
        return out


class HypothesisFail(KernelError):
    """A closed-form hypothesis does not hold for the given input, so the fast path refuses."""

    code = "HYPOTHESIS-FAIL"


class NoStabilization(KernelError):
    """Finite differences did not settle inside the requested window."""

    code = "NO-STABILIZATION"


class FitMismatch(KernelError):
    """Exact polynomial fit failed to reproduce every grid value."""

    code = "FIT-MISMATCH"


class SearchExhausted(KernelError):
    """Randomized search ran out of retries; details carry the best partial result."""

    code = "SEARCH-EXHAUSTED"


class Inconclusive(KernelError):
    """A semi-decision procedure hit its bound without a verdict either way."""

    code = "INCONCLUSIVE"

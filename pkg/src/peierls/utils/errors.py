"""
Errors raised by the toolkit. Every error has a stable code and exit status so
the command line and the HTTP routers can report it in a machine-readable way.
"""
from typing import Any, Dict, Optional


class PeierlsError(Exception):
    """ Base class of all errors raised by peierls """

    code = "error"
    exit_status = 1
    http_status = 500

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def report(self) -> Dict[str, Any]:
        """ A JSON-ready description of the error """
        return {"code": self.code, "message": self.message, "details": self.details}


class MalformedInputError(PeierlsError, ValueError):
    """ An input file or parameter could not be parsed or validated """

    code = "malformed-input"
    exit_status = 2
    http_status = 422


class WindowError(PeierlsError):
    """
    The finite window (truncation radius or profile window) is too small for the
    requested computation. Carries the radius that would have been required.
    """

    code = "window-insufficient"
    exit_status = 3
    http_status = 409

    # Unpickling calls cls(message) and restores the attributes afterwards
    def __init__(
        self,
        message: str,
        required_radius: float = 0,
        available_radius: Optional[float] = None,
    ):
        # JSON has no infinity: an unbounded window is reported as null
        super().__init__(
            message,
            required_radius=required_radius,
            available_radius=None
            if available_radius == float("inf")
            else available_radius,
        )
        self.required_radius = required_radius
        self.available_radius = available_radius


class GuardExceededError(PeierlsError):
    """ An exhaustive search exceeded its guard; carries the partial progress """

    code = "guard-exceeded"
    exit_status = 4
    http_status = 413


class HypothesisError(PeierlsError):
    """ The measured constants do not satisfy the growth/isoperimetry hypotheses """

    code = "hypotheses-fail"
    exit_status = 5
    http_status = 412


class InconsistencyError(PeierlsError):
    """ The empirical p_c lies above the rigorous bound: an implementation bug """

    code = "inconsistent"
    exit_status = 6
    http_status = 500


class DualityError(PeierlsError, ValueError):
    """ A dual edge set is not a simple cycle or encloses no finite region """

    code = "duality"
    exit_status = 7
    http_status = 422

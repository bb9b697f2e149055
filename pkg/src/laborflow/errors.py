"""Exception types shared across the package.

Each error carries a ``details`` dict with machine-readable context (offending
node ids, residuals, line numbers) so the CLI can emit structured error JSON.
"""
from __future__ import annotations


class LaborFlowError(Exception):
    """Base class for all package errors."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details


# --- input / precondition errors -------------------------------------------

class SelfLoop(LaborFlowError):
    """An edge connects a node to itself."""


class OutOfRangeId(LaborFlowError):
    """An edge references a node id outside [0, n)."""


class Disconnected(LaborFlowError):
    """The network has more than one connected component."""


class IsolatedNode(LaborFlowError):
    """A node (or every node) has no incident edges."""


class InfeasibleDegree(LaborFlowError):
    """Requested degree sequence cannot exist on n nodes."""


class InvalidDegree(LaborFlowError):
    """A degree argument below 1 was supplied."""


class DegreeTooLarge(LaborFlowError):
    """Configuration enumeration is infeasible beyond max degree 12."""


class DegenerateHiring(LaborFlowError):
    """Hiring process admits no steady state (zero policies, closed economy)."""


class DegeneratePanel(LaborFlowError):
    """Regression input carries no identifying variation (all sizes zero)."""


class OutOfRange(LaborFlowError):
    """Scalar argument outside its documented domain."""


class ParseError(LaborFlowError):
    """An input file could not be parsed; details carry the line number."""


class CornerSolution(LaborFlowError):
    """The interior-optimum profit formula does not apply at a clamped policy."""


# --- numerical failures ------------------------------------------------------

class GenerationFailed(LaborFlowError):
    """Random generator exhausted its attempt budget."""


class SingularSystem(LaborFlowError):
    """Stationary linear system is rank deficient."""


class TargetOutOfBracket(LaborFlowError):
    """Calibration target unreachable on this network/parameter set."""


class NoConvergence(LaborFlowError):
    """Fixed-point iteration failed; carries the last iterate for diagnosis.

    Attributes
    ----------
    h_last : numpy.ndarray
        The final hiring-policy iterate.
    residual : float
        Final sup-norm fixed-point residual.
    iterations : int
        Number of sweeps performed.
    """

    def __init__(self, message: str, h_last=None, residual=None, iterations=None, **details):
        super().__init__(message, residual=residual, iterations=iterations, **details)
        self.h_last = h_last
        self.residual = residual
        self.iterations = iterations

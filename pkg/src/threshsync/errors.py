"""Exception hierarchy.

Every domain error carries a short machine-readable ``code`` used by the
command line front end (``ERR <code>: <message>``).
"""


class ThreshSyncError(Exception):
    code = "ERROR"


class InvalidCharacter(ThreshSyncError, ValueError):
    code = "INVALID_CHARACTER"


class EmptyInput(ThreshSyncError, ValueError):
    code = "EMPTY_INPUT"


class NotThreshold(ThreshSyncError):
    code = "NOT_THRESHOLD"


class Disconnected(ThreshSyncError):
    code = "DISCONNECTED"


class EmptyGraph(ThreshSyncError):
    code = "EMPTY_GRAPH"


class InvalidParameters(ThreshSyncError, ValueError):
    code = "INVALID_PARAMETERS"


class DimensionMismatch(ThreshSyncError, ValueError):
    code = "DIMENSION_MISMATCH"


class IsolatedVertex(ThreshSyncError, ValueError):
    code = "ISOLATED_VERTEX"


class NotSymmetric(ThreshSyncError, ValueError):
    code = "NOT_SYMMETRIC"


class NotUnitVectors(ThreshSyncError, ValueError):
    code = "NOT_UNIT_VECTORS"


class NonFiniteState(ThreshSyncError, FloatingPointError):
    code = "NON_FINITE_STATE"


class NoConvergence(ThreshSyncError):
    code = "NO_CONVERGENCE"


class SingularSystem(ThreshSyncError):
    code = "SINGULAR_SYSTEM"


class NotEquilibrium(ThreshSyncError):
    code = "NOT_EQUILIBRIUM"


class GraphMismatch(ThreshSyncError):
    code = "GRAPH_MISMATCH"


class MalformedFile(ThreshSyncError, ValueError):
    code = "MALFORMED_FILE"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

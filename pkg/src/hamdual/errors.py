"""Exception hierarchy shared across the package.

Structural errors (NotCubic, NotSimple, ...) fire at construction time so
that every Embedding in circulation satisfies all invariants.
"""


class HamdualError(Exception):
    """Base class for all package errors."""


# --- input / format errors -------------------------------------------------

class ParseError(HamdualError):
    """Malformed rotation-text input; carries a 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(HamdualError):
    """planar_code input does not start with the expected header."""


class TruncatedRecord(HamdualError):
    """planar_code record ends before the encoded graph is complete."""


# --- structural errors -----------------------------------------------------

class NotCubic(HamdualError):
    """Some vertex does not have degree exactly 3."""


class NotSimple(HamdualError):
    """Loop, parallel edge, or asymmetric adjacency in the input."""


class OddVertexCount(HamdualError):
    """Cubic graphs have even vertex count (3n = 2e)."""


class NotConnected(HamdualError):
    """The input graph is not connected."""


class NotPlanarEmbedding(HamdualError):
    """Face count contradicts Euler's formula for the plane."""


class FaceNotCycle(HamdualError):
    """A face walk repeats a vertex (graph is not 2-connected)."""


# --- operation errors ------------------------------------------------------

class CycleNotInGraph(HamdualError):
    """A cycle passed for rendering uses an edge absent from the graph."""


class IndexOutOfRange(HamdualError, IndexError):
    """An edge/face/vertex id is outside the valid range."""


class EdgeNotOnCycle(HamdualError):
    """Queried edge does not lie on the current cycle."""


class NoComplementaryPath(HamdualError):
    """Expansion requested through an edge with no admissible path."""


class ScriptEdgeInvalid(HamdualError):
    """A scripted expansion names an edge that cannot be expanded."""


class IdOutOfRange(HamdualError, IndexError):
    """Certificate references a face or edge id that does not exist."""


class ReconstructionFailed(HamdualError):
    """Tree-to-cycle reconstruction did not produce a single spanning cycle."""


class ReplayMismatch(HamdualError):
    """Replaying a certificate's expansion order hit an impossible step."""

    def __init__(self, message, step=None, edge=None):
        self.step = step
        self.edge = edge
        super().__init__(message)


class TooLarge(HamdualError):
    """Instance exceeds a hard size limit of the requested algorithm."""

"""Exception hierarchy shared across the package.

``InvariantError`` subclasses signal that an internal mathematical
invariant failed, i.e. a bug somewhere upstream; ``PreconditionError``
subclasses signal bad or unsupported input.  The CLI maps the two
families to distinct exit codes.
"""


class Z2HodgeError(Exception):
    """Base class for all package errors."""


class PreconditionError(Z2HodgeError):
    """Input violates a documented precondition."""


class InvariantError(Z2HodgeError):
    """An internal invariant failed; indicates an upstream bug."""


# --- linear algebra ---------------------------------------------------------

class NoFactorization(PreconditionError):
    """No map R with ``q_tgt = R * q_src`` exists (kernel not nested)."""


class ZeroVector(PreconditionError):
    """Operation undefined for the zero vector."""


# --- polytopes and fans -----------------------------------------------------

class NotFullDimensional(PreconditionError):
    """Polytope does not span the ambient space."""


class OriginNotInterior(PreconditionError):
    """The origin is not strictly interior to the polytope."""


class NotReflexive(PreconditionError):
    """Operation requires a reflexive polytope."""


class DimensionMismatch(PreconditionError):
    """Objects live in lattices of different ranks."""


class NotACover(PreconditionError):
    """The given pair of cones is not a cover relation."""


# --- cosheaves and complexes ------------------------------------------------

class FunctorialityViolation(InvariantError):
    """Two composite restrictions around a diamond disagree."""


class BoundarySquareNonzero(InvariantError):
    """The assembled chain complex has a nonzero boundary square."""


class CorrespondenceMismatch(PreconditionError):
    """Sheaf and correspondence refer to different fans."""


class NotExactInput(PreconditionError):
    """The given triple of maps is not a short exact sequence."""


class NotACycle(InvariantError):
    """A chain that must be a cycle fails the boundary test."""


class ColumnSumBelowBetti(InvariantError):
    """A Hodge-table column sum fell below the Betti number it bounds."""


# --- I/O ---------------------------------------------------------------------

class ParseError(PreconditionError):
    """Malformed polytope input file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

"""Exception types raised by the library."""


class TriplateError(Exception):
    """Base class for all library-specific errors."""


class CollinearVertices(TriplateError, ValueError):
    """Triangle vertices are collinear (zero area within tolerance)."""


class NoValidLabeling(TriplateError, ValueError):
    """No cyclic vertex labeling yields a valid canonical frame."""


class IndexOutOfGrid(TriplateError, IndexError):
    """Grid index (r, s) violates m >= r >= s >= 0."""


class OutsideDomain(TriplateError, ValueError):
    """Point does not belong to the requested hexagon sub-domain."""


class OutsideElement(TriplateError, ValueError):
    """Point lies outside the element triangle."""


class OutsideModel(TriplateError, ValueError):
    """Point lies outside every element of the model."""


class QuadratureFailure(TriplateError, ValueError):
    """Quadrature rule unavailable or integration domain degenerate."""


class NodeMismatch(TriplateError, ValueError):
    """Adjacent element edges carry non-coincident node grids."""


class EmptyEdge(TriplateError, ValueError):
    """A boundary-condition edge matches no global nodes."""


class SingularSystem(TriplateError, RuntimeError):
    """Reduced stiffness matrix is singular (insufficient constraints)."""


class NotConverged(TriplateError, RuntimeError):
    """Direct solve produced a residual above the accepted bound."""


class PermutationNotFound(TriplateError, ValueError):
    """No node permutation maps the oracle model onto the multiresolution model."""


class DimensionMismatch(TriplateError, ValueError):
    """Array arguments have inconsistent shapes."""


class UnknownCase(TriplateError, KeyError):
    """Benchmark case name is not one of the built-in cases."""


class ConfigError(TriplateError, ValueError):
    """Problem configuration file is malformed or violates the schema."""

"""courantcalc: exact symbolic calculus on Courant algebroids.

Builds frame-based Courant algebroids over polynomial/rational-function
coefficients, verifies their axioms exactly, realizes the graded cochain
algebra with its differential and Cartan calculus, constructs and checks
Dorfman connections (curvature, duals, Bianchi identity), and computes
standard-complex cohomology over a point.  Everything runs in exact rational
arithmetic; identity checks report zero/nonzero residuals, never tolerances.
"""

from .algebroid import (
    CourantAlgebroid,
    Section,
    algebroid_from_json,
    algebroid_to_json,
    build_from_structure_data,
    build_port_hamiltonian,
    build_quadratic_lie_algebra,
    build_standard,
    verify_axioms,
)
from .battery import Battery
from .cohomology import PointComplex
from .report import Check, PreconditionError, Report
from .scalar import (
    ParseError,
    PoleError,
    Scalar,
    ScalarError,
    monomials_up_to,
    parse_scalar,
    random_polynomial,
)

__version__ = "0.1.0"

"""Vector majorization inequalities on ordered spaces: checkers, verifiers and a search harness."""

from .convex import (
    ClassVerdict,
    box_increment,
    check_2box_monotone,
    check_isotone,
    check_isotone_differential,
    check_omega_convex,
    check_strongly_smooth,
    legendre_conjugate,
)
from .majorization import (
    DiscreteMeasure,
    DoublyStochasticMatrix,
    MajorizationVerdict,
    Relation,
    check_hlp,
    check_L_down,
    check_R_up,
    check_relation,
    verify_ostrowski,
)
from .models import FunctionModel, Modulus
from .order import DEFAULT_TOL, OrderedSpace, Tolerance, cone_contains, jacobi_eigh, leq
from .theorems import (
    InequalityReport,
    Theorem,
    verify_parallelogram,
    verify_T4,
    verify_T5,
    verify_T6,
    verify_T7,
    verify_T8,
    verify_T9,
    verify_T10,
)
from .zoo import resolve

__version__ = "0.1.0"

"""Chern-connection invariants of left-invariant Hermitian structures on
Lie algebras, computed directly from structure constants.

The package is organized around a real presentation (structure constants,
complex structure, metric), a complex presentation (the C, D tensors in a
unitary frame), torsion/curvature/holomorphic sectional curvature of the
Chern connection, and a verifier for the flatness theorem on solvable
algebras with complex commutator.
"""

__version__ = "0.1.0"

from .core import (
    ComplexPresentation,
    CurvatureTensor,
    Frame,
    HermitianStructure,
    RealLieAlgebra,
    TorsionTensor,
    build_unitary_frame,
    change_frame,
    complex_bracket_tensor,
    complexify,
    realify,
    standard_presentation,
)
from .checks import (
    PureTypeReport,
    SeriesReport,
    adjoint_trace_defect,
    bianchi_defect,
    classify_pure_type,
    commutator_complex_residual,
    commutator_subalgebra,
    jacobi_defect,
    nijenhuis_defect,
    series_report,
    unimodular_defect,
)
from .forms import LeftInvariantForm, exterior_d
from .chern import (
    ConnectionMatrix,
    chern_curvature,
    chern_torsion,
    connection_matrix,
    constant_H_test,
    curvature_via_forms,
    holomorphic_sectional,
    symmetrize,
)
from .admissible import (
    AdmissibleData,
    FlatStructureReport,
    TheoremVerdict,
    adapted_commutator_frame,
    flat_structure_check,
    is_admissible,
    lemma_goal_check,
    salamon_normalize,
    verify_theorem,
)
from .catalog import (
    CatalogParams,
    ConstraintReport,
    complex_lie_instance,
    heisenberg_example,
    kodaira_thurston,
    pure_typeII_instance,
    random_scramble,
    six_dim_constraints,
    six_dim_instance,
    typeII_YZ,
)
from . import errors
from .utils import DEFAULT_TOL, FLATNESS_TOL, STRUCTURE_TOL

__all__ = [name for name in dir() if not name.startswith("_")]

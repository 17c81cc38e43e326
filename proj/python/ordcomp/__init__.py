"""Order completion toolkit.

Discrete Baire operators and Hausdorff continuity on grids, Dedekind-MacNeille
completion of finite posets, and certified one-sided piecewise polynomial
solutions of nonlinear PDEs.
"""

from ._core import (  # noqa: F401
    Audit,
    CutLattice,
    DomainMismatch,
    Error,
    GridFunction,
    InvalidInput,
    NotDense,
    ParseError,
    Poset,
    Problem,
    Side,
    Solution,
    SolveFailure,
    assimilate_f0,
    baire_lower,
    baire_upper,
    check_condition_23,
    discontinuity_report,
    graph_completion,
    is_complete_lattice,
    is_h_continuous,
    is_nearly_finite,
    jet_solve,
    macneille_complete,
    preserves_bounds,
    refine,
    solvable,
    solve,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]

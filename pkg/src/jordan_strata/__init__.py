"""Sharp Jordan-type bounds for sinc on (0, pi/2): families, minimax solves and certificates."""
from .family import (
    HALF_PI,
    PI,
    DomainError,
    EndpointLimits,
    FamilyKind,
    FamilySpec,
    coeff_A,
    coeff_B,
    dphi_dp,
    dphi_dq,
    dphi_dx,
    endpoint_limits,
    gA,
    gB,
    phi,
    sinc,
)
from .solve import (
    BracketError,
    ExtremumKind,
    ExtremumRecord,
    RootRecord,
    bisect,
    bracket_scan,
    find_extrema,
    sup_abs_deviation,
)
from .minimax import (
    MinimaxResult,
    Regime,
    SolverError,
    classify,
    critical_constants,
    deviation_tables,
    solve_all,
    solve_minimax_A,
    solve_minimax_B,
    solve_minimax_fixed_q,
)
from .inequalities import RangeError, classical_bounds, verify_statement3
from .polynomial import RationalPoly
from .certify import (
    CertificateError,
    Direction,
    Sign,
    Trig,
    certify_lemma,
    combine_bound,
    count_roots,
    maclaurin,
    sturm_chain,
    sturm_sign,
)

__version__ = "0.1.0"

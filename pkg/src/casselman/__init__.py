"""
Exact computation of deformed Kazhdan-Lusztig R-polynomials r_{u,v}(z), the
Casselman transition matrices m, m' and r', and the correction coefficients
c_{u,v} for finite Weyl groups, together with verification suites and
conjecture scans.
"""

from .errors import (
    BadSample,
    CasselmanError,
    IndexOutOfRange,
    MixedRootSystems,
    NoLimit,
    NotComparable,
    NotSimplyLaced,
    UnsupportedType,
)
from .hecke import (
    HeckeAlgebra,
    HeckeElt,
    lambda_functional,
    m_via_hecke,
    mu_element,
    t_inverse,
    t_mul,
)
from .klpoly import c_coeff, classical_R, kl_P, kl_precedes, kl_Q, kl_table, mu_coefficient
from .modular import ModCtx, ModularScalars, eval_mod
from .report import Report
from .symbolics import (
    Laurent,
    QPoly,
    RatFn,
    SymbolicScalars,
    bar,
    invert_z,
    limit_z_infinity,
    ratfn_add,
    ratfn_mul,
    ratfn_neg,
    reduce,
)
from .transition import (
    CasselmanEngine,
    gk_product,
    m_coeff,
    m_prime,
    modular_engines,
    r_def,
    r_from_m,
    r_prime,
    symbolic_engine,
)
from .weyl import (
    RootSystem,
    WeylElt,
    WeylGroup,
    act_on_root,
    ad_min,
    bruhat_interval,
    bruhat_leq,
    build_root_system,
    cartan_matrix,
    element_from_word,
    inverse,
    multiply,
    parse_element,
    s_sets,
)

__version__ = "0.1.0"

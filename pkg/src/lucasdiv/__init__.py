"""Lucas sequences U(a, b) with b = +-1 and the divisibility U_m | U_{n+k}^s - U_n^s.

Submodules:

    lucas_core    exact and modular U_n, V_n; classical identities
    numtheory     arithmetic functions, cyclotomic polynomials, resultants
    valuation     rank of appearance, p-adic valuations, S-parts
    order_solver  least exponent s and the grid scan of the bound m < 20000 (sk)^2
    algebraic     quadratic/cyclotomic exact arithmetic and dependence witnesses
    cli           command-line front end (`lucasdiv`)
"""
from .lucas_core import (
    DEGENERATE_PAIRS,
    DegenerateParamsError,
    LucasParams,
    lucas_u,
    lucas_v,
    lucas_pair,
    lucas_u_mod,
    lucas_table,
)
from .numtheory import cyclotomic, euler_phi, resultant, short_vector
from .valuation import nu_p_of_lucas, rank_of_appearance, s_part
from .order_solver import (
    DivRecord,
    ScanConfig,
    min_s_at_n,
    min_s_over_n,
    structural_s,
    verify_theorem,
)
from .algebraic import (
    QuadElem,
    check_norm_identity,
    find_dependence,
    v_star,
    xi_value,
)

__version__ = "0.1.0"

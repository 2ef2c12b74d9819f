"""Order-six complex Hadamard matrices of Schmidt rank three: builders,
MUB exclusion scans, and entangling power of the associated qubit-qutrit
controlled unitaries."""

from .numerics import Tolerances
from .chm import (
    Eq5Params,
    H3Params,
    build_eq5,
    build_h3,
    build_h4,
    equivalence_transform,
    h3_params,
    is_chm,
    schmidt_rank,
    split_blocks,
    structure_report,
)
from .entangle import (
    ControlledUnitary,
    ProductInput,
    SweepSpec,
    build_uab,
    ep_lower_bound,
    ep_optimize,
    entropy,
    max_condition_residuals,
    rho_aa,
    sweep,
    uab_family_x,
)
from .mub import (
    appendix_c_scan,
    exclusion_scan,
    is_trio,
    trio_extension_search,
    unbiased,
)

__version__ = "0.1.0"

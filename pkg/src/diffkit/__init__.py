"""diffkit: perfect difference families and friends.

Construction of perfect difference families, perfect systems of difference
sets, layered difference families, and cyclic difference families from
closed-form generators and embedded tables; independent brute-force
verification with machine-checkable certificates; exact-cover search for
sporadic blocks and nonexistence proofs; and derived application objects
(difference triangle sets, optical and geometric orthogonal codes, additive
permutation sequences, perfect difference matrices, graceful windmill
labelings).
"""

from .core import (
    Block,
    ConstructionGapError,
    Family,
    InadmissibleError,
    InvalidBlockError,
    InvalidFamilyError,
    InvalidIntervalError,
    NonexistentError,
    SteppedInterval,
    as_block,
    coverage_equals,
    diffs_mod,
    diffs_positive,
    expand_interval,
)
from .groupring import (
    GroupRingElem,
    builtin_layered,
    delta_star,
    delta_star_plus,
    layered_instance,
    verify_ldf,
    verify_pldf,
)
from .constructions import (
    ParamRow,
    SporadicSet,
    appendix_blocks,
    cdf_4_lambda,
    parametric_layer,
    pdf_3_1,
    pdf_4_1,
    pdf_4_2,
    pdf_4_3,
    pdf_4_6,
    pdf_4_lambda,
    psds_4_3,
    psds_lift_c3_to_c1,
    table_row,
)
from .verify import (
    Certificate,
    verify_asp,
    verify_cdf,
    verify_cdp,
    verify_dts,
    verify_family,
    verify_gdp,
    verify_goc,
    verify_graceful_windmill,
    verify_ooc,
    verify_pdf,
    verify_pdm,
    verify_psds,
)
from .search import (
    CoverProblem,
    SearchBudget,
    SearchResult,
    complete_cover,
    nonexistence_sweep,
    search_asp3,
    search_small_cdf,
    search_small_pdf,
)
from .derive import (
    Labeling,
    asp2,
    dts_from_pdf,
    gdp_from_pdfs_pdm,
    goc_from_gdp,
    graceful_from_pdf,
    ooc_from_pdf,
    pdm_from_asp,
    pdm_with_baseline_row,
)

__version__ = "0.1.0"

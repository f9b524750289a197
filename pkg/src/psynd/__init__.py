"""Finite-window workbench for piecewise-syndetic structure, polynomial
return-time sets, and the sequence systems they induce."""

from .constants import RealSpec, parse_real
from .errors import (
    BadBoundError,
    BadEpsilonError,
    DegreeTooLowError,
    EmptySetError,
    NoRowError,
    NotIntegralError,
    NotPartitionError,
    NotNormalFormError,
    NotVanishingError,
    PsyndError,
    RadiusExhaustedError,
    WindowExhaustedError,
)
from .induced import (
    OrbitBlock,
    PeriodicBlock,
    SplitBlock,
    shift_block,
    apply_map,
    block_distance,
    orbit_block,
    periodic_extension,
    recurrence_times,
    split_block,
)
from .polynomials import (
    IntegralPolynomial,
    PolyFamily,
    check_normal_form,
    essentially_distinct,
    parse_polynomial,
    reduce_to_normal_form,
    separation_constant,
    separation_holds,
    shift_coincidence,
)
from .returnsets import (
    ReturnQuery,
    combinatorial_set_2d,
    masked_dilation_2d,
    pws_area_witness_2d,
    return_set_1d,
    return_set_2d,
    shift_cover_search,
)
from .systems import (
    HeisenbergNil,
    IndicatorSubshift,
    Point,
    SkewProduct,
    SystemSpec,
    TorusRotation,
    Word,
    in_ball,
    indicator_subshift_point,
    iterate,
    poly_orbit,
    system_from_json_obj,
)
from .windows import (
    GapSummary,
    GridSet,
    PartitionResult,
    PwsCert,
    PwsCert2D,
    Syndetic2DCert,
    SyndeticCert,
    SyndeticRefutation,
    ThickCert,
    WindowSet,
    best_slice,
    dilate,
    dilate_2d,
    find_ap,
    gap_summary,
    grid_slice,
    longest_run,
    max_gap,
    max_rectangle,
    partition_pws,
    pws_witness,
    pws_witness_2d,
    run_starts,
    syndetic_2d_certificate,
    syndetic_certificate,
    thickly_syndetic_certificate,
    verify_pws,
    verify_pws_2d,
    verify_syndetic,
    verify_syndetic_2d,
    verify_thick,
)

__version__ = "0.1.0"

"""Exact domino tiling counts for cruciform regions and checks of their product formulas."""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    Cell, CruciformParams, GeometryError, Region, build_aztec_diamond, build_aztec_rectangle,
    build_cruciform, build_di_francesco, build_elbow, build_half_diamond, build_half_square,
    build_t_region, region_from_json, region_to_json, transform_region,
)
from .dualgraph import DualGraph, dual_graph, intruded_ar_graph, reduce_forced  # noqa: E402
from .engines import count, count_brute, count_kasteleyn, count_transfer, count_with_engine  # noqa: E402
from .closed_forms import ExactScaled, cruciform_value, elbow_value, hyperfactorial  # noqa: E402

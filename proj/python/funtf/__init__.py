"""Uniform sampling of finite unit-norm tight frames (FUNTFs).

Thin Python layer over the C++ core. Frames are complex numpy arrays of
shape (d, N) whose columns are the frame vectors.
"""

from ._funtf import (  # noqa: F401
    FuntfError,
    InvalidArgument,
    NumericalError,
    Polytope,
    SamplingError,
    circle_action,
    coherence,
    coherence_bound,
    coherence_histogram,
    complete_table,
    eigenlift_sample,
    eigensteps_of,
    extract_independent,
    fiber_heatmap,
    frame_operator,
    index_set,
    is_full_spark,
    is_tight,
    is_unit_norm,
    lift_to_fiber,
    limit_weight,
    partial_frame_operator,
    sample_batch,
    torus_action,
    uniformity_test,
    validate_table,
)

__version__ = "0.1.0"

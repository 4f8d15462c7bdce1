"""Exact computations for quiver flag varieties: invariants, tilting bundles, toric and Plücker data."""

from .errors import *  # noqa: F401,F403
from .quiver import (
    Quiver,
    QuiverFlagSpec,
    anticanonical_exponents,
    dimension,
    fano_sufficient,
    is_nonempty,
    load_spec,
    make_spec,
    path_count,
    s_vectors,
    simplify,
    spec_from_counts,
    spec_from_json,
    unstable_codimension,
    validate,
)

__version__ = "0.1.0"

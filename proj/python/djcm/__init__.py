"""Deformed Jaynes-Cummings dynamics of a driven V-type three-level atom."""

from ._core import (
    Deformation,
    ModelParams,
    __version__,
    characteristic_roots,
    compute_series,
    husimi,
    make_figure,
    sector_coefficients,
    solve,
    validate,
)

__all__ = [
    "Deformation",
    "ModelParams",
    "__version__",
    "characteristic_roots",
    "compute_series",
    "husimi",
    "make_figure",
    "sector_coefficients",
    "solve",
    "validate",
]

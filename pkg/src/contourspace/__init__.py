"""Hierarchical local polar contour encoding of 2D binary shapes with a
shared robust low-rank radius basis."""

from .contours import (
    HierarchicalEncoding,
    LocalContour,
    choose_center,
    contour_to_polygon,
    iou,
    reconstruct_mask,
    sample_polar,
)
from .hierarchy import EncoderConfig, hierarchical_encode, total_solidity
from .masks import (
    DegenerateCloudError,
    EmptyMaskError,
    area,
    boundary_pixels,
    connected_components,
    convex_hull,
    distance_transform,
    inscribed_circle_center,
    least_variance_direction,
    mass_center,
    solidity,
)
from .raster import rasterize_polygon
from .subspace import (
    ContourMatrix,
    CoefficientSet,
    SubspaceBasis,
    build_contour_matrix,
    effective_rank,
    fms_basis,
    project,
    reconstruct_radii,
    svd_basis,
)

__version__ = "0.1.0"

__all__ = [
    "HierarchicalEncoding",
    "LocalContour",
    "choose_center",
    "contour_to_polygon",
    "iou",
    "reconstruct_mask",
    "sample_polar",
    "EncoderConfig",
    "hierarchical_encode",
    "total_solidity",
    "DegenerateCloudError",
    "EmptyMaskError",
    "area",
    "boundary_pixels",
    "connected_components",
    "convex_hull",
    "distance_transform",
    "inscribed_circle_center",
    "least_variance_direction",
    "mass_center",
    "solidity",
    "rasterize_polygon",
    "ContourMatrix",
    "CoefficientSet",
    "SubspaceBasis",
    "build_contour_matrix",
    "effective_rank",
    "fms_basis",
    "project",
    "reconstruct_radii",
    "svd_basis",
    "__version__",
]

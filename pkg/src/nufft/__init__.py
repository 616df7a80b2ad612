"""Nonuniform FFTs (Type 1 and Type 2) with a truncated-Gaussian gridding kernel."""

from src.nufft.plan import NufftPlan, make_plan, spreading_width
from src.nufft.transforms import nufft_type1, nufft_type2, nufft_type2_many, wrap_nodes

__all__ = [
    "NufftPlan",
    "make_plan",
    "spreading_width",
    "nufft_type1",
    "nufft_type2",
    "nufft_type2_many",
    "wrap_nodes",
]

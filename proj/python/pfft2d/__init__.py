"""2D DFT over thread groups with model-driven row partitioning."""

from ._core import (
    DomainError,
    __version__,
    load_model_csv,
    mean_using_ttest,
    partition_rows,
    plan_padding,
    t_critical,
    transform,
    transform_flops,
    variation_percent,
)

__all__ = [
    "DomainError",
    "__version__",
    "load_model_csv",
    "mean_using_ttest",
    "partition_rows",
    "plan_padding",
    "t_critical",
    "transform",
    "transform_flops",
    "variation_percent",
]

from .biseries import BiSeries
from .rings import ColorPoly, GaussianRational, I, specialize
from .series import (
    Series,
    SeriesError,
    compose,
    eval_poly,
    newton_lift,
    revert,
    series_arith,
    series_compose,
    series_revert,
    series_sqrt,
    sqrt,
)

__all__ = [
    "BiSeries",
    "ColorPoly",
    "GaussianRational",
    "I",
    "Series",
    "SeriesError",
    "compose",
    "eval_poly",
    "newton_lift",
    "revert",
    "series_arith",
    "series_compose",
    "series_revert",
    "series_sqrt",
    "specialize",
    "sqrt",
]

from .plot import build_figure, extract_data_model, load_series, render_epl_vs_delta

__all__ = [
    "build_figure",
    "extract_data_model",
    "load_series",
    "render_epl_vs_delta",
]

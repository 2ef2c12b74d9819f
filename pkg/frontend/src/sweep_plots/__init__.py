from .plot import PlotJob, read_sweep_csv, render

__version__ = "0.1.0"

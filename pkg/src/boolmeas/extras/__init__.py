"""
Extras: demonstrations built on the core modules.
"""

from .density import DensityReport, density_demo, log_schedule

__all__ = ["DensityReport", "density_demo", "log_schedule"]

"""Sample points on every connected component of a smooth real algebraic set.

Typical use::

    from polarpoints import parse_system, run_main, RunConfig
    report = run_main(parse_system("x1^2 + x2^2 - 1"), RunConfig(seed=7))
    report.points
"""

from .driver import RunConfig, RunReport, run_main, sample_sizes
from .sysbuild import InputSystem
from .sysio import parse_system

__all__ = ["InputSystem", "RunConfig", "RunReport", "parse_system", "run_main", "sample_sizes"]
__version__ = "0.1.0"

"""TACT spin squeezing under a depolarizing channel.

Engines:
  - exact: dense small-N Lindblad oracle (ground truth)
  - linearized: Holstein-Primakoff / Bogoliubov Gaussian dynamics
  - analytic: closed-form squeezing and signal-to-noise expressions
  - optimize: deterministic maximizers for the protocol optima
  - cli: sweep runner with deterministic CSV output
"""

__version__ = "0.1.0"

from . import analytic, core, exact, linearized, optimize  # noqa: F401

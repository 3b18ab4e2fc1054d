"""ANFIS + adaptive PSO structure tuning.

Thin re-export of the compiled core: a Takagi-Sugeno fuzzy engine with hybrid
least-squares/gradient training, canonical PSO, a (1+1)-EA with the 1/5
success rule, the adaptive PSO wrapper that retunes its own parameters
mid-flight, a 133-gene FIS structure genome, GA/DE/HS baselines, and the
experiment driver behind the CLI.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

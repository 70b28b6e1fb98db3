"""Confidence regions with maximal average power for the binomial experiment."""

from ._avgpower import *  # noqa: F401,F403
from ._avgpower import __doc__  # noqa: F401

NON_INFORMATIVE = BetaPrior(0.5, 0.5)  # noqa: F405
INFORMATIVE = BetaPrior(100.0, 100.0)  # noqa: F405

"""Biomarker monitoring toolkit.

Thin re-export of the compiled extension; see the project README for the
full tour (recovery fitting, threshold monitoring, predictor ranking,
activity features, deterministic generators).
"""

from ._biomon import *  # noqa: F401,F403
from ._biomon import __version__  # noqa: F401

"""Exact Weingarten calculus, cumulants and de Finetti gaps for easy quantum groups.

Partitions are passed as text ("1,2|3,4"), words as lists of positive ints,
and every exact value comes back as a fractions.Fraction.
"""

from ._core import *  # noqa: F401,F403
from ._core import EasyqgError, __doc__  # noqa: F401

__version__ = "0.1.0"

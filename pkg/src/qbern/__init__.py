"""Modified q-Bernstein polynomials of several variables."""
from .errors import *  # noqa: F401,F403
from .qcore import Domain, QContext, QCoord, QPoint, gauss_binomial, q_factorial, q_number
from .bernstein import q_bernstein, q_bernstein_operator, partition_sum
from .interp import interp_q

__version__ = "0.1.0"

"""frobq: exact arithmetic for generalized Frobenius partition congruences.

Subpackages cover cyclotomic arithmetic and Gauss sums, truncated q-series
and eta quotients, the generating functions and their theta decomposition,
the metaplectic double cover and its characters, rank-1 Weil
representations, the vector-valued transformation laws, U-operator
pipelines and congruence scanners, a numeric law battery, and the character
norm of the representation.  A FastAPI service (`frobq.service`) and a thin
CLI (`frobq`) expose the machinery.
"""

__version__ = "0.1.0"

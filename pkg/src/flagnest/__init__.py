"""Exact-arithmetic classification of nestings of classical flag varieties.

Subpackages split by concern: `dynkin` (diagram combinatorics), `exactpoly`
(rational and graded polynomial arithmetic), `chern` (Schur-minor positivity
and the 1 - t^k factorization engine), `cohomology` (presentations of the
cohomology rings and their degree ledgers), `constructions` (the explicit
sections that realize the positive cases), `classifier` (the decision
procedure with traces), and `cli` (command line front end).
"""

__version__ = "0.1.0"

WIRE_SCHEMA = "flagnest/1"

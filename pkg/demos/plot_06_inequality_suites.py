"""
Inequality suites
=================

Finite-horizon checks of the relations between the density notions,
with slack.  The same run backs ``approxstruct check``.
"""

from approxstruct.checks import run_suite
from approxstruct.io import RunConfig

results = run_suite("chain", RunConfig(tolerance=0.02))
for res in results:
    print(res.line())

###############################################################################
# A tolerance of zero exposes the finite-horizon slack

strict = run_suite("thm25", RunConfig(tolerance=0.0))
print(sum(r.passed for r in strict), "of", len(strict), "pass with zero slack")

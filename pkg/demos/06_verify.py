"""
Theorem checks
==============

The verify suites rerun the structural results as executable checks.  The
same report is available as ``zeckgame verify``.
"""

# %%
from zeckgame.verify import run_suites

for check in run_suites("all", max_n=30, samples=500):
    print(f"{'ok  ' if check.passed else 'FAIL'} [{check.suite}] {check.name} {check.detail}")

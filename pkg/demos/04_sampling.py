"""
Reproducible Monte Carlo
========================

Each game draws from its own xoshiro256** stream derived from (seed, game
index), so results do not depend on the thread count.  Sampled lengths are
compared with the exact law by a chi-square test.
"""

# %%
import numpy as np

from zeckgame import length_distribution
from zeckgame.sampling import sample_lengths
from zeckgame.stats import chi_square_test

for measure in ("random", "uniform"):
    r = sample_lengths(12, measure, seed=1, count=20_000)
    stat, dof, p = chi_square_test(r.lengths, length_distribution(12, measure).probabilities())
    print(f"{measure:7s} chi-square {stat:.2f} on {dof} dof, p = {p:.3f}")

# %%
a = sample_lengths(500, "random", seed=7, count=400, threads=1)
b = sample_lengths(500, "random", seed=7, count=400, threads=4)
print("1 vs 4 threads identical:", np.array_equal(a.lengths, b.lengths))

# %%
# Large inputs: lengths and the number of split moves, per N
N = 20_000
r = sample_lengths(N, "random", seed=3, count=200)
print(f"N={N}: mean length / N = {r.lengths.mean() / N:.4f}, mean splits / N = {r.splits.mean() / N:.4f}")

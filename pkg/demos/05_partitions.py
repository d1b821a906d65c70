"""
Partitions of the game set
==========================

Games are grouped by compressing short move patterns.  Within a basic-prefix
class the length is an offset plus a sum of independent Bernoulli variables,
uniform p = 1/2 under the uniform measure and p_i = 1/(1 + n_i) under random
play.  More delimiters per class means a length law closer to normal.
"""

# %%
from zeckgame import parse_game
from zeckgame.partitions import class_ks, class_summary, m_statistics, partition_check, representative

g = parse_game("5:C1,C1,S2,C1,C3")
rep, base = representative(g, "basic")
print(g, "->", rep, " delimiters at", [d.position for d in base.delimiters])

for scheme in ("basic", "prefix", "suffix"):
    r = partition_check(9, scheme)
    print(f"{scheme:6s} N=9: {r.n_classes} classes over {r.n_games} games, ok={r.ok}")

# %%
s = class_summary(rep, "basic", "random")
print("Bernoulli parameters", s.bernoulli_params, "branch counts", s.branch_counts)
print("conditional length law", s.conditional_dist.probabilities())

# %%
for N in (8, 11, 14, 20):
    st = m_statistics(N, "random", with_max_class=False)
    print(f"N={N:2d} median delimiter count {st.median_m}")

# %%
worst = max((c for c in class_ks(11, "basic", "uniform", 1)), key=lambda c: c.m)
print(f"largest class at 11: m = {worst.m}, size {worst.class_size}, KS {worst.ks:.3f}")

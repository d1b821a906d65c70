"""
Exact length distributions and win odds
=======================================

Two measures on complete games: uniform over all games, and random play
(each legal move equally likely at every step).  Both are computed exactly
with a dynamic program over reachable states.  The player who makes the last
move wins, so odd length means Player 1 wins.
"""

# %%
from zeckgame import count_games, length_distribution, mod_z_distribution
from zeckgame.stats import summarize

for measure in ("uniform", "random"):
    d = length_distribution(5, measure)
    print(measure, d.probabilities())

print("number of games at 12:", count_games(12))

# %%
for N in (8, 16, 24, 36):
    for measure in ("uniform", "random"):
        p1 = mod_z_distribution(N, measure, 2)[1]
        print(f"N={N:2d} {measure:7s} P(Player 1 wins) = {float(p1):.8f}")

# %%
d = length_distribution(40, "random")
s = summarize(d)
print(f"N=40 random play: mean {s.mean:.3f} variance {s.variance:.3f} "
      f"skewness {s.skewness:.3f} KS to normal {s.ks_to_normal:.4f}")

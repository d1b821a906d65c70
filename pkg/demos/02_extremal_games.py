"""
Shortest, longest and every length in between
=============================================

A shortest game uses combines only and has N - Z(N) moves.  The longest
games are built greedily and meet an explicit upper bound at N = 12, 33, 88.
Every length between the two extremes is achievable.
"""

# %%
from zeckgame.strategies import (
    achievable_interval,
    game_of_length,
    length_upper_bound,
    longest_game,
    shortest_game,
)
from zeckgame import validate_game

for N in (12, 33, 88, 100):
    s, l = shortest_game(N), longest_game(N)
    print(f"N={N:4d} shortest {len(s):4d}  longest {len(l):4d}  bound {length_upper_bound(N):4d}")

# %%
N = 12
print("longest game at 12:", longest_game(N))
for m in achievable_interval(N):
    g = game_of_length(N, m)
    validate_game(N, g.moves)
    print(m, g)

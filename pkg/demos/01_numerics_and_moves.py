"""
Zeckendorf decompositions and a first game
==========================================

Every positive integer is a unique sum of non-adjacent Fibonacci numbers
(with F_1 = 1, F_2 = 2).  The game starts from N copies of F_1 and ends at
that decomposition.
"""

# %%
from zeckgame import initial_state, legal_moves, apply_move, zeckendorf, fib
from zeckgame.numerics import phi_decimal

for N in (5, 12, 100, 2024):
    z = zeckendorf(N)
    print(N, "=", " + ".join(str(fib(i)) for i in z.indices), " indices", z.indices)

# phi to 40 digits, used only for display; comparisons against phi are exact
print("phi =", phi_decimal(40))

# %%
# Walk a game by always taking the first legal move in canonical order
# (combines C1.. before splits S2..).
N = 12
state = initial_state(N)
moves = []
while legal_moves(state):
    m = legal_moves(state)[0]
    moves.append(m)
    state = apply_move(state, m)
print("moves:", ",".join(map(str, moves)))
print("final state equals the decomposition:", state)

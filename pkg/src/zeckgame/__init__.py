"""Exact analysis of the Zeckendorf game.

Players alternately rewrite a multiset of Fibonacci numbers (``N`` copies of
``F_1 = 1`` at the start) with combine and split moves until the Zeckendorf
decomposition of ``N`` is reached.  The package builds extremal games,
computes exact length distributions and win odds under the uniform and the
random-play measures, samples games reproducibly, and checks the partition
structure behind the length fluctuations.
"""

from .analysis import (
    LengthDistribution,
    MeasureKind,
    achievable_length_set,
    count_games,
    enumerate_games,
    length_distribution,
    mod_z_distribution,
    shortest_game_count,
)
from .engine import (
    Game,
    GameState,
    Move,
    MoveCounts,
    apply_move,
    format_game,
    initial_state,
    legal_moves,
    parse_game,
    validate_game,
)
from .errors import *  # noqa: F401,F403
from .numerics import ZeckDecomposition, catalan, fib, fib_index, zeckendorf
from .partitions import (
    ClassSummary,
    SchemeKind,
    class_ks,
    class_summary,
    m_statistics,
    partition_check,
    representative,
)
from .sampling import sample_games, sample_lengths
from .stats import SummaryStats, binom_mod_z, ks_to_normal, summarize
from .strategies import (
    achievable_interval,
    add_one_tail,
    combine_multiset,
    game_of_length,
    length_upper_bound,
    longest_game,
    shortest_game,
    type_a_game,
)

__version__ = "0.1.0"

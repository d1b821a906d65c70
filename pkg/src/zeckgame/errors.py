"""Exception types raised across the package."""


class ZeckGameError(Exception):
    """Base class for all errors raised by zeckgame."""


class DomainError(ZeckGameError, ValueError):
    """An argument lies outside the domain of the operation (e.g. N < 1)."""


class IllegalMove(ZeckGameError, ValueError):
    """A move was applied whose precondition does not hold.

    ``step`` is the 1-based position of the move inside a replayed game, or
    ``None`` when the move was applied on its own.
    """

    def __init__(self, move, reason, step=None):
        self.move = move
        self.reason = reason
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"illegal move {move}{where}: {reason}")


class NonTerminalEnd(ZeckGameError, ValueError):
    """A replayed move list stops while legal moves remain."""


class InvalidTarget(ZeckGameError, ValueError):
    """A target decomposition does not describe a reachable position."""


class NotTypeAExpressible(ZeckGameError, ValueError):
    """No game on this input uses only C1 and split moves."""


class LengthOutOfRange(ZeckGameError, ValueError):
    """Requested game length lies outside the achievable interval."""


class StateBudgetExceeded(ZeckGameError, RuntimeError):
    """The reachable-state graph is larger than the configured budget."""


class EnumerationCapExceeded(ZeckGameError, RuntimeError):
    """Full game enumeration was requested above the configured cap."""


class NotARepresentative(ZeckGameError, ValueError):
    """A game is not a fixed point of the representative map."""


class ZeroVariance(ZeckGameError, ValueError):
    """A distribution has zero variance, so it cannot be standardized."""


class ZeroVarianceClass(ZeroVariance):
    """A partition class has a degenerate conditional length law."""

"""Exception types shared across the simulator."""


class ConfigError(ValueError):
    """A configuration file failed to parse or violated a hard invariant."""


class InfeasibleDeadlineError(ValueError):
    """The requested transfer cannot fit in the available time frame."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine hit its iteration cap before converging."""


class NoFeasiblePointError(RuntimeError):
    """Every point of a sweep grid was infeasible."""

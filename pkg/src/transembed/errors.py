"""Exception types shared across the package.

Everything raised on bad input data derives from TransembedError; numerical
blow-ups during training get their own class so callers (and the CLI exit
codes) can tell the two apart.
"""


class TransembedError(Exception):
    """Base class for errors raised by this package."""


class EdgeParseError(TransembedError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class SelfLoopError(TransembedError):
    def __init__(self, line_no: int, name: str):
        super().__init__(f"line {line_no}: self-loop edge on {name!r} rejected")
        self.line_no = line_no
        self.name = name


class CycleError(TransembedError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " -> ".join(str(c) for c in self.cycle)
        super().__init__(f"relation is not acyclic, found cycle: {path}")


class ConfigError(TransembedError):
    """Requested fold sizes or options are impossible for the given data."""


class PoolExhaustedError(TransembedError):
    """Sampling could not retain enough instances for a fold."""

    def __init__(self, fold: str, target: int, achieved: int):
        super().__init__(
            f"candidate pool for fold {fold!r} exhausted: "
            f"needed {target}, achieved {achieved}"
        )
        self.fold = fold
        self.target = target
        self.achieved = achieved


class ModelKindError(TransembedError):
    """A loss/score was asked of a model of the wrong kind."""


class DegenerateDevError(TransembedError):
    """Threshold tuning needs both labels present in the dev set."""


class UndefinedMetricError(TransembedError):
    """Ranking metrics are undefined without at least one positive."""


class VocabMismatchError(TransembedError):
    def __init__(self, missing):
        self.missing = sorted(set(missing))
        shown = ", ".join(repr(m) for m in self.missing[:10])
        more = "" if len(self.missing) <= 10 else f" (+{len(self.missing) - 10} more)"
        super().__init__(f"names absent from model vocabulary: {shown}{more}")


class DivergenceError(TransembedError):
    """Training produced a non-finite loss or parameter."""

    def __init__(self, epoch: int, batch_index: int):
        super().__init__(
            f"non-finite loss or parameter in epoch {epoch}, batch {batch_index}"
        )
        self.epoch = epoch
        self.batch_index = batch_index


class TuningFailedError(TransembedError):
    """Every grid point diverged during hyperparameter search."""

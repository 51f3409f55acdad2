class EngineError(RuntimeError):
    """Base class for counting engine failures."""


class ResourceLimitError(EngineError):
    """A configured budget (branch nodes, tiling limit) was exceeded."""


class WidthBoundError(EngineError):
    """The transfer-matrix profile would be wider than the configured bound."""


class NotSimplyConnectedError(EngineError):
    """The Kasteleyn sign gauge is only valid when every bounded face is a unit square."""

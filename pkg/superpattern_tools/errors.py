class SuperPatternError(ValueError):
    """
    Base class for every error raised by this package.
    """


class NotExpressibleError(SuperPatternError):
    ...


class ConfigError(SuperPatternError):
    ...

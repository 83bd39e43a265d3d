class ConfigError(ValueError):
    """A run file or override that cannot be turned into a run"""

    def __init__(self, errors):
        self.errors = [errors] if isinstance(errors, str) else list(errors)
        super().__init__('; '.join(self.errors))


class ExportError(RuntimeError):
    """A field about to be written contains NaN or Inf"""

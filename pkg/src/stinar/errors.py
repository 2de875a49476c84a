"""Exception types shared across the package."""


class StinarError(Exception):
    pass


class ParameterError(StinarError, ValueError):
    """A parameter lies outside its admissible domain."""


class DegenerateSeriesError(StinarError, ValueError):
    """The series carries too little variation for the requested statistic."""


class InputFormatError(StinarError, ValueError):
    """Input data or configuration could not be parsed."""


class UnsupportedConfigurationError(StinarError, ValueError):
    pass

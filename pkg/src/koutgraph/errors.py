class ConfigurationError(ValueError):
    """Raised when parameters, flags, or input files violate a documented
    precondition. The message names the precondition and the offending value.
    """

STATUS_OK = 'ok'
STATUS_INSUFFICIENT = 'insufficient-samples'
STATUS_DEGENERATE = 'degenerate-data'
STATUSES = (STATUS_OK, STATUS_INSUFFICIENT, STATUS_DEGENERATE)


class InvalidArgumentError(ValueError):
    """ Raised when an operation gets an argument outside its domain """
    pass

class InvalidProblemError(ValueError):
    """ Raised when a domain, behaviour and dimension do not form a problem """
    pass

class EmptyArchiveError(ValueError):
    """ Raised when a dataset is requested from an archive without elites """
    pass

class InvalidBudgetError(ValueError):
    """ Raised when an extra-evaluation budget entry is not positive """
    pass

class FeatureError(Exception):
    """ Raised when a feature group cannot be computed on a dataset """
    status = STATUS_DEGENERATE

class InsufficientSamplesError(FeatureError):
    """ Raised when a dataset is too small for a feature group """
    status = STATUS_INSUFFICIENT

class DegenerateDataError(FeatureError):
    """ Raised when a dataset has no spread to measure (constant fitness, coincident points) """
    status = STATUS_DEGENERATE

class ConfigError(ValueError):
    """ Raised when an experiment configuration is malformed """
    def __init__(self, message, lineno=None, key=None):
        self.lineno = lineno
        self.key = key
        self.message = message
        if lineno is not None:
            message = f'line {lineno}: {message}'
        super().__init__(message)

class StopException(Exception):
    """ Raised inside run threads to stop an experiment """
    pass

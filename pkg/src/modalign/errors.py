"""Exception taxonomy shared across the pipeline.

Each class maps to a CLI exit code: usage/config errors exit 1, data errors
exit 2, training errors exit 3, checkpoint/artifact IO errors exit 4.
"""


class ModalignError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(ModalignError):
    """Bad configuration: unknown key, type mismatch, invalid value."""

    exit_code = 1


class DataError(ModalignError):
    """Bad dataset: missing manifest, shape mismatch, label out of range."""

    exit_code = 2


class TrainingError(ModalignError):
    """Training failure, e.g. a loss term went non-finite."""

    exit_code = 3

    def __init__(self, message, iteration=None, term=None):
        super().__init__(message)
        self.iteration = iteration
        self.term = term


class CheckpointError(ModalignError):
    """Checkpoint IO failure: corrupt file, version or architecture mismatch."""

    exit_code = 4

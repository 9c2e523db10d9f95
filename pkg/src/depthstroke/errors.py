"""Exception hierarchy shared across the package.

Everything that rejects bad *input data* derives from ValidationError so the
CLI can map it to a single exit code; programming errors stay ordinary
exceptions.
"""


class ValidationError(ValueError):
    """Input data violates a documented constraint."""


class StrokeValidationError(ValidationError):
    """A stroke, sample, or pressure profile is structurally invalid."""


class DatasetFormatError(ValidationError):
    """A dataset file could not be parsed or fails its invariants."""


class ModelError(ValidationError):
    """Base for persisted-model problems."""


class ModelFormatError(ModelError):
    """The model file is not parseable as the expected structure."""


class ModelVersionError(ModelError):
    """The model file declares an unsupported format version."""


class ModelTopologyError(ModelError):
    """The model file's topology or weight shapes are inconsistent."""


class PipelineError(ValidationError):
    """A processing stage failed; the message names the stage."""


class ConfigError(ValidationError):
    """A pipeline/service configuration file is invalid."""

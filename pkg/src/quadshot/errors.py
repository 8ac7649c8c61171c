"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A run configuration is malformed or out of bounds."""


class MissingPrerequisiteError(RuntimeError):
    """A stage was invoked without the checkpoint a prior stage produces."""


class SimulationFault(RuntimeError):
    """Non-finite commands or state reached the physics stepper."""

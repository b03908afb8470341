"""
Exception Hierarchy
Errors raised by the simulator and mapped to CLI exit codes
"""


class SqueezeError(Exception):
    """Base class for all simulator errors"""
    exit_code = 1


class ConfigurationError(SqueezeError):
    """Invalid user input or run configuration"""
    exit_code = 2


class FieldStateError(ConfigurationError):
    """Invalid field-state constructor input"""


class UnknownModelError(ConfigurationError):
    """Analytic model id not present in the registry"""


class TruncationError(SqueezeError):
    """Photon cutoff too small to meet the tail-mass bound"""
    exit_code = 3


class DegenerateDirectionError(SqueezeError):
    """Mean spin too short to define perpendicular directions"""
    exit_code = 3


class ScanFailedError(SqueezeError):
    """Every point of a parameter sweep failed"""
    exit_code = 3

"""Exception hierarchy.

Input problems (bad files, bad configuration, too-short series) derive from
:class:`InputError`; failures of the numerical stages derive from
:class:`NumericalError`.  Both carry an optional stage name and sample index
so pipeline errors can be traced back to where they happened.
"""


class HyperpolarError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 3

    def __init__(self, message, *, stage=None, index=None):
        super().__init__(message)
        self.message = message
        self.stage = stage
        self.index = index

    def __str__(self):
        parts = []
        if self.stage is not None:
            parts.append(f"[{self.stage}]")
        parts.append(self.message)
        if self.index is not None:
            parts.append(f"(sample {self.index})")
        return " ".join(parts)


class InputError(HyperpolarError, ValueError):
    exit_code = 2


class ConfigError(InputError):
    pass


class NumericalError(HyperpolarError, ArithmeticError):
    exit_code = 3


class QuaternionDomainError(NumericalError, ValueError):
    """Operation undefined for the given quaternion (zero inverse, log of a negative real)."""


class DegenerateAxisError(NumericalError):
    pass


class BoundaryCaseError(NumericalError):
    pass


class InconsistentEnvelopeError(NumericalError):
    pass


class CarrierNormalizationError(NumericalError):
    pass


class AcceptanceFailure(HyperpolarError):
    exit_code = 4

"""Hyperanalytic signals and their unique polar form.

A complex signal ``z`` is lifted to the quaternion-valued hyperanalytic
signal ``s = z + H[z] j`` and written as ``s = A exp(B j)`` with a complex
envelope ``A`` and a complex phase ``B = c + i d`` whose components are
non-negative and non-decreasing.  ``(dc/dt + i dd/dt) / 2pi`` is the
instantaneous complex frequency.
"""

from .errors import (
    AcceptanceFailure,
    BoundaryCaseError,
    CarrierNormalizationError,
    ConfigError,
    DegenerateAxisError,
    HyperpolarError,
    InconsistentEnvelopeError,
    InputError,
    NumericalError,
    QuaternionDomainError,
)
from .models import GroundTruth, ModelSpec, Term, error_metrics, generate
from .oracle import oracle_sign_assignment
from .pipeline import PipelineConfig, RunReport, run_pipeline
from .polar import (
    DecomposeConfig,
    HalfPeriodCase,
    InstFrequencySeries,
    PolarDecomposition,
    axis_normalize,
    classify_minimum,
    decompose,
    extract_carrier,
    instantaneous_frequency,
    predict_zero_crossing,
    recover_envelope,
    recover_phase,
)
from .quaternion import Quaternion
from .series import ComplexSeries, QSpectrum, QuaternionSeries
from .transform import hyperanalytic, qft_j, qft_j_inv, qht_j

__version__ = "0.1.0"

import math

import numpy as np
import pytest

from hyperpolar import ConfigError, ModelSpec, Term, decompose, error_metrics, generate
from hyperpolar.models import UndersampledModelWarning, interior_slice, sample_count


def test_paper_start_values(paper_model):
    z, truth = paper_model
    assert truth.A[0] == 1.0
    assert truth.B[0] == 4j
    assert np.allclose(truth.s.values[0], [-0.6536436208636119, 0, 0, -0.7568024953079282], atol=1e-15)
    assert z.values[0] == pytest.approx(-0.6536, abs=1e-4)
    assert abs(truth.B[0]) == 4.0 and truth.phi_A[0] == 0.0


def test_paper_frequency_at_quarter(paper_model):
    _, truth = paper_model
    n = 2500
    assert truth.t[n] == pytest.approx(0.25)
    assert truth.f_B[n].real == pytest.approx(20.0)
    assert truth.f_B[n].imag == pytest.approx(6.0)


@pytest.mark.parametrize("fs, rows", [(10000.0, 4001), (2000.0, 801), (1234.0, 494)])
def test_row_count(fs, rows):
    assert sample_count(0.4, fs) == rows == math.floor(0.4 * fs) + 1


def test_custom_pure_cosine():
    spec = ModelSpec("am_fm_custom", 0.5, 1000.0, c=Term("harmonic", {"drift": 20.0}))
    z, truth = generate(spec)
    assert np.allclose(z.values, np.cos(2 * np.pi * 20 * z.t), atol=1e-12)
    assert np.allclose(truth.f_B, 20.0)


def test_undersampled_warning():
    with pytest.warns(UndersampledModelWarning):
        generate(ModelSpec.paper(fs=150.0))


@pytest.mark.parametrize(
    "spec",
    [ModelSpec.paper(duration=0.0), ModelSpec.paper(fs=-1.0), ModelSpec("bogus"),
     ModelSpec("am_fm_custom", magnitude=Term("const", {"value": 0.0}))],
)
def test_bad_specs(spec):
    with pytest.raises(ConfigError):
        generate(spec)


def test_unknown_term():
    with pytest.raises(ConfigError):
        Term("spline").evaluate(np.zeros(3))


def test_term_derivatives_match_finite_differences():
    t = np.linspace(0, 1, 20001)
    for term in (Term("exp", {"amp": 1.3, "rate": 0.7}),
                 Term("am", {"amp": 1.1, "depth": 0.4, "freq": 2.0, "phase": 0.3}),
                 Term("harmonic", {"offset": 0.2, "drift": 5.0, "amp": 0.9, "freq": 1.5, "phase": 1.0})):
        v, dv = term.evaluate(t)
        assert np.allclose(np.gradient(v, t)[1:-1], dv[1:-1], atol=1e-4)


def test_interior_slice():
    assert interior_slice(100, 0.05) == slice(5, 95)
    with pytest.raises(ConfigError):
        interior_slice(100, 0.5)


def test_metrics_on_exact_path(paper_model):
    _, truth = paper_model
    polar, freq = decompose(truth.s)
    m = error_metrics(polar, freq, truth)
    assert m["summary"]["Df_Br"]["interior_max"] < 1e-6
    assert m["summary"]["Df_Bi"]["interior_max"] < 0.01
    assert m["summary"]["envelope_rel"]["max"] < 1e-12
    assert m["series"]["Df_Br"].shape == (4001,)


def test_every_generated_model_is_recovered():
    specs = [
        ModelSpec.paper(),
        ModelSpec.paper(fs=4000.0),
        ModelSpec("am_fm_custom", 1.0, 3000.0,
                  magnitude=Term("am", {"amp": 1.0, "depth": 0.5, "freq": 1.0}),
                  envelope_phase=Term("harmonic", {"offset": 0.7, "drift": 1.0}),
                  c=Term("harmonic", {"offset": 0.5, "drift": 30.0}),
                  d=Term("harmonic", {"offset": 1.0, "drift": 12.0, "amp": 0.5, "freq": 2.0})),
    ]
    for spec in specs:
        _, truth = generate(spec)
        polar, _ = decompose(truth.s)
        inner = interior_slice(truth.A.size, 0.05)
        assert np.max(np.abs(polar.envelope - truth.A)[inner]) < 1e-6
        assert np.max(np.abs(polar.phase - truth.B)[inner]) < 1e-6


def test_non_canonical_model_warns():
    from hyperpolar.models import NonCanonicalModelWarning

    spec = ModelSpec("am_fm_custom", 0.5, 1000.0, envelope_phase=Term("const", {"value": 2.0}),
                     c=Term("harmonic", {"drift": 20.0}))
    with pytest.warns(NonCanonicalModelWarning, match="phi_A"):
        generate(spec)

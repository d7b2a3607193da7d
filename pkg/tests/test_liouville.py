import numpy as np
import pytest

from pucci_halfspace.errors import InputError, PreconditionError
from pucci_halfspace.liouville import (build_counterexample, classify, scaling_transport,
                                       threshold_gap, thresholds, transport_counterexample)
from pucci_halfspace.matrix import Ellipticity
from pucci_halfspace.solutions import PowerFunction
from pucci_halfspace.verify import fd_hessian

from conftest import ell_of


def test_thresholds_harmonic():
    lo, up, ex = thresholds(Ellipticity(1, 1, 3))
    assert (lo, up, ex) == (-1.0, 2.0, 2.0)
    assert threshold_gap(Ellipticity(1, 1, 3)) == 0
    assert threshold_gap(ell_of(2, 3)) > 0
    with pytest.raises(InputError):
        thresholds(Ellipticity(1, 1, 3), "max")


def test_classify_ranges():
    e = ell_of(2, 3)
    lo, up, ex = thresholds(e)
    assert classify(e, -1.0).regime == "nonexistence"
    assert classify(e, up).regime == "nonexistence"
    assert classify(e, -1.5).regime == "existence"
    assert classify(e, ex + 0.1).regime == "existence"
    assert classify(e, 0.5 * (up + ex)).regime == "indeterminate"
    with pytest.raises(InputError):
        classify(e, float("nan"))


def test_classify_plus_open_existence():
    e = ell_of(5, 3)  # n/omega < 1
    assert thresholds(e, "plus")[2] is None
    v = classify(e, 100.0, "plus")
    assert v.regime == "indeterminate" and v.unknown


@pytest.mark.parametrize("op", ["minus", "plus"])
def test_counterexamples_certify(rng, op):
    for om, n in [(1, 2), (2, 3), (1.5, 5), (1, 4)]:
        e = ell_of(om, n)
        lo, up, ex = thresholds(e, op)
        for p in (-1 - rng.uniform(0.01, 5), (ex or np.inf) + rng.uniform(0.01, 5)):
            if not np.isfinite(p):
                continue
            rep = build_counterexample(e, p, op)
            assert rep.passed, rep.as_dict()
            q = p + 1.0 if p > 1 else p - 1.0
            assert transport_counterexample(rep, q, e).passed


def test_counterexample_outside_existence():
    with pytest.raises(PreconditionError):
        build_counterexample(ell_of(2, 3), 1.5)


def test_scaling_transport():
    u = PowerFunction(1, 2.5)
    with pytest.raises(InputError):
        scaling_transport(u, 3.0, 2.0)
    with pytest.raises(InputError):
        scaling_transport(u, -2.0, -1.0)
    v = scaling_transport(u, 3.0, 5.0)
    assert v.m == 0.5 and v.const == pytest.approx(0.5 ** 0.25)
    x = np.array([0.3, 0.4, 1.0])
    assert v(x) == pytest.approx(v.const * u(x) ** 0.5)
    H = fd_hessian(lambda y: float(v(y)), x)
    assert np.allclose(H, v.jet(x).hessian.matrix(), atol=1e-6)


def test_threshold_ordering(rng):
    for _ in range(200):
        e = ell_of(float(rng.uniform(1.0001, 10)), int(rng.integers(2, 11)))
        _, up, ex = thresholds(e)
        assert up < ex


def test_spec_transport_examples():
    from pucci_halfspace.verify import certify_zero_order
    e = Ellipticity(1, 1, 3)
    rep = build_counterexample(e, 3.0)
    assert transport_counterexample(rep, 4.0, e).passed
    rep = build_counterexample(e, -3.0)
    assert transport_counterexample(rep, -4.0, e).passed
    with pytest.raises(InputError):
        scaling_transport(rep.counterexample.function, -3.0, -3.0)

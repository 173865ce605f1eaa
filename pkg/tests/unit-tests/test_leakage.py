"""
    Copyright 2024 Contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
"""
import math
from fractions import Fraction

import pytest
import numpy as np
from numpy.testing import assert_almost_equal

from ldpqif.channel import (identity_channel, no_leakage_channel, validate_channel,
                            cascade, uniform_prior, identity_gain)
from ldpqif.errors import UnsupportedSpec, InvalidDomainSize
from ldpqif.leakage import (bayes_capacity, bayes_capacity_closed, asr, asr_closed,
                            lh_asr_closed, lh_asr_prior_work, epsilon_of,
                            max_case_capacity, min_entropy_leakage, leakage_report,
                            prior_vulnerability, posterior_vulnerability,
                            max_case_vulnerability, max_case_leakage, posterior_leakages,
                            capacity_sweep, sweep_specs, make_spec, SWEEP_COLUMNS)
from ldpqif.mechanisms import MechanismSpec, build_channel

from util import random_channel, random_prior, random_gain

def test_capacity_bounds():
    assert bayes_capacity(identity_channel(5)) == 5.0
    assert_almost_equal(bayes_capacity(no_leakage_channel(5, cols=3)), 1.0)
    assert bayes_capacity(identity_channel(4, exact=True)) == 4
    assert asr(identity_channel(4)) == 1.0
    assert_almost_equal(min_entropy_leakage(identity_channel(4)), math.log(4))

    chan = random_channel(4, 6, seed=7)
    cap = bayes_capacity(chan)
    assert 1.0 <= cap <= 4.0
    # post-processing never increases the capacity
    assert bayes_capacity(cascade(chan, random_channel(6, 3, seed=8))) <= cap + 1e-12

def test_max_case_capacity():
    assert max_case_capacity(identity_channel(3)) == math.inf
    assert epsilon_of(identity_channel(3)) == math.inf
    assert epsilon_of(no_leakage_channel(3)) == 0.0
    chan = validate_channel(np.array([[Fraction(3, 4), Fraction(1, 4)],
                                      [Fraction(1, 4), Fraction(3, 4)]], dtype=object))
    assert max_case_capacity(chan) == 3
    assert_almost_equal(epsilon_of(chan), math.log(3))
    # an all-zero column is skipped
    chan = validate_channel([[0.5, 0.5, 0.0], [0.25, 0.75, 0.0]])
    assert_almost_equal(max_case_capacity(chan), 2.0)

GRID_EPSILONS = [0.0, 0.5, math.log(2), 1.0, 2.0, 3.0]

def closed_form_grid():
    """ Every protocol over k, ε and θ, with LH variants on the smaller domains. """
    specs = []
    for k in range(2, 9):
        for epsilon in GRID_EPSILONS:
            specs += [MechanismSpec(protocol, k, epsilon)
                      for protocol in ("GRR", "SS", "SUE", "OUE")]
            specs += [MechanismSpec("THE", k, epsilon, theta=theta)
                      for theta in (0.6, 0.75, 0.9)]
    for k in range(2, 6):
        for epsilon in GRID_EPSILONS:
            specs += [MechanismSpec("BLH", k, epsilon), MechanismSpec("OLH", k, epsilon, g=2),
                      MechanismSpec("OLH", k, epsilon, g=3)]
    # non-default ω and g
    specs += [MechanismSpec("SS", 6, 2.0, omega=4), MechanismSpec("OLH", 3, 1.0, g=5)]
    return specs

@pytest.mark.parametrize("spec", closed_form_grid())
def test_closed_form_matches_explicit(spec):
    chan = build_channel(spec)
    assert bayes_capacity_closed(spec) == pytest.approx(bayes_capacity(chan), rel=1e-9)
    assert asr_closed(spec) == pytest.approx(asr(chan), rel=1e-9)

def test_max_case_does_not_order_capacity():
    A = build_channel(MechanismSpec("GRR", 2, 2.0))
    B = build_channel(MechanismSpec("GRR", 10, 1.5))
    # A has the larger ε yet leaks less to a one-try guesser
    assert max_case_capacity(A) > max_case_capacity(B)
    assert bayes_capacity(A) < bayes_capacity(B)
    assert_almost_equal(bayes_capacity(A), 2 * math.exp(2.0) / (math.exp(2.0) + 1))
    assert_almost_equal(bayes_capacity(B), 10 * math.exp(1.5) / (math.exp(1.5) + 9))

def test_exact_closed_forms():
    spec = MechanismSpec("GRR", 3, math.log(2))
    assert asr_closed(spec, exact=True) == Fraction(1, 2)
    assert bayes_capacity(build_channel(spec, exact=True)) == Fraction(3, 2)
    spec = MechanismSpec("OUE", 3, math.log(3))
    # q = 1/4, p/q = 2: (3/4)^2 (1 - 2) + 2
    assert bayes_capacity_closed(spec, exact=True) == Fraction(23, 16)
    assert bayes_capacity(build_channel(spec, exact=True)) == Fraction(23, 16)

def test_lh_asr():
    eps = math.log(2)
    assert_almost_equal(lh_asr_closed(2, 2, eps), 7 / 12)
    assert_almost_equal(lh_asr_prior_work(2, 2, eps), 2 / 3)
    assert lh_asr_closed(2, 2, eps, exact=True) == Fraction(7, 12)
    assert lh_asr_prior_work(2, 2, eps, exact=True) == Fraction(2, 3)
    assert_almost_equal(lh_asr_closed(4, 3, 1.0),
                        asr(build_channel(MechanismSpec("OLH", 4, 1.0, g=3))))
    with pytest.raises(InvalidDomainSize):
        lh_asr_closed(1, 2, 1.0)

@pytest.mark.parametrize("k, g", [(2, 2), (3, 2), (2, 3), (4, 2)])
def test_lh_asr_enumeration(k, g):
    # every one of the g^k hash functions is a block of the explicit channel
    eps = math.log(2)
    chan = build_channel(MechanismSpec("OLH", k, eps, g=g), exact=True)
    assert chan.cols == g ** k * g
    assert asr(chan) == lh_asr_closed(k, g, eps, exact=True)

def test_closed_forms_large_domain():
    for protocol, kwargs in [("GRR", {}), ("SUE", {}), ("OUE", {}),
                             ("THE", {"theta": 0.9}), ("OLH", {})]:
        spec = MechanismSpec(protocol, 10 ** 6, 50.0, **kwargs)
        cap = bayes_capacity_closed(spec)
        assert math.isfinite(cap)
        assert 1.0 <= cap <= 10 ** 6 * (1 + 1e-9)
    # no leakage at epsilon 0
    assert_almost_equal(bayes_capacity_closed(MechanismSpec("SUE", 10 ** 6, 0.0)), 1.0)
    with pytest.raises(UnsupportedSpec):
        bayes_capacity_closed({"protocol": "GRR", "k": 2, "epsilon": 1.0})

def test_capacity_convergence():
    # large epsilon: the full domain, the hash range, or about half the domain
    k, eps = 50, 16.0
    for protocol in ["GRR", "SS"]:
        assert abs(bayes_capacity_closed(MechanismSpec(protocol, k, eps)) - k) < 0.02 * k
    assert abs(bayes_capacity_closed(MechanismSpec("BLH", k, eps)) - 2) < 0.02 * 2
    for protocol in ["OLH", "OUE"]:
        assert abs(bayes_capacity_closed(MechanismSpec(protocol, k, eps)) - k / 2) < 0.1 * k / 2
    # THE keeps a bit noise of e^{-ε(1-θ)/2} / 2 on the true value
    cap = bayes_capacity_closed(MechanismSpec("THE", k, eps, theta=0.75))
    assert 0.9 * k < cap < k

    caps = [bayes_capacity_closed(MechanismSpec("THE", k, e, theta=0.75))
            for e in [0.5, 1, 2, 4, 8, 16]]
    assert all(lo < hi for lo, hi in zip(caps[:-1], caps[1:]))

def test_miracle_and_dpi():
    rng = np.random.default_rng(5)
    for trial in range(500):
        rows, cols = int(rng.integers(2, 6)), int(rng.integers(2, 6))
        chan = random_channel(rows, cols, seed=1000 + trial)
        prior = random_prior(rows, seed=2000 + trial)
        gain = random_gain(int(rng.integers(1, 5)), rows, seed=3000 + trial)
        # non-negative gains never leak more than the Bayes capacity
        leakage = posterior_vulnerability(gain, prior, chan) / prior_vulnerability(gain, prior)
        assert leakage <= bayes_capacity(chan) + 1e-9
        if trial < 200:
            post = random_channel(cols, int(rng.integers(2, 6)), seed=4000 + trial)
            assert bayes_capacity(cascade(chan, post)) <= bayes_capacity(chan) + 1e-12

def test_vulnerabilities():
    chan = random_channel(4, 5, seed=11)
    prior = random_prior(4, seed=12)
    gain = random_gain(3, 4, seed=13)
    prior_v = prior_vulnerability(gain, prior)
    post_v = posterior_vulnerability(gain, prior, chan)
    assert post_v >= prior_v - 1e-12
    # garbling the outputs cannot help the adversary
    garbled = cascade(chan, random_channel(5, 2, seed=14))
    assert posterior_vulnerability(gain, prior, garbled) <= post_v + 1e-12

    assert max_case_vulnerability(gain, prior, chan) <= \
        max_case_vulnerability(gain, prior, posterior=False) + 1e-12

def test_leakage_report():
    chan = build_channel(MechanismSpec("GRR", 4, 1.0))
    report = leakage_report(chan, measure="bayes")
    assert_almost_equal(report.prior_vulnerability, 0.25)
    assert_almost_equal(report.posterior_vulnerability, asr(chan))
    assert_almost_equal(report.multiplicative_leakage, bayes_capacity(chan))
    assert_almost_equal(report.log_leakage, min_entropy_leakage(chan))
    assert report.to_dict()["measure"] == "bayes"

    same = leakage_report(chan, gain=identity_gain(4), measure="g_average")
    assert_almost_equal(same.multiplicative_leakage, report.multiplicative_leakage)
    assert leakage_report(chan, measure="min_entropy").measure_tag == "min_entropy"
    with pytest.raises(AssertionError):
        leakage_report(chan, measure="g_average")
    with pytest.raises(AssertionError):
        leakage_report(chan, measure="shannon")

    exact = leakage_report(build_channel(MechanismSpec("GRR", 3, math.log(2)), exact=True),
                           measure="bayes")
    assert exact.posterior_vulnerability == Fraction(1, 2)

def test_max_case_leakage():
    chan = random_channel(3, 4, seed=21)
    labels, leaks = posterior_leakages(chan)
    assert len(labels) == 4
    assert np.all(leaks >= 0)
    assert max_case_leakage(chan) <= max_case_capacity(chan) + 1e-12
    prior = random_prior(3, seed=22)
    assert max_case_leakage(chan, prior) <= max_case_capacity(chan) + 1e-12
    assert_almost_equal(max_case_leakage(no_leakage_channel(3, 2), uniform_prior(3)), 1.0)

def test_capacity_sweep():
    specs = sweep_specs(["GRR", "THE", "OLH"], 4, [0.5, 2.0], g=3)
    assert [(s.protocol, s.epsilon) for s in specs] == \
        [("GRR", 0.5), ("GRR", 2.0), ("THE", 0.5), ("THE", 2.0), ("OLH", 0.5), ("OLH", 2.0)]
    assert specs[2].theta == 0.75
    assert specs[4].g == 3
    assert make_spec("SS", 5, 1.0, omega=2, g=3).g is None

    frame = capacity_sweep(specs)
    assert list(frame.columns) == SWEEP_COLUMNS
    assert len(frame) == 4 * len(specs)
    for _, cell in frame.groupby(["protocol", "epsilon"]):
        values = dict(zip(cell["measure"], cell["value"]))
        assert_almost_equal(values["capacity_closed"], values["capacity_explicit"])
        assert_almost_equal(values["asr_closed"], values["capacity_closed"] / 4)

    # explicit channels above the cap are skipped
    frame = capacity_sweep([MechanismSpec("OUE", 12, 1.0)], size_cap=1000)
    assert list(frame["measure"]) == ["capacity_closed", "asr_closed"]

    frame = capacity_sweep([MechanismSpec("GRR", 3, math.log(2))], exact=True)
    assert_almost_equal(frame["value"].iloc[0], 1.5)

if __name__ == '__main__':
    test_capacity_bounds()
    test_max_case_capacity()
    test_closed_form_matches_explicit(MechanismSpec("OLH", 4, 2.0))
    test_max_case_does_not_order_capacity()
    test_exact_closed_forms()
    test_lh_asr()
    test_lh_asr_enumeration(2, 2)
    test_closed_forms_large_domain()
    test_capacity_convergence()
    test_miracle_and_dpi()
    test_vulnerabilities()
    test_leakage_report()
    test_max_case_leakage()
    test_capacity_sweep()

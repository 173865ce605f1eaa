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
from numpy.testing import assert_almost_equal, assert_equal

from ldpqif.channel import cascade, kronecker_power, restrict_to_one_hot
from ldpqif.errors import (InvalidDomainSize, NegativeEpsilon, OmegaOutOfRange,
                           ThetaRequired, ThetaOutOfRange, InvalidSpec, SizeCapExceeded)
from ldpqif.leakage import epsilon_of, bayes_capacity
from ldpqif.mechanisms import (MechanismSpec, analytic_params, bitwise_params,
                               ss_optimal_omega, olh_optimal_g, grr_channel, ss_channel,
                               lh_channel, lh_encode_channel, lh_perturb_channel, bitwise,
                               onehot_channel, sue_oue_min, build_channel, build_bitwise,
                               hash_functions)

def test_spec_defaults():
    spec = MechanismSpec("olh", 5, math.log(2))
    assert spec.protocol == "OLH"
    assert spec.g == 3
    assert olh_optimal_g(0) == 2

    assert MechanismSpec("BLH", 5, 1.0).g == 2
    assert MechanismSpec("SS", 10, math.log(4)).omega == 2
    assert ss_optimal_omega(10, 0.0) == 5
    assert ss_optimal_omega(3, 10.0) == 1
    spec = MechanismSpec("THE", 4, 1.0, theta=0.8)
    assert spec.is_bitwise
    assert not spec.is_lh

def test_spec_failures():
    with pytest.raises(InvalidSpec):
        MechanismSpec("RAPPOR", 4, 1.0)
    with pytest.raises(InvalidDomainSize):
        MechanismSpec("GRR", 1, 1.0)
    with pytest.raises(NegativeEpsilon):
        MechanismSpec("GRR", 4, -0.5)
    with pytest.raises(InvalidSpec):
        MechanismSpec("GRR", 4, 1.0, omega=2)
    with pytest.raises(InvalidSpec):
        MechanismSpec("BLH", 4, 1.0, g=3)
    with pytest.raises(InvalidDomainSize):
        MechanismSpec("OLH", 4, 1.0, g=1)
    with pytest.raises(OmegaOutOfRange):
        MechanismSpec("SS", 4, 1.0, omega=4)
    with pytest.raises(ThetaRequired):
        MechanismSpec("THE", 4, 1.0)
    with pytest.raises(ThetaOutOfRange):
        MechanismSpec("THE", 4, 1.0, theta=1.0)
    with pytest.raises(ThetaOutOfRange):
        MechanismSpec("THE", 4, 1.0, theta=0.5)
    with pytest.raises(InvalidSpec):
        MechanismSpec.from_dict({"protocol": "GRR", "k": 4})
    with pytest.raises(InvalidSpec):
        MechanismSpec.from_dict({"protocol": "GRR", "k": 4, "epsilon": 1.0, "beta": 2})

def test_spec_json():
    spec = MechanismSpec("SS", 8, 2.0, omega=3)
    assert MechanismSpec.from_json(spec.to_json()) == spec
    assert spec.to_dict() == {"protocol": "SS", "k": 8, "epsilon": 2.0, "omega": 3}

    # omega and g follow a new epsilon unless kept
    assert spec.with_epsilon(0.0).omega == 4
    assert spec.with_epsilon(0.0, keep_params=True).omega == 3
    olh = MechanismSpec("OLH", 8, math.log(2))
    assert olh.with_epsilon(math.log(4)).g == 5

def test_grr_channel():
    chan = grr_channel(3, math.log(2))
    assert_almost_equal(chan.entries, [[0.5, 0.25, 0.25], [0.25, 0.5, 0.25],
                                       [0.25, 0.25, 0.5]])
    exact = grr_channel(3, math.log(2), exact=True)
    assert exact.entries[0, 0] == Fraction(1, 2)
    assert exact.entries[0, 1] == Fraction(1, 4)
    assert_almost_equal(epsilon_of(grr_channel(5, 1.5)), 1.5)

    # at epsilon 0 every row is uniform
    assert_almost_equal(grr_channel(4, 0.0).entries, np.full((4, 4), 0.25))

def test_ss_channel():
    chan = ss_channel(5, 1.0, omega=2)
    assert chan.shape == (5, 10)
    assert chan.output_labels[0] == "{0,1}"
    assert_almost_equal(epsilon_of(chan), 1.0)
    p = 2 * math.e / (2 * math.e + 3)
    # the true value is in the subset with probability p
    assert_almost_equal(chan.entries[0, :4].sum(), p)
    with pytest.raises(OmegaOutOfRange):
        ss_channel(5, 1.0, omega=0)
    with pytest.raises(SizeCapExceeded):
        ss_channel(40, 1.0, omega=20, size_cap=2 ** 20)

def test_lh_channel():
    assert_equal(hash_functions(2, 2), [[0, 0], [0, 1], [1, 0], [1, 1]])
    chan = lh_channel(3, 2, 1.0)
    assert chan.shape == (3, 16)
    assert chan.output_labels[:2] == ("000:0", "000:1")
    assert_almost_equal(epsilon_of(chan), 1.0)

    # encoding then perturbing gives the same channel
    composed = cascade(lh_encode_channel(3, 2), lh_perturb_channel(3, 2, 1.0))
    assert composed.allclose(chan)

    exact = lh_channel(2, 2, math.log(3), exact=True)
    assert exact.entries[0, 0] == Fraction(3, 16)
    with pytest.raises(InvalidDomainSize):
        lh_channel(3, 1, 1.0)

def test_bitwise_channels():
    p, q = bitwise_params("SUE", 2.0)
    assert_almost_equal(p, math.e / (math.e + 1))
    assert_almost_equal(p + q, 1.0)
    p, q = bitwise_params("OUE", 2.0)
    assert p == 0.5
    assert_almost_equal(q, 1 / (math.exp(2.0) + 1))
    p, q = bitwise_params("THE", 2.0, theta=0.75)
    assert_almost_equal(p, 1 - 0.5 * math.exp(-0.25))
    assert_almost_equal(q, 0.5 * math.exp(-0.75))
    with pytest.raises(InvalidSpec):
        bitwise_params("SUE", 2.0, theta=0.75)
    with pytest.raises(InvalidSpec):
        bitwise_params("GRR", 2.0)

    oue = bitwise("OUE", math.log(3), exact=True)
    assert oue.entries[0, 1] == Fraction(1, 4)
    assert oue.entries[1, 1] == Fraction(1, 2)
    spec = MechanismSpec("THE", 3, 2.0, theta=0.9)
    assert build_bitwise(spec).allclose(bitwise("THE", 2.0, 0.9))

@pytest.mark.parametrize("protocol,theta", [("SUE", None), ("OUE", None), ("THE", 0.8)])
def test_onehot_channel(protocol, theta):
    direct = onehot_channel(protocol, 4, 1.5, theta)
    power = restrict_to_one_hot(kronecker_power(bitwise(protocol, 1.5, theta), 4))
    assert direct.shape == (4, 16)
    assert direct.input_labels == ("1000", "0100", "0010", "0001")
    assert direct.output_labels == power.output_labels
    assert_almost_equal(direct.entries, power.entries)
    if protocol != "THE":
        assert_almost_equal(epsilon_of(direct), 1.5)

def test_onehot_two_values():
    # ε = 2 ln 2 gives p = 2/3 and q = 1/3
    sue = onehot_channel("SUE", 2, 2 * math.log(2))
    assert sue.input_labels == ("10", "01")
    assert sue.output_labels == ("00", "01", "10", "11")
    assert_almost_equal(sue.entries, [[2 / 9, 1 / 9, 4 / 9, 2 / 9],
                                      [2 / 9, 4 / 9, 1 / 9, 2 / 9]])
    assert_almost_equal(bayes_capacity(sue), 4 / 3)

    # ε = ln 3 gives p = 1/2 and q = 1/4
    oue = onehot_channel("OUE", 2, math.log(3), exact=True)
    assert oue.exact
    assert oue.input_labels == ("10", "01")
    assert list(oue.entries[0]) == [Fraction(3, 8), Fraction(1, 8), Fraction(3, 8), Fraction(1, 8)]
    assert list(oue.entries[1]) == [Fraction(3, 8), Fraction(3, 8), Fraction(1, 8), Fraction(1, 8)]

def test_ss_single_item_is_grr():
    for k in range(2, 9):
        for epsilon in [0.0, 0.5, math.log(2), 1.0, 3.0]:
            ss = ss_channel(k, epsilon, omega=1)
            assert ss.shape == (k, k)
            assert_almost_equal(ss.entries, grr_channel(k, epsilon).entries)

def test_sue_oue_min():
    low = sue_oue_min(1.0)
    sue = bitwise("SUE", 1.0).entries
    oue = bitwise("OUE", 1.0).entries
    entries = low.entries
    # merging the last two columns gives SUE, the first two OUE
    assert_almost_equal(np.stack([entries[:, 0], entries[:, 1] + entries[:, 2]], axis=1), sue)
    assert_almost_equal(np.stack([entries[:, 0] + entries[:, 1], entries[:, 2]], axis=1), oue)
    assert np.all(entries >= 0)

def test_analytic_params():
    spec = MechanismSpec("SS", 6, math.log(2), omega=2)
    params = analytic_params(spec)
    assert_almost_equal(params.p, 4 / 8)
    assert_almost_equal(params.q_star, (2 - 0.5) / 5)
    params = analytic_params(MechanismSpec("OLH", 6, math.log(2), g=3))
    assert_almost_equal(params.p, 0.5)
    assert_almost_equal(params.q_star, 1 / 3)
    exact = analytic_params(MechanismSpec("GRR", 3, math.log(2)), exact=True)
    assert exact.p == Fraction(1, 2)

    assert build_channel(MechanismSpec("GRR", 3, 1.0)).shape == (3, 3)
    assert build_channel(MechanismSpec("OUE", 3, 1.0)).shape == (3, 8)
    with pytest.raises(SizeCapExceeded):
        build_channel(MechanismSpec("OUE", 30, 1.0))

if __name__ == '__main__':
    test_spec_defaults()
    test_spec_failures()
    test_spec_json()
    test_grr_channel()
    test_ss_channel()
    test_lh_channel()
    test_bitwise_channels()
    test_onehot_channel("SUE", None)
    test_onehot_channel("THE", 0.8)
    test_onehot_two_values()
    test_ss_single_item_is_grr()
    test_sue_oue_min()
    test_analytic_params()

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

    g-vulnerabilities and leakage reports.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..channel.matrix import joint_matrix, identity_gain, uniform_prior, posterior_hyper
from ..channel.numeric import as_float
from ..errors import DimensionMismatch

MEASURE_G_AVERAGE = "g_average"
MEASURE_G_MAX_CASE = "g_max_case"
MEASURE_BAYES = "bayes"
MEASURE_MIN_ENTROPY = "min_entropy"
SUPPORTED_MEASURES = [MEASURE_G_AVERAGE, MEASURE_G_MAX_CASE, MEASURE_BAYES, MEASURE_MIN_ENTROPY]

def _gains_and_weights(gain, prior):
    if gain.secrets != len(prior):
        raise DimensionMismatch(f"A gain function over {gain.secrets} secrets does not "
                                f"match a prior of length {len(prior)}.")
    if prior.exact and gain.gains.dtype == object:
        return gain.gains, prior.weights
    return as_float(gain.gains), as_float(prior.weights)

def _max_value(arr):
    return max(arr.flat)

def prior_vulnerability(gain, prior):
    """ V_g(π) = max_w Σ_x π_x g(w, x).

    Parameters
    ----------
    gain : GainFunction
    prior : Prior

    Returns
    -------
    float or Fraction
    """
    gains, weights = _gains_and_weights(gain, prior)
    return _max_value(gains @ weights)

def posterior_vulnerability(gain, prior, C):
    """ V_g(π, C) = Σ_y max_w Σ_x π_x C[x, y] g(w, x).

    Parameters
    ----------
    gain : GainFunction
    prior : Prior
    C : ChannelMatrix

    Returns
    -------
    float or Fraction
    """
    gains, _ = _gains_and_weights(gain, prior)
    joint = joint_matrix(prior, C)
    if joint.dtype != object:
        gains = as_float(gains)
    elif gains.dtype != object:
        joint = as_float(joint)
    per_output = gains @ joint
    start = Fraction(0) if per_output.dtype == object else 0.0
    return sum((_max_value(per_output[:, y]) for y in range(per_output.shape[1])), start)

def max_case_vulnerability(gain, prior, C=None, posterior=True):
    """ The max-case vulnerability.

    The prior form is max_{w,x} π_x g(w, x); the posterior form is
    max_{y,x,w} π_x C[x, y] g(w, x).

    Parameters
    ----------
    gain : GainFunction
    prior : Prior
    C : ChannelMatrix
        Needed for the posterior form.
    posterior : bool
        Whether to evaluate the posterior form.
    """
    gains, weights = _gains_and_weights(gain, prior)
    if not posterior:
        return _max_value(gains * weights[None, :])
    assert C is not None, "The posterior max-case vulnerability needs a channel."
    joint = joint_matrix(prior, C)
    if joint.dtype != object or gains.dtype != object:
        joint, gains = as_float(joint), as_float(gains)
    best = None
    for w in range(gains.shape[0]):
        cand = _max_value(gains[w][:, None] * joint)
        best = cand if best is None or cand > best else best
    return best

@dataclass(frozen=True)
class LeakageReport:
    """ Prior and posterior vulnerability of one measure.

    Parameters
    ----------
    prior_vulnerability : float
    posterior_vulnerability : float
    multiplicative_leakage : float
        posterior / prior; NaN when the prior vulnerability is not positive.
    measure_tag : str
        One of g_average, g_max_case, bayes, min_entropy.
    """
    prior_vulnerability: float
    posterior_vulnerability: float
    multiplicative_leakage: float
    measure_tag: str

    @property
    def log_leakage(self):
        """ Natural log of the multiplicative leakage. """
        if not self.multiplicative_leakage > 0:
            return float('nan')
        return math.log(self.multiplicative_leakage)

    def to_dict(self):
        """ JSON form with float values. """
        return {
            "measure": self.measure_tag,
            "prior_vulnerability": float(self.prior_vulnerability),
            "posterior_vulnerability": float(self.posterior_vulnerability),
            "multiplicative_leakage": float(self.multiplicative_leakage),
        }

def _ratio(post, prior):
    return post / prior if prior > 0 else float('nan')

def leakage_report(C, gain=None, prior=None, measure=MEASURE_G_AVERAGE):
    """ Compute a LeakageReport of a channel.

    The Bayes and min-entropy measures use the identity gain and default to
    the uniform prior. The g measures need a gain function and default to
    the uniform prior.

    Parameters
    ----------
    C : ChannelMatrix
    gain : GainFunction
    prior : Prior
    measure : str
        One of SUPPORTED_MEASURES.

    Returns
    -------
    LeakageReport
    """
    assert measure in SUPPORTED_MEASURES, \
            f"Unknown leakage measure {measure}. Supported: {SUPPORTED_MEASURES}."
    if prior is None:
        prior = uniform_prior(C.rows, C.exact)
    if measure in (MEASURE_BAYES, MEASURE_MIN_ENTROPY):
        gain = identity_gain(C.rows, C.exact)
    assert gain is not None, f"The {measure} measure needs a gain function."

    if measure == MEASURE_G_MAX_CASE:
        prior_v = max_case_vulnerability(gain, prior, posterior=False)
        post_v = max_case_vulnerability(gain, prior, C, posterior=True)
    else:
        prior_v = prior_vulnerability(gain, prior)
        post_v = posterior_vulnerability(gain, prior, C)
    return LeakageReport(prior_v, post_v, _ratio(post_v, prior_v), measure)

def posterior_leakages(C, prior=None):
    """ Per-output multiplicative Bayes leakage V_1(δ^y) / V_1(π).

    Returns the output labels that occur with positive probability and an
    array of their leakages.
    """
    if prior is None:
        prior = uniform_prior(C.rows)
    hyper = posterior_hyper(prior, C)
    prior_v = float(max(as_float(prior.weights)))
    leaks = np.max(as_float(hyper.posteriors), axis=0) / prior_v
    return hyper.output_labels, leaks

def max_case_leakage(C, prior=None):
    """ max_y V_1(δ^y) / V_1(π): the largest Bayes leakage of a single output.

    Under every prior this is at most max_case_capacity(C).
    """
    _, leaks = posterior_leakages(C, prior)
    return float(np.max(leaks))

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

    Bayes capacity, ASR and max-case capacity, generic and in closed form.
"""
import math
from fractions import Fraction

import numpy as np

from ..channel.numeric import exp
from ..errors import InvalidDomainSize, NegativeEpsilon, UnsupportedSpec
from ..mechanisms.spec import (MechanismSpec, bitwise_params,
                               PROTOCOL_GRR, PROTOCOL_SS, PROTOCOL_SUE,
                               PROTOCOL_OUE, PROTOCOL_THE)

def bayes_capacity(C):
    """ The Bayes capacity Σ_y max_x C[x, y].

    It is the largest multiplicative Bayes leakage over all priors and
    bounds every average-case g-leakage. Exact channels give a Fraction.

    Parameters
    ----------
    C : ChannelMatrix

    Returns
    -------
    float or Fraction : a value in [1, min(rows, cols)].
    """
    if C.exact:
        return sum((max(C.entries[:, y]) for y in range(C.cols)), Fraction(0))
    return float(np.sum(np.max(C.entries, axis=0)))

def asr(C):
    """ Adversarial success rate under a uniform prior: bayes_capacity(C) / rows.

    Equals the posterior Bayes vulnerability of the uniform prior.
    """
    return bayes_capacity(C) / C.rows

def min_entropy_leakage(C):
    """ Uniform-prior min-entropy leakage, the natural log of the Bayes capacity.
    """
    return math.log(bayes_capacity(C))

def max_case_capacity(C):
    """ The largest likelihood ratio max_y max_x C[x, y] / min_x C[x, y].

    Columns that are entirely zero are skipped; a column that mixes zero
    and nonzero entries gives +inf. Exact channels give a Fraction unless
    the ratio is infinite.

    Parameters
    ----------
    C : ChannelMatrix

    Returns
    -------
    float or Fraction : e^ε for the smallest ε the channel satisfies.
    """
    if C.exact:
        best = Fraction(1)
        for y in range(C.cols):
            col = C.entries[:, y]
            hi, lo = max(col), min(col)
            if hi == 0:
                continue
            if lo == 0:
                return math.inf
            best = max(best, hi / lo)
        return best
    hi = np.max(C.entries, axis=0)
    lo = np.min(C.entries, axis=0)
    used = hi > 0
    if np.any(lo[used] == 0):
        return math.inf
    if not np.any(used):
        return 1.0
    return float(max(1.0, np.max(hi[used] / lo[used])))

def epsilon_of(C):
    """ The tightest LDP parameter of a channel, ln max_case_capacity(C).

    +inf when some output is possible for one secret and impossible for
    another.
    """
    ratio = max_case_capacity(C)
    if ratio == math.inf:
        return math.inf
    if isinstance(ratio, Fraction):
        return math.log(ratio.numerator) - math.log(ratio.denominator)
    return math.log(ratio)

def _grr_capacity(k, epsilon, exact):
    if exact:
        e_eps = exp(epsilon, True)
        return k * e_eps / (e_eps + k - 1)
    return k / (1.0 + (k - 1) * math.exp(-epsilon))

def _ss_capacity(k, epsilon, omega, exact):
    # C(k, ω) columns; per-column max is p / C(k-1, ω-1) or (1-p) / C(k-1, ω)
    if exact:
        e_eps = exp(epsilon, True)
        p = omega * e_eps / (omega * e_eps + k - omega)
        not_p = 1 - p
    else:
        e_neg = math.exp(-epsilon)
        p = omega / (omega + (k - omega) * e_neg)
        not_p = (k - omega) * e_neg / (omega + (k - omega) * e_neg)
    return max(p * k / omega, not_p * k / (k - omega))

def _lh_capacity(k, g, epsilon, exact):
    # g (e^ε + ((g-1)/g)^k (1 - e^ε)) / (e^ε + g - 1)
    if exact:
        e_eps = exp(epsilon, True)
        ratio_k = Fraction(g - 1, g) ** k
        return g * (e_eps + ratio_k * (1 - e_eps)) / (e_eps + g - 1)
    e_neg = math.exp(-epsilon)
    # 1 - ((g-1)/g)^k without cancellation for large g
    any_hit = -math.expm1(k * math.log1p(-1.0 / g))
    return g * (any_hit + (1.0 - any_hit) * e_neg) / (1.0 + (g - 1) * e_neg)

def _unary_capacity(k, p, q, p_over_q, exact):
    """ Column-max sum of a one-hot unary encoding with p > q:
    (1 - q)^{k-1} (1 - p/q) + p/q.
    """
    if exact:
        rest = (1 - q) ** (k - 1)
        return rest * (1 - p_over_q) + p_over_q
    rest_m1 = math.expm1((k - 1) * math.log1p(-q))
    return -p_over_q * rest_m1 + 1.0 + rest_m1

def _unary_ratio(protocol, epsilon, theta, params, exact):
    if exact:
        return params.p / params.q
    if protocol == PROTOCOL_SUE:
        return math.exp(epsilon / 2)
    if protocol == PROTOCOL_OUE:
        return 0.5 * (math.exp(epsilon) + 1.0)
    # THE: (1 - e^{ε(θ-1)/2}/2) · 2e^{εθ/2}
    return 2.0 * math.exp(epsilon * theta / 2) - math.exp(epsilon * (2 * theta - 1) / 2)

def bayes_capacity_closed(spec, exact=False):
    """ Closed-form Bayes capacity of a protocol instance.

    GRR: k e^ε / (e^ε + k - 1).
    SS: C(k, ω) · max(p / C(k-1, ω-1), (1-p) / C(k-1, ω)).
    LH: (e^ε g^k + (g-1)^k (1 - e^ε)) / ((e^ε + g - 1) g^{k-1}).
    OUE: ((1-q)^{k-1} (2q - 1) + 1) / (2q).
    THE: (1-q)^{k-1} (1 - p/q) + p/q.
    SUE: (p/q)(1 - p^k) + p^{k-1} q, with p = e^{ε/2}/(e^{ε/2}+1) and q = 1 - p.

    The three unary encodings share the THE form with their own (p, q). Float
    results use rearrangements that stay finite for large k and ε.

    Parameters
    ----------
    spec : MechanismSpec
    exact : bool
        Return a Fraction, with exponentials snapped to rationals.

    Returns
    -------
    float or Fraction
    """
    if not isinstance(spec, MechanismSpec):
        raise UnsupportedSpec(f"Expected a MechanismSpec, got {type(spec).__name__}.")
    k, epsilon = spec.k, spec.epsilon
    if spec.protocol == PROTOCOL_GRR:
        return _grr_capacity(k, epsilon, exact)
    elif spec.protocol == PROTOCOL_SS:
        return _ss_capacity(k, epsilon, spec.omega, exact)
    elif spec.is_lh:
        return _lh_capacity(k, spec.g, epsilon, exact)
    elif spec.protocol in (PROTOCOL_SUE, PROTOCOL_OUE, PROTOCOL_THE):
        params = bitwise_params(spec.protocol, epsilon, spec.theta, exact)
        if params.q == 0:
            raise UnsupportedSpec(f"{spec.protocol} at epsilon={epsilon} has q = 0.")
        ratio = _unary_ratio(spec.protocol, epsilon, spec.theta, params, exact)
        return _unary_capacity(k, params.p, params.q, ratio, exact)
    raise UnsupportedSpec(f"No closed form for protocol {spec.protocol}.")

def asr_closed(spec, exact=False):
    """ Closed-form uniform-prior ASR, bayes_capacity_closed(spec) / k. """
    return bayes_capacity_closed(spec, exact) / spec.k

def _check_lh_args(k, g, epsilon):
    if int(k) != k or k < 2:
        raise InvalidDomainSize(f"The domain size must be an integer >= 2, got {k}.")
    if int(g) != g or g < 2:
        raise InvalidDomainSize(f"The hash range must be an integer >= 2, got {g}.")
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}.")

def lh_asr_closed(k, g, epsilon, exact=False):
    """ ASR of local hashing over the complete hash family.

    (e^ε g^k + (g-1)^k (1 - e^ε)) / ((e^ε + g - 1) k g^{k-1})

    Parameters
    ----------
    k : int
    g : int
    epsilon : float
    exact : bool

    Returns
    -------
    float or Fraction
    """
    _check_lh_args(k, g, epsilon)
    return _lh_capacity(k, g, epsilon, exact) / k

def lh_asr_prior_work(k, g, epsilon, exact=False):
    """ The earlier LH attack estimate e^ε / ((e^ε + g - 1) max(k/g, 1)).

    It ignores the size of the support set of the report, so it can miss
    the exact value in either direction; kept for comparison with
    `lh_asr_closed`.
    """
    _check_lh_args(k, g, epsilon)
    if exact:
        e_eps = exp(epsilon, True)
        return e_eps / ((e_eps + g - 1) * max(Fraction(k, g), Fraction(1)))
    return 1.0 / ((1.0 + (g - 1) * math.exp(-epsilon)) * max(k / g, 1.0))

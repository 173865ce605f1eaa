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

    Per-protocol samplers.

    LH samples a uniformly random function [k] -> [g]. Up to
    LH_EXPLICIT_HASH_CAP values it is materialized as a table of k i.i.d.
    uniform hash values. Beyond that each user gets a 64-bit seed and the
    function is x -> xxh64(str(x), seed) mod g, which behaves like the full
    function family on the values actually queried; deployed universal hash
    families do not give that guarantee.
"""
import itertools
import math

import numpy as np

from ..channel.matrix import validate_channel
from ..channel.numeric import check_size
from ..errors import ValueOutOfRange
from ..mechanisms.builders import (value_labels, subset_labels, lh_labels, one_hot_labels,
                                   bit_labels)
from ..mechanisms.spec import (analytic_params, PROTOCOL_GRR, PROTOCOL_SS, PROTOCOL_THE,
                               BITWISE_PROTOCOLS)
from .reports import ReportBatch, prf_hash, LH_EXPLICIT_HASH_CAP
from .rng import make_stream, uniform53

THE_PATH_LAPLACE = "laplace"
THE_PATH_BERNOULLI = "bernoulli"

def _check_values(spec, values):
    values = np.asarray(values, dtype=np.int64).reshape(-1)
    if len(values) > 0 and (values.min() < 0 or values.max() >= spec.k):
        raise ValueOutOfRange(f"Secret values must lie in [0, {spec.k}).")
    return values

def _randomized_response(values, size, p, rng):
    # keep with probability p, otherwise a uniform other value
    keep = rng.random(len(values)) < p
    other = (values + 1 + rng.integers(0, size - 1, size=len(values))) % size
    return np.where(keep, values, other)

def _sample_grr(spec, values, rng):
    params = analytic_params(spec)
    return ReportBatch(spec.protocol, spec.k,
                       values=_randomized_response(values, spec.k, params.p, rng))

def _sample_ss(spec, values, rng):
    n, k, omega = len(values), spec.k, spec.omega
    params = analytic_params(spec)
    include = rng.random(n) < params.p
    # random keys with the true value forced last: the first columns of the
    # order are a uniform subset of the other values
    keys = rng.random((n, k))
    keys[np.arange(n), values] = 2.0
    chosen = np.argsort(keys, axis=1, kind="stable")[:, :omega]
    chosen[include, omega - 1] = values[include]
    return ReportBatch(spec.protocol, k, subsets=np.sort(chosen, axis=1))

def _sample_lh(spec, values, rng):
    n, k, g = len(values), spec.k, spec.g
    params = analytic_params(spec)
    if k <= LH_EXPLICIT_HASH_CAP:
        hashes = rng.integers(0, g, size=(n, k), dtype=np.int64)
        hashed = hashes[np.arange(n), values]
        seeds = None
    else:
        hashes = None
        seeds = rng.integers(0, 2 ** 64, size=n, dtype=np.uint64)
        hashed = np.array([prf_hash(seed, [x], g)[0] for seed, x in zip(seeds, values)],
                          dtype=np.int64)
    perturbed = _randomized_response(hashed, g, params.p, rng)
    return ReportBatch(spec.protocol, k, values=perturbed, hashes=hashes,
                       hash_seeds=seeds, g=g)

def _one_hot(values, k):
    hot = np.zeros((len(values), k), dtype=bool)
    hot[np.arange(len(values)), values] = True
    return hot

def _sample_bernoulli(spec, values, rng):
    params = analytic_params(spec)
    prob = np.where(_one_hot(values, spec.k), params.p, params.q)
    bits = rng.random(prob.shape) < prob
    return ReportBatch(spec.protocol, spec.k, bits=bits.astype(np.uint8))

def laplace_noise(rng, size, scale):
    """ Laplace(0, scale) noise by inverse CDF on 53-bit uniforms. """
    u = uniform53(rng, size) - 0.5
    return -scale * np.sign(u) * np.log1p(-2.0 * np.abs(u))

def _sample_the_laplace(spec, values, rng):
    k = spec.k
    hot = _one_hot(values, k).astype(np.float64)
    if spec.epsilon == 0:
        # Lap(inf): every bit is a fair coin
        bits = uniform53(rng, hot.shape) > 0.5
    else:
        noisy = hot + laplace_noise(rng, hot.shape, 2.0 / spec.epsilon)
        bits = noisy > spec.theta
    return ReportBatch(spec.protocol, k, bits=bits.astype(np.uint8))

def perturb_batch(spec, values, rng, the_path=THE_PATH_LAPLACE):
    """ Sample one report per secret value.

    Parameters
    ----------
    spec : MechanismSpec
    values : array-like of int
        Secret values in [0, k).
    rng : numpy.random.Generator
    the_path : str
        THE sampling path: "laplace" thresholds x_i + Lap(2/ε) at θ,
        "bernoulli" samples each bit with its closed-form probability.

    Returns
    -------
    ReportBatch
    """
    values = _check_values(spec, values)
    if spec.protocol == PROTOCOL_GRR:
        return _sample_grr(spec, values, rng)
    if spec.protocol == PROTOCOL_SS:
        return _sample_ss(spec, values, rng)
    if spec.is_lh:
        return _sample_lh(spec, values, rng)
    if spec.protocol == PROTOCOL_THE:
        assert the_path in (THE_PATH_LAPLACE, THE_PATH_BERNOULLI), \
                f"Unknown THE sampling path {the_path}."
        if the_path == THE_PATH_LAPLACE:
            return _sample_the_laplace(spec, values, rng)
    return _sample_bernoulli(spec, values, rng)

def perturb(spec, value, rng, the_path=THE_PATH_LAPLACE):
    """ Sample the report of a single secret value.

    Returns
    -------
    Report
    """
    if not 0 <= value < spec.k:
        raise ValueOutOfRange(f"The secret value {value} is outside [0, {spec.k}).")
    return perturb_batch(spec, [value], rng, the_path)[0]

def report_columns(spec, batch):
    """ Column index of each report in the explicit channel of the spec.

    Only defined for domains small enough to build that channel.
    """
    k = spec.k
    if spec.protocol == PROTOCOL_GRR:
        return batch.values
    if spec.protocol == PROTOCOL_SS:
        index = {subset: i for i, subset in
                 enumerate(itertools.combinations(range(k), spec.omega))}
        return np.array([index[tuple(row)] for row in batch.subsets], dtype=np.int64)
    if spec.is_lh:
        tables = batch.hash_tables()
        powers = spec.g ** np.arange(k - 1, -1, -1, dtype=np.int64)
        return (tables @ powers) * spec.g + batch.values
    powers = 2 ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return batch.bits.astype(np.int64) @ powers

def _output_labels(spec):
    k = spec.k
    if spec.protocol == PROTOCOL_GRR:
        return value_labels(k)
    if spec.protocol == PROTOCOL_SS:
        return subset_labels(k, spec.omega)
    if spec.is_lh:
        return lh_labels(k, spec.g)
    return bit_labels(k)

def empirical_channel(spec, n_samples, master_seed=0, the_path=THE_PATH_LAPLACE):
    """ Monte-Carlo estimate of the channel of a mechanism.

    Each secret value is perturbed n_samples times with its own stream and
    the report frequencies fill its row, in the column order of the
    explicit channel builder. Bitwise protocols produce the one-hot
    channel with one row per secret value.

    Parameters
    ----------
    spec : MechanismSpec
    n_samples : int
        Reports per secret value.
    master_seed : int
    the_path : str
        THE sampling path.

    Returns
    -------
    ChannelMatrix
    """
    labels = _output_labels(spec)
    n_cols = len(labels)
    check_size(spec.k, n_cols)
    rows = np.zeros((spec.k, n_cols), dtype=np.float64)
    for x in range(spec.k):
        rng = make_stream(master_seed, trial=x)
        batch = perturb_batch(spec, np.full(n_samples, x, dtype=np.int64), rng, the_path)
        rows[x] = np.bincount(report_columns(spec, batch), minlength=n_cols) / n_samples
    row_labels = one_hot_labels(spec.k) if spec.protocol in BITWISE_PROTOCOLS \
            else value_labels(spec.k)
    return validate_channel(rows, row_labels, labels)

def tv_distance(p, q):
    """ Total-variation distance of two distributions. """
    return 0.5 * float(np.abs(np.asarray(p, dtype=np.float64)
                              - np.asarray(q, dtype=np.float64)).sum())

def bernoulli_std_error(prob, n):
    """ Normal-approximation standard error of a frequency. """
    return math.sqrt(prob * (1.0 - prob) / n)

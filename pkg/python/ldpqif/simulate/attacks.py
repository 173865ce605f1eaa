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

    Reconstruction adversaries.

    Every adversary guesses a posterior maximizer under the uniform prior
    and breaks ties uniformly at random among the maximizers.
"""
import numpy as np

from ..errors import ShapeMismatch
from ..mechanisms.spec import analytic_params, PROTOCOL_GRR, PROTOCOL_SS
from .reports import ReportBatch, check_report

def _pick_uniform(candidates, rng):
    """ A uniformly random True column of each row of a boolean mask.

    Rows without candidates pick among all columns.
    """
    n, k = candidates.shape
    empty = ~candidates.any(axis=1)
    mask = candidates | empty[:, None]
    keys = np.where(mask, rng.random((n, k)), -1.0)
    return np.argmax(keys, axis=1).astype(np.int64)

def check_batch(spec, batch):
    """ Raise ShapeMismatch unless the batch fits the spec. """
    if batch.protocol != spec.protocol or batch.k != spec.k:
        raise ShapeMismatch(f"A {batch.protocol} batch over {batch.k} values does not "
                            f"match {spec.protocol} over {spec.k} values.")

def support_mask(spec, batch):
    """ (n, k) mask of the values each report supports. """
    n, k = len(batch), spec.k
    if spec.protocol == PROTOCOL_GRR:
        mask = np.zeros((n, k), dtype=bool)
        mask[np.arange(n), batch.values] = True
        return mask
    if spec.protocol == PROTOCOL_SS:
        mask = np.zeros((n, k), dtype=bool)
        mask[np.arange(n)[:, None], batch.subsets] = True
        return mask
    if spec.is_lh:
        return batch.hash_tables() == batch.values[:, None]
    return batch.bits.astype(bool)

def reconstruct_batch(spec, batch, rng):
    """ Guess the secret value behind every report of a batch.

    GRR guesses the report, SS a uniform member of the reported subset,
    SUE/OUE/THE a uniform set bit (all values when no bit is set) and LH a
    uniform member of the support set {x : h(x) = y}, falling back to all
    values when it is empty. At ε = 0 every value is a maximizer. For SS
    with p < ω/k the complement of the subset is guessed instead.

    Parameters
    ----------
    spec : MechanismSpec
    batch : ReportBatch
    rng : numpy.random.Generator

    Returns
    -------
    numpy.ndarray : int64 guesses.
    """
    check_batch(spec, batch)
    n, k = len(batch), spec.k
    params = analytic_params(spec)
    if spec.protocol == PROTOCOL_SS:
        # likelihood of an in-subset value against an out-of-subset value
        omega = spec.omega
        inside, outside = params.p * (k - omega), (1.0 - params.p) * omega
    else:
        inside, outside = params.p, params.q
    if inside == outside:
        return rng.integers(0, k, size=n, dtype=np.int64)
    support = support_mask(spec, batch)
    if inside < outside:
        support = ~support
    return _pick_uniform(support, rng)

def reconstruct(spec, report, rng):
    """ Guess the secret value behind a single report.

    Raises ShapeMismatch when the report does not fit the spec.
    """
    check_report(spec, report)
    return int(reconstruct_batch(spec, ReportBatch.from_reports(spec, [report]), rng)[0])

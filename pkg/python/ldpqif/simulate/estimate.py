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

    Unbiased frequency estimation from perturbed reports.
"""
import numpy as np

from ..errors import DegenerateEstimator, EmptyDataset
from ..mechanisms.spec import analytic_params
from .attacks import support_mask, check_batch
from .reports import ReportBatch

# Relative gap below which p* and q* count as equal.
DEGENERATE_RTOL = 1e-12

def support_counts(spec, batch):
    """ Number of reports supporting each value of [k]. """
    check_batch(spec, batch)
    return support_mask(spec, batch).sum(axis=0).astype(np.int64)

def unbiased_estimate(spec, counts, n):
    """ f_v = (count_v / n - q*) / (p* - q*).

    Parameters
    ----------
    spec : MechanismSpec
    counts : numpy.ndarray
        Support counts over [k].
    n : int
        Number of reports.
    """
    if n < 1:
        raise EmptyDataset("Cannot estimate frequencies from zero reports.")
    params = analytic_params(spec)
    gap = params.p_star - params.q_star
    if abs(gap) <= DEGENERATE_RTOL * max(abs(params.p_star), abs(params.q_star)):
        raise DegenerateEstimator(f"{spec.protocol} at epsilon = {spec.epsilon} has "
                                  f"p* = q* = {params.p_star:.6g}.")
    return (np.asarray(counts, dtype=np.float64) / n - params.q_star) / gap

def project_to_simplex(vector):
    """ Euclidean projection of a vector onto the probability simplex.

    Sorts the coordinates and shifts them by the largest threshold that
    keeps the positive part summing to one.
    """
    v = np.asarray(vector, dtype=np.float64)
    u = np.sort(v)[::-1]
    cum = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - cum / idx > 0)[0][-1]
    shift = cum[rho] / (rho + 1)
    return np.maximum(v - shift, 0.0)

def estimate_frequencies(spec, reports, project=False):
    """ Estimate the frequency vector over [k] from reports.

    Parameters
    ----------
    spec : MechanismSpec
    reports : ReportBatch or list of Report
    project : bool
        Project the estimate onto the probability simplex. Off by default,
        so the estimate is unbiased and may hold negative entries.

    Returns
    -------
    numpy.ndarray
    """
    batch = reports if isinstance(reports, ReportBatch) \
            else ReportBatch.from_reports(spec, reports)
    estimate = unbiased_estimate(spec, support_counts(spec, batch), len(batch))
    return project_to_simplex(estimate) if project else estimate

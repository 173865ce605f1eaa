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

    Monte-Carlo experiments: empirical ASR and frequency-estimation MSE.

    A trial is one work unit. Inside a trial, user block b draws from the
    stream (master_seed, trial, b), and results are reduced in trial order,
    so the outputs do not depend on the number of worker processes.
"""
import logging
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..errors import ConfigError, InvalidDomainSize
from ..mechanisms.spec import MechanismSpec
from .attacks import reconstruct_batch
from .estimate import support_counts, unbiased_estimate, project_to_simplex
from .parallel import ordered_map
from .rng import make_stream, user_blocks
from .samplers import perturb_batch, bernoulli_std_error, THE_PATH_LAPLACE

logger = logging.getLogger(__name__)

METRIC_ASR = "asr"
METRIC_MSE = "mse"
SUPPORTED_METRICS = [METRIC_ASR, METRIC_MSE]

EXPERIMENT_COLUMNS = ["protocol", "k", "epsilon", "theta", "g", "omega", "n", "trials",
                      "seed", "metric", "mean", "std"]

AsrResult = namedtuple("AsrResult", ["mean", "std_error", "n_observations"])

@dataclass(frozen=True)
class TrialConfig:
    """ How often and from which seed an experiment is repeated.

    Parameters
    ----------
    n_trials : int
        Number of independent trials, >= 1.
    master_seed : int
        Non-negative 64-bit seed.
    parallel_lanes : int
        Worker processes; results do not depend on it.
    spec : MechanismSpec
        Optional default mechanism.
    the_path : str
        THE sampling path.
    progress : bool
        Show progress bars.
    """
    n_trials: int
    master_seed: int
    parallel_lanes: int = 1
    spec: MechanismSpec = None
    the_path: str = THE_PATH_LAPLACE
    progress: bool = False

    def __post_init__(self):
        if int(self.n_trials) != self.n_trials or self.n_trials < 1:
            raise ConfigError(f"The number of trials must be a positive integer, "
                              f"got {self.n_trials}.")
        if int(self.master_seed) != self.master_seed or not 0 <= self.master_seed < 2 ** 64:
            raise ConfigError(f"The master seed must be a 64-bit unsigned integer, "
                              f"got {self.master_seed}.")
        if int(self.parallel_lanes) != self.parallel_lanes or self.parallel_lanes < 1:
            raise ConfigError(f"The number of lanes must be a positive integer, "
                              f"got {self.parallel_lanes}.")

def _check_dataset(spec, dataset):
    if dataset.domain_size != spec.k:
        raise InvalidDomainSize(f"The dataset has {dataset.domain_size} values but "
                                f"{spec.protocol} is defined over k = {spec.k}.")

def _asr_trial(task):
    spec_dict, values, seed, trial, the_path = task
    spec = MechanismSpec.from_dict(spec_dict)
    correct = 0
    for block, start, stop in user_blocks(len(values)):
        rng = make_stream(seed, trial, block)
        secrets = values[start:stop]
        batch = perturb_batch(spec, secrets, rng, the_path)
        correct += int(np.sum(reconstruct_batch(spec, batch, rng) == secrets))
    return correct

def _mse_trial(task):
    spec_dict, values, seed, trial, the_path, project = task
    spec = MechanismSpec.from_dict(spec_dict)
    counts = np.zeros(spec.k, dtype=np.int64)
    for block, start, stop in user_blocks(len(values)):
        rng = make_stream(seed, trial, block)
        counts += support_counts(spec, perturb_batch(spec, values[start:stop], rng, the_path))
    estimate = unbiased_estimate(spec, counts, len(values))
    if project:
        estimate = project_to_simplex(estimate)
    truth = np.bincount(values, minlength=spec.k) / len(values)
    return float(np.mean((estimate - truth) ** 2))

def empirical_asr(spec, dataset, config):
    """ Fraction of users whose secret the reconstruction adversary guesses.

    Parameters
    ----------
    spec : MechanismSpec
    dataset : Dataset
        Over the domain of the spec.
    config : TrialConfig

    Returns
    -------
    AsrResult : the mean over all users and trials and its normal
    approximation standard error.
    """
    _check_dataset(spec, dataset)
    tasks = [(spec.to_dict(), dataset.values, config.master_seed, trial, config.the_path)
             for trial in range(config.n_trials)]
    correct = ordered_map(_asr_trial, tasks, config.parallel_lanes, config.progress)
    n_obs = len(dataset) * config.n_trials
    mean = sum(correct) / n_obs
    std_error = bernoulli_std_error(mean, n_obs)
    logger.debug("ASR of %s: %.6f +- %.6f", spec, mean, std_error)
    return AsrResult(mean, std_error, n_obs)

def mse_trials(spec, dataset, config, project=False):
    """ The per-trial MSE (1/k) sum_v (f_v - f_v^true)^2 of the frequency estimator. """
    _check_dataset(spec, dataset)
    tasks = [(spec.to_dict(), dataset.values, config.master_seed, trial, config.the_path,
              project) for trial in range(config.n_trials)]
    return np.array(ordered_map(_mse_trial, tasks, config.parallel_lanes, config.progress))

def _row(spec, dataset, config, metric, mean, std):
    return {
        "protocol": spec.protocol,
        "k": spec.k,
        "epsilon": float(spec.epsilon),
        "theta": spec.theta,
        "g": spec.g,
        "omega": spec.omega,
        "n": len(dataset),
        "trials": config.n_trials,
        "seed": config.master_seed,
        "metric": metric,
        "mean": float(mean),
        "std": float(std),
    }

def asr_experiment(specs, dataset, config):
    """ Empirical ASR of each spec.

    Returns
    -------
    pandas.DataFrame : EXPERIMENT_COLUMNS; `std` is the standard error.
    """
    rows = []
    for spec in specs:
        res = empirical_asr(spec, dataset, config)
        rows.append(_row(spec, dataset, config, METRIC_ASR, res.mean, res.std_error))
    return pd.DataFrame(rows, columns=EXPERIMENT_COLUMNS)

def mse_experiment(specs, dataset, config, project=False):
    """ Frequency-estimation MSE of each spec, averaged over trials.

    Parameters
    ----------
    specs : list of MechanismSpec
        All over k = dataset.domain_size.
    dataset : Dataset
    config : TrialConfig
    project : bool
        Project estimates onto the simplex before scoring.

    Returns
    -------
    pandas.DataFrame : EXPERIMENT_COLUMNS plus `variance`, the across-trial
    variance of the MSE; `std` is the standard error of the mean MSE.
    """
    rows = []
    for spec in specs:
        per_trial = mse_trials(spec, dataset, config, project)
        variance = float(np.var(per_trial, ddof=1)) if len(per_trial) > 1 else 0.0
        row = _row(spec, dataset, config, METRIC_MSE, per_trial.mean(),
                   math.sqrt(variance / len(per_trial)))
        row["variance"] = variance
        rows.append(row)
    return pd.DataFrame(rows, columns=EXPERIMENT_COLUMNS + ["variance"])

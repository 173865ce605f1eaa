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

    The asr-lh-compare command: reconstruction success of local hashing
    from the closed form, from the prior-work formula and by simulation.

    Run as:
    ldpqif asr-lh-compare --k-grid 2 4 8 16 --epsilons 3 5 --trials 1000 --users 1000
"""
import logging

import pandas as pd

from ..leakage.capacity import lh_asr_closed, lh_asr_prior_work
from ..mechanisms.spec import MechanismSpec, PROTOCOL_OLH
from ..simulate.dataset import synth_dataset, DIST_UNIFORM
from ..simulate.experiments import TrialConfig, empirical_asr
from ..utils import sys_tracker
from .output import write_frame, render_svg_charts, write_charts

COMMAND = "asr-lh-compare"

LH_COMPARE_COLUMNS = ["k", "epsilon", "g", "users", "trials", "seed", "measure", "value",
                      "std_error"]

MEASURE_CLOSED = "lh_asr_closed"
MEASURE_PRIOR_WORK = "lh_asr_prior_work"
MEASURE_EMPIRICAL = "empirical"

def prepare(config):
    """ One OLH spec per (k, epsilon) cell and the trial settings.

    Without g every cell uses the optimal hash range of its epsilon.
    """
    k_grid = config.k_grid if config.k_grid is not None else \
        ([config.k] if config.k is not None else None)
    assert k_grid is not None, "The asr-lh-compare command needs k_grid or k"
    assert config.epsilons is not None, "The asr-lh-compare command needs epsilons"
    specs = [MechanismSpec(PROTOCOL_OLH, k, eps, g=config.g)
             for k in k_grid for eps in config.epsilons]
    trial_config = TrialConfig(config.trials, config.seed, config.lanes,
                               progress=config.verbose)
    return specs, trial_config

def _row(spec, config, measure, value, std_error=None):
    return {
        "k": spec.k,
        "epsilon": float(spec.epsilon),
        "g": spec.g,
        "users": config.users,
        "trials": config.trials,
        "seed": config.seed,
        "measure": measure,
        "value": float(value),
        "std_error": std_error,
    }

def compare_cell(spec, config, trial_config):
    """ The three rows of one (k, epsilon) cell. """
    # the uniform-prior adversary's success does not depend on the data
    dataset = synth_dataset(DIST_UNIFORM, spec.k, config.users, config.seed)
    empirical = empirical_asr(spec, dataset, trial_config)
    return [
        _row(spec, config, MEASURE_CLOSED, lh_asr_closed(spec.k, spec.g, spec.epsilon)),
        _row(spec, config, MEASURE_PRIOR_WORK,
             lh_asr_prior_work(spec.k, spec.g, spec.epsilon)),
        _row(spec, config, MEASURE_EMPIRICAL, empirical.mean, empirical.std_error),
    ]

def run(plan, config):
    """ Evaluate and write the comparison. """
    specs, trial_config = plan
    rows = []
    for spec in specs:
        rows.extend(compare_cell(spec, config, trial_config))
        sys_tracker.check(f"lh cell k={spec.k} epsilon={spec.epsilon}")
    frame = pd.DataFrame(rows, columns=LH_COMPARE_COLUMNS)
    charts = []
    if config.svg:
        charts = render_svg_charts(frame, config.out, "k", "value", ["measure"], "epsilon")
    write_frame(frame, config.out, config.format, COMMAND)
    write_charts(charts)
    logging.info("Compared %d LH cells.", len(specs))
    return frame

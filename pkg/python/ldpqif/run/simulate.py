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

    The simulate command: empirical ASR and frequency-estimation MSE of
    protocols on a dataset file or a synthetic dataset.

    Run as:
    ldpqif simulate --config simulate.json --out results/asr.csv
"""
import logging
import os

import pandas as pd

from ..mechanisms.spec import MechanismSpec, PROTOCOL_THE
from ..refinement.tradeoff import theta_threshold
from ..simulate.dataset import load_dataset, synth_dataset
from ..simulate.experiments import (TrialConfig, asr_experiment, mse_experiment,
                                    METRIC_ASR, EXPERIMENT_COLUMNS)
from ..utils import sys_tracker
from .output import write_frame, render_svg_charts, write_charts

COMMAND = "simulate"

SIMULATE_COLUMNS = EXPERIMENT_COLUMNS + ["theta_threshold"]

def make_dataset(config):
    """ Load the dataset file or draw the synthetic dataset of the config. """
    if config.synthetic is not None:
        synthetic = config.synthetic
        k = synthetic.get("k", config.k)
        assert k is not None, "The synthetic generator needs k"
        return synth_dataset(synthetic["dist"], k, synthetic.get("n", config.users),
                             synthetic.get("seed", config.seed), synthetic.get("s", 1.0))
    assert config.dataset is not None, "The simulate command needs a dataset"
    return load_dataset(config.dataset, config.dataset_format, config.remap)

def expand_specs(config, k):
    """ Mechanism specs over domain k.

    Templates without epsilon are expanded over the epsilon grid and THE
    templates without theta over the theta grid. Without templates every
    protocol is crossed with both grids.
    """
    templates = config.specs
    if templates is None:
        assert config.protocols is not None, "The simulate command needs specs or protocols"
        templates = [{"protocol": protocol} for protocol in config.protocols]
    specs = []
    for template in templates:
        template = dict(template)
        assert template.get("k", k) == k, \
            f"The spec {template} does not match the dataset domain size {k}"
        template["k"] = k
        if "epsilon" in template:
            epsilons = [template.pop("epsilon")]
        else:
            assert config.epsilons is not None, f"The spec {template} needs an epsilon"
            epsilons = config.epsilons
        is_the = str(template["protocol"]).upper() == PROTOCOL_THE
        thetas = [template.pop("theta", None)] if not is_the or "theta" in template \
            else config.thetas
        for epsilon in epsilons:
            for theta in thetas:
                params = dict(template, epsilon=epsilon)
                if theta is not None:
                    params["theta"] = theta
                specs.append(MechanismSpec.from_dict(params))
    return specs

def prepare(config):
    """ The dataset, the specs, the trial settings and the metrics. """
    dataset = make_dataset(config)
    sys_tracker.check("load dataset")
    specs = expand_specs(config, dataset.domain_size)
    trial_config = TrialConfig(config.trials, config.seed, config.lanes,
                               the_path=config.the_path, progress=config.verbose)
    return dataset, specs, trial_config, config.metric

def metric_path(out, metric, n_metrics):
    """ The output file of one metric. """
    if out is None or n_metrics == 1:
        return out
    stem, ext = os.path.splitext(out)
    return f"{stem}.{metric}{ext}"

def run(plan, config):
    """ Run every metric, then write one file per metric. """
    dataset, specs, trial_config, metrics = plan
    frames = {}
    for metric in metrics:
        if metric == METRIC_ASR:
            frame = asr_experiment(specs, dataset, trial_config)
        else:
            frame = mse_experiment(specs, dataset, trial_config, project=config.project)
        frame["theta_threshold"] = [theta_threshold(eps) for eps in frame["epsilon"]]
        frames[metric] = frame[SIMULATE_COLUMNS]
        sys_tracker.check(f"simulate {metric}")
        logging.info("Simulated %s for %d specs.", metric, len(specs))
    outs = {metric: metric_path(config.out, metric, len(frames)) for metric in frames}
    charts = []
    if config.svg:
        for metric, frame in frames.items():
            charts.extend(render_svg_charts(frame, outs[metric], "epsilon", "mean",
                                            ["protocol", "theta"], "metric"))
    # nothing is written before every metric and chart succeeded
    for metric, frame in frames.items():
        write_frame(frame, outs[metric], config.format, COMMAND)
    write_charts(charts)
    return pd.concat(list(frames.values()), ignore_index=True)

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

    Monte-Carlo simulation of LDP protocols: samplers, reconstruction
    attacks, frequency estimation and experiments.
"""
from .rng import make_stream, user_blocks, uniform53, USERS_PER_STREAM
from .dataset import Dataset, load_dataset, synth_dataset, read_items, zipf_weights
from .id_map import IdMap
from .reports import Report, ReportBatch, HashDescriptor, prf_hash, LH_EXPLICIT_HASH_CAP
from .samplers import perturb, perturb_batch, empirical_channel, laplace_noise
from .samplers import THE_PATH_LAPLACE, THE_PATH_BERNOULLI, bernoulli_std_error, tv_distance
from .attacks import reconstruct, reconstruct_batch
from .estimate import estimate_frequencies, project_to_simplex, support_counts
from .experiments import TrialConfig, AsrResult, empirical_asr, mse_experiment
from .experiments import asr_experiment, mse_trials, EXPERIMENT_COLUMNS
from .experiments import METRIC_ASR, METRIC_MSE, SUPPORTED_METRICS
from .parallel import ordered_map

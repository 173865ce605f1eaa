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

    ldpqif package: local differential privacy protocols as channels.
"""
__version__ = "0.1"

from .errors import LdpQifError
from .channel import ChannelMatrix, validate_channel, cascade, kronecker, kronecker_power
from .channel import uniform_prior, identity_gain, read_channel, write_channel
from .mechanisms import MechanismSpec, build_channel, build_bitwise, analytic_params
from .leakage import bayes_capacity, bayes_capacity_closed, asr, asr_closed, epsilon_of
from .leakage import lh_asr_closed, lh_asr_prior_work, leakage_report
from .refinement import refines, refines_lp, refines_2x2, RefinementVerdict
from .refinement import theta_threshold, verify_refinement_family
from .simulate import Dataset, load_dataset, synth_dataset, TrialConfig
from .simulate import perturb, reconstruct, empirical_asr, estimate_frequencies
from .simulate import mse_experiment

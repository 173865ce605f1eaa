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

    Arguments and config
"""

import os
import argparse
import logging

from .config import SUPPORTED_COMMANDS
from .config import BUILTIN_CMD_CAPACITY
from .config import BUILTIN_CMD_ASR_LH_COMPARE
from .config import BUILTIN_CMD_REFINE
from .config import BUILTIN_CMD_SIMULATE
from .config import BUILTIN_CMD_TRADEOFF_EXPORT
from .config import BUILTIN_CMD_FAMILY_CHECK
from .config import SUPPORTED_OUTPUT_FORMATS
from .config import OUTPUT_FORMAT_CSV
from .config import SUPPORTED_REFINE_MODES
from .config import REFINE_MODE_AUTO
from .config import DEFAULT_THETA, DEFAULT_SEED, DEFAULT_TRIALS, DEFAULT_USERS

from .utils import load_config_file

from ..channel.numeric import DEFAULT_SIZE_CAP
from ..mechanisms.spec import SUPPORTED_PROTOCOLS
from ..refinement.family import FORM_BITWISE, FORM_CHANNEL
from ..refinement.lp import TAU_REFINE
from ..simulate.dataset import SUPPORTED_FORMATS, FORMAT_TRANSACTIONS, REMAP_IDENTITY
from ..simulate.experiments import SUPPORTED_METRICS, METRIC_ASR

__all__ = [
    "get_argument_parser",
    "LQConfig",
]

# Settings a config file may carry.
KNOWN_KEYS = ["k", "protocols", "epsilons", "thetas", "theta", "g", "omega", "k_grid",
              "trials", "users", "seed", "lanes", "out", "format", "exact", "svg",
              "size_cap", "tolerance", "mode", "form", "left", "right", "reverse",
              "dataset", "dataset_format", "remap", "synthetic", "specs", "metric",
              "project", "the_path", "verbose"]

def _str2bool(x):
    return str(x).lower() in ['true', '1']

def get_argument_parser():
    """Parse command-line arguments"""
    common = argparse.ArgumentParser(add_help=False)
    common = _add_initialization_args(common)
    common = _add_output_args(common)

    parser = argparse.ArgumentParser(prog="ldpqif", parents=[common],
                                     description="Leakage and refinement of LDP protocols")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser(BUILTIN_CMD_CAPACITY, parents=[common],
                                help="Bayes capacity of protocols over an epsilon grid")
    _add_sweep_args(sub)
    _add_size_args(sub)

    sub = subparsers.add_parser(BUILTIN_CMD_ASR_LH_COMPARE, parents=[common],
                                help="LH reconstruction success: closed form, "
                                     "prior-work formula and simulation")
    _add_sweep_args(sub)
    _add_trial_args(sub)

    sub = subparsers.add_parser(BUILTIN_CMD_REFINE, parents=[common],
                                help="Decide refinement between two channels")
    _add_refine_args(sub)
    _add_size_args(sub)

    sub = subparsers.add_parser(BUILTIN_CMD_SIMULATE, parents=[common],
                                help="Empirical ASR and MSE experiments")
    _add_sweep_args(sub)
    _add_trial_args(sub)
    _add_dataset_args(sub)

    sub = subparsers.add_parser(BUILTIN_CMD_TRADEOFF_EXPORT, parents=[common],
                                help="Breakpoints of 2x2 trade-off functions")
    _add_sweep_args(sub)

    sub = subparsers.add_parser(BUILTIN_CMD_FAMILY_CHECK, parents=[common],
                                help="Check that a protocol family is ordered by refinement")
    _add_sweep_args(sub)
    _add_refine_args(sub)
    return parser

# pylint: disable=no-member
class LQConfig:
    """ldpqif argument class which contains all arguments
       from the config file and the command line

    Parameters:
    cmd_args: Argument
        Command line arguments
    """
    def __init__(self, cmd_args):
        cmd_args_dict = vars(cmd_args)
        self.command = cmd_args_dict.get("command")
        assert self.command in SUPPORTED_COMMANDS, \
            f"Command must be in {SUPPORTED_COMMANDS}, got {self.command}"
        self.config_path = cmd_args_dict.get("config")
        if self.config_path is not None:
            self.set_attributes(load_config_file(self.config_path))

        # Override class attributes using command-line arguments
        self.override_arguments(cmd_args)
        # We do argument check as early as possible to prevent config bugs.
        self.handle_argument_conflicts()

    def set_attributes(self, configuration):
        """Set class attributes from the flattened config file"""
        for key, val in configuration.items():
            if key == "version":
                continue
            if key not in KNOWN_KEYS:
                logging.warning("Ignoring unknown config key %s.", key)
                continue
            setattr(self, f"_{key}", val)

    def override_arguments(self, cmd_args):
        """Override arguments in the config file using command-line arguments"""
        for arg_key, arg_val in vars(cmd_args).items():
            if arg_key in ["config", "command"]:
                continue
            setattr(self, f"_{arg_key}", arg_val)
            logging.debug("Overriding Argument: %s", arg_key)

    def handle_argument_conflicts(self):
        """Check and resolve argument conflicts
        """
        if self.command == BUILTIN_CMD_SIMULATE:
            assert not (hasattr(self, "_dataset") and hasattr(self, "_synthetic")), \
                "Set either dataset or synthetic, not both."
            assert hasattr(self, "_dataset") or hasattr(self, "_synthetic"), \
                "The simulate command needs a dataset or a synthetic generator."
        if self.command == BUILTIN_CMD_REFINE:
            assert hasattr(self, "_left") and hasattr(self, "_right"), \
                "The refine command needs a left and a right channel."

    ###################### general ######################
    @property
    def verbose(self):
        """ Log at DEBUG level and show progress bars. Default is False
        """
        if hasattr(self, "_verbose"):
            assert self._verbose in [True, False]
            return self._verbose
        return False

    @property
    def seed(self):
        """ Master seed of all random streams
        """
        if hasattr(self, "_seed"):
            seed = int(self._seed)
            assert 0 <= seed < 2 ** 64, "The seed must be a 64-bit unsigned integer"
            return seed
        return DEFAULT_SEED

    @property
    def lanes(self):
        """ Number of worker processes
        """
        if hasattr(self, "_lanes"):
            assert int(self._lanes) >= 1, "The number of lanes must be at least 1"
            return int(self._lanes)
        return 1

    @property
    def out(self):
        """ Output path. None writes to standard output
        """
        if hasattr(self, "_out"):
            return self._out
        return None

    @property
    def format(self):
        """ Output format, csv or json
        """
        if hasattr(self, "_format"):
            assert self._format in SUPPORTED_OUTPUT_FORMATS, \
                f"Output format must be in {SUPPORTED_OUTPUT_FORMATS}"
            return self._format
        return OUTPUT_FORMAT_CSV

    @property
    def exact(self):
        """ Exact-rational mode where supported
        """
        if hasattr(self, "_exact"):
            assert self._exact in [True, False]
            return self._exact
        return False

    @property
    def svg(self):
        """ Write one SVG chart per metric next to the data file
        """
        if hasattr(self, "_svg"):
            assert self._svg in [True, False]
            return self._svg
        return False

    @property
    def size_cap(self):
        """ Largest number of entries of an explicit channel
        """
        if hasattr(self, "_size_cap"):
            assert int(self._size_cap) > 0, "The size cap must be positive"
            return int(self._size_cap)
        return DEFAULT_SIZE_CAP

    ###################### mechanisms ######################
    @property
    def k(self):
        """ Domain size
        """
        if hasattr(self, "_k"):
            assert int(self._k) == self._k and self._k >= 2, \
                "The domain size k must be an integer >= 2"
            return int(self._k)
        return None

    @property
    def protocols(self):
        """ Protocol names
        """
        if hasattr(self, "_protocols"):
            protocols = self._protocols
            if isinstance(protocols, str):
                protocols = [protocols]
            assert len(protocols) > 0, "The protocol list must not be empty"
            protocols = [str(p).upper() for p in protocols]
            for protocol in protocols:
                assert protocol in SUPPORTED_PROTOCOLS, \
                    f"Protocol {protocol} must be in {SUPPORTED_PROTOCOLS}"
            return protocols
        return None

    @property
    def epsilons(self):
        """ Epsilon grid
        """
        if hasattr(self, "_epsilons"):
            epsilons = self._epsilons
            if not isinstance(epsilons, (list, tuple)):
                epsilons = [epsilons]
            assert len(epsilons) > 0, "The epsilon grid must not be empty"
            epsilons = [float(eps) for eps in epsilons]
            assert all(eps >= 0 for eps in epsilons), "Every epsilon must be >= 0"
            return epsilons
        return None

    @property
    def theta(self):
        """ THE threshold. Default is 0.75
        """
        if hasattr(self, "_theta"):
            theta = float(self._theta)
            assert 0.5 < theta < 1, "theta must lie in (0.5, 1)"
            return theta
        return DEFAULT_THETA

    @property
    def thetas(self):
        """ THE threshold grid. Defaults to [theta]
        """
        if hasattr(self, "_thetas"):
            thetas = [float(t) for t in self._thetas]
            assert len(thetas) > 0, "The theta grid must not be empty"
            assert all(0.5 < t < 1 for t in thetas), "Every theta must lie in (0.5, 1)"
            return thetas
        return [self.theta]

    @property
    def g(self):
        """ LH hash range. None uses the protocol default
        """
        if hasattr(self, "_g") and self._g is not None:
            assert int(self._g) == self._g and self._g >= 2, "g must be an integer >= 2"
            return int(self._g)
        return None

    @property
    def omega(self):
        """ SS subset size. None uses the optimal size
        """
        if hasattr(self, "_omega") and self._omega is not None:
            assert int(self._omega) == self._omega and self._omega >= 1, \
                "omega must be a positive integer"
            return int(self._omega)
        return None

    @property
    def k_grid(self):
        """ Domain sizes of the LH comparison
        """
        if hasattr(self, "_k_grid"):
            k_grid = [int(k) for k in self._k_grid]
            assert len(k_grid) > 0, "The k grid must not be empty"
            assert all(k >= 2 for k in k_grid), "Every k must be >= 2"
            return k_grid
        return None

    @property
    def specs(self):
        """ Mechanism templates as dicts. Missing epsilon and theta are
            expanded over the grids
        """
        if hasattr(self, "_specs"):
            specs = self._specs
            assert isinstance(specs, list) and len(specs) > 0, \
                "specs must be a non-empty list of mechanism templates"
            for spec in specs:
                assert isinstance(spec, dict) and "protocol" in spec, \
                    f"Every spec needs a protocol, got {spec}"
            return specs
        return None

    ###################### simulation ######################
    @property
    def trials(self):
        """ Number of Monte-Carlo trials
        """
        if hasattr(self, "_trials"):
            assert int(self._trials) == self._trials and self._trials >= 1, \
                "The number of trials must be a positive integer"
            return int(self._trials)
        return DEFAULT_TRIALS

    @property
    def users(self):
        """ Number of simulated users per trial
        """
        if hasattr(self, "_users"):
            assert int(self._users) == self._users and self._users >= 1, \
                "The number of users must be a positive integer"
            return int(self._users)
        return DEFAULT_USERS

    @property
    def dataset(self):
        """ Dataset file
        """
        if hasattr(self, "_dataset"):
            assert os.path.isfile(self._dataset), \
                f"Dataset file {self._dataset} does not exist"
            return self._dataset
        return None

    @property
    def dataset_format(self):
        """ transactions or value_per_line
        """
        if hasattr(self, "_dataset_format"):
            assert self._dataset_format in SUPPORTED_FORMATS, \
                f"Dataset format must be in {SUPPORTED_FORMATS}"
            return self._dataset_format
        return FORMAT_TRANSACTIONS

    @property
    def remap(self):
        """ identity, top_n:<n> or subsample:<n>[:<seed>]
        """
        if hasattr(self, "_remap"):
            return self._remap
        return REMAP_IDENTITY

    @property
    def synthetic(self):
        """ Synthetic generator: a dict with dist, k, n, seed and s, or a
            string such as "zipf:1.0"
        """
        if hasattr(self, "_synthetic"):
            synthetic = self._synthetic
            if isinstance(synthetic, str):
                synthetic = {"dist": synthetic}
            assert isinstance(synthetic, dict) and "dist" in synthetic, \
                "The synthetic generator needs a dist"
            return synthetic
        return None

    @property
    def metric(self):
        """ Metrics of the simulate command
        """
        if hasattr(self, "_metric"):
            metrics = self._metric
            if isinstance(metrics, str):
                metrics = [metrics]
            assert len(metrics) > 0, "The metric list must not be empty"
            for metric in metrics:
                assert metric in SUPPORTED_METRICS, \
                    f"Metric {metric} must be in {SUPPORTED_METRICS}"
            return list(metrics)
        return [METRIC_ASR]

    @property
    def project(self):
        """ Project frequency estimates onto the simplex
        """
        if hasattr(self, "_project"):
            assert self._project in [True, False]
            return self._project
        return False

    @property
    def the_path(self):
        """ THE sampling path, laplace or bernoulli
        """
        if hasattr(self, "_the_path"):
            return self._the_path
        return "laplace"

    ###################### refinement ######################
    @property
    def left(self):
        """ Left operand: a spec JSON string, a spec dict or a channel file
        """
        assert hasattr(self, "_left"), "The left operand must be provided"
        return self._left

    @property
    def right(self):
        """ Right operand: a spec JSON string, a spec dict or a channel file
        """
        assert hasattr(self, "_right"), "The right operand must be provided"
        return self._right

    @property
    def mode(self):
        """ Refinement method: auto, tradeoff or lp
        """
        if hasattr(self, "_mode"):
            assert self._mode in SUPPORTED_REFINE_MODES, \
                f"Refinement mode must be in {SUPPORTED_REFINE_MODES}"
            return self._mode
        return REFINE_MODE_AUTO

    @property
    def form(self):
        """ bitwise (2x2) or channel (one-hot k-bit) form of bitwise protocols
        """
        if hasattr(self, "_form"):
            assert self._form in [FORM_BITWISE, FORM_CHANNEL], \
                f"Form must be {FORM_BITWISE} or {FORM_CHANNEL}"
            return self._form
        return FORM_BITWISE

    @property
    def tolerance(self):
        """ LP residual cutoff
        """
        if hasattr(self, "_tolerance"):
            assert float(self._tolerance) >= 0, "The tolerance must be >= 0"
            return float(self._tolerance)
        return TAU_REFINE

    @property
    def reverse(self):
        """ Check the anti direction of a family
        """
        if hasattr(self, "_reverse"):
            assert self._reverse in [True, False]
            return self._reverse
        return False

def _add_initialization_args(parser):
    group = parser.add_argument_group(title="initialization")
    group.add_argument(
        "--config",
        "--cf",
        help="JSON or YAML config file. Command-line flags override it.",
        type=str,
        default=argparse.SUPPRESS,
    )
    group.add_argument(
        "--verbose",
        type=_str2bool,
        default=argparse.SUPPRESS,
        help="Print more information.",
    )
    group.add_argument("--seed", type=int, default=argparse.SUPPRESS,
            help="Master seed of all random streams")
    group.add_argument("--lanes", type=int, default=argparse.SUPPRESS,
            help="Number of worker processes")
    return parser

def _add_output_args(parser):
    group = parser.add_argument_group(title="output")
    group.add_argument("--out", type=str, default=argparse.SUPPRESS,
            help="Output file. Standard output when omitted")
    group.add_argument("--format", type=str, default=argparse.SUPPRESS,
            help=f"Output format, one of {SUPPORTED_OUTPUT_FORMATS}")
    group.add_argument("--exact", type=_str2bool, default=argparse.SUPPRESS,
            help="Use exact rational arithmetic where supported")
    group.add_argument("--svg", type=_str2bool, default=argparse.SUPPRESS,
            help="Also write one SVG chart per metric")
    return parser

def _add_sweep_args(parser):
    group = parser.add_argument_group(title="sweep")
    group.add_argument("--k", type=int, default=argparse.SUPPRESS,
            help="Domain size")
    group.add_argument("--protocols", nargs='+', type=str, default=argparse.SUPPRESS,
            help=f"Protocols, among {SUPPORTED_PROTOCOLS}")
    group.add_argument("--epsilons", nargs='+', type=float, default=argparse.SUPPRESS,
            help="Epsilon grid")
    group.add_argument("--theta", type=float, default=argparse.SUPPRESS,
            help="THE threshold")
    group.add_argument("--thetas", nargs='+', type=float, default=argparse.SUPPRESS,
            help="THE threshold grid")
    group.add_argument("--g", type=int, default=argparse.SUPPRESS,
            help="LH hash range")
    group.add_argument("--omega", type=int, default=argparse.SUPPRESS,
            help="SS subset size")
    group.add_argument("--k-grid", nargs='+', type=int, default=argparse.SUPPRESS,
            help="Domain sizes of the LH comparison")
    return parser

def _add_size_args(parser):
    group = parser.add_argument_group(title="size")
    group.add_argument("--size-cap", type=int, default=argparse.SUPPRESS,
            help="Largest number of entries of an explicit channel")
    return parser

def _add_trial_args(parser):
    group = parser.add_argument_group(title="trials")
    group.add_argument("--trials", type=int, default=argparse.SUPPRESS,
            help="Number of Monte-Carlo trials")
    group.add_argument("--users", type=int, default=argparse.SUPPRESS,
            help="Number of simulated users")
    return parser

def _add_dataset_args(parser):
    group = parser.add_argument_group(title="dataset")
    group.add_argument("--dataset", type=str, default=argparse.SUPPRESS,
            help="Click-stream dataset file")
    group.add_argument("--dataset-format", type=str, default=argparse.SUPPRESS,
            help=f"Dataset format, one of {SUPPORTED_FORMATS}")
    group.add_argument("--remap", type=str, default=argparse.SUPPRESS,
            help="identity, top_n:<n> or subsample:<n>[:<seed>]")
    group.add_argument("--synthetic", type=str, default=argparse.SUPPRESS,
            help="Synthetic distribution, uniform or zipf:<s>, over --k and --users")
    group.add_argument("--metric", nargs='+', type=str, default=argparse.SUPPRESS,
            help=f"Metrics, among {SUPPORTED_METRICS}")
    group.add_argument("--project", type=_str2bool, default=argparse.SUPPRESS,
            help="Project frequency estimates onto the simplex")
    group.add_argument("--the-path", type=str, default=argparse.SUPPRESS,
            help="THE sampling path, laplace or bernoulli")
    return parser

def _add_refine_args(parser):
    group = parser.add_argument_group(title="refinement")
    group.add_argument("--left", type=str, default=argparse.SUPPRESS,
            help="Mechanism spec (JSON) or channel file (.json/.csv)")
    group.add_argument("--right", type=str, default=argparse.SUPPRESS,
            help="Mechanism spec (JSON) or channel file (.json/.csv)")
    group.add_argument("--mode", type=str, default=argparse.SUPPRESS,
            help=f"Refinement method, one of {SUPPORTED_REFINE_MODES}")
    group.add_argument("--form", type=str, default=argparse.SUPPRESS,
            help="bitwise or channel form of bitwise protocols")
    group.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
            help="LP residual cutoff")
    group.add_argument("--reverse", type=_str2bool, default=argparse.SUPPRESS,
            help="Check the anti direction of a family")
    return parser

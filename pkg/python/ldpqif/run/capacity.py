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

    The capacity command: Bayes capacity of protocols over an epsilon grid.

    Run as:
    ldpqif capacity --k 50 --protocols GRR SS BLH OLH SUE OUE THE --epsilons 0.5 1 2 4 8
"""
import logging

from ..leakage.sweep import capacity_sweep, sweep_specs, SWEEP_COLUMNS
from ..utils import sys_tracker
from .output import write_frame, render_svg_charts, write_charts

COMMAND = "capacity"

def prepare(config):
    """ The specs of the sweep, in canonical grid order. """
    assert config.k is not None, "The capacity command needs k"
    assert config.protocols is not None, "The capacity command needs protocols"
    assert config.epsilons is not None, "The capacity command needs epsilons"
    return sweep_specs(config.protocols, config.k, config.epsilons,
                       theta=config.theta, g=config.g, omega=config.omega)

def run(specs, config):
    """ Evaluate and write the sweep. """
    frame = capacity_sweep(specs, exact=config.exact, size_cap=config.size_cap,
                           lanes=config.lanes)
    sys_tracker.check("capacity sweep")
    frame = frame[SWEEP_COLUMNS]
    charts = []
    if config.svg:
        charts = render_svg_charts(frame, config.out, "epsilon", "value", ["protocol"], "measure")
    write_frame(frame, config.out, config.format, COMMAND)
    write_charts(charts)
    logging.info("Evaluated %d capacity cells.", len(specs))
    return frame

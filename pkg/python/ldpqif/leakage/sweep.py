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

    Capacity sweeps over protocol and epsilon grids.
"""
import logging

import pandas as pd

from ..channel.numeric import EXACT_MAX_COLUMNS, DEFAULT_SIZE_CAP
from ..errors import SizeCapExceeded
from ..mechanisms.builders import build_channel
from ..mechanisms.spec import (MechanismSpec, PROTOCOL_SS, PROTOCOL_OLH, PROTOCOL_THE)
from ..simulate.parallel import ordered_map
from .capacity import bayes_capacity, bayes_capacity_closed, epsilon_of

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["protocol", "k", "epsilon", "theta", "g", "omega", "measure", "value"]

MEASURE_CAPACITY_CLOSED = "capacity_closed"
MEASURE_ASR_CLOSED = "asr_closed"
MEASURE_CAPACITY_EXPLICIT = "capacity_explicit"
MEASURE_EPSILON_OF = "epsilon_of"

DEFAULT_THETA = 0.75

def make_spec(protocol, k, epsilon, theta=None, g=None, omega=None):
    """ Build a spec from shared sweep settings, keeping only the
    parameters the protocol takes.

    THE defaults to theta = 0.75. g only applies to OLH (BLH always uses
    2) and omega only to SS.
    """
    protocol = protocol.upper()
    kwargs = {}
    if protocol == PROTOCOL_THE:
        kwargs["theta"] = DEFAULT_THETA if theta is None else theta
    elif protocol == PROTOCOL_OLH and g is not None:
        kwargs["g"] = g
    elif protocol == PROTOCOL_SS and omega is not None:
        kwargs["omega"] = omega
    return MechanismSpec(protocol, k, epsilon, **kwargs)

def sweep_specs(protocols, k, epsilons, theta=None, g=None, omega=None):
    """ Specs in canonical grid order: protocols as given, then epsilon. """
    return [make_spec(protocol, k, epsilon, theta, g, omega)
            for protocol in protocols for epsilon in epsilons]

def _row(spec, measure, value):
    return {
        "protocol": spec.protocol,
        "k": spec.k,
        "epsilon": float(spec.epsilon),
        "theta": spec.theta,
        "g": spec.g,
        "omega": spec.omega,
        "measure": measure,
        "value": float(value),
    }

def capacity_cell(task):
    """ All capacity rows of one spec.

    Parameters
    ----------
    task : tuple
        (spec dict, exact, size cap).

    Returns
    -------
    list of dict : closed-form capacity and ASR, and, when the explicit
    channel fits the size cap, its column-max capacity and epsilon.
    """
    spec_dict, exact, size_cap = task
    spec = MechanismSpec.from_dict(spec_dict)
    closed = bayes_capacity_closed(spec, exact)
    rows = [_row(spec, MEASURE_CAPACITY_CLOSED, closed),
            _row(spec, MEASURE_ASR_CLOSED, closed / spec.k)]
    try:
        chan = build_channel(spec, exact=False, size_cap=size_cap)
    except SizeCapExceeded:
        logger.debug("Skipping the explicit channel of %s: above the size cap.", spec)
        return rows
    if exact and chan.cols <= EXACT_MAX_COLUMNS:
        chan = build_channel(spec, exact=True, size_cap=size_cap)
    rows.append(_row(spec, MEASURE_CAPACITY_EXPLICIT, bayes_capacity(chan)))
    rows.append(_row(spec, MEASURE_EPSILON_OF, epsilon_of(chan)))
    return rows

def capacity_sweep(specs, exact=False, size_cap=None, lanes=1):
    """ Evaluate capacity cells over a list of specs.

    Parameters
    ----------
    specs : list of MechanismSpec
    exact : bool
        Evaluate closed forms and small explicit channels with Fractions.
    size_cap : int
        Size cap of explicit channels.
    lanes : int
        Worker processes.

    Returns
    -------
    pandas.DataFrame : SWEEP_COLUMNS, in spec order.
    """
    size_cap = DEFAULT_SIZE_CAP if size_cap is None else size_cap
    tasks = [(spec.to_dict(), exact, size_cap) for spec in specs]
    logger.info("Evaluating %d capacity cells with %d lanes.", len(tasks), lanes)
    cells = ordered_map(capacity_cell, tasks, lanes)
    rows = [row for cell in cells for row in cell]
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

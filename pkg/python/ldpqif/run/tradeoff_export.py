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

    The tradeoff-export command: breakpoints of the trade-off functions of
    2x2 channels, for plotting.

    Run as:
    ldpqif tradeoff-export --protocols OUE THE --epsilons 3 5 --thetas 0.95
"""
import logging

import pandas as pd

from ..errors import UnsupportedSpec
from ..mechanisms.builders import bitwise, grr_channel
from ..mechanisms.spec import PROTOCOL_GRR, PROTOCOL_THE, BITWISE_PROTOCOLS
from ..refinement.tradeoff import TradeoffFunction, tradeoff_point
from .output import write_frame, render_svg_charts, write_charts

COMMAND = "tradeoff-export"

TRADEOFF_COLUMNS = ["protocol", "epsilon", "theta", "point", "alpha", "beta",
                    "column_swapped"]

def _cells(config):
    cells = []
    for protocol in config.protocols:
        if protocol not in BITWISE_PROTOCOLS + [PROTOCOL_GRR]:
            raise UnsupportedSpec(f"{protocol} has no 2x2 channel; use GRR (k = 2), "
                                  f"SUE, OUE or THE.")
        thetas = config.thetas if protocol == PROTOCOL_THE else [None]
        for epsilon in config.epsilons:
            for theta in thetas:
                cells.append((protocol, epsilon, theta))
    return cells

def prepare(config):
    """ The (protocol, epsilon, theta) cells in grid order. """
    assert config.protocols is not None, "The tradeoff-export command needs protocols"
    assert config.epsilons is not None, "The tradeoff-export command needs epsilons"
    return _cells(config)

def _channel(protocol, epsilon, theta, exact):
    if protocol == PROTOCOL_GRR:
        return grr_channel(2, epsilon, exact)
    return bitwise(protocol, epsilon, theta, exact)

def run(cells, config):
    """ Write one row per breakpoint. """
    rows = []
    for protocol, epsilon, theta in cells:
        chan = _channel(protocol, epsilon, theta, config.exact)
        swapped = tradeoff_point(chan).column_swapped
        for i, (alpha, beta) in enumerate(TradeoffFunction.from_channel(chan).breakpoints):
            rows.append({"protocol": protocol, "epsilon": float(epsilon), "theta": theta,
                         "point": i, "alpha": alpha, "beta": beta,
                         "column_swapped": swapped})
    frame = pd.DataFrame(rows, columns=TRADEOFF_COLUMNS)
    charts = []
    if config.svg:
        charts = render_svg_charts(frame, config.out, "alpha", "beta",
                                   ["protocol", "theta"], "epsilon")
    write_frame(frame, config.out, config.format, COMMAND)
    write_charts(charts)
    logging.info("Exported %d trade-off functions.", len(cells))
    return frame

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

    The family-check command: check that each protocol family is ordered
    by refinement along an ascending epsilon grid.

    Run as:
    ldpqif family-check --protocols GRR SUE OUE THE --epsilons 0.25 0.5 1 2 4 8
"""
import logging

import pandas as pd

from ..config.config import DEFAULT_FAMILY_K
from ..mechanisms.spec import PROTOCOL_THE
from ..refinement.family import verify_refinement_family, FAMILY_COLUMNS
from .output import write_frame

COMMAND = "family-check"

FAMILY_CHECK_COLUMNS = ["protocol", "k", "theta", "form", "reverse"] + FAMILY_COLUMNS

def prepare(config):
    """ One (protocol, theta) family per protocol and THE threshold. """
    assert config.protocols is not None, "The family-check command needs protocols"
    assert config.epsilons is not None, "The family-check command needs epsilons"
    epsilons = config.epsilons
    assert len(epsilons) >= 2 and all(lo < hi for lo, hi in zip(epsilons[:-1], epsilons[1:])), \
        "The family-check command needs a strictly ascending grid of at least two epsilons"
    families = []
    for protocol in config.protocols:
        thetas = config.thetas if protocol == PROTOCOL_THE else [None]
        families.extend((protocol, theta) for theta in thetas)
    return families

def run(families, config):
    """ Verify every family and write one row per adjacent grid pair. """
    k = config.k if config.k is not None else DEFAULT_FAMILY_K
    frames = []
    for protocol, theta in families:
        report = verify_refinement_family(protocol, config.epsilons, k=k, theta=theta,
                                          form=config.form, reverse=config.reverse,
                                          tolerance=config.tolerance, exact=config.exact)
        logging.info("%s family (theta=%s): all hold = %s", protocol, theta,
                     report.all_hold)
        frame = report.to_frame()
        frame.insert(0, "reverse", config.reverse)
        frame.insert(0, "form", config.form)
        frame.insert(0, "theta", theta)
        frame.insert(0, "k", k)
        frame.insert(0, "protocol", report.protocol)
        frames.append(frame)
    frame = pd.concat(frames, ignore_index=True)[FAMILY_CHECK_COLUMNS]
    write_frame(frame, config.out, config.format, COMMAND)
    return frame

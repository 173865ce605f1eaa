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

    The refine command: decide whether the left channel refines the right
    one, i.e. whether right is a post-processing of left.

    Run as:
    ldpqif refine --left '{"protocol": "OUE", "k": 2, "epsilon": 3}' \
        --right '{"protocol": "THE", "k": 2, "epsilon": 3, "theta": 0.95}'
"""
import json
import logging
import os

from ..channel.io import read_channel
from ..errors import ConfigError, LdpQifError
from ..mechanisms.builders import build_bitwise, build_channel
from ..mechanisms.spec import MechanismSpec
from ..refinement.family import FORM_BITWISE
from ..refinement.lp import refines
from .output import write_json

COMMAND = "refine"

def resolve_operand(operand, config):
    """ Turn an operand into a channel.

    Parameters
    ----------
    operand : str or dict
        A channel file (.json or .csv), a mechanism spec as a JSON string,
        or a spec dict from the config file.
    config : LQConfig

    Returns
    -------
    tuple : (ChannelMatrix, description)
    """
    if isinstance(operand, str) and os.path.isfile(operand):
        try:
            return read_channel(operand), operand
        except (OSError, ValueError) as err:
            raise ConfigError(f"Cannot read the channel file {operand}: {err}") from err
    if isinstance(operand, str):
        try:
            operand = json.loads(operand)
        except json.JSONDecodeError as err:
            raise ConfigError(f"{operand} is neither a channel file nor a "
                              f"mechanism spec.") from err
    if not isinstance(operand, dict):
        raise ConfigError(f"Cannot interpret the operand {operand}.")
    try:
        spec = MechanismSpec.from_dict(operand)
        if config.form == FORM_BITWISE and spec.is_bitwise:
            chan = build_bitwise(spec, exact=config.exact)
        else:
            chan = build_channel(spec, exact=config.exact, size_cap=config.size_cap)
    except LdpQifError as err:
        raise ConfigError(f"Invalid mechanism {operand}: {err}") from err
    return chan, spec.to_dict()

def prepare(config):
    """ Both channels. """
    left, left_desc = resolve_operand(config.left, config)
    right, right_desc = resolve_operand(config.right, config)
    return left, right, {"left": left_desc, "right": right_desc, "mode": config.mode}

def run(plan, config):
    """ Decide and write the verdict as JSON. """
    left, right, header = plan
    verdict = refines(left, right, mode=config.mode, tolerance=config.tolerance,
                      exact=True if config.exact else None)
    logging.info("Refinement %s: holds=%s residual=%.3g", verdict.method,
                 verdict.relation_holds, verdict.residual)
    payload = dict(header)
    payload["verdict"] = verdict.to_dict()
    write_json(payload, config.out)
    return verdict

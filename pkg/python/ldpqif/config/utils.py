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

    Config related utils
"""
import json
import os

import yaml

from ..errors import ConfigError

# Files may nest their settings one level under this key.
CONFIG_ROOT_KEY = "ldpqif"

def load_config_file(path):
    """ Load a JSON or YAML config file.

    YAML is chosen by the .yaml/.yml extension, JSON otherwise.

    Parameters
    ----------
    path : str
        Path to the config file.

    Returns
    -------
    dict
    """
    if not os.path.isfile(path):
        raise ConfigError(f"Config file {path} does not exist.")
    with open(path, "r", encoding='utf-8') as stream:
        try:
            if os.path.splitext(path)[1].lower() in (".yaml", ".yml"):
                configuration = yaml.safe_load(stream)
            else:
                configuration = json.load(stream)
        except (yaml.YAMLError, json.JSONDecodeError) as exc:
            raise ConfigError(f"Cannot parse config file {path}: {exc}") from exc
    if configuration is None:
        return {}
    if not isinstance(configuration, dict):
        raise ConfigError(f"Config file {path} must hold a mapping.")
    return flatten_config(configuration)

def flatten_config(configuration):
    """ Flatten {"ldpqif": {"<section>": {...}}} to a single mapping.

    Flat files are returned as they are. Keys set in two sections raise
    ConfigError.
    """
    if CONFIG_ROOT_KEY not in configuration:
        return dict(configuration)
    flat = {key: val for key, val in configuration.items() if key != CONFIG_ROOT_KEY}
    for section, params in configuration[CONFIG_ROOT_KEY].items():
        if not isinstance(params, dict):
            raise ConfigError(f"Config section {section} must hold a mapping.")
        for key, val in params.items():
            if key in flat:
                raise ConfigError(f"Config key {key} is set twice.")
            flat[key] = val
    return flat

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
"""
import numpy as np

from ldpqif.channel import validate_channel, make_prior, make_gain

class Dummy: # dummy object used to create config objects
    # constructor
    def __init__(self, arg_dict):
        self.__dict__.update(arg_dict)

def random_channel(rows, cols, seed=0):
    """ A channel with strictly positive random rows. """
    rng = np.random.default_rng(seed)
    raw = rng.random((rows, cols)) + 0.05
    return validate_channel(raw / raw.sum(axis=1, keepdims=True))

def random_prior(k, seed=0):
    rng = np.random.default_rng(seed)
    weights = rng.random(k) + 0.05
    return make_prior(weights / weights.sum())

def random_gain(actions, k, seed=0):
    rng = np.random.default_rng(seed)
    return make_gain(rng.random((actions, k)))

def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line + "\n")

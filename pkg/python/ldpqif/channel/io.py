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

    Read and write channel matrices as CSV or JSON.
"""
import json
import os
from fractions import Fraction

import numpy as np
import pandas as pd

from ..errors import DimensionMismatch
from .matrix import validate_channel
from .numeric import as_float

def channel_to_dict(C):
    """ Convert a channel to a JSON-serializable dict.

    Float entries are stored as JSON numbers, whose repr round-trips bit
    for bit. Exact entries are stored as "numerator/denominator" strings.
    """
    if C.exact:
        entries = [[f"{val.numerator}/{val.denominator}" for val in row] for row in C.entries]
    else:
        entries = [[float(val) for val in row] for row in C.entries]
    return {
        "input_labels": list(C.input_labels),
        "output_labels": list(C.output_labels),
        "entries": entries,
    }

def _parse_entry(val):
    if isinstance(val, str):
        return Fraction(val)
    return val

def channel_from_dict(data):
    """ Build a channel from the dict produced by `channel_to_dict`.
    """
    for key in ["input_labels", "output_labels", "entries"]:
        if key not in data:
            raise DimensionMismatch(f"The channel description needs the '{key}' field.")
    entries = data["entries"]
    if any(isinstance(val, str) for row in entries for val in row):
        raw = np.array([[_parse_entry(val) for val in row] for row in entries], dtype=object)
    else:
        raw = np.array(entries, dtype=np.float64)
    return validate_channel(raw, data["input_labels"], data["output_labels"], renormalize=False)

def write_channel_json(C, path):
    """ Write a channel to a JSON file.
    """
    with open(path, 'w', encoding="utf8") as json_file:
        json.dump(channel_to_dict(C), json_file)

def read_channel_json(path):
    """ Read a channel from a JSON file.
    """
    with open(path, 'r', encoding="utf8") as json_file:
        return channel_from_dict(json.load(json_file))

def channel_to_frame(C):
    """ The channel as a DataFrame indexed by input labels.
    """
    return pd.DataFrame(as_float(C.entries), index=list(C.input_labels),
                        columns=list(C.output_labels))

def write_channel_csv(C, path):
    """ Write a channel to a CSV file.

    The header row holds the output labels, the first column the input
    labels, and entries are written with 17 significant digits.
    """
    channel_to_frame(C).to_csv(path, float_format="%.17g", index_label="")

def read_channel_csv(path):
    """ Read a channel from a CSV file written by `write_channel_csv`.
    """
    frame = pd.read_csv(path, index_col=0, dtype=str, keep_default_na=False)
    entries = frame.to_numpy().astype(np.float64)
    return validate_channel(entries, list(frame.index), list(frame.columns), renormalize=False)

def _parse_file_format(path):
    ext = os.path.splitext(path)[1].lower()
    if ext == ".json":
        return read_channel_json
    elif ext == ".csv":
        return read_channel_csv
    else:
        raise ValueError(f"Unknown channel file format: {path}")

def read_channel(path):
    """ Read a channel from a .json or .csv file.
    """
    return _parse_file_format(path)(path)

def write_channel(C, path):
    """ Write a channel to a .json or .csv file.
    """
    if _parse_file_format(path) is read_channel_json:
        write_channel_json(C, path)
    else:
        write_channel_csv(C, path)

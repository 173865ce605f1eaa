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

    Numeric conventions shared by the channel algebra.

    Channels hold either float64 entries or, in exact-rational mode,
    numpy object arrays of fractions.Fraction.
"""
import math
from fractions import Fraction

import numpy as np

from ..errors import SizeCapExceeded

# Stochasticity tolerance. Rows within it are renormalized, beyond it rejected.
TAU_STOCH = 1e-9
# Maximal number of entries of any explicit matrix.
DEFAULT_SIZE_CAP = 2 ** 22
# Exact-rational mode is only offered up to this many columns.
EXACT_MAX_COLUMNS = 64
# Floats are snapped to the closest rational with a denominator below this.
EXACT_DENOMINATOR_LIMIT = 10 ** 12

def to_rational(value, limit=EXACT_DENOMINATOR_LIMIT):
    """ Convert a scalar to a Fraction.

    Integers and Fractions convert exactly. Floats are snapped to the closest
    rational whose denominator is at most `limit`, so that float round-off
    such as exp(log(2)) = 2.0000000000000004 becomes exactly 2.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return Fraction(float(value)).limit_denominator(limit)

def exp(value, exact=False):
    """ e^value, as a float or as a snapped Fraction.
    """
    res = math.exp(float(value))
    return to_rational(res) if exact else res

def is_exact(arr):
    """ Whether an array holds Fractions.
    """
    return isinstance(arr, np.ndarray) and arr.dtype == object

def as_exact(arr):
    """ Convert an array to an object array of Fractions.
    """
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, val in np.ndenumerate(arr):
        out[idx] = to_rational(val)
    return out

def as_float(arr):
    """ Convert an array (possibly of Fractions) to float64.
    """
    return np.asarray(arr, dtype=object).astype(np.float64) if is_exact(arr) \
            else np.asarray(arr, dtype=np.float64)

def check_size(rows, cols, size_cap=None):
    """ Raise SizeCapExceeded if a rows x cols matrix has too many entries.
    """
    size_cap = DEFAULT_SIZE_CAP if size_cap is None else size_cap
    if rows * cols > size_cap:
        raise SizeCapExceeded((rows, cols), size_cap)

def zeros(shape, exact=False):
    """ A zero array, float64 or of Fractions.
    """
    if not exact:
        return np.zeros(shape, dtype=np.float64)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out

def full(shape, value, exact=False):
    """ A constant array, float64 or of Fractions.
    """
    if not exact:
        return np.full(shape, float(value), dtype=np.float64)
    out = np.empty(shape, dtype=object)
    out.fill(to_rational(value))
    return out

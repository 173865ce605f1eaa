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

    Channel algebra: validated stochastic matrices, priors, gain functions,
    hypers, cascading, Kronecker powers and one-hot restriction.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import (NonStochasticRow, NegativeEntry, DimensionMismatch,
                      NotPowerOfTwoRows, InvalidDomainSize)
from .numeric import TAU_STOCH, is_exact, as_exact, as_float, check_size

logger = logging.getLogger(__name__)

def _freeze(arr):
    arr.setflags(write=False)
    return arr

def _default_labels(size):
    return tuple(str(i) for i in range(size))

def _check_labels(labels, size, what):
    if labels is None:
        return _default_labels(size)
    labels = tuple(str(label) for label in labels)
    if len(labels) != size:
        raise DimensionMismatch(f"Got {len(labels)} {what} labels for {size} {what}s.")
    return labels

@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """ A row-stochastic channel C[x, y] = Pr[y | x].

    Instances are created by `validate_channel` and are immutable: the entry
    array is read-only. Labels are strings; bit-vector domains are labelled
    with their bit strings, most-significant bit first.

    Parameters
    ----------
    entries : numpy.ndarray
        rows x cols, float64 or (exact-rational mode) an object array of Fractions.
    input_labels : tuple of str
        One label per row.
    output_labels : tuple of str
        One label per column.
    """
    entries: np.ndarray
    input_labels: tuple
    output_labels: tuple

    @property
    def rows(self):
        """ Number of secrets |X|. """
        return self.entries.shape[0]

    @property
    def cols(self):
        """ Number of outputs |Y|. """
        return self.entries.shape[1]

    @property
    def shape(self):
        """ (rows, cols) """
        return self.entries.shape

    @property
    def exact(self):
        """ Whether the entries are Fractions. """
        return is_exact(self.entries)

    def to_float(self):
        """ The same channel with float64 entries.
        """
        if not self.exact:
            return self
        return ChannelMatrix(_freeze(as_float(self.entries)),
                             self.input_labels, self.output_labels)

    def to_exact(self, tau=TAU_STOCH):
        """ The same channel with Fraction entries.

        Float entries are snapped to nearby rationals and each row is
        renormalized exactly.
        """
        if self.exact:
            return self
        return validate_channel(as_exact(self.entries), self.input_labels,
                                self.output_labels, tau=tau)

    def allclose(self, other, atol=1e-12):
        """ Entrywise comparison with another channel of the same shape.
        """
        if self.shape != other.shape:
            return False
        return bool(np.allclose(as_float(self.entries), as_float(other.entries),
                                rtol=0, atol=atol))

    def __repr__(self):
        return f"ChannelMatrix({self.rows}x{self.cols}, exact={self.exact})"

def _validate_exact(arr, tau, renormalize):
    for (i, j), val in np.ndenumerate(arr):
        if val < 0:
            raise NegativeEntry(i, j, val)
    for i in range(arr.shape[0]):
        total = sum(arr[i], Fraction(0))
        if total != 1:
            residual = abs(total - 1)
            if residual > tau:
                raise NonStochasticRow(i, residual)
            if renormalize:
                logger.debug("Renormalizing row %d (residual %s).", i, residual)
                arr[i] = [val / total for val in arr[i]]
    return arr

def _validate_float(arr, tau, renormalize):
    if not np.all(np.isfinite(arr)):
        i = int(np.argwhere(~np.isfinite(arr))[0][0])
        raise NonStochasticRow(i, float('nan'))
    neg = np.argwhere(arr < -tau)
    if len(neg) > 0:
        i, j = neg[0]
        raise NegativeEntry(int(i), int(j), float(arr[i, j]))
    if np.any(arr < 0):
        arr = np.clip(arr, 0.0, None)
    sums = arr.sum(axis=1)
    residual = np.abs(sums - 1.0)
    bad = np.argwhere(residual > tau)
    if len(bad) > 0:
        i = int(bad[0][0])
        raise NonStochasticRow(i, float(residual[i]))
    if renormalize and np.any(residual > 0):
        logger.debug("Renormalizing %d rows.", int(np.sum(residual > 0)))
        arr = arr / sums[:, None]
    return arr

def validate_channel(raw_matrix, input_labels=None, output_labels=None, tau=TAU_STOCH,
                     renormalize=True):
    """ Validate a raw matrix as a row-stochastic channel.

    Entries are float64 unless the raw matrix holds Fractions (an object
    array or nested lists of Fractions), in which case the channel is exact.
    Rows whose sum is within `tau` of 1 are renormalized; other rows are
    rejected. With `renormalize=False` accepted rows keep their entries
    bit for bit, which is how channel files are read back.

    Parameters
    ----------
    raw_matrix : array-like
        A non-empty rectangular matrix.
    input_labels : list of str
        Row labels. Defaults to "0", "1", ...
    output_labels : list of str
        Column labels. Defaults to "0", "1", ...
    tau : float
        The stochasticity tolerance.
    renormalize : bool
        Divide accepted rows by their sum.

    Returns
    -------
    ChannelMatrix : the validated channel.
    """
    try:
        arr = np.asarray(raw_matrix)
    except ValueError as exc:
        raise DimensionMismatch(f"The matrix is not rectangular: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"Expected a non-empty 2-D matrix, got shape {arr.shape}.")
    exact = arr.dtype == object and any(isinstance(val, Fraction) for val in arr.flat)
    if exact:
        arr = _validate_exact(as_exact(arr), tau, renormalize)
    else:
        arr = _validate_float(np.array(arr, dtype=np.float64), tau, renormalize)
    in_labels = _check_labels(input_labels, arr.shape[0], "input")
    out_labels = _check_labels(output_labels, arr.shape[1], "output")
    return ChannelMatrix(_freeze(np.array(arr)), in_labels, out_labels)

def identity_channel(k, exact=False):
    """ The k x k identity channel: the secret is revealed.
    """
    eye = np.eye(k, dtype=np.int64)
    return validate_channel(as_exact(eye) if exact else eye.astype(np.float64))

def no_leakage_channel(k, cols=1, exact=False):
    """ A k x cols channel with identical uniform rows.
    """
    if exact:
        arr = as_exact(np.ones((k, cols), dtype=np.int64)) / cols
    else:
        arr = np.full((k, cols), 1.0 / cols)
    return validate_channel(arr)

def _common_mode(*channels):
    if all(c.exact for c in channels):
        return [c.entries for c in channels]
    return [as_float(c.entries) for c in channels]

def cascade(A, B):
    """ The cascade A·B: post-process the outputs of A with B.

    Parameters
    ----------
    A : ChannelMatrix
    B : ChannelMatrix
        B.rows must equal A.cols.

    Returns
    -------
    ChannelMatrix : labelled with A's inputs and B's outputs.
    """
    if A.cols != B.rows:
        raise DimensionMismatch(f"Cannot cascade a {A.rows}x{A.cols} channel "
                                f"with a {B.rows}x{B.cols} channel.")
    a_entries, b_entries = _common_mode(A, B)
    return validate_channel(a_entries @ b_entries, A.input_labels, B.output_labels)

def _kron_entries(a_entries, b_entries):
    rows = a_entries.shape[0] * b_entries.shape[0]
    cols = a_entries.shape[1] * b_entries.shape[1]
    return np.multiply.outer(a_entries, b_entries).transpose(0, 2, 1, 3).reshape(rows, cols)

def _join_labels(prefixes, suffixes):
    # concatenation is unambiguous while every suffix is one character
    single = all(len(l) == 1 for l in suffixes) and not any("|" in l for l in prefixes)
    sep = "" if single else "|"
    return tuple(f"{a}{sep}{b}" for a, b in itertools.product(prefixes, suffixes))

def kronecker(A, B, size_cap=None):
    """ The parallel composition A ⊗ B.

    Index ordering is lexicographic with A's index most significant.
    """
    check_size(A.rows * B.rows, A.cols * B.cols, size_cap)
    a_entries, b_entries = _common_mode(A, B)
    return validate_channel(_kron_entries(a_entries, b_entries),
                            _join_labels(A.input_labels, B.input_labels),
                            _join_labels(A.output_labels, B.output_labels))

def kronecker_power(B, k, size_cap=None):
    """ The k-wise Kronecker power B^{⊗k}.

    Rows and columns are ordered lexicographically over k-tuples, first
    factor most significant; for a bitwise channel labelled "0"/"1" the
    labels are bit strings such as "010".

    Parameters
    ----------
    B : ChannelMatrix
    k : int
        The power, k >= 1.
    size_cap : int
        Maximal number of entries of the result.

    Returns
    -------
    ChannelMatrix : a B.rows^k x B.cols^k channel.
    """
    if k < 1:
        raise InvalidDomainSize(f"The Kronecker power needs k >= 1, got {k}.")
    check_size(B.rows ** k, B.cols ** k, size_cap)
    res = B
    for _ in range(k - 1):
        res = kronecker(res, B, size_cap)
    return res

def _bit_length_exact(rows):
    k = rows.bit_length() - 1
    if rows < 4 or (1 << k) != rows:
        raise NotPowerOfTwoRows(rows)
    return k

def one_hot_rows(k):
    """ Row indices of the one-hot vectors among 2^k bit vectors.

    Position 1 (vector 10...0) comes first, position k (0...01) last.
    """
    return [1 << (k - 1 - i) for i in range(k)]

def restrict_to_one_hot(C):
    """ Keep only the rows of a bit-vector channel that are one-hot.

    Parameters
    ----------
    C : ChannelMatrix
        A channel with 2^k rows, k >= 2, ordered MSB first.

    Returns
    -------
    ChannelMatrix : the k x C.cols channel; row x is the vector with bit x set.
    """
    k = _bit_length_exact(C.rows)
    idx = one_hot_rows(k)
    labels = [C.input_labels[i] for i in idx]
    return validate_channel(np.array(C.entries[idx]), labels, C.output_labels)

@dataclass(frozen=True, eq=False)
class Prior:
    """ A probability distribution over the secrets.
    """
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)

    @property
    def exact(self):
        """ Whether the weights are Fractions. """
        return is_exact(self.weights)

def make_prior(weights, tau=TAU_STOCH):
    """ Validate a prior.

    Parameters
    ----------
    weights : array-like
        Nonnegative weights summing to 1 within `tau`.

    Returns
    -------
    Prior
    """
    chan = validate_channel(np.asarray(weights)[None, :], tau=tau)
    return Prior(_freeze(np.array(chan.entries[0])))

def uniform_prior(k, exact=False):
    """ The uniform prior on k secrets. """
    if exact:
        return make_prior([Fraction(1, k)] * k)
    return make_prior(np.full(k, 1.0 / k))

def point_prior(k, x, exact=False):
    """ The prior that puts all mass on secret x. """
    weights = np.zeros(k, dtype=np.int64)
    weights[x] = 1
    return make_prior(as_exact(weights) if exact else weights.astype(np.float64))

@dataclass(frozen=True, eq=False)
class GainFunction:
    """ Gains g(w, x) of action w when the secret is x.

    Parameters
    ----------
    gains : numpy.ndarray
        |W| x |X| matrix of finite payoffs.
    """
    gains: np.ndarray

    @property
    def actions(self):
        """ |W| """
        return self.gains.shape[0]

    @property
    def secrets(self):
        """ |X| """
        return self.gains.shape[1]

def make_gain(gains):
    """ Validate a gain matrix indexed (action, secret).
    """
    arr = np.asarray(gains)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"A gain function needs a non-empty |W| x |X| matrix, "
                                f"got shape {arr.shape}.")
    if arr.dtype != object:
        arr = arr.astype(np.float64)
        if not np.all(np.isfinite(arr)):
            raise DimensionMismatch("Gain functions must have finite entries.")
    return GainFunction(_freeze(np.array(arr)))

def identity_gain(k, exact=False):
    """ The Bayes gain: W = X, g(w, x) = 1 iff w == x.
    """
    eye = np.eye(k, dtype=np.int64)
    return make_gain(as_exact(eye) if exact else eye.astype(np.float64))

@dataclass(frozen=True, eq=False)
class Hyper:
    """ The distribution on posteriors induced by a prior and a channel.

    Parameters
    ----------
    outer : numpy.ndarray
        Probability of each realized output.
    posteriors : numpy.ndarray
        |X| x m matrix; column j is the posterior given realized output j.
    output_labels : tuple of str
        The labels of the realized outputs.
    """
    outer: np.ndarray
    posteriors: np.ndarray
    output_labels: tuple

    def expectation(self):
        """ Σ_y outer_y · posterior_y, which equals the prior. """
        return self.posteriors @ self.outer

def _check_prior(prior, C):
    if len(prior) != C.rows:
        raise DimensionMismatch(f"A prior of length {len(prior)} does not match "
                                f"a channel with {C.rows} rows.")

def joint_matrix(prior, C):
    """ The joint matrix J[x, y] = π_x C[x, y].
    """
    _check_prior(prior, C)
    if prior.exact and C.exact:
        return prior.weights[:, None] * C.entries
    return as_float(prior.weights)[:, None] * as_float(C.entries)

def posterior_hyper(prior, C):
    """ Push a prior through a channel.

    Outputs of marginal probability 0 are dropped; every remaining column of
    the joint matrix is normalized by its marginal.

    Parameters
    ----------
    prior : Prior
    C : ChannelMatrix

    Returns
    -------
    Hyper
    """
    joint = joint_matrix(prior, C)
    marginals = joint.sum(axis=0)
    keep = np.array([m > 0 for m in marginals], dtype=bool)
    outer = marginals[keep]
    posteriors = joint[:, keep] / outer[None, :]
    labels = tuple(l for l, kept in zip(C.output_labels, keep) if kept)
    return Hyper(_freeze(np.array(outer)), _freeze(np.array(posteriors)), labels)

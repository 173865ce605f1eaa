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

    Explicit channel matrices of the LDP protocols.
"""
import itertools
from fractions import Fraction
from math import comb

import numpy as np

from ..channel.matrix import validate_channel
from ..channel.numeric import check_size, exp, full, as_exact
from ..errors import InvalidDomainSize, OmegaOutOfRange
from .spec import (MechanismSpec, bitwise_params, check_domain, ss_optimal_omega,
                   PROTOCOL_GRR, PROTOCOL_SS, PROTOCOL_SUE, PROTOCOL_OUE)

def _one(exact):
    return Fraction(1) if exact else 1.0

def value_labels(k):
    """ Labels "0" ... "k-1" of a value domain. """
    return tuple(str(i) for i in range(k))

def bit_labels(k):
    """ All k-bit strings in lexicographic order, MSB first. """
    return tuple("".join(bits) for bits in itertools.product("01", repeat=k))

def one_hot_labels(k):
    """ The bit string of each one-hot vector; secret x has bit x set. """
    return tuple("".join("1" if i == x else "0" for i in range(k)) for x in range(k))

def subset_labels(k, omega):
    """ The ω-subsets of [k] in lexicographic order. """
    return tuple("{" + ",".join(str(i) for i in subset) + "}"
                 for subset in itertools.combinations(range(k), omega))

def hash_functions(k, g):
    """ All g^k functions [k] -> [g] as rows of a (g^k, k) array.

    Row i is the base-g expansion of i, first value most significant.
    """
    return np.array(list(itertools.product(range(g), repeat=k)), dtype=np.int64).reshape(-1, k)

def _hash_label(hash_values, g):
    sep = "" if g <= 10 else "."
    return sep.join(str(v) for v in hash_values)

def lh_labels(k, g):
    """ Output labels "<hash>:<perturbed value>" of the LH channel. """
    return tuple(f"{_hash_label(h, g)}:{y}"
                 for h in itertools.product(range(g), repeat=k) for y in range(g))

def grr_channel(k, epsilon, exact=False):
    """ Generalized randomized response.

    Parameters
    ----------
    k : int
        Domain size, k >= 2.
    epsilon : float
        epsilon >= 0.
    exact : bool
        Build Fraction entries.

    Returns
    -------
    ChannelMatrix : k x k, diagonal e^ε/(e^ε+k-1), off-diagonal 1/(e^ε+k-1).
    """
    check_domain(k, epsilon)
    e_eps = exp(epsilon, exact)
    p = e_eps / (e_eps + k - 1)
    q = _one(exact) / (e_eps + k - 1)
    entries = full((k, k), q, exact)
    for i in range(k):
        entries[i, i] = p
    return validate_channel(entries, value_labels(k), value_labels(k))

def ss_channel(k, epsilon, omega=None, exact=False, size_cap=None):
    """ Subset selection.

    Outputs are the ω-subsets of [k] in lexicographic order. A row puts
    p / C(k-1, ω-1) on subsets containing the input and
    (1 - p) / C(k-1, ω) on the others, with p = ωe^ε / (ωe^ε + k - ω).

    Parameters
    ----------
    k : int
    epsilon : float
    omega : int
        Subset size in [1, k-1]; defaults to ss_optimal_omega(k, epsilon).
    exact : bool
    size_cap : int

    Returns
    -------
    ChannelMatrix : k x C(k, ω).
    """
    check_domain(k, epsilon)
    omega = ss_optimal_omega(k, epsilon) if omega is None else omega
    if int(omega) != omega or not 1 <= omega <= k - 1:
        raise OmegaOutOfRange(f"omega must be in [1, {k - 1}], got {omega}.")
    cols = comb(k, omega)
    check_size(k, cols, size_cap)
    e_eps = exp(epsilon, exact)
    p = omega * e_eps / (omega * e_eps + k - omega)
    inside = p / comb(k - 1, omega - 1)
    outside = (_one(exact) - p) / comb(k - 1, omega)
    entries = full((k, cols), outside, exact)
    for j, subset in enumerate(itertools.combinations(range(k), omega)):
        for x in subset:
            entries[x, j] = inside
    return validate_channel(entries, value_labels(k), subset_labels(k, omega))

def _check_lh(k, g):
    if int(k) != k or k < 2:
        raise InvalidDomainSize(f"The domain size must be an integer >= 2, got {k}.")
    if int(g) != g or g < 2:
        raise InvalidDomainSize(f"The hash range must be an integer >= 2, got {g}.")

def lh_channel(k, g, epsilon, exact=False, size_cap=None):
    """ Local hashing over the complete function family [k] -> [g].

    The user draws a function h uniformly from all g^k functions and reports
    (h, GRR_g(h(x))). Outputs enumerate hash functions as in
    `hash_functions` and, within a function, the perturbed value.

    Parameters
    ----------
    k : int
    g : int
        Hash range, g >= 2.
    epsilon : float
    exact : bool
    size_cap : int

    Returns
    -------
    ChannelMatrix : k x (g^k · g).
    """
    check_domain(k, epsilon)
    _check_lh(k, g)
    n_hash = g ** k
    check_size(k, n_hash * g, size_cap)
    e_eps = exp(epsilon, exact)
    match_val = e_eps / (e_eps + g - 1) / n_hash
    miss_val = _one(exact) / (e_eps + g - 1) / n_hash
    hashes = hash_functions(k, g)
    values = np.arange(g)
    entries = full((k, n_hash * g), miss_val, exact)
    for x in range(k):
        match = (hashes[:, x][:, None] == values[None, :]).reshape(-1)
        entries[x, match] = match_val
    return validate_channel(entries, value_labels(k), lh_labels(k, g))

def lh_encode_channel(k, g, exact=False, size_cap=None):
    """ The encoding step E of local hashing.

    E maps x to (h, h(x)) for a uniformly drawn h: entry 1/g^k on columns
    (h, y) with h(x) = y, 0 elsewhere.
    """
    _check_lh(k, g)
    n_hash = g ** k
    check_size(k, n_hash * g, size_cap)
    hashes = hash_functions(k, g)
    values = np.arange(g)
    entries = full((k, n_hash * g), 0, exact)
    for x in range(k):
        match = (hashes[:, x][:, None] == values[None, :]).reshape(-1)
        entries[x, match] = _one(exact) / n_hash
    return validate_channel(entries, value_labels(k), lh_labels(k, g))

def lh_perturb_channel(k, g, epsilon, exact=False, size_cap=None):
    """ The perturbation step G of local hashing.

    G keeps the hash function and applies GRR over [g] to the encoded value;
    it is block diagonal with one GRR_g block per hash function.
    """
    _check_lh(k, g)
    n_out = g ** k * g
    check_size(n_out, n_out, size_cap)
    grr = grr_channel(g, epsilon, exact).entries
    eye = np.eye(g ** k, dtype=np.int64)
    if exact:
        eye = as_exact(eye)
    entries = np.multiply.outer(eye, grr).transpose(0, 2, 1, 3).reshape(n_out, n_out)
    labels = lh_labels(k, g)
    return validate_channel(entries, labels, labels)

def bitwise(protocol, epsilon, theta=None, exact=False):
    """ The 2x2 per-bit channel of a unary-encoding protocol.

    Rows are input bits 0, 1 and columns output bits 0, 1, i.e.
    [[1 - q, q], [1 - p, p]] with (p, q) from `bitwise_params`:
    SUE [[p, 1-p], [1-p, p]] with p = e^{ε/2}/(e^{ε/2}+1),
    OUE [[1-q, q], [1/2, 1/2]] with q = 1/(e^ε+1),
    THE with p = 1 - e^{ε(θ-1)/2}/2 and q = e^{-εθ/2}/2.

    Parameters
    ----------
    protocol : str
        SUE, OUE or THE.
    epsilon : float
    theta : float
        Required iff protocol is THE.
    exact : bool

    Returns
    -------
    ChannelMatrix
    """
    p, q = bitwise_params(protocol, epsilon, theta, exact)
    one = _one(exact)
    entries = np.array([[one - q, q], [one - p, p]], dtype=object if exact else np.float64)
    return validate_channel(entries, ("0", "1"), ("0", "1"))

def onehot_channel(protocol, k, epsilon, theta=None, exact=False, size_cap=None):
    """ The one-hot restriction of the k-wise power of a bitwise channel.

    Row x is the product distribution in which bit x follows the bit-1 row
    of `bitwise` and every other bit the bit-0 row; this equals
    restrict_to_one_hot(kronecker_power(bitwise(...), k)) without
    materializing the 2^k x 2^k power.

    Returns
    -------
    ChannelMatrix : k x 2^k, rows labelled by one-hot bit strings.
    """
    check_domain(k, epsilon)
    check_size(k, 2 ** k, size_cap)
    base = bitwise(protocol, epsilon, theta, exact).entries
    rows = []
    for x in range(k):
        row = base[1] if x == 0 else base[0]
        for i in range(1, k):
            row = np.multiply.outer(row, base[1] if i == x else base[0]).reshape(-1)
        rows.append(row)
    entries = np.array(rows, dtype=object if exact else np.float64)
    return validate_channel(entries, one_hot_labels(k), bit_labels(k))

def sue_oue_min(epsilon, exact=False):
    """ The 2x3 channel below both bitwise SUE and bitwise OUE.

    Rows are input bits 0, 1:
    (e^{ε/2}/(e^{ε/2}+1), 1/(e^{ε/2}+1) - 1/(e^ε+1), 1/(e^ε+1)) and
    (1/(e^{ε/2}+1), e^{ε/2}/(e^{ε/2}+1) - 1/2, 1/2).
    Merging its last two columns gives SUE and its first two gives OUE.
    """
    sue = bitwise_params(PROTOCOL_SUE, epsilon, exact=exact)
    oue = bitwise_params(PROTOCOL_OUE, epsilon, exact=exact)
    one = _one(exact)
    half = one / 2
    # sue.p = e^{ε/2}/(e^{ε/2}+1), oue.q = 1/(e^ε+1)
    entries = np.array([[sue.p, one - sue.p - oue.q, oue.q],
                        [one - sue.p, sue.p - half, half]],
                       dtype=object if exact else np.float64)
    return validate_channel(entries, ("0", "1"), ("0", "?", "1"))

def build_channel(spec, exact=False, size_cap=None):
    """ The explicit channel of a mechanism spec.

    Parameters
    ----------
    spec : MechanismSpec
    exact : bool
    size_cap : int

    Returns
    -------
    ChannelMatrix
    """
    assert isinstance(spec, MechanismSpec)
    if spec.protocol == PROTOCOL_GRR:
        check_size(spec.k, spec.k, size_cap)
        return grr_channel(spec.k, spec.epsilon, exact)
    elif spec.protocol == PROTOCOL_SS:
        return ss_channel(spec.k, spec.epsilon, spec.omega, exact, size_cap)
    elif spec.is_lh:
        return lh_channel(spec.k, spec.g, spec.epsilon, exact, size_cap)
    else:
        return onehot_channel(spec.protocol, spec.k, spec.epsilon, spec.theta,
                              exact, size_cap)

def build_bitwise(spec, exact=False):
    """ The 2x2 bitwise core of a SUE, OUE or THE spec. """
    return bitwise(spec.protocol, spec.epsilon, spec.theta, exact)

__all__ = ["grr_channel", "ss_channel", "lh_channel", "lh_encode_channel",
           "lh_perturb_channel", "bitwise", "onehot_channel", "sue_oue_min",
           "build_channel", "build_bitwise", "hash_functions", "value_labels",
           "bit_labels", "one_hot_labels", "subset_labels", "lh_labels"]

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

    Reports produced by the samplers.

    A ReportBatch stores the reports of many users in arrays:
    GRR a perturbed value per user, SS a sorted ω-subset per user, LH a hash
    function and a perturbed value per user, and SUE/OUE/THE a k-bit vector
    per user. A Report is one row of a batch.
"""
from dataclasses import dataclass

import numpy as np
import xxhash

from ..errors import ShapeMismatch
from ..mechanisms.spec import PROTOCOL_GRR, PROTOCOL_SS, LH_PROTOCOLS, BITWISE_PROTOCOLS

# LH hash functions are stored as explicit k-vectors up to this domain size
# and as PRF seeds above it.
LH_EXPLICIT_HASH_CAP = 2 ** 20

def prf_hash(seed, values, g):
    """ Evaluate the seeded hash function x -> xxh64(str(x), seed) mod g.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.
    values : array-like of int
        Inputs in [0, k).
    g : int
        Hash range.

    Returns
    -------
    numpy.ndarray : hash values in [0, g).
    """
    seed = int(seed)
    return np.array([xxhash.xxh64_intdigest(str(int(x)), seed=seed) % g
                     for x in np.asarray(values).reshape(-1)], dtype=np.int64)

@dataclass(frozen=True, eq=False)
class HashDescriptor:
    """ A function [k] -> [g], either an explicit table or a PRF seed.

    Parameters
    ----------
    g : int
        Hash range.
    table : numpy.ndarray
        h(0), ..., h(k-1).
    seed : int
        The PRF seed when there is no table.
    """
    g: int
    table: np.ndarray = None
    seed: int = None

    def __call__(self, values):
        values = np.asarray(values, dtype=np.int64)
        if self.table is not None:
            return self.table[values]
        return prf_hash(self.seed, values, self.g).reshape(values.shape)

    def support(self, y, k):
        """ The values x in [k] with h(x) = y. """
        return np.nonzero(self(np.arange(k)) == y)[0]

@dataclass(frozen=True, eq=False)
class Report:
    """ One user's report.

    Parameters
    ----------
    protocol : str
    value : int
        GRR value or LH perturbed hash value.
    subset : tuple of int
        SS subset, sorted.
    bits : numpy.ndarray
        SUE/OUE/THE bit vector.
    hash : HashDescriptor
        LH hash function.
    """
    protocol: str
    value: int = None
    subset: tuple = None
    bits: np.ndarray = None
    hash: HashDescriptor = None

@dataclass(frozen=True, eq=False)
class ReportBatch:
    """ Reports of n users in column arrays.

    Parameters
    ----------
    protocol : str
    k : int
    values : numpy.ndarray
        (n,) GRR values or LH perturbed values.
    subsets : numpy.ndarray
        (n, ω) sorted SS subsets.
    bits : numpy.ndarray
        (n, k) uint8 bit vectors.
    hashes : numpy.ndarray
        (n, k) explicit LH hash tables.
    hash_seeds : numpy.ndarray
        (n,) uint64 LH PRF seeds, used when `hashes` is None.
    g : int
        LH hash range.
    """
    protocol: str
    k: int
    values: np.ndarray = None
    subsets: np.ndarray = None
    bits: np.ndarray = None
    hashes: np.ndarray = None
    hash_seeds: np.ndarray = None
    g: int = None

    def __len__(self):
        for arr in (self.values, self.subsets, self.bits):
            if arr is not None:
                return arr.shape[0]
        return 0

    def hash_of(self, i):
        """ The HashDescriptor of user i (LH only). """
        if self.hashes is not None:
            return HashDescriptor(self.g, table=self.hashes[i])
        return HashDescriptor(self.g, seed=int(self.hash_seeds[i]))

    def hash_tables(self):
        """ (n, k) hash tables, evaluating PRF seeds if needed (LH only). """
        if self.hashes is not None:
            return self.hashes
        domain = np.arange(self.k)
        return np.stack([prf_hash(seed, domain, self.g) for seed in self.hash_seeds]) \
                if len(self.hash_seeds) > 0 else np.empty((0, self.k), dtype=np.int64)

    def __getitem__(self, i):
        if self.protocol == PROTOCOL_GRR:
            return Report(self.protocol, value=int(self.values[i]))
        if self.protocol == PROTOCOL_SS:
            return Report(self.protocol, subset=tuple(int(v) for v in self.subsets[i]))
        if self.protocol in LH_PROTOCOLS:
            return Report(self.protocol, value=int(self.values[i]), hash=self.hash_of(i))
        return Report(self.protocol, bits=np.array(self.bits[i]))

    @classmethod
    def from_reports(cls, spec, reports):
        """ Stack single reports of one spec into a batch. """
        reports = list(reports)
        for report in reports:
            check_report(spec, report)
        if spec.protocol == PROTOCOL_GRR:
            return cls(spec.protocol, spec.k, values=np.array([r.value for r in reports],
                                                              dtype=np.int64))
        if spec.protocol == PROTOCOL_SS:
            subsets = np.array([r.subset for r in reports], dtype=np.int64)
            return cls(spec.protocol, spec.k, subsets=subsets.reshape(-1, spec.omega))
        if spec.is_lh:
            values = np.array([r.value for r in reports], dtype=np.int64)
            tables = np.array([r.hash(np.arange(spec.k)) for r in reports],
                              dtype=np.int64).reshape(-1, spec.k)
            return cls(spec.protocol, spec.k, values=values, hashes=tables, g=spec.g)
        bits = np.array([r.bits for r in reports], dtype=np.uint8).reshape(-1, spec.k)
        return cls(spec.protocol, spec.k, bits=bits)

def check_report(spec, report):
    """ Raise ShapeMismatch unless the report fits the spec. """
    if report.protocol != spec.protocol:
        raise ShapeMismatch(f"A {report.protocol} report does not match a "
                            f"{spec.protocol} mechanism.")
    k = spec.k
    if spec.protocol == PROTOCOL_GRR:
        if report.value is None or not 0 <= report.value < k:
            raise ShapeMismatch(f"A GRR report must be a value in [0, {k}).")
    elif spec.protocol == PROTOCOL_SS:
        subset = report.subset
        if subset is None or len(subset) != spec.omega or len(set(subset)) != spec.omega \
                or any(not 0 <= v < k for v in subset):
            raise ShapeMismatch(f"An SS report must be {spec.omega} distinct values in [0, {k}).")
    elif spec.protocol in LH_PROTOCOLS:
        if report.hash is None or report.value is None or not 0 <= report.value < spec.g:
            raise ShapeMismatch(f"An LH report needs a hash function and a value in [0, {spec.g}).")
        if report.hash.g != spec.g:
            raise ShapeMismatch(f"The hash range {report.hash.g} does not match g = {spec.g}.")
        if report.hash.table is not None and len(report.hash.table) != k:
            raise ShapeMismatch(f"The hash table has {len(report.hash.table)} entries, "
                                f"expected {k}.")
    elif spec.protocol in BITWISE_PROTOCOLS:
        if report.bits is None or np.asarray(report.bits).shape != (k,):
            raise ShapeMismatch(f"A {spec.protocol} report must be a vector of {k} bits.")

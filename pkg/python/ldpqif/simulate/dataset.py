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

    Datasets of secret values: click-stream files and synthetic generators.
"""
import logging
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..errors import ParseError, EmptyDataset, ValueOutOfRange, InvalidDomainSize
from .id_map import IdMap
from .rng import make_stream

logger = logging.getLogger(__name__)

PROVENANCE_FILE = "file"
PROVENANCE_SYNTHETIC = "synthetic"

FORMAT_TRANSACTIONS = "transactions"
FORMAT_VALUE_PER_LINE = "value_per_line"
SUPPORTED_FORMATS = [FORMAT_TRANSACTIONS, FORMAT_VALUE_PER_LINE]

REMAP_IDENTITY = "identity"
REMAP_TOP_N = "top_n"
REMAP_SUBSAMPLE = "subsample"
SUPPORTED_REMAPS = [REMAP_IDENTITY, REMAP_TOP_N, REMAP_SUBSAMPLE]

DIST_UNIFORM = "uniform"
DIST_ZIPF = "zipf"
SUPPORTED_DISTS = [DIST_UNIFORM, DIST_ZIPF]

@dataclass(frozen=True, eq=False)
class Dataset:
    """ A multiset of secret values over the domain [0, domain_size).

    Parameters
    ----------
    domain_size : int
        k.
    values : numpy.ndarray
        int64 secret indices.
    provenance : str
        "file" or "synthetic".
    source : str
        The file path or the generator description.
    id_map : IdMap
        Raw item ID of each secret index, for file datasets.
    """
    domain_size: int
    values: np.ndarray
    provenance: str
    source: str
    id_map: IdMap = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.int64)
        if self.domain_size < 2:
            raise InvalidDomainSize(f"A dataset needs a domain of at least 2 values, "
                                    f"got {self.domain_size}.")
        if len(values) > 0 and (values.min() < 0 or values.max() >= self.domain_size):
            raise ValueOutOfRange(f"Dataset values must lie in [0, {self.domain_size}).")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def counts(self):
        """ Number of occurrences of each secret index. """
        return np.bincount(self.values, minlength=self.domain_size)

    def frequencies(self):
        """ The true frequency vector f. """
        if len(self.values) == 0:
            raise EmptyDataset(f"The dataset from {self.source} has no values.")
        return self.counts() / len(self.values)

    def raw_item(self, index):
        """ The raw item ID of a secret index (the index itself for synthetic data). """
        return index if self.id_map is None else self.id_map.raw_id(index)

def parse_remap(remap):
    """ Parse a remap descriptor.

    Accepts "identity", "top_n:<n>", "subsample:<n>" and
    "subsample:<n>:<seed>", or an equivalent dict such as
    {"kind": "top_n", "n": 10}.

    Returns
    -------
    tuple : (kind, n, seed)
    """
    if remap is None:
        return REMAP_IDENTITY, None, 0
    if isinstance(remap, dict):
        kind, n, seed = remap.get("kind", REMAP_IDENTITY), remap.get("n"), remap.get("seed", 0)
    else:
        parts = str(remap).split(":")
        kind = parts[0]
        n = int(parts[1]) if len(parts) > 1 else None
        seed = int(parts[2]) if len(parts) > 2 else 0
    assert kind in SUPPORTED_REMAPS, \
            f"Unknown remap {kind}. Supported remaps: {SUPPORTED_REMAPS}."
    if kind != REMAP_IDENTITY:
        assert n is not None and n >= 1, f"The {kind} remap needs a positive size, got {n}."
    return kind, n, seed

def read_items(path, file_format=FORMAT_TRANSACTIONS):
    """ Read the raw integer items of a dataset file, flattened in file order.

    Parameters
    ----------
    path : str
    file_format : str
        "transactions": whitespace-separated items per line.
        "value_per_line": one item per line.

    Returns
    -------
    numpy.ndarray : int64 raw items.
    """
    assert file_format in SUPPORTED_FORMATS, \
            f"Unknown dataset format {file_format}. Supported formats: {SUPPORTED_FORMATS}."
    items = []
    try:
        with open(path, "r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                tokens = line.split()
                if len(tokens) == 0:
                    continue
                if file_format == FORMAT_VALUE_PER_LINE and len(tokens) > 1:
                    raise ParseError(path, line_no, f"Expected one value, got {len(tokens)}.")
                try:
                    items.extend(int(token) for token in tokens)
                except ValueError as err:
                    raise ParseError(path, line_no, f"Not an integer item: {err}") from err
    except (OSError, UnicodeDecodeError) as err:
        raise ParseError(path, None, str(err)) from err
    return np.array(items, dtype=np.int64)

def _top_items(items, n):
    # ties in frequency are broken by the smaller raw item
    counts = pd.Series(items).value_counts()
    order = counts.reset_index()
    order.columns = ["item", "count"]
    order = order.sort_values(["count", "item"], ascending=[False, True], kind="stable")
    return order["item"].to_numpy()[:n]

def load_dataset(path, file_format=FORMAT_TRANSACTIONS, remap=REMAP_IDENTITY):
    """ Load a click-stream file as a Dataset.

    The items are remapped to the dense domain [0, k). `identity` keeps all
    distinct items, ordered by raw ID. `top_n:<n>` keeps the occurrences of
    the n most frequent items, ordered by decreasing frequency.
    `subsample:<n>:<seed>` draws n occurrences uniformly without
    replacement, then remaps the distinct items among them.

    Parameters
    ----------
    path : str
    file_format : str
        "transactions" or "value_per_line".
    remap : str or dict
        See parse_remap.

    Returns
    -------
    Dataset
    """
    kind, n, seed = parse_remap(remap)
    items = read_items(path, file_format)
    if len(items) == 0:
        raise EmptyDataset(f"{path} contains no items.")

    if kind == REMAP_TOP_N:
        keys = _top_items(items, n)
    else:
        if kind == REMAP_SUBSAMPLE and n < len(items):
            rng = make_stream(seed)
            picked = np.sort(rng.choice(len(items), size=n, replace=False))
            items = items[picked]
        keys = np.unique(items)
    id_map = IdMap(keys)
    values, _ = id_map.map_id(items)
    if len(values) == 0:
        raise EmptyDataset(f"No items of {path} are left after the {kind} remap.")
    if len(id_map) < 2:
        raise InvalidDomainSize(f"{path} has fewer than 2 distinct items after the "
                                f"{kind} remap.")
    logger.info("Loaded %d values over %d items from %s.", len(values), len(id_map), path)
    return Dataset(len(id_map), values, PROVENANCE_FILE, os.fspath(path), id_map)

def zipf_weights(k, s=1.0):
    """ Normalized Zipf weights (r + 1)^{-s} for ranks r in [0, k). """
    weights = np.arange(1, k + 1, dtype=np.float64) ** (-float(s))
    return weights / weights.sum()

def synth_dataset(dist, k, n, seed, s=1.0):
    """ Draw n independent values over [0, k).

    Parameters
    ----------
    dist : str
        "uniform" or "zipf". "zipf:<s>" sets the exponent inline.
    k : int
        Domain size, k >= 2.
    n : int
        Number of values, n >= 1.
    seed : int
        Generator seed.
    s : float
        Zipf exponent.

    Returns
    -------
    Dataset : value r has Zipf rank r, so frequencies fall with the index.
    """
    name, _, inline = str(dist).partition(":")
    if inline:
        s = float(inline)
    assert name in SUPPORTED_DISTS, \
            f"Unknown distribution {dist}. Supported distributions: {SUPPORTED_DISTS}."
    if int(k) != k or k < 2:
        raise InvalidDomainSize(f"The domain size must be an integer >= 2, got {k}.")
    assert n >= 1, f"A synthetic dataset needs n >= 1, got {n}."
    rng = make_stream(seed)
    if name == DIST_UNIFORM:
        values = rng.integers(0, k, size=n, dtype=np.int64)
        source = f"uniform(k={k}, n={n}, seed={seed})"
    else:
        values = rng.choice(k, size=n, p=zipf_weights(k, s)).astype(np.int64)
        source = f"zipf(s={s}, k={k}, n={n}, seed={seed})"
    return Dataset(int(k), values, PROVENANCE_SYNTHETIC, source)

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
import os
import tempfile

import pytest
import numpy as np
from numpy.testing import assert_almost_equal, assert_equal

from ldpqif.errors import EmptyDataset, InvalidDomainSize, ParseError, ValueOutOfRange
from ldpqif.simulate import Dataset, IdMap, load_dataset, read_items, synth_dataset, zipf_weights
from ldpqif.simulate.dataset import parse_remap

from util import write_lines

def test_id_map():
    id_map = IdMap(np.array([30, 10, 20]))
    assert len(id_map) == 3
    new_ids, idx = id_map.map_id(np.array([10, 40, 30, 30]))
    assert_equal(new_ids, [1, 0, 0])
    assert_equal(idx, [0, 2, 3])
    keys, vals = id_map.get_key_vals()
    assert_equal(keys, [30, 10, 20])
    assert_equal(vals, [0, 1, 2])
    assert id_map.raw_id(2) == 20
    new_ids, idx = id_map.map_id(np.array([], dtype=np.int64))
    assert len(new_ids) == 0 and len(idx) == 0
    with pytest.raises(AssertionError):
        IdMap(np.array([1, 1]))

def test_read_items():
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, "clicks.dat")
        write_lines(path, ["5 3 5", "", "7 5 3", "9"])
        assert_equal(read_items(path), [5, 3, 5, 7, 5, 3, 9])
        with pytest.raises(ParseError):
            read_items(path, "value_per_line")

        path = os.path.join(tmpdirname, "bad.dat")
        write_lines(path, ["1 2", "3 x"])
        with pytest.raises(ParseError) as err:
            read_items(path)
        assert err.value.line == 2

        with pytest.raises(ParseError):
            read_items(os.path.join(tmpdirname, "missing.dat"))
        with pytest.raises(AssertionError):
            read_items(path, "parquet")

def test_load_dataset():
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, "clicks.dat")
        write_lines(path, ["5 3 5", "7 5 3", "9"])
        dataset = load_dataset(path)
        assert dataset.domain_size == 4
        assert dataset.provenance == "file"
        # identity keeps raw ID order
        assert_equal(dataset.values, [1, 0, 1, 2, 1, 0, 3])
        assert dataset.raw_item(0) == 3
        assert_almost_equal(dataset.frequencies(), [2 / 7, 3 / 7, 1 / 7, 1 / 7])

        # ties in frequency go to the smaller raw item
        dataset = load_dataset(path, remap="top_n:3")
        assert dataset.domain_size == 3
        assert_equal(dataset.values, [0, 1, 0, 2, 0, 1])
        assert [dataset.raw_item(i) for i in range(3)] == [5, 3, 7]

        first = load_dataset(path, remap="subsample:4:1")
        second = load_dataset(path, remap={"kind": "subsample", "n": 4, "seed": 1})
        assert len(first) == 4
        assert_equal(first.values, second.values)
        assert first.domain_size == len(np.unique(first.values))

        empty = os.path.join(tmpdirname, "empty.dat")
        write_lines(empty, [""])
        with pytest.raises(EmptyDataset):
            load_dataset(empty)
        single = os.path.join(tmpdirname, "single.dat")
        write_lines(single, ["4 4 4"])
        with pytest.raises(InvalidDomainSize):
            load_dataset(single)
        with pytest.raises(InvalidDomainSize):
            load_dataset(path, remap="top_n:1")

def test_parse_remap():
    assert parse_remap(None) == ("identity", None, 0)
    assert parse_remap("top_n:10") == ("top_n", 10, 0)
    assert parse_remap("subsample:5:9") == ("subsample", 5, 9)
    with pytest.raises(AssertionError):
        parse_remap("shuffle")
    with pytest.raises(AssertionError):
        parse_remap("top_n")

def test_synth_dataset():
    dataset = synth_dataset("uniform", 5, 10000, seed=3)
    assert dataset.domain_size == 5
    assert dataset.provenance == "synthetic"
    assert len(dataset) == 10000
    assert np.all(np.abs(dataset.frequencies() - 0.2) < 0.02)
    assert_equal(dataset.values, synth_dataset("uniform", 5, 10000, seed=3).values)

    weights = zipf_weights(4, 1.0)
    assert_almost_equal(weights, np.array([1, 1 / 2, 1 / 3, 1 / 4]) / (25 / 12))
    dataset = synth_dataset("zipf:2.0", 4, 20000, seed=1)
    assert_almost_equal(dataset.frequencies(), zipf_weights(4, 2.0), decimal=1)
    freqs = dataset.frequencies()
    assert np.all(freqs[:-1] > freqs[1:])
    assert "zipf(s=2.0" in dataset.source

    with pytest.raises(InvalidDomainSize):
        synth_dataset("uniform", 1, 10, seed=0)
    with pytest.raises(AssertionError):
        synth_dataset("gaussian", 4, 10, seed=0)

def test_dataset_checks():
    with pytest.raises(ValueOutOfRange):
        Dataset(3, np.array([0, 3]), "synthetic", "test")
    with pytest.raises(InvalidDomainSize):
        Dataset(1, np.array([0]), "synthetic", "test")
    with pytest.raises(EmptyDataset):
        Dataset(3, np.array([], dtype=np.int64), "synthetic", "test").frequencies()
    assert_equal(Dataset(3, [2, 2, 0], "synthetic", "test").counts(), [1, 0, 2])

if __name__ == '__main__':
    test_id_map()
    test_read_items()
    test_load_dataset()
    test_parse_remap()
    test_synth_dataset()
    test_dataset_checks()

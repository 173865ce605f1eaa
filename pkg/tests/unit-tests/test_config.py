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
import json
import tempfile
from argparse import Namespace

import yaml
import pytest

from ldpqif.config import LQConfig, get_argument_parser, load_config_file
from ldpqif.config.config import (DEFAULT_THETA, DEFAULT_TRIALS, DEFAULT_USERS,
                                  BUILTIN_CMD_CAPACITY, BUILTIN_CMD_SIMULATE,
                                  BUILTIN_CMD_REFINE)
from ldpqif.channel.numeric import DEFAULT_SIZE_CAP
from ldpqif.errors import ConfigError
from ldpqif.refinement import TAU_REFINE

from util import write_lines

def check_failure(config, field):
    has_error = False
    try:
        dummy = getattr(config, field)
    except:
        has_error = True
    assert has_error

def create_capacity_config(tmp_path, file_name):
    yaml_object = {
        "version": 1.0,
        "ldpqif": {
            "mechanism": {
                "k": 10,
                "protocols": ["grr", "THE", "olh"],
                "epsilons": [0.5, 1, 2],
                "theta": 0.8,
            },
            "output": {
                "format": "json",
                "exact": True,
                "size_cap": 4096,
            },
        }
    }
    with open(os.path.join(tmp_path, file_name + ".yaml"), "w") as f:
        yaml.dump(yaml_object, f)

    # flat JSON with wrong values
    json_object = {
        "k": 1,
        "protocols": ["RAPPOR"],
        "epsilons": [-1.0],
        "theta": 0.4,
        "format": "xml",
        "size_cap": 0,
        "lanes": 0,
        "seed": -3,
        "beta": 2,
    }
    with open(os.path.join(tmp_path, file_name + "_fail.json"), "w") as f:
        json.dump(json_object, f)

def test_capacity_config():
    with tempfile.TemporaryDirectory() as tmpdirname:
        create_capacity_config(tmpdirname, "capacity_test")
        args = Namespace(command=BUILTIN_CMD_CAPACITY,
                         config=os.path.join(tmpdirname, "capacity_test.yaml"))
        config = LQConfig(args)
        assert config.k == 10
        assert config.protocols == ["GRR", "THE", "OLH"]
        assert config.epsilons == [0.5, 1.0, 2.0]
        assert config.theta == 0.8
        assert config.thetas == [0.8]
        assert config.format == "json"
        assert config.exact
        assert config.size_cap == 4096
        assert config.seed == 0
        assert config.lanes == 1
        assert config.out is None
        assert config.verbose is False
        assert config.g is None
        assert config.omega is None

        args = Namespace(command=BUILTIN_CMD_CAPACITY,
                         config=os.path.join(tmpdirname, "capacity_test_fail.json"))
        config = LQConfig(args)
        for field in ["k", "protocols", "epsilons", "theta", "thetas", "format",
                      "size_cap", "lanes", "seed"]:
            check_failure(config, field)
        # unknown keys are ignored
        assert not hasattr(config, "_beta")

def test_default_config():
    config = LQConfig(Namespace(command=BUILTIN_CMD_CAPACITY))
    assert config.k is None
    assert config.protocols is None
    assert config.theta == DEFAULT_THETA
    assert config.trials == DEFAULT_TRIALS
    assert config.users == DEFAULT_USERS
    assert config.size_cap == DEFAULT_SIZE_CAP
    assert config.tolerance == TAU_REFINE
    assert config.mode == "auto"
    assert config.form == "bitwise"
    assert config.metric == ["asr"]
    assert config.the_path == "laplace"
    assert config.remap == "identity"
    assert config.format == "csv"
    assert config.reverse is False
    assert config.project is False
    check_failure(config, "left")

    with pytest.raises(AssertionError):
        LQConfig(Namespace(command="train"))

def test_override_arguments():
    with tempfile.TemporaryDirectory() as tmpdirname:
        create_capacity_config(tmpdirname, "capacity_test")
        args = Namespace(command=BUILTIN_CMD_CAPACITY,
                         config=os.path.join(tmpdirname, "capacity_test.yaml"),
                         k=4, epsilons=[3.0], format="csv")
        config = LQConfig(args)
        # command-line flags win over the file
        assert config.k == 4
        assert config.epsilons == [3.0]
        assert config.format == "csv"
        assert config.protocols == ["GRR", "THE", "OLH"]

def test_simulate_config():
    with tempfile.TemporaryDirectory() as tmpdirname:
        data_path = os.path.join(tmpdirname, "clicks.dat")
        write_lines(data_path, ["1 2 3", "2 3"])
        config = LQConfig(Namespace(command=BUILTIN_CMD_SIMULATE, dataset=data_path,
                                    trials=5, users=100, metric=["asr", "mse"],
                                    remap="top_n:2", project=True))
        assert config.dataset == data_path
        assert config.trials == 5
        assert config.users == 100
        assert config.metric == ["asr", "mse"]
        assert config.remap == "top_n:2"
        assert config.project
        assert config.synthetic is None

        config = LQConfig(Namespace(command=BUILTIN_CMD_SIMULATE, synthetic="zipf:1.1"))
        assert config.synthetic == {"dist": "zipf:1.1"}
        check_failure(LQConfig(Namespace(command=BUILTIN_CMD_SIMULATE, synthetic=3)),
                      "synthetic")

        # a dataset and a generator cannot be set together, and one is needed
        with pytest.raises(AssertionError):
            LQConfig(Namespace(command=BUILTIN_CMD_SIMULATE, dataset=data_path,
                               synthetic="uniform"))
        with pytest.raises(AssertionError):
            LQConfig(Namespace(command=BUILTIN_CMD_SIMULATE))

        config = LQConfig(Namespace(command=BUILTIN_CMD_SIMULATE,
                                    dataset=os.path.join(tmpdirname, "missing.dat"),
                                    trials=0, metric=["rmse"], dataset_format="csv"))
        for field in ["dataset", "trials", "metric", "dataset_format"]:
            check_failure(config, field)

def test_refine_config():
    config = LQConfig(Namespace(command=BUILTIN_CMD_REFINE, left='{"protocol": "SUE"}',
                                right="chan.csv", mode="lp", tolerance=1e-6))
    assert config.left == '{"protocol": "SUE"}'
    assert config.right == "chan.csv"
    assert config.mode == "lp"
    assert config.tolerance == 1e-6
    with pytest.raises(AssertionError):
        LQConfig(Namespace(command=BUILTIN_CMD_REFINE, left="chan.csv"))
    config = LQConfig(Namespace(command=BUILTIN_CMD_REFINE, left="a.csv", right="b.csv",
                                mode="simplex", form="matrix", tolerance=-1.0))
    for field in ["mode", "form", "tolerance"]:
        check_failure(config, field)

def test_argument_parser():
    parser = get_argument_parser()
    args = parser.parse_args(["capacity", "--k", "5", "--protocols", "GRR", "OUE",
                              "--epsilons", "1", "2", "--exact", "true"])
    config = LQConfig(args)
    assert config.command == "capacity"
    assert config.k == 5
    assert config.protocols == ["GRR", "OUE"]
    assert config.exact
    # unset flags fall back to defaults
    assert config.size_cap == DEFAULT_SIZE_CAP

    args = parser.parse_args(["family-check", "--protocols", "THE", "--thetas", "0.6", "0.9",
                              "--epsilons", "1", "2", "--reverse", "1"])
    config = LQConfig(args)
    assert config.thetas == [0.6, 0.9]
    assert config.reverse

    with pytest.raises(SystemExit):
        parser.parse_args(["capacity", "--trials", "3"])
    with pytest.raises(SystemExit):
        parser.parse_args([])

def test_load_config_file():
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, "flat.json")
        with open(path, "w") as f:
            json.dump({"k": 3, "seed": 7}, f)
        assert load_config_file(path) == {"k": 3, "seed": 7}

        path = os.path.join(tmpdirname, "empty.yaml")
        write_lines(path, [])
        assert load_config_file(path) == {}

        path = os.path.join(tmpdirname, "broken.json")
        write_lines(path, ["{\"k\": "])
        with pytest.raises(ConfigError):
            load_config_file(path)

        path = os.path.join(tmpdirname, "list.yaml")
        write_lines(path, ["- 1", "- 2"])
        with pytest.raises(ConfigError):
            load_config_file(path)

        path = os.path.join(tmpdirname, "twice.yaml")
        with open(path, "w") as f:
            yaml.dump({"ldpqif": {"a": {"k": 3}, "b": {"k": 4}}}, f)
        with pytest.raises(ConfigError):
            load_config_file(path)

        with pytest.raises(ConfigError):
            load_config_file(os.path.join(tmpdirname, "missing.yaml"))

if __name__ == '__main__':
    test_capacity_config()
    test_default_config()
    test_override_arguments()
    test_simulate_config()
    test_refine_config()
    test_argument_parser()
    test_load_config_file()

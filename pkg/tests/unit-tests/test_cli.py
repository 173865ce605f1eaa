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
import sys
import json
import tempfile

import pytest
import pandas as pd

from ldpqif.config import EXIT_OK, EXIT_USAGE, EXIT_COMPUTE
from ldpqif.leakage import SWEEP_COLUMNS
from ldpqif.run.cli import main
from ldpqif.run.output import schema_header
from ldpqif.run.simulate import SIMULATE_COLUMNS
from ldpqif.run.asr_lh_compare import LH_COMPARE_COLUMNS
from ldpqif.run.family_check import FAMILY_CHECK_COLUMNS

from util import write_lines

CAPACITY_ARGS = ["capacity", "--k", "4", "--protocols", "GRR", "SS", "OLH", "OUE", "THE",
                 "--epsilons", "0.5", "2"]

def _read(path):
    with open(path, "rb") as f:
        return f.read()

def _read_csv(path):
    with open(path, "r", encoding="utf8") as f:
        header = f.readline()
        frame = pd.read_csv(f)
    return header, frame

def test_capacity_command():
    with tempfile.TemporaryDirectory() as tmpdirname:
        out = os.path.join(tmpdirname, "capacity.csv")
        assert main(CAPACITY_ARGS + ["--out", out]) == EXIT_OK
        header, frame = _read_csv(out)
        assert header == schema_header("capacity", SWEEP_COLUMNS)
        assert list(frame.columns) == SWEEP_COLUMNS
        assert len(frame) == 4 * 5 * 2
        assert list(frame["protocol"].unique()) == ["GRR", "SS", "OLH", "OUE", "THE"]

        # the number of lanes does not change a single byte
        out4 = os.path.join(tmpdirname, "capacity4.csv")
        assert main(CAPACITY_ARGS + ["--out", out4, "--lanes", "4"]) == EXIT_OK
        assert _read(out) == _read(out4)

        out_json = os.path.join(tmpdirname, "capacity.json")
        assert main(CAPACITY_ARGS + ["--out", out_json, "--format", "json"]) == EXIT_OK
        with open(out_json, "r", encoding="utf8") as f:
            payload = json.load(f)
        assert payload["command"] == "capacity"
        assert payload["columns"] == SWEEP_COLUMNS
        assert len(payload["rows"]) == 40

def test_capacity_config_file():
    with tempfile.TemporaryDirectory() as tmpdirname:
        conf = os.path.join(tmpdirname, "capacity.yaml")
        write_lines(conf, ["ldpqif:", "  mechanism:", "    k: 3",
                           "    protocols: [GRR]", "    epsilons: [1.0]",
                           "  output:", "    exact: true"])
        out = os.path.join(tmpdirname, "capacity.csv")
        assert main(["capacity", "--config", conf, "--out", out]) == EXIT_OK
        _, frame = _read_csv(out)
        assert len(frame) == 4
        assert set(frame["k"]) == {3}

def test_refine_command():
    with tempfile.TemporaryDirectory() as tmpdirname:
        out = os.path.join(tmpdirname, "verdict.json")
        left = '{"protocol": "OUE", "k": 2, "epsilon": 3}'
        right = '{"protocol": "THE", "k": 2, "epsilon": 3, "theta": 0.95}'
        assert main(["refine", "--left", left, "--right", right, "--out", out]) == EXIT_OK
        with open(out, "r", encoding="utf8") as f:
            payload = json.load(f)
        assert payload["verdict"]["holds"] is True
        assert payload["verdict"]["method"] == "tradeoff_2x2"
        assert payload["left"]["protocol"] == "OUE"

        left = '{"protocol": "OUE", "k": 2, "epsilon": 5}'
        right = '{"protocol": "THE", "k": 2, "epsilon": 5, "theta": 0.95}'
        assert main(["refine", "--left", left, "--right", right, "--out", out]) == EXIT_OK
        with open(out, "r", encoding="utf8") as f:
            assert json.load(f)["verdict"]["holds"] is False

        # channel files work as operands and the LP returns a witness
        chan = os.path.join(tmpdirname, "chan.csv")
        write_lines(chan, [",a,b", "x,0.75,0.25", "y,0.25,0.75"])
        grr = '{"protocol": "GRR", "k": 2, "epsilon": 3}'
        assert main(["refine", "--left", grr, "--right", chan, "--mode", "lp",
                     "--out", out]) == EXIT_OK
        with open(out, "r", encoding="utf8") as f:
            verdict = json.load(f)["verdict"]
        assert verdict["holds"] is True
        assert verdict["method"] == "lp_witness"
        assert "witness" in verdict

def test_simulate_command():
    with tempfile.TemporaryDirectory() as tmpdirname:
        data = os.path.join(tmpdirname, "clicks.dat")
        write_lines(data, ["10 20 30", "20 30 40", "20", "30 40 50 60", "20 10"])
        args = ["simulate", "--dataset", data, "--protocols", "GRR", "OUE", "THE",
                "--epsilons", "1", "3", "--trials", "3", "--metric", "asr", "mse",
                "--seed", "5"]
        out = os.path.join(tmpdirname, "sim.csv")
        assert main(args + ["--out", out]) == EXIT_OK
        asr_path = os.path.join(tmpdirname, "sim.asr.csv")
        mse_path = os.path.join(tmpdirname, "sim.mse.csv")
        header, frame = _read_csv(asr_path)
        assert header == schema_header("simulate", SIMULATE_COLUMNS)
        assert len(frame) == 3 * 2
        assert set(frame["k"]) == {6}
        assert set(frame["metric"]) == {"asr"}
        assert frame["mean"].between(0, 1).all()
        _, frame = _read_csv(mse_path)
        assert set(frame["metric"]) == {"mse"}

        out4 = os.path.join(tmpdirname, "sim4.csv")
        assert main(args + ["--out", out4, "--lanes", "4"]) == EXIT_OK
        assert _read(asr_path) == _read(os.path.join(tmpdirname, "sim4.asr.csv"))
        assert _read(mse_path) == _read(os.path.join(tmpdirname, "sim4.mse.csv"))

        out = os.path.join(tmpdirname, "synth.csv")
        assert main(["simulate", "--synthetic", "zipf:1.2", "--k", "5", "--users", "200",
                     "--protocols", "SS", "--epsilons", "1", "--trials", "2",
                     "--out", out]) == EXIT_OK
        _, frame = _read_csv(out)
        assert len(frame) == 1
        assert frame["n"].iloc[0] == 200

def test_other_commands():
    with tempfile.TemporaryDirectory() as tmpdirname:
        out = os.path.join(tmpdirname, "lh.csv")
        assert main(["asr-lh-compare", "--k-grid", "2", "4", "--epsilons", "1",
                     "--trials", "2", "--users", "100", "--out", out]) == EXIT_OK
        header, frame = _read_csv(out)
        assert header == schema_header("asr-lh-compare", LH_COMPARE_COLUMNS)
        assert len(frame) == 2 * 3

        out = os.path.join(tmpdirname, "family.csv")
        assert main(["family-check", "--protocols", "GRR", "THE", "--thetas", "0.6", "0.9",
                     "--epsilons", "0.5", "1", "2", "--out", out]) == EXIT_OK
        header, frame = _read_csv(out)
        assert header == schema_header("family-check", FAMILY_CHECK_COLUMNS)
        assert len(frame) == 3 * 2
        assert frame["holds"].all()

        out = os.path.join(tmpdirname, "tradeoff.json")
        assert main(["tradeoff-export", "--protocols", "OUE", "GRR", "--epsilons", "1",
                     "--format", "json", "--out", out]) == EXIT_OK
        with open(out, "r", encoding="utf8") as f:
            rows = json.load(f)["rows"]
        assert len(rows) == 2 * 3
        assert rows[0]["alpha"] == 0.0 and rows[0]["beta"] == 1.0

def test_svg_charts():
    pytest.importorskip("matplotlib")
    with tempfile.TemporaryDirectory() as tmpdirname:
        out = os.path.join(tmpdirname, "capacity.csv")
        assert main(CAPACITY_ARGS + ["--out", out, "--svg", "true"]) == EXIT_OK
        chart = os.path.join(tmpdirname, "capacity.capacity_closed.svg")
        assert os.path.isfile(chart)
        first = _read(chart)
        assert main(CAPACITY_ARGS + ["--out", out, "--svg", "true"]) == EXIT_OK
        assert _read(chart) == first
        # charts need a file to sit next to
        assert main(CAPACITY_ARGS + ["--svg", "true"]) == EXIT_USAGE

def test_svg_failure_writes_nothing(monkeypatch):
    # matplotlib cannot be imported
    monkeypatch.setitem(sys.modules, "matplotlib", None)
    with tempfile.TemporaryDirectory() as tmpdirname:
        data = os.path.join(tmpdirname, "clicks.dat")
        write_lines(data, ["10 20 30", "20 30 40", "20 10"])
        out = os.path.join(tmpdirname, "sim.csv")
        assert main(["simulate", "--dataset", data, "--protocols", "GRR",
                     "--epsilons", "1", "--trials", "2", "--metric", "asr", "mse",
                     "--out", out, "--svg", "true"]) == EXIT_USAGE
        out = os.path.join(tmpdirname, "capacity.csv")
        assert main(CAPACITY_ARGS + ["--out", out, "--svg", "true"]) == EXIT_USAGE
        # neither the tables nor any chart were written
        assert sorted(os.listdir(tmpdirname)) == ["clicks.dat"]

def test_exit_codes():
    with tempfile.TemporaryDirectory() as tmpdirname:
        out = os.path.join(tmpdirname, "out.csv")
        assert main(["--help"]) == EXIT_OK
        assert main([]) == EXIT_USAGE
        assert main(["capacity", "--k", "4", "--epsilons", "1", "--out", out]) == EXIT_USAGE
        assert main(["capacity", "--k", "4", "--protocols", "--epsilons", "1"]) == EXIT_USAGE
        assert main(["capacity", "--k", "4", "--protocols", "RAPPOR", "--epsilons", "1",
                     "--out", out]) == EXIT_USAGE
        assert main(["simulate", "--dataset", os.path.join(tmpdirname, "missing.dat"),
                     "--protocols", "GRR", "--epsilons", "1", "--out", out]) == EXIT_USAGE
        assert main(["simulate", "--synthetic", "uniform", "--k", "4", "--trials", "0",
                     "--protocols", "GRR", "--epsilons", "1", "--out", out]) == EXIT_USAGE
        assert main(["family-check", "--protocols", "GRR", "--epsilons", "2", "1",
                     "--out", out]) == EXIT_USAGE
        assert main(["tradeoff-export", "--protocols", "SS", "--epsilons", "1",
                     "--out", out]) == EXIT_USAGE
        assert main(["refine", "--left", "not a spec", "--right", "{}"]) == EXIT_USAGE

        # computation failures
        grr3 = '{"protocol": "GRR", "k": 3, "epsilon": 1}'
        grr4 = '{"protocol": "GRR", "k": 4, "epsilon": 1}'
        assert main(["refine", "--left", grr3, "--right", grr3, "--mode", "tradeoff",
                     "--out", out]) == EXIT_COMPUTE
        assert main(["refine", "--left", grr3, "--right", grr4, "--out", out]) == EXIT_COMPUTE
        assert main(["family-check", "--protocols", "SS", "--epsilons", "1", "2",
                     "--out", out]) == EXIT_COMPUTE
        # failed commands leave no output behind
        assert not os.path.exists(out)

if __name__ == '__main__':
    test_capacity_command()
    test_capacity_config_file()
    test_refine_command()
    test_simulate_command()
    test_other_commands()
    test_svg_charts()
    with pytest.MonkeyPatch.context() as mp:
        test_svg_failure_writes_nothing(mp)
    test_exit_codes()

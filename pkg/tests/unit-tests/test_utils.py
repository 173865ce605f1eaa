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

from ldpqif.utils import SysTracker, sys_tracker, atomic_write

def test_sys_tracker():
    # there is only one tracker
    assert SysTracker() is sys_tracker
    sys_tracker.reset()
    sys_tracker.check("start")
    sys_tracker.check("end")
    assert sys_tracker.checkpoints == ["start", "end"]
    sys_tracker.set_verbose(False)
    sys_tracker.check("quiet")
    assert len(sys_tracker.checkpoints) == 3
    sys_tracker.reset()
    assert sys_tracker.checkpoints == []
    sys_tracker.set_verbose(True)

def test_atomic_write():
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, "sub", "out.csv")
        with atomic_write(path) as f:
            f.write("a,b\n1,2\n")
        with open(path, "r", encoding="utf8") as f:
            assert f.read() == "a,b\n1,2\n"

        with atomic_write(path, mode="wb") as f:
            f.write(b"\x00\x01")
        with open(path, "rb") as f:
            assert f.read() == b"\x00\x01"

        # a failing body leaves the old file and no temporary file behind
        with pytest.raises(RuntimeError):
            with atomic_write(path) as f:
                f.write("partial")
                raise RuntimeError("boom")
        with open(path, "rb") as f:
            assert f.read() == b"\x00\x01"
        assert os.listdir(os.path.dirname(path)) == ["out.csv"]

        fresh = os.path.join(tmpdirname, "fresh.txt")
        with pytest.raises(RuntimeError):
            with atomic_write(fresh) as f:
                raise RuntimeError("boom")
        assert not os.path.exists(fresh)

if __name__ == '__main__':
    test_sys_tracker()
    test_atomic_write()

'''
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

    This file contains some general utility functions for the package.
'''
import os
import time
import logging
import resource
import tempfile
from contextlib import contextmanager

import psutil

logger = logging.getLogger(__name__)

GB = 1024 * 1024 * 1024

class SysTracker:
    """ This tracks the system performance.

    It tracks the runtime and memory consumption of command stages and logs
    the difference between consecutive checkpoints.
    """
    def __init__(self, verbose=True):
        self._checkpoints = []
        self._verbose = verbose

    # This is to create only one instance.
    _instance = None

    def __new__(cls, *args, **kwargs):  # pylint: disable=unused-argument
        """ Only create one instance.
        """
        if not isinstance(cls._instance, cls):
            cls._instance = object.__new__(cls)

        return cls._instance

    def set_verbose(self, verbose):
        """ Turn checkpoint logging on or off. """
        self._verbose = verbose

    def reset(self):
        """ Drop all checkpoints. """
        self._checkpoints = []

    @property
    def checkpoints(self):
        """ The recorded checkpoint names. """
        return [checkpoint[0] for checkpoint in self._checkpoints]

    def check(self, name):
        """ Check the system metrics.
        """
        mem_info = psutil.Process(os.getpid()).memory_info()
        gmem_info = psutil.virtual_memory()
        self._checkpoints.append((name, time.time(), mem_info.rss,
                                  resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
                                  gmem_info.used))
        if len(self._checkpoints) >= 2 and self._verbose:
            checkpoint1 = self._checkpoints[-2]
            checkpoint2 = self._checkpoints[-1]
            # ru_maxrss is in KB on Linux
            logger.debug("%s: elapsed time: %.3f, mem (curr: %.3f, peak: %.3f, "
                         "global curr: %.3f) GB", name, checkpoint2[1] - checkpoint1[1],
                         checkpoint2[2] / GB, checkpoint2[3] / 1024 / 1024,
                         checkpoint2[4] / GB)

sys_tracker = SysTracker()

@contextmanager
def atomic_write(path, mode="w", encoding="utf8"):
    """ Open a temporary file next to `path` and rename it over `path` on success.

    Nothing is left at `path` if the body raises.

    Parameters
    ----------
    path : str
        The destination file.
    mode : str
        "w" for text or "wb" for bytes.
    encoding : str
        Text encoding; ignored in binary mode.
    """
    out_dir = os.path.dirname(os.path.abspath(path))
    os.makedirs(out_dir, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=out_dir, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        if "b" in mode:
            with os.fdopen(fd, mode) as out_file:
                yield out_file
        else:
            with os.fdopen(fd, mode, encoding=encoding, newline="") as out_file:
                yield out_file
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise

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

    Builtin configs
"""

BUILTIN_CMD_CAPACITY = "capacity"
BUILTIN_CMD_ASR_LH_COMPARE = "asr-lh-compare"
BUILTIN_CMD_REFINE = "refine"
BUILTIN_CMD_SIMULATE = "simulate"
BUILTIN_CMD_TRADEOFF_EXPORT = "tradeoff-export"
BUILTIN_CMD_FAMILY_CHECK = "family-check"

SUPPORTED_COMMANDS = [BUILTIN_CMD_CAPACITY, \
    BUILTIN_CMD_ASR_LH_COMPARE, \
    BUILTIN_CMD_REFINE, \
    BUILTIN_CMD_SIMULATE, \
    BUILTIN_CMD_TRADEOFF_EXPORT, \
    BUILTIN_CMD_FAMILY_CHECK]

OUTPUT_FORMAT_CSV = "csv"
OUTPUT_FORMAT_JSON = "json"
SUPPORTED_OUTPUT_FORMATS = [OUTPUT_FORMAT_CSV, OUTPUT_FORMAT_JSON]

REFINE_MODE_AUTO = "auto"
REFINE_MODE_TRADEOFF = "tradeoff"
REFINE_MODE_LP = "lp"
SUPPORTED_REFINE_MODES = [REFINE_MODE_AUTO, REFINE_MODE_TRADEOFF, REFINE_MODE_LP]

# Exit codes of the command line.
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3

# Version of the CSV schemas, written in the header comment of every file.
CSV_SCHEMA_VERSION = 1

# theta = 3/4 is the default THE threshold.
DEFAULT_THETA = 0.75
DEFAULT_SEED = 0
DEFAULT_TRIALS = 100
DEFAULT_USERS = 1000
DEFAULT_FAMILY_K = 3

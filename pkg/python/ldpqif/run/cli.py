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

    Entry point of the ldpqif command line.

    Run as:
    ldpqif <command> [--config CONFIG] [flags]
    python3 -m ldpqif.run.cli <command> [--config CONFIG] [flags]

    Exit codes: 0 on success, 2 on usage or configuration errors and 3 when
    a computation fails.
"""
import logging
import sys

from ..config import LQConfig, get_argument_parser
from ..config.config import (BUILTIN_CMD_CAPACITY, BUILTIN_CMD_ASR_LH_COMPARE,
                             BUILTIN_CMD_REFINE, BUILTIN_CMD_SIMULATE,
                             BUILTIN_CMD_TRADEOFF_EXPORT, BUILTIN_CMD_FAMILY_CHECK)
from ..config.config import EXIT_OK, EXIT_USAGE, EXIT_COMPUTE
from ..errors import ConfigError, LdpQifError
from ..utils import sys_tracker
from . import capacity, asr_lh_compare, refine, simulate, tradeoff_export, family_check

FMT = "%(asctime)s %(levelname)s %(message)s"

COMMANDS = {
    BUILTIN_CMD_CAPACITY: capacity,
    BUILTIN_CMD_ASR_LH_COMPARE: asr_lh_compare,
    BUILTIN_CMD_REFINE: refine,
    BUILTIN_CMD_SIMULATE: simulate,
    BUILTIN_CMD_TRADEOFF_EXPORT: tradeoff_export,
    BUILTIN_CMD_FAMILY_CHECK: family_check,
}

def main(argv=None):
    """ Main function

    Parameters
    ----------
    argv : list of str
        Command-line arguments; sys.argv[1:] when None.

    Returns
    -------
    int : the exit code.
    """
    parser = get_argument_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 after --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        config = LQConfig(args)
        logging.basicConfig(format=FMT, force=True,
                            level=logging.DEBUG if config.verbose else logging.INFO)
        sys_tracker.reset()
        sys_tracker.set_verbose(config.verbose)
        sys_tracker.check("start")
        module = COMMANDS[config.command]
        plan = module.prepare(config)
    except (AssertionError, LdpQifError) as err:
        logging.error("Configuration error: %s", err)
        return EXIT_USAGE

    try:
        module.run(plan, config)
    except (AssertionError, ConfigError) as err:
        logging.error("Configuration error: %s", err)
        return EXIT_USAGE
    except (LdpQifError, ArithmeticError) as err:
        logging.error("Computation failed: %s", err)
        return EXIT_COMPUTE
    sys_tracker.check(f"{config.command} done")
    return EXIT_OK

if __name__ == "__main__":
    sys.exit(main())

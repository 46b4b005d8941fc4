# -*- coding: utf-8 -*-

"""
PerturbLab main file.

Runs a scenario file and writes its report::

    python perturblab.py run config/scenarios/triple_scalar.ini --out out/triple_scalar
"""

__version__ = '1.0.0'

import argparse
import logging
import logging.config
import sys
from pathlib import Path
from typing import List

from ruamel.yaml import YAML

from utils.constants import CONFIGURATION_DIR, APPLICATION_DIR
from utils.numerical_errors import EXIT_CODE_CONFIG_ERROR, NumericalError

LOGGER_NAME = 'PerturbLab'

# Exit code of a successful run
EXIT_CODE_SUCCESS = 0

# Name of the logging configuration file
LOGGING_CONFIGURATION_FILE_NAME = 'logging.yaml'

# Logging configuration file location
LOGGING_CONFIGURATION_FILE = CONFIGURATION_DIR / LOGGING_CONFIGURATION_FILE_NAME

# Name of the console handler in the logging configuration
CONSOLE_HANDLER_NAME = 'console'

LOGGING_CONFIGURATION_FILE_FILTER_VALUES = {
    "APPLICATION_DIR": APPLICATION_DIR,
}


def _filter_logging_configuration(config_dict: dict):
    for key, value in config_dict.items():
        if isinstance(value, dict):
            _filter_logging_configuration(value)
        elif isinstance(value, str):
            value = value.format(**LOGGING_CONFIGURATION_FILE_FILTER_VALUES)
            if key == 'filename':
                path = Path(value).resolve()
                path.parent.mkdir(parents=True, exist_ok=True)
                value = str(path)
            config_dict[key] = value


def _update_logging_configuration():
    src_path = LOGGING_CONFIGURATION_FILE
    try:
        with open(src_path, 'r') as f:
            config = YAML(typ='safe', pure=True).load(f.read())
            _filter_logging_configuration(config)
            logging.config.dictConfig(config)
    except PermissionError as e:
        logging.error('PermissionError in accessing the logging configuration file: "%s" %s', src_path, e)
    except OSError as e:
        logging.error('OSError in accessing the logging configuration file: "%s" %s', src_path, e)
    except Exception as e:
        logging.error('Exception in accessing the logging configuration file: "%s" %s', src_path, e)


_update_logging_configuration()

from scenarios import run_example  # noqa: E402
from utils.config import Config, format_validation_errors  # noqa: E402
from utils.report_writer import emit_report  # noqa: E402


def set_quiet():
    """Raises the console handler to WARNING"""
    for handler in logging.getLogger().handlers:
        if handler.get_name() == CONSOLE_HANDLER_NAME:
            handler.setLevel(logging.WARNING)


def run_scenario(config_path: str or Path,
                 output_dir: str or Path or None = None,
                 seed: int or None = None,
                 refine: int or None = None) -> int:
    """Runs a scenario file and writes report.csv, diagnostics.json and, on request, convergence.csv

    The command line values override the Common section of the file.

    :param str or Path config_path: The scenario file
    :param str or Path or None output_dir: The output directory, Common.outputdir if None
    :param int or None seed: The seed of all probes, Common.seed if None
    :param int or None refine: The refinement levels, Common.refine if None
    :return: 0 on success, 1 on a configuration error, 2 on a failed hypothesis, 3 on a numerical failure
    :rtype: int
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.info('run_scenario: %s', config_path)

    config = Config(config_path)
    try:
        config.read_config()
        if output_dir is not None:
            config.override(Config.SECTION_COMMON, 'outputdir', Path(output_dir))
        if seed is not None:
            config.override(Config.SECTION_COMMON, 'seed', seed)
        if refine is not None:
            config.override(Config.SECTION_COMMON, 'refine', refine)

        validation_errors = config.validate()
        if validation_errors:
            logger.error('The scenario file "%s" is not valid:\n%s', config_path,
                         format_validation_errors(validation_errors))
            return EXIT_CODE_CONFIG_ERROR

        result = run_example(config)
        emit_report(result, config.get_value(Config.SECTION_COMMON, 'outputdir'))
    except NumericalError as e:
        logger.error('%s failed: %s', e.function, e.message)
        return e.exit_code
    except (ValueError, OSError) as e:
        logger.error('%s', e)
        return EXIT_CODE_CONFIG_ERROR

    logger.info('run_scenario: %s done', config_path)
    return EXIT_CODE_SUCCESS


def parse_args(argv: List[str] or None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog='perturblab',
                                     description='Structured perturbations of positive semigroups on grids.')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    subparsers = parser.add_subparsers(dest='command', required=True)

    run_parser = subparsers.add_parser('run', help='Run a scenario file.')
    run_parser.add_argument('config', type=Path, help='The scenario file.')
    run_parser.add_argument('--out', dest='output_dir', type=Path,
                            help='The output directory, overrides Common.outputdir.')
    run_parser.add_argument('--seed', type=int, help='The seed of all probes, overrides Common.seed.')
    run_parser.add_argument('--refine', type=int, help='Refinement levels, overrides Common.refine.')
    run_parser.add_argument('--quiet', action='store_true', help='Only log warnings and errors to the console.')
    return parser.parse_args(argv)


def main(argv: List[str] or None = None) -> int:
    args = parse_args(argv)
    if args.quiet:
        set_quiet()
    return run_scenario(args.config, args.output_dir, args.seed, args.refine)


if __name__ == '__main__':
    sys.exit(main())

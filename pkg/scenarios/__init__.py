import importlib
import inspect
import logging
from pathlib import Path

LOGGER_NAME = 'Scenarios'


def _import_all_modules():
    """ Dynamically imports all modules in this package. """
    # Modules starting with an underscore, including this one, are skipped.
    for path in sorted(Path(__file__).resolve().parent.glob('*.py')):
        if not path.name.startswith('_'):
            importlib.import_module('.'.join([__name__, path.stem]))


_import_all_modules()

from scenarios._base import _ScenarioBase, ScenarioResult, log_result  # noqa: E402
from scenarios.scenario_triple import ScenarioTriple  # noqa: E402
from utils.config import Config  # noqa: E402
from utils.config_definitions import ConfigOptionDefinition, ConfigSectionEnableType  # noqa: E402

""" Dynamically generated dict with all available Scenarios. """
SCENARIOS = dict()


def add_scenarios(classes):
    for cls in classes:
        if not inspect.isabstract(cls):
            SCENARIOS[cls.name] = cls
        add_scenarios(cls.__subclasses__())


add_scenarios(_ScenarioBase.__subclasses__())

if not SCENARIOS:
    logging.getLogger(LOGGER_NAME).error('Error: No Scenarios found.')
    raise ImportError('No Scenarios found.')

if NotImplemented in SCENARIOS.keys():
    logging.getLogger(LOGGER_NAME).error('Error: "%s" must override the "name" variable.',
                                         str(SCENARIOS[NotImplemented].__name__))
    raise ImportError('"{}" must override the "name" variable.'.format(SCENARIOS[NotImplemented].__name__))

COMMON_SCENARIO = ConfigOptionDefinition(
    name='scenario',
    display_name='Scenario',
    value_type=str,
    description='Determines the scenario that is run.',
    default_value=ScenarioTriple.__qualname__,
    valid_values=list(SCENARIOS.keys()),
    mandatory=True,
)

Config.register_config_option_definition(Config.SECTION_COMMON, COMMON_SCENARIO)

for scenario_name in SCENARIOS:
    scenario = SCENARIOS[scenario_name]

    if scenario.display_name == NotImplemented:
        logging.getLogger(LOGGER_NAME).error('Error: "%s" must override the "display_name" variable.', scenario_name)
        raise ImportError('"{}" must override the "display_name" variable.'.format(scenario_name))

    if scenario.description == NotImplemented:
        logging.getLogger(LOGGER_NAME).error('Error: "%s" must override the "description" variable.', scenario_name)
        raise ImportError('"{}" must override the "description" variable.'.format(scenario_name))

    section_definition = scenario.config_section_definition()
    if section_definition.enable_type is ConfigSectionEnableType.IF_SELECTED:
        section_definition.set_selected_by(Config.SECTION_COMMON, COMMON_SCENARIO)


def run_example(config: Config) -> ScenarioResult:
    """Runs the scenario selected in the Common section of a read configuration

    :param Config config: The read and validated configuration
    :return: The result of the scenario
    :rtype: ScenarioResult
    """
    scenario_name = config.get_value(Config.SECTION_COMMON, COMMON_SCENARIO.name)
    if scenario_name not in SCENARIOS:
        logging.getLogger(LOGGER_NAME).error('Unknown scenario "%s".', scenario_name)
        raise ValueError('Unknown scenario "{}".'.format(scenario_name))

    result = SCENARIOS[scenario_name](config).execute()
    log_result(result)
    return result

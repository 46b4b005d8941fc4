# -*- coding: utf-8 -*-

from configparser import ConfigParser, SectionProxy, Error as ConfigParserError
import logging
from pathlib import Path
from typing import List, Dict, Any

from natsort import natsorted

from utils.config_definitions import ConfigSectionDefinition, ConfigOptionDefinition, \
    config_section_definitions_sort_key


class Config:
    """
    Handles the configuration of one scenario file.

    The section definitions are registered once per process, the values are read per file.
    Missing sections and options are filled in memory with their default values, the file is never written.
    """

    SECTION_COMMON = 'Common'

    CONFIG_SECTION_DEFINITIONS: Dict[str, ConfigSectionDefinition] = dict()

    @classmethod
    def register_config_section_definition(cls, config_section_definition: ConfigSectionDefinition):
        if config_section_definition.name in cls.CONFIG_SECTION_DEFINITIONS:
            logging.getLogger(cls.__name__).error('The config section definition "%s" is already registered.',
                                                  config_section_definition.name)
            raise ValueError('The config section definition "{}" is already registered.'
                             .format(config_section_definition.name))

        cls.CONFIG_SECTION_DEFINITIONS[config_section_definition.name] = config_section_definition

        cls.CONFIG_SECTION_DEFINITIONS = {value.name: value
                                          for value in natsorted(cls.CONFIG_SECTION_DEFINITIONS.values(),
                                                                 key=config_section_definitions_sort_key)}

    @classmethod
    def register_config_option_definition(cls,
                                          config_section_name: str,
                                          config_option_definition: ConfigOptionDefinition):
        if config_section_name not in cls.CONFIG_SECTION_DEFINITIONS:
            logging.getLogger(cls.__name__).error('The config section definition "%s" is not registered.',
                                                  config_section_name)
            raise ValueError('The config section definition "{}" is not registered.'.format(config_section_name))

        cls.CONFIG_SECTION_DEFINITIONS[config_section_name].add_option_definition(config_option_definition)

    @classmethod
    def get_config_section_definition(cls, config_section_name: str) -> ConfigSectionDefinition:
        if config_section_name not in cls.CONFIG_SECTION_DEFINITIONS:
            logging.getLogger(cls.__name__).error('The config section definition "%s" is not registered.',
                                                  config_section_name)
            raise ValueError('The config section definition "{}" is not registered.'.format(config_section_name))
        return cls.CONFIG_SECTION_DEFINITIONS[config_section_name]

    def __repr__(self) -> str:
        return f'Config(config_file_location={self.config_file_location})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, config_file_location: str or Path):
        self.logger = logging.getLogger(self.__class__.__name__)

        self.config_file_location = Path(config_file_location)

        self.config = ConfigParser()
        self.config_sections: Dict[str, SectionProxy] = dict()
        self.config_section_listeners: Dict[str, List[Any]] = dict()

        self.logger.debug('Config: %s', self)

    def register_config_section_listener(self, config_section_name: str, config_section_listener: Any):
        if config_section_name not in self.CONFIG_SECTION_DEFINITIONS.keys():
            self.logger.error('The Config Section Definition "%s" is not registered.', config_section_name)
            raise ValueError('The Config Section Definition "{}" is not registered.'
                             .format(config_section_name))

        if config_section_name not in self.config_section_listeners:
            self.config_section_listeners[config_section_name] = []
        if config_section_listener not in self.config_section_listeners[config_section_name]:
            self.config_section_listeners[config_section_name].append(config_section_listener)

    def read_config(self):
        """Reads the configuration file and notifies the listeners of all sections"""
        self.logger.debug('read_config')

        if not self.config_file_location.is_file():
            self.logger.error('The config file "%s" was not found.', self.config_file_location)
            raise ValueError('The config file "{}" was not found.'.format(self.config_file_location))

        try:
            with open(self.config_file_location, 'r', encoding='utf-8') as config_file:
                self.config.read_file(config_file)
        except ConfigParserError as e:
            self.logger.error('The config file "%s" can not be parsed: %s', self.config_file_location, e)
            raise ValueError('The config file "{}" can not be parsed: {}'.format(self.config_file_location, e))
        except OSError as e:
            self.logger.error('OSError in reading the config file "%s": %s', self.config_file_location, e)
            raise ValueError('The config file "{}" can not be read: {}'.format(self.config_file_location, e))

        for config_section_definition in self.CONFIG_SECTION_DEFINITIONS.values():
            self.config_sections[config_section_definition.name] = \
                self._read_config_section(config_section_definition)

        unknown_sections = [name for name in self.config.sections() if name not in self.CONFIG_SECTION_DEFINITIONS]
        for name in unknown_sections:
            self.logger.warning('The configuration file contains the unknown section "%s", ignoring it.', name)

        self._notify_updates(list(self.config_sections.keys()))

    def _read_config_section(self, config_section_definition: ConfigSectionDefinition) -> SectionProxy:
        config_section_name = config_section_definition.name
        if not self.config.has_section(config_section_name):
            if config_section_definition.is_enabled(self.config_sections):
                self.logger.warning('The configuration file is missing the "%s" section, using default values.',
                                    config_section_name)
            self.config[config_section_name] = config_section_definition.get_initial_config_section()

        config_section = self.config[config_section_name]
        for option_definition in config_section_definition.option_definitions.values():
            if option_definition.name not in config_section:
                if option_definition.default_value is not None:
                    self.logger.warning('The configuration file is missing the "%s" option in the "%s" section,'
                                        ' using the default value.',
                                        option_definition.name, config_section_name)
                config_section[option_definition.name] = option_definition.get_initial_option_value()

        return config_section

    def _notify_updates(self, updated_sections: List[str]):
        notifications = dict()
        for updated_section in updated_sections:
            for listener in self.config_section_listeners.get(updated_section, []):
                if listener not in notifications:
                    notifications[listener] = []
                notifications[listener].append(updated_section)

        for (listener, updated) in notifications.items():
            listener.config_updated(updated)

    def get_section(self, name: str) -> SectionProxy:
        if name not in self.config:
            self.logger.error('The config section "%s" is not available.', name)
            raise ValueError('The config section "{}" is not available.'.format(name))
        return self.config[name]

    def get_value(self, section_name: str, option_name: str) -> Any:
        """Returns the converted value of an option

        :param str section_name: The section name
        :param str option_name: The option name
        :return: The value with the type of the option definition
        :rtype: Any
        """
        option_definition = self.get_config_section_definition(section_name).option_definitions[option_name]
        return option_definition.get_value(self.get_section(section_name))

    def override(self, section_name: str, option_name: str, value: Any):
        """Overrides an option value in memory, e.g. from a command line flag

        :param str section_name: The section name
        :param str option_name: The option name
        :param Any value: The new value
        """
        option_definition = self.get_config_section_definition(section_name).option_definitions[option_name]
        self.logger.info('Overriding %s.%s with %s', section_name, option_name, value)
        option_definition.set_value(self.get_section(section_name), value)

    def validate(self) -> Dict[ConfigSectionDefinition, Dict[ConfigOptionDefinition, List[str]]]:
        """Validate the configuration

        :return: The validation errors detected for this configuration
        :rtype: Dict[ConfigSectionDefinition, Dict[ConfigOptionDefinition, List[str]]]
        """
        validation_errors = dict()
        for config_section_definition in self.CONFIG_SECTION_DEFINITIONS.values():
            section_name = config_section_definition.name
            config_section = self.config_sections[section_name]

            section_validation_errors = self._validate_config_section(config_section,
                                                                      config_section_definition)
            if len(section_validation_errors):
                validation_errors[config_section_definition] = section_validation_errors

        return validation_errors

    def _validate_config_section(self,
                                 config_section: SectionProxy,
                                 config_section_definition: ConfigSectionDefinition) -> Dict[ConfigOptionDefinition,
                                                                                             List[str]]:
        """Validate a configuration section

        :param SectionProxy config_section: The config section to validate
        :param ConfigSectionDefinition config_section_definition: The config section definition
        :return: The validation errors detected for this config section
        :rtype: Dict[ConfigOptionDefinition, List[str]]
        """
        validation_errors = dict()
        if config_section_definition.is_enabled(self.config_sections):
            for option_definition in config_section_definition.option_definitions.values():
                raw_value = config_section.get(option_definition.name, fallback=None)
                option_validation_errors = option_definition.validate(raw_value)
                if len(option_validation_errors):
                    validation_errors[option_definition] = option_validation_errors
        return validation_errors


def format_validation_errors(validation_errors: Dict[ConfigSectionDefinition,
                                                     Dict[ConfigOptionDefinition, List[str]]]) -> str:
    """Formats the result of :meth:`Config.validate` as one line per failing option"""
    lines = []
    for section_definition, option_errors in validation_errors.items():
        for option_definition, errors in option_errors.items():
            lines.append('{}.{}: {}'.format(section_definition.name, option_definition.name, ' '.join(errors)))
    return '\n'.join(lines)

# -*- coding: utf-8 -*-

import logging
from configparser import SectionProxy
from enum import Enum, unique
from pathlib import Path
from typing import Any, Dict, List, Callable

from utils.matrix_literals import Matrix, FloatList, parse_matrix, parse_float_list

# The value types a configuration option can have
VALUE_TYPES = (str, int, float, Path, Matrix, FloatList)


class ConfigOptionDefinition:
    """
    Defines the metadata of a configuration option.
    """

    def __repr__(self) -> str:
        return f'ConfigOptionDefinition(name={self.name},' \
               f' value_type={self.value_type.__name__},' \
               f' mandatory={self.mandatory},' \
               f' default_value={self.default_value})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self,
                 name: str,
                 display_name: str,
                 value_type: type,
                 description: str,
                 mandatory: bool = False,
                 default_value: Any = None,
                 valid_values: List[Any] = None,
                 validator: Callable = None):
        super().__init__()
        self.logger = logging.getLogger(self.__class__.__name__)

        self.name = name
        self.display_name = display_name
        self.value_type = value_type
        self.description = description
        self.mandatory = mandatory
        self.default_value = default_value
        self.valid_values = valid_values
        self.validator = validator

        if self.value_type not in VALUE_TYPES:
            self.logger.error('Unknown value type "%s" for the configuration option %s.',
                              getattr(self.value_type, '__name__', self.value_type), self.name)
            raise ValueError('Unknown value type "{}" for the configuration option {}.'.format(
                getattr(self.value_type, '__name__', self.value_type), self.name))

        if self.default_value is not None:
            validation_errors = self.validate(self.get_initial_option_value(), True)
            if len(validation_errors):
                raise ValueError(
                    'The DEFAULT value ({}) for the configuration option {} has the following validation errors: {}.'
                    .format(self.default_value, self.name, str(validation_errors)))

        self.logger.debug(self)

    def validate(self, raw_value: str or None, is_default: bool = False) -> List[str]:
        """Validates a raw value as read from the configuration file

        :param str raw_value: The value to be validated
        :param bool is_default: If set to True it will print 'DEFAULT value' otherwise only 'value'
        :return: The validation errors detected for this value
        :rtype: List[str]
        """
        value_name = 'DEFAULT value' if is_default else 'value'

        validation_errors = list()
        try:
            converted_value = self.convert_value(value_name, raw_value)
            if converted_value is None:
                if self.mandatory:
                    validation_errors.append('The value is mandatory.')
            else:
                validation_errors.extend(self._validate_value(value_name, converted_value))
        except ValueError as e:
            validation_errors.append(e.args[0])

        return validation_errors

    def convert_value(self, value_name: str, raw_value: Any) -> Any:
        """Returns the raw value converted to the option type, None for an empty value

        :param str value_name: The name of the value, used in messages
        :param Any raw_value: The value to convert
        :return: The converted value
        :rtype: Any
        """
        if raw_value is None:
            return None
        if isinstance(raw_value, str):
            raw_value = raw_value.strip()
            if not raw_value:
                return None

        try:
            if self.value_type is str:
                return str(raw_value)
            if self.value_type is int:
                return int(raw_value)
            if self.value_type is float:
                return float(raw_value)
            if self.value_type is Path:
                return Path(str(raw_value))
            if self.value_type is Matrix:
                return parse_matrix(str(raw_value))
            return parse_float_list(str(raw_value))
        except (TypeError, ValueError):
            self.logger.error('The %s (%s) for the configuration option %s can not be read as "%s".',
                              value_name, raw_value, self.name, self.value_type.__name__)
            raise ValueError('The {} ({}) can not be read as "{}".'
                             .format(value_name, raw_value, self.value_type.__name__))

    def get_value(self, config_section: SectionProxy) -> Any:
        """Returns the value with the correct type from a config section, the default if it is missing

        :param SectionProxy config_section: The config section to read the value from
        :return: The value, or None if it can not be converted
        :rtype: Any
        """
        raw_value = config_section.get(self.name, fallback=None)
        try:
            value = self.convert_value('value', raw_value)
        except ValueError as e:
            self.logger.debug('get_value: %s', e)
            return None
        if value is None and self.default_value is not None:
            value = self.convert_value('DEFAULT value', self.get_initial_option_value())
        return value

    def set_value(self, config_section: SectionProxy, value: Any):
        """Sets the value to a config section

        :param SectionProxy config_section: The config section to set the value to
        :param Any value: The value to set
        """
        config_section[self.name] = str(value)

    def _validate_value(self, value_name: str, value: Any) -> List[str]:
        """Validates the value against the list of valid values or the validator

        :param str value_name: The name of the value
        :param Any value: The converted value to be validated
        :return: The validation errors detected for this value
        :rtype: List[str]
        """
        validation_errors = list()

        valid_values = self.valid_values
        if valid_values is not None:
            if value not in valid_values:
                self.logger.error(
                    'The %s (%s) for the configuration option %s is not in the valid values list (%s).',
                    value_name, value, self.name, str(valid_values))
                validation_errors.append('The {} ({}) is not in the valid values list ({}).'
                                         .format(value_name, value, str(valid_values)))
        elif self.validator is not None:
            result = self.validator(value)
            if not result:
                self.logger.error('The %s for the configuration option %s is not valid: %s',
                                  value_name, self.name, result.message)
                validation_errors.append(result.message)

        return validation_errors

    def get_initial_option_value(self) -> str:
        """Returns the initial value for this option.

        :return: The initial value
        :rtype: str
        """
        if self.default_value is None:
            return ''
        return str(self.default_value)


@unique
class ConfigSectionEnableType(Enum):
    ALWAYS = 'Always'
    IF_SELECTED = 'If selected'


def config_section_definitions_sort_key(config_section_definition: 'ConfigSectionDefinition') -> str:
    return config_section_definition.sort_key()


class ConfigSectionDefinition:
    """
    Defines the metadata of a configuration section.

    A section with the enable type ``IF_SELECTED`` is only read and validated when the option
    ``selected_by`` (a ``(section name, option)`` pair) holds the name of this section.
    """

    def __repr__(self) -> str:
        return f'ConfigSectionDefinition(name={self.name},' \
               f' option_definitions={list(self.option_definitions.keys())})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self,
                 name: str,
                 display_name: str,
                 option_definitions: List[ConfigOptionDefinition] = None,
                 enable_type: ConfigSectionEnableType = ConfigSectionEnableType.ALWAYS,
                 sort_key_prefix: int = 100,
                 ):
        super().__init__()

        self.logger = logging.getLogger(self.__class__.__name__)

        if option_definitions is None:
            option_definitions = list()

        self.name = name
        self.display_name = display_name
        self.option_definitions: Dict[str, ConfigOptionDefinition] = dict()
        self.enable_type = enable_type
        self.sort_key_prefix = sort_key_prefix
        self.selected_by = None

        for option_definition in option_definitions:
            self.add_option_definition(option_definition)

        self.logger.debug(self)

    def sort_key(self):
        return '{} {}'.format(self.sort_key_prefix, self.name)

    def add_option_definition(self, option_definition: ConfigOptionDefinition):
        """Adds an option definition to this config section

        :param ConfigOptionDefinition option_definition: The option definition to add
        """
        if option_definition.name in self.option_definitions.keys():
            self.logger.error('The configuration option definition for "%s" already exists.',
                              option_definition.name)
            raise ValueError('The configuration option definition for "{}" already exists.'
                             .format(option_definition.name))

        self.option_definitions[option_definition.name] = option_definition

    def set_selected_by(self, section_name: str, option_definition: ConfigOptionDefinition):
        """Defines which str option, in which section, selects this config section

        :param str section_name: The name of the section holding the selecting option
        :param ConfigOptionDefinition option_definition: The selecting option
        """
        if self.selected_by is not None:
            self.logger.error('Selected by is already defined for "%s".', self.name)
            raise ValueError('Selected by is already defined for "{}".'.format(self.name))
        if option_definition.value_type is not str:
            self.logger.error('Only str options can select the configuration section %s.', self.name)
            raise ValueError('Only str options can select the configuration section {}.'.format(self.name))

        self.selected_by = (section_name, option_definition)

    def get_initial_config_section(self) -> Dict[str, str]:
        """Returns the initial values for this section.

        :return: The initial values
        :rtype: Dict[str, str]
        """
        return {option_definition.name: option_definition.get_initial_option_value()
                for option_definition in self.option_definitions.values()}

    def is_enabled(self, config_sections: Dict[str, SectionProxy]) -> bool:
        """Determines if this config section is enabled

        :param Dict[str, SectionProxy] config_sections: The config sections
        :return: True if it is enabled otherwise False
        :rtype: bool
        """
        if self.enable_type is ConfigSectionEnableType.ALWAYS:
            return True

        if self.selected_by is None:
            self.logger.error(
                'Enable type is "%s" but "selected_by" is not configured for the configuration section %s.',
                self.enable_type, self.name)
            raise ValueError(
                'Enable type is "{}" but "selected_by" is not configured for the configuration section {}.'.format(
                    self.enable_type, self.name))

        section_name, option_definition = self.selected_by
        if section_name not in config_sections:
            return False
        return option_definition.get_value(config_sections[section_name]) == self.name

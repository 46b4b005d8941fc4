LOGGER_NAME = 'Utils'

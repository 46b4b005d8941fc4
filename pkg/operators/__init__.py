LOGGER_NAME = 'Operators'

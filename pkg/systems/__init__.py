LOGGER_NAME = 'Systems'

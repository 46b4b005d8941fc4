LOGGER_NAME = 'Boundary'

LOGGER_NAME = 'Interpolation'

LOGGER_NAME = 'Theorems'

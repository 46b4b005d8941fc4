LOGGER_NAME = 'Validators'

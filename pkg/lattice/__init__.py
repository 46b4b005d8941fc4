LOGGER_NAME = 'Lattice'

# -*- coding: utf-8 -*-
from pathlib import Path

# The directory where this file is located
APPLICATION_DIR = Path(__file__).resolve().parent.parent.absolute()

# The name of the directory where the configuration files are located
CONFIGURATION_DIR_NAME = 'config'

# The directory where the configuration files are located
CONFIGURATION_DIR = APPLICATION_DIR / CONFIGURATION_DIR_NAME

# The directory where the scenario files are located
SCENARIOS_DIR = CONFIGURATION_DIR / 'scenarios'

# Default output directory for reports
DEFAULT_OUTPUT_DIR = 'out'

# Default tolerances
DEFAULT_PICARD_TOLERANCE = 1e-10
DEFAULT_LAPLACE_TOLERANCE = 1e-3
DEFAULT_POSITIVITY_TOLERANCE = 1e-10
DEFAULT_DOMINATION_TOLERANCE = 1e-10
DEFAULT_RESOLVENT_TOLERANCE = 1e-6

# Residual above which a resolvent is reported singular
SINGULAR_RESOLVENT_RESIDUAL = 1e-8

# Number of random probes used by the sampled checks
DEFAULT_PROBE_COUNT = 100

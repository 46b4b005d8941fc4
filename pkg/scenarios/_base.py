# -*- coding: utf-8 -*-

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Iterable

import numpy as np

from scenarios import LOGGER_NAME
from systems.time_functions import TimeGrid
from utils.config import Config
from utils.config_definitions import ConfigOptionDefinition, ConfigSectionDefinition
from utils.constants import DEFAULT_OUTPUT_DIR, DEFAULT_PICARD_TOLERANCE, DEFAULT_LAPLACE_TOLERANCE, \
    DEFAULT_POSITIVITY_TOLERANCE, DEFAULT_DOMINATION_TOLERANCE, DEFAULT_RESOLVENT_TOLERANCE
from validators.number_validators import is_not_negative_int, is_positive_float, is_step_count, is_tolerance
from validators.path_validators import is_output_directory


@dataclass(frozen=True)
class ReportRow:
    """
    One value of report.csv. Times and lambdas are None for rows that do not depend on them.
    """
    t: float or None
    lam: float or None
    quantity: str
    i: int or None
    j: int or None
    value: float


@dataclass
class Table:
    """
    An extra CSV file of a scenario, written next to report.csv.
    """
    header: List[str]
    rows: List[List[Any]] = field(default_factory=list)


@dataclass(frozen=True)
class ConvergenceRow:
    level: int
    grid_n: int
    step: float
    error: float
    order: float or None


@dataclass(frozen=True)
class RefinementSample:
    """
    S(t) x at the reference time on one refinement level, sampled at nodes.
    """
    grid_n: int
    step: float
    nodes: np.ndarray
    values: np.ndarray


@dataclass
class ScenarioResult:
    rows: List[ReportRow] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, Table] = field(default_factory=dict)
    convergence: List[ConvergenceRow] = field(default_factory=list)


@dataclass(frozen=True)
class Tolerances:
    picard: float
    laplace: float
    positivity: float
    domination: float
    resolvent: float


def matrix_rows(t: float or None, lam: float or None, quantity: str, matrix: np.ndarray) -> List[ReportRow]:
    """One report row per entry of a matrix"""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    return [ReportRow(t, lam, quantity, i, j, float(matrix[i, j]))
            for i in range(matrix.shape[0]) for j in range(matrix.shape[1])]


def scalar_row(quantity: str, value: float, t: float or None = None, lam: float or None = None) -> ReportRow:
    return ReportRow(t, lam, quantity, None, None, float(value))


def convergence_rows(samples: List[RefinementSample]) -> List[ConvergenceRow]:
    """Errors of every level but the finest against the finest level, and the observed orders

    The finest solution is interpolated linearly onto the nodes of each coarser level.
    """
    if len(samples) < 2:
        return []
    finest = samples[-1]
    rows = []
    for level, sample in enumerate(samples[:-1]):
        reference = np.interp(sample.nodes, finest.nodes, finest.values)
        error = float(np.max(np.abs(sample.values - reference)))
        order = None
        if rows and rows[-1].error > 0.0 and error > 0.0:
            order = math.log(rows[-1].error / error) / math.log(rows[-1].step / sample.step)
        rows.append(ConvergenceRow(level, sample.grid_n, sample.step, error, order))
    return rows


class _ScenarioBase(ABC):
    """
    Base class for Scenarios.

    A scenario reads its section of the scenario file, builds its triple or model, runs the matching theorem
    and returns the rows, diagnostics and tables of its report.
    """

    name = NotImplemented

    display_name = NotImplemented

    description = NotImplemented

    CONFIG_OPTION_SEED = ConfigOptionDefinition(
        name='seed',
        display_name='Seed',
        value_type=int,
        description='The seed of the random generator of all probes.',
        default_value=0,
        validator=is_not_negative_int,
    )

    CONFIG_OPTION_OUTPUT_DIR = ConfigOptionDefinition(
        name='outputdir',
        display_name='Output Directory',
        value_type=Path,
        description='The directory the report files are written to.',
        default_value=DEFAULT_OUTPUT_DIR,
        validator=is_output_directory,
    )

    CONFIG_OPTION_REFINE = ConfigOptionDefinition(
        name='refine',
        display_name='Refinement Levels',
        value_type=int,
        description='The number of grid refinements of the convergence study, 0 to skip it.',
        default_value=0,
        validator=is_not_negative_int,
    )

    COMMON_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name=Config.SECTION_COMMON,
        display_name='Common',
        option_definitions=[
            CONFIG_OPTION_SEED,
            CONFIG_OPTION_OUTPUT_DIR,
            CONFIG_OPTION_REFINE,
        ],
        sort_key_prefix=0,
    )

    Config.register_config_section_definition(COMMON_CONFIG_SECTION_DEFINITION)

    CONFIG_OPTION_T_END = ConfigOptionDefinition(
        name='tend',
        display_name='End Time',
        value_type=float,
        description='The end of the time grid.',
        default_value=1.0,
        validator=is_positive_float,
    )

    CONFIG_OPTION_STEPS = ConfigOptionDefinition(
        name='steps',
        display_name='Time Steps',
        value_type=int,
        description='The number of steps of the time grid, at least 16.',
        default_value=100,
        validator=is_step_count,
    )

    TIME_GRID_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name='TimeGrid',
        display_name='Time Grid',
        option_definitions=[
            CONFIG_OPTION_T_END,
            CONFIG_OPTION_STEPS,
        ],
        sort_key_prefix=10,
    )

    Config.register_config_section_definition(TIME_GRID_CONFIG_SECTION_DEFINITION)

    CONFIG_OPTION_PICARD_TOLERANCE = ConfigOptionDefinition(
        name='picard',
        display_name='Picard Tolerance',
        value_type=float,
        description='The sup norm increment at which the Picard iteration stops.',
        default_value=DEFAULT_PICARD_TOLERANCE,
        validator=is_tolerance,
    )

    CONFIG_OPTION_LAPLACE_TOLERANCE = ConfigOptionDefinition(
        name='laplace',
        display_name='Laplace Tolerance',
        value_type=float,
        description='The relative residual allowed in the Laplace identity.',
        default_value=DEFAULT_LAPLACE_TOLERANCE,
        validator=is_tolerance,
    )

    CONFIG_OPTION_POSITIVITY_TOLERANCE = ConfigOptionDefinition(
        name='positivity',
        display_name='Positivity Tolerance',
        value_type=float,
        description='The negative entries tolerated in positivity checks.',
        default_value=DEFAULT_POSITIVITY_TOLERANCE,
        validator=is_tolerance,
    )

    CONFIG_OPTION_DOMINATION_TOLERANCE = ConfigOptionDefinition(
        name='domination',
        display_name='Domination Tolerance',
        value_type=float,
        description='The excess tolerated in |S(t)| <= S~(t).',
        default_value=DEFAULT_DOMINATION_TOLERANCE,
        validator=is_tolerance,
    )

    CONFIG_OPTION_RESOLVENT_TOLERANCE = ConfigOptionDefinition(
        name='resolvent',
        display_name='Resolvent Tolerance',
        value_type=float,
        description='The residual tolerated between resolvent representations.',
        default_value=DEFAULT_RESOLVENT_TOLERANCE,
        validator=is_tolerance,
    )

    TOLERANCES_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name='Tolerances',
        display_name='Tolerances',
        option_definitions=[
            CONFIG_OPTION_PICARD_TOLERANCE,
            CONFIG_OPTION_LAPLACE_TOLERANCE,
            CONFIG_OPTION_POSITIVITY_TOLERANCE,
            CONFIG_OPTION_DOMINATION_TOLERANCE,
            CONFIG_OPTION_RESOLVENT_TOLERANCE,
        ],
        sort_key_prefix=20,
    )

    Config.register_config_section_definition(TOLERANCES_CONFIG_SECTION_DEFINITION)

    @classmethod
    @abstractmethod
    def config_section_definition(cls) -> ConfigSectionDefinition:
        """Returns the section of the scenario, named after the scenario class"""

    @classmethod
    def get_config_section_definitions(cls) -> List[ConfigSectionDefinition]:
        """The sections whose updates are sent to :meth:`config_updated`"""
        return [cls.COMMON_CONFIG_SECTION_DEFINITION,
                cls.TIME_GRID_CONFIG_SECTION_DEFINITION,
                cls.TOLERANCES_CONFIG_SECTION_DEFINITION,
                cls.config_section_definition()]

    def __repr__(self) -> str:
        return f'_ScenarioBase(name={self.name})'

    def __str__(self) -> str:
        return repr(self)

    @abstractmethod
    def __init__(self, config: Config):
        super().__init__()

        self.logger = logging.getLogger(self.__class__.__name__)
        self.config = config
        for definition in self.get_config_section_definitions():
            self.config.register_config_section_listener(definition.name, self)

        self.seed = 0
        self.output_dir = Path(DEFAULT_OUTPUT_DIR)
        self.refine = 0
        self.time_grid = None
        self.tolerances = None
        self.rng = None

        self._parse_config()

    def config_updated(self, section_names: List[str]):
        self.logger.debug('config_updated: %s', section_names)
        self._parse_config()

    def _get(self, option_definition: ConfigOptionDefinition, section_name: str or None = None) -> Any:
        if section_name is None:
            section_name = self.config_section_definition().name
        return self.config.get_value(section_name, option_definition.name)

    def _parse_config(self):
        self.seed = self._get(self.CONFIG_OPTION_SEED, Config.SECTION_COMMON)
        self.output_dir = self._get(self.CONFIG_OPTION_OUTPUT_DIR, Config.SECTION_COMMON)
        self.refine = self._get(self.CONFIG_OPTION_REFINE, Config.SECTION_COMMON)

        time_grid_section = self.TIME_GRID_CONFIG_SECTION_DEFINITION.name
        self.time_grid = TimeGrid(self._get(self.CONFIG_OPTION_T_END, time_grid_section),
                                  self._get(self.CONFIG_OPTION_STEPS, time_grid_section))

        tolerances_section = self.TOLERANCES_CONFIG_SECTION_DEFINITION.name
        self.tolerances = Tolerances(self._get(self.CONFIG_OPTION_PICARD_TOLERANCE, tolerances_section),
                                     self._get(self.CONFIG_OPTION_LAPLACE_TOLERANCE, tolerances_section),
                                     self._get(self.CONFIG_OPTION_POSITIVITY_TOLERANCE, tolerances_section),
                                     self._get(self.CONFIG_OPTION_DOMINATION_TOLERANCE, tolerances_section),
                                     self._get(self.CONFIG_OPTION_RESOLVENT_TOLERANCE, tolerances_section))

        self.rng = np.random.default_rng(self.seed)
        self._parse_scenario_config()

    @abstractmethod
    def _parse_scenario_config(self):
        """Reads the options of the scenario section"""

    @abstractmethod
    def run(self) -> ScenarioResult:
        """Builds the scenario and runs its theorem

        :return: The report rows, the diagnostics and the extra tables
        :rtype: ScenarioResult
        """

    @abstractmethod
    def refinement_sample(self, level: int) -> RefinementSample:
        """Returns S(t) x at the reference time on the grid refined ``level`` times

        :param int level: The refinement level, 0 is the configured grid
        :return: The sample
        :rtype: RefinementSample
        """

    def refinement_study(self, levels: int) -> List[ConvergenceRow]:
        """Runs the refinement levels 0..levels and compares them with the finest one

        :param int levels: The number of refinements
        :return: One row per level but the finest
        :rtype: List[ConvergenceRow]
        """
        if levels < 1:
            return []
        samples = [self.refinement_sample(level) for level in range(levels + 1)]
        rows = convergence_rows(samples)
        for row in rows:
            self.logger.info('refinement level %s: grid_n=%s step=%s error=%s order=%s',
                             row.level, row.grid_n, row.step, row.error, row.order)
        return rows

    def execute(self) -> ScenarioResult:
        """Runs the scenario and, if requested, the refinement study"""
        self.logger.info('Running %s', self.display_name)
        result = self.run()
        result.convergence = self.refinement_study(self.refine)
        return result


def report_times(values: Iterable[float] or None, time_grid: TimeGrid) -> List[float]:
    """The configured report times snapped to the grid, the end time when none are configured"""
    if values is None or len(values) == 0:
        return [time_grid.t_end]
    return [float(time_grid.times[time_grid.index_of(float(t))]) for t in values]


def log_result(result: ScenarioResult):
    logging.getLogger(LOGGER_NAME).info('%s report rows, %s tables, %s convergence rows',
                                        len(result.rows), len(result.tables), len(result.convergence))

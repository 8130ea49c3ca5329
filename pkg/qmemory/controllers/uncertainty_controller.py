# qmemory/controllers/uncertainty_controller.py
import logging
from typing import Union

from ..models.hilbert import DensityMatrix, PureState
from ..schemas.correlation_schema import CorrelationReport
from ..schemas.uncertainty_schema import GameReport, UncertaintyReport
from ..services.correlations import correlation_report
from ..services.entropy import named_observable_pair, uncertainty_game, uncertainty_report
from ..services.states import as_density

logger = logging.getLogger(__name__)

State = Union[DensityMatrix, PureState]


def compute_bound(state: State, observables: str = "Z,X") -> UncertaintyReport:
    rho = as_density(state)
    report = uncertainty_report(rho, named_observable_pair(observables, rho.dims[0]))
    logger.debug("bound on dims %s: lhs=%.12g ub=%.12g", rho.dims, report.lhs, report.ub)
    return report


def play_game(state: State, observables: str = "Z,X") -> GameReport:
    rho = as_density(state)
    return uncertainty_game(rho, named_observable_pair(observables, rho.dims[0]))


def compute_correlations(state: State) -> CorrelationReport:
    return correlation_report(as_density(state))

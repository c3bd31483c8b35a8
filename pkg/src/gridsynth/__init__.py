"""Climate-dependent synthetic power system toolkit.

Builds backbone test cases by geographic clustering, generates
climate-driven renewable, load, and line-rating profiles, and validates the
result with a DC security-constrained unit commitment study.
"""

__version__ = "0.1.0"

from .model import (Bus, CaseError, Generator, GeneratorCostSpec, GridCase,
                    Line)
from .caseio import load_case, save_case
from .genparams import GeneratorParams, default_params, startup_cost
from .reduction import Clustering, GeoPoint, aggregate, haversine, kmedoids
from .climate import (ClimateRecord, ClimateSeries, DailyWorstCase,
                      WindProfileParams, composite_wind, daily_worst_case,
                      log_wind, perpendicular_wind, read_climate_csv,
                      write_climate_csv)
from .profiles import ProfileSet, read_profile_csv, write_profile_csv
from .renewables import (PvArraySpec, WindFarmSpec, generate_profiles,
                         solar_power, wind_power)
from .calibration import CalibrationProblem, CalibrationResult, calibrate
from .loads import (ParticipationFactors, ZonalLoadSeries, disaggregate,
                    uniform_factors)
from .conductors import BUILTIN_CATALOG, ConductorSpec
from .line_rating import (AirProperties, AmbientConditions, SolarGeometry,
                          ampacity, convective_loss, dlr_profiles,
                          radiated_loss, resistance, solar_gain,
                          thermal_rating)
from .scuc import (CongestionReport, ScucInstance, ScucOptions, ScucSolution,
                   build_scuc, compare_dlr, congestion, lmp, solve_scuc,
                   validate_solution)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Equation-of-exchange simulation and money-supply normalization of GDP and debt."""

from .errors import *  # noqa: F401,F403
from .exchange import (
    Economy,
    Good,
    Ledger,
    Transaction,
    fisher_economy,
    gdp,
    gdp_expenditure,
    goods_side,
    price_level_and_count,
    run_schedule,
    scale_production,
    shift_flows,
    solve_prices,
    velocity,
)
from .ingest import DatasetEntry, Manifest, load_manifest, load_series, read_series, write_series
from .normalize import AggregateSpec, DebtRow, NormalizedSeries, compose_aggregate, normalize, normalize_debt_row, rebase
from .series import TimeSeries, align, growth_multiplier, splice

__version__ = "0.1.0"

"""GNSS position time-series prediction, outlier detection, and event onset toolkit."""

from .detrend import DetrendedWindow, detrend, remove_endpoint_trend, remove_mean, restore
from .events import EventReport, find_departure, lead_time, predict_event
from .harmonic import (
    BandCoefficients,
    FrequencyGrid,
    design_matrix,
    design_row,
    evaluate_band,
    frequency_grid,
    weighted_fit,
)
from .ingest import (
    NGL_SCHEMA,
    SeriesFileSchema,
    parse_delimited,
    parse_ngl,
    read_series,
    write_results,
    write_series,
    write_table,
)
from .metrics import EvaluationReport, evaluate, mae, mase, smape, std_err
from .outliers import (
    DetectionScore,
    InjectionRecord,
    OutlierFlag,
    detect_outliers,
    inject_outliers,
    score_detection,
)
from .predictor import TrainedModel, predict_horizon, predict_one, train, training_mse
from .series import (
    PipelineConfig,
    Sample,
    TimeSeries,
    Window,
    observation_weight,
    slice_window,
    validate_series,
)
from .wavelets import WAVELETS, BandPair, decompose

__version__ = "0.1.0"

from .bench import ScalingPoint, ScalingReport, bench_linear_scaling, cyclic_instance, fit_slope
from .config import ERROR_MODELS, ErrorModelConfig, ExperimentConfig, InstanceConfig, load_config
from .error_models import clustered_error, exhaustive_errors, half_generator_error, sample_error, uniform_error
from .experiment import ExperimentReport, TrialRecord, run_experiment, run_trial, summarize
from .io import (
    SUMMARY_FIELDS,
    export_instance,
    load_instance,
    read_csv,
    read_jsonl,
    read_step_log,
    read_syndrome,
    write_csv,
    write_json,
    write_jsonl,
    write_report,
    write_step_log,
    write_syndrome,
)

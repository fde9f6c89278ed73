"""
Monte-Carlo and exhaustive decoder sweeps.

Each trial draws its error from its own generator, spawned from the
experiment seed, and results are collected in trial order; the worker count
therefore never changes a report.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..decoder.decoder import decode
from ..qtanner.code import stabilizer_equivalent, syndrome_z
from .error_models import exhaustive_errors, sample_error
from .io import write_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialRecord:
    """
    Attributes:
        trial (int): Trial id, in generation order.
        weight (int): ``|e|``.
        mismatch_weight (int): ``|Z|`` of the initial mismatch.
        converged (bool): The decoder reached ``zhat = 0``.
        equivalent (bool): The estimate differs from ``e`` by a stabilizer.
        rounds (int): Decoder iterations.
        wall_time (float | None): Decode time in seconds, when recorded.
    """

    trial: int
    weight: int
    mismatch_weight: int
    converged: bool
    equivalent: bool
    rounds: int
    wall_time: Optional[float] = None

    def __post_init__(self):
        if self.equivalent and not self.converged:
            raise ValueError(f'trial {self.trial} is equivalent without converging')

    def to_dict(self):
        return {
            'trial': self.trial,
            'weight': self.weight,
            'mismatch_weight': self.mismatch_weight,
            'converged': self.converged,
            'equivalent': self.equivalent,
            'rounds': self.rounds,
            'wall_time': self.wall_time,
        }


@dataclass(frozen=True)
class ExperimentReport:
    """
    Attributes:
        config (ExperimentConfig): The validated configuration.
        code (dict): Summary of the instance.
        records (tuple): One :class:`TrialRecord` per trial.
        summary (tuple): One dict per error weight, keyed by ``SUMMARY_FIELDS``.
    """

    config: object
    code: dict
    records: tuple
    summary: tuple

    @property
    def all_succeeded(self):
        return all(record.equivalent for record in self.records)

    def to_dict(self):
        return {
            'config': self.config.to_dict(),
            'code': self.code,
            'summary': [dict(row) for row in self.summary],
        }


def run_trial(q, e, trial, cfg, record_timing=False):
    """
    Decodes one error and checks the estimate with the stabilizer oracle.
    """

    s = syndrome_z(q, e)
    start = time.perf_counter()
    outcome = decode(q, s, cfg)
    elapsed = time.perf_counter() - start
    equivalent = outcome.converged and syndrome_z(q, outcome.ehat) == s and stabilizer_equivalent(q, e, outcome.ehat)
    if not outcome.converged:
        logger.warning('trial %d: no convergence for |e| = %d (|zhat| = %d)', trial, e.weight(), outcome.final_mismatch_weight)
    return TrialRecord(
        trial=trial,
        weight=e.weight(),
        mismatch_weight=outcome.initial_mismatch_weight,
        converged=outcome.converged,
        equivalent=bool(equivalent),
        rounds=outcome.iterations,
        wall_time=elapsed if record_timing else None,
    )


def _sampled_jobs(cfg, q):
    weights = [w for w in cfg.error_model.weights for _ in range(cfg.trials)]
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(weights))
    for trial, (weight, seed) in enumerate(zip(weights, seeds)):
        yield trial, sample_error(cfg.error_model, q, np.random.default_rng(seed), weight)


def _exhaustive_jobs(cfg, q):
    max_weight = max(cfg.error_model.weights, default=0)
    yield from enumerate(exhaustive_errors(q, max_weight))


def summarize(records):
    """
    Per-weight success rates, ``|Z| / |e|`` spread and round counts.

    Ratio fields are ``None`` for weight zero.
    """

    by_weight = {}
    for record in records:
        by_weight.setdefault(record.weight, []).append(record)
    rows = []
    for weight in sorted(by_weight):
        group = by_weight[weight]
        rounds = np.array([r.rounds for r in group], dtype=np.int64)
        successes = sum(r.equivalent for r in group)
        row = {
            'weight': weight,
            'trials': len(group),
            'converged': sum(r.converged for r in group),
            'successes': successes,
            'success_rate': successes / len(group),
            'mismatch_ratio_min': None,
            'mismatch_ratio_median': None,
            'mismatch_ratio_max': None,
            'rounds_mean': float(rounds.mean()),
            'rounds_max': int(rounds.max()),
        }
        if weight:
            ratios = np.array([r.mismatch_weight / weight for r in group])
            row['mismatch_ratio_min'] = float(ratios.min())
            row['mismatch_ratio_median'] = float(np.median(ratios))
            row['mismatch_ratio_max'] = float(ratios.max())
        rows.append(row)
    return tuple(rows)


def run_experiment(cfg, q=None):
    """
    Runs every trial of an experiment and writes the report when ``cfg.out`` is set.

    Args:
        cfg (ExperimentConfig): Validated configuration.
        q (QuantumTannerCode, optional): Prebuilt instance; built from
            ``cfg.instance`` otherwise.

    Returns:
        ExperimentReport: Records in trial order plus the per-weight summary.
    """

    q = cfg.instance.build() if q is None else q
    # shared caches are filled before the workers start
    q.hz_space()
    if cfg.error_model.kind == 'exhaustive':
        jobs = list(_exhaustive_jobs(cfg, q))
    else:
        jobs = list(_sampled_jobs(cfg, q))
    logger.info('running %d trials on %r with %d thread(s)', len(jobs), q, cfg.threads)

    def work(job):
        trial, e = job
        return run_trial(q, e, trial, cfg.decoder, cfg.record_timing)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            records = tuple(pool.map(work, jobs))
    else:
        records = tuple(map(work, jobs))

    report = ExperimentReport(config=cfg, code=q.to_dict(), records=records, summary=summarize(records))
    failures = sum(not r.equivalent for r in records)
    logger.info('%d of %d trials decoded to an equivalent error', len(records) - failures, len(records))
    if cfg.out is not None:
        write_report(cfg.out, report)
    return report

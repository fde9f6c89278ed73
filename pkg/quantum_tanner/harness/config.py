"""
Experiment configuration, loaded from a single JSON document.

    {
      "seed": 2024,
      "trials": 100,
      "instance": {"group": "Z6", "gens_a": [1, 3, 5], "gens_b": [1, 3, 5]},
      "decoder": {"epsilon": 0.25},
      "error_model": {"kind": "uniform", "weights": [1, 2, 3]}
    }

Every field is validated by :meth:`ExperimentConfig.from_dict`, which
reports all problems at once.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..codes.linear_code import LinearCode, parity_check_code, repetition_code
from ..codes.sampling import sample_component_pair
from ..complex.group import build_group
from ..complex.left_right import build_complex
from ..decoder.config import DecoderConfig
from ..qtanner.code import build_qtanner
from ..utils.math_utils import DEFAULT_SEED

ERROR_MODELS = ('uniform', 'clustered', 'half-generator', 'exhaustive')


def _int_tuple(value, name, problems):
    try:
        return tuple(int(x) for x in value)
    except (TypeError, ValueError):
        problems.append(f'{name} must be a list of integers, got {value!r}')
        return ()


@dataclass(frozen=True)
class InstanceConfig:
    """
    A quantum Tanner instance.

    Component codes come from, in order of precedence, inline generator rows,
    dense matrix files, random sampling (``rho``, ``delta_target``) or the
    default pair ``C_A`` = repetition, ``C_B`` = single parity check.
    """

    group: str = 'Z6'
    gens_a: tuple = (1, 3, 5)
    gens_b: tuple = (1, 3, 5)
    code_a: Optional[tuple] = None
    code_b: Optional[tuple] = None
    code_a_path: Optional[str] = None
    code_b_path: Optional[str] = None
    rho: Optional[float] = None
    delta_target: Optional[float] = None
    sample_seed: Optional[int] = None

    @classmethod
    def from_dict(cls, data, problems):
        known = {f for f in cls.__dataclass_fields__}
        for key in sorted(set(data) - known):
            problems.append(f'instance: unknown field {key!r}')
        kwargs = {k: v for k, v in data.items() if k in known}
        for name in ('gens_a', 'gens_b'):
            if name in kwargs:
                kwargs[name] = _int_tuple(kwargs[name], f'instance.{name}', problems)
        for name in ('code_a', 'code_b'):
            if kwargs.get(name) is not None:
                kwargs[name] = tuple(_int_tuple(row, f'instance.{name}', problems) for row in kwargs[name])
        for name in ('code_a_path', 'code_b_path'):
            path = kwargs.get(name)
            if path is not None and not os.path.exists(path):
                problems.append(f'instance.{name}: file {path!r} does not exist')
        rho = kwargs.get('rho')
        if rho is not None and not 0 < float(rho) < 1:
            problems.append(f'instance.rho must lie in (0, 1), got {rho}')
        if rho is not None and kwargs.get('delta_target') is None:
            problems.append('instance.delta_target is required when rho is given')
        try:
            build_group(str(kwargs.get('group', cls.group)))
        except ValueError as exc:
            problems.append(f'instance.group: {exc}')
        return cls(**kwargs)

    def to_dict(self):
        return {
            'group': self.group,
            'gens_a': list(self.gens_a),
            'gens_b': list(self.gens_b),
            'code_a': None if self.code_a is None else [list(r) for r in self.code_a],
            'code_b': None if self.code_b is None else [list(r) for r in self.code_b],
            'code_a_path': self.code_a_path,
            'code_b_path': self.code_b_path,
            'rho': self.rho,
            'delta_target': self.delta_target,
            'sample_seed': self.sample_seed,
        }

    def component_codes(self):
        delta = len(self.gens_a)
        if self.rho is not None:
            rng = np.random.default_rng(self.sample_seed)
            return sample_component_pair(delta, self.rho, self.delta_target, rng)
        ca = self._code(self.code_a, self.code_a_path, repetition_code(delta))
        cb = self._code(self.code_b, self.code_b_path, parity_check_code(len(self.gens_b)))
        return ca, cb

    @staticmethod
    def _code(rows, path, default):
        if rows is not None:
            return LinearCode.from_generator(np.asarray(rows, dtype=np.uint8))
        if path is not None:
            return LinearCode.read(path)
        return default

    def build(self):
        """
        Returns:
            QuantumTannerCode: The instance.
        """

        group = build_group(self.group)
        complex_ = build_complex(group, self.gens_a, self.gens_b)
        ca, cb = self.component_codes()
        return build_qtanner(complex_, ca, cb)


@dataclass(frozen=True)
class ErrorModelConfig:
    """
    Attributes:
        kind (str): ``uniform``, ``clustered``, ``half-generator`` or ``exhaustive``.
        weights (tuple): Error weights to sweep; for ``exhaustive`` every
            weight up to ``max(weights)`` is enumerated.
        clusters (int): Number of vertex neighbourhoods for ``clustered``.
    """

    kind: str = 'uniform'
    weights: tuple = (1,)
    clusters: int = 1

    @classmethod
    def from_dict(cls, data, problems):
        known = {f for f in cls.__dataclass_fields__}
        for key in sorted(set(data) - known):
            problems.append(f'error_model: unknown field {key!r}')
        kwargs = {k: v for k, v in data.items() if k in known}
        if 'weights' in kwargs:
            kwargs['weights'] = _int_tuple(kwargs['weights'], 'error_model.weights', problems)
        kind = kwargs.get('kind', cls.kind)
        if kind not in ERROR_MODELS:
            problems.append(f'error_model.kind must be one of {", ".join(ERROR_MODELS)}, got {kind!r}')
        if any(w < 0 for w in kwargs.get('weights', ())):
            problems.append('error_model.weights must be nonnegative')
        if int(kwargs.get('clusters', 1)) < 1:
            problems.append('error_model.clusters must be at least 1')
        return cls(**kwargs)

    def to_dict(self):
        return {'kind': self.kind, 'weights': list(self.weights), 'clusters': self.clusters}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Attributes:
        instance (InstanceConfig): Code to test.
        decoder (DecoderConfig): Decoder settings.
        error_model (ErrorModelConfig): How errors are drawn.
        trials (int): Trials per weight (ignored by ``exhaustive``).
        seed (int): Root of every random stream.
        threads (int): Worker threads.
        record_timing (bool): Store wall times; off keeps reports byte-identical across runs.
        out (str | None): Output directory.
    """

    instance: InstanceConfig = field(default_factory=InstanceConfig)
    decoder: DecoderConfig = field(default_factory=DecoderConfig)
    error_model: ErrorModelConfig = field(default_factory=ErrorModelConfig)
    trials: int = 100
    seed: int = DEFAULT_SEED
    threads: int = 1
    record_timing: bool = False
    out: Optional[str] = None

    @classmethod
    def from_dict(cls, data):
        """
        Validates a parsed config document.

        Raises:
            ValueError: Listing every problem found.
        """

        problems = []
        known = {f for f in cls.__dataclass_fields__}
        for key in sorted(set(data) - known):
            problems.append(f'unknown field {key!r}')
        instance = InstanceConfig.from_dict(data.get('instance', {}), problems)
        error_model = ErrorModelConfig.from_dict(data.get('error_model', {}), problems)
        try:
            decoder = DecoderConfig.from_dict(data.get('decoder', {}))
        except (TypeError, ValueError) as exc:
            problems.append(f'decoder: {exc}')
            decoder = DecoderConfig()
        trials = data.get('trials', cls.trials)
        if not isinstance(trials, int) or trials < 0:
            problems.append(f'trials must be a nonnegative integer, got {trials!r}')
        seed = data.get('seed', DEFAULT_SEED)
        if not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
            problems.append(f'seed must be a 64-bit nonnegative integer, got {seed!r}')
        threads = data.get('threads', cls.threads)
        if not isinstance(threads, int) or threads < 1:
            problems.append(f'threads must be a positive integer, got {threads!r}')
        if problems:
            raise ValueError('invalid experiment config:\n  ' + '\n  '.join(problems))
        return cls(
            instance=instance,
            decoder=decoder,
            error_model=error_model,
            trials=trials,
            seed=seed,
            threads=threads,
            record_timing=bool(data.get('record_timing', False)),
            out=data.get('out'),
        )

    def to_dict(self):
        return {
            'instance': self.instance.to_dict(),
            'decoder': self.decoder.to_dict(),
            'error_model': self.error_model.to_dict(),
            'trials': self.trials,
            'seed': self.seed,
            'threads': self.threads,
            'record_timing': self.record_timing,
            'out': self.out,
        }


def load_config(path):
    with open(path, encoding='utf-8') as f:
        return ExperimentConfig.from_dict(json.load(f))

"""
Command-line entry point.

    quantum-tanner build --group Z6 --gens-a 1,3,5 --gens-b 1,3,5 --out inst/
    quantum-tanner decode inst/ syndrome.txt --steps steps.jsonl
    quantum-tanner experiment config.json --seed 7 --threads 4 --out report/
    quantum-tanner bench --sizes 6,12,24,48
    quantum-tanner certify --delta 3 --w 2 --p 1

Exit status is 0 when every requested check passes, 1 when one fails and 2
for usage or input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

import numpy as np

from ..codes.linear_code import LinearCode, parity_check_code, repetition_code
from ..codes.robustness import check_puncture_resistance, check_robustness
from ..decoder.config import DecoderConfig
from ..decoder.decoder import decode
from ..qtanner.code import theorem_conditions
from ..utils.errors import QuantumTannerError
from .bench import DEFAULT_ERROR_RATE, DEFAULT_SIZES, MIN_REPETITIONS, bench_linear_scaling
from .config import DEFAULT_SEED, InstanceConfig, load_config
from .experiment import run_experiment
from .io import export_instance, load_instance, read_syndrome, write_json, write_step_log

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _int_list(text):
    try:
        return tuple(int(x) for x in text.replace(',', ' ').split())
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a comma separated list of integers, got {text!r}') from None


def _emit(data, out=None):
    text = json.dumps(data, indent=2, sort_keys=True)
    if out is not None:
        write_json(out, data)
    print(text)


def _decoder_config(args):
    return DecoderConfig(epsilon=args.epsilon, lookahead=not args.no_lookahead)


def cmd_build(args):
    instance = InstanceConfig(
        group=args.group,
        gens_a=args.gens_a,
        gens_b=args.gens_b,
        code_a_path=args.code_a,
        code_b_path=args.code_b,
    )
    q = instance.build()
    if args.swap:
        q = q.swapped()
    if args.out is not None:
        export_instance(args.out, q)
    data = q.to_dict()
    if args.conditions:
        data['conditions'] = theorem_conditions(q).to_dict()
    _emit(data)
    return EXIT_OK


def cmd_decode(args):
    q = load_instance(args.instance)
    s = read_syndrome(args.syndrome, length=q.hx.n_rows)
    cfg = dataclasses.replace(_decoder_config(args), record_steps=args.steps is not None)
    outcome = decode(q, s, cfg)
    if args.steps is not None:
        write_step_log(args.steps, outcome.step_log)
    _emit(outcome.to_dict(), args.out)
    return EXIT_OK if outcome.converged else EXIT_CHECK_FAILED


def cmd_experiment(args):
    cfg = load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides['seed'] = args.seed
    if args.out is not None:
        overrides['out'] = str(args.out)
    if args.threads is not None:
        overrides['threads'] = args.threads
    if args.record_timing:
        overrides['record_timing'] = True
    cfg = dataclasses.replace(cfg, **overrides)
    report = run_experiment(cfg)
    _emit(report.to_dict())
    if args.strict and not report.all_succeeded:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_bench(args):
    seed = DEFAULT_SEED if args.seed is None else args.seed
    report = bench_linear_scaling(
        sizes=args.sizes, repetitions=args.repetitions, error_rate=args.rate, seed=seed, cfg=_decoder_config(args),
    )
    _emit(report.to_dict(), args.out)
    if args.max_slope is not None and report.slope is not None and report.slope > args.max_slope:
        logger.warning('fitted slope %.3f exceeds %.3f', report.slope, args.max_slope)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_certify(args):
    ca = LinearCode.read(args.code_a) if args.code_a else repetition_code(args.delta)
    cb = LinearCode.read(args.code_b) if args.code_b else parity_check_code(args.delta)
    rng = np.random.default_rng(DEFAULT_SEED if args.seed is None else args.seed)
    if args.p:
        report = check_puncture_resistance(ca, cb, args.w, args.p, sampled=args.sampled, rng=rng)
    else:
        report = check_robustness(ca, cb, args.w, sampled=args.sampled, rng=rng)
    _emit(report.to_dict(), args.out)
    return EXIT_OK if report.holds else EXIT_CHECK_FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='root seed for every random stream')
    common.add_argument('--out', type=Path, default=None, help='output file or directory')
    common.add_argument('--threads', type=int, default=None, help='worker threads')
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    common.add_argument('-q', '--quiet', action='store_true', help='warnings only')

    decoding = argparse.ArgumentParser(add_help=False)
    decoding.add_argument('--epsilon', type=float, default=DecoderConfig.epsilon)
    decoding.add_argument('--no-lookahead', action='store_true', help='disable the stall-breaking lookahead')

    parser = argparse.ArgumentParser(prog='quantum-tanner', description='Quantum Tanner codes and their decoder.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('build', parents=[common], help='construct and export an instance')
    p.add_argument('--group', default=InstanceConfig.group)
    p.add_argument('--gens-a', type=_int_list, default=InstanceConfig.gens_a)
    p.add_argument('--gens-b', type=_int_list, default=InstanceConfig.gens_b)
    p.add_argument('--code-a', default=None, help='dense generator matrix file for C_A')
    p.add_argument('--code-b', default=None, help='dense generator matrix file for C_B')
    p.add_argument('--swap', action='store_true', help='export the role-swapped instance for X-type errors')
    p.add_argument('--conditions', action='store_true', help='report rate, distances and spectra')
    p.set_defaults(func=cmd_build)

    p = sub.add_parser('decode', parents=[common, decoding], help='decode one syndrome')
    p.add_argument('instance', help='exported instance directory')
    p.add_argument('syndrome', help='file of 0/1 characters')
    p.add_argument('--steps', default=None, help='write the step log as JSON lines')
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser('experiment', parents=[common], help='config-driven decoder sweep')
    p.add_argument('config', help='JSON experiment config')
    p.add_argument('--record-timing', action='store_true', help='store per-trial wall times')
    p.add_argument('--strict', action='store_true', help='fail unless every trial decodes to an equivalent error')
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser('bench', parents=[common, decoding], help='decoder runtime scaling')
    p.add_argument('--sizes', type=_int_list, default=DEFAULT_SIZES)
    p.add_argument('--repetitions', type=int, default=MIN_REPETITIONS)
    p.add_argument('--rate', type=float, default=DEFAULT_ERROR_RATE)
    p.add_argument('--max-slope', type=float, default=None, help='fail when the fitted slope exceeds this')
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser('certify', parents=[common], help='robustness of a component pair')
    p.add_argument('--code-a', default=None)
    p.add_argument('--code-b', default=None)
    p.add_argument('--delta', type=int, default=3, help='length of the default repetition / parity pair')
    p.add_argument('--w', type=int, required=True)
    p.add_argument('--p', type=int, default=0, help='puncturing depth')
    p.add_argument('--sampled', action='store_true', help='allow sampling above the enumeration cap')
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    try:
        return args.func(args)
    except (ValueError, OSError, QuantumTannerError) as exc:
        logger.error('%s', exc)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())

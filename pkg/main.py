from setup import setup

setup()

import argparse
import os
import sys

from kivy.logger import Logger

from qdela import DEFAULT_OUT_DIR
from qdela.config import load_config, save_config
from qdela.csvio import SERIES_HEADER, read_dataset, read_records, write_table
from qdela.ela import FEATURE_CODES, GROUP_ORDER, OBJECTIVE_GROUPS, extract_all, parse_selector, selected_codes
from qdela.ela.features import is_feature_code
from qdela.exceptions import ConfigError, InvalidArgumentError, InvalidBudgetError, InvalidProblemError
from qdela.harness import CONFIG_FILE, aggregate, checkpoint_values, compare, run_experiment
from qdela.model import Rng
from qdela.plot import PlotSpec, plot_series
from qdela.problems import objective_problem
from qdela.stats import median_iqr
from qdela.utils import format_float, parse_int

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


def cmd_run(args) -> int:
    config = load_config(args.config)
    os.makedirs(args.out, exist_ok=True)
    save_config(config, os.path.join(args.out, CONFIG_FILE))
    run_experiment(config, args.out)
    return EXIT_OK


def cmd_features(args) -> int:
    groups = parse_selector(args.groups)
    dataset = read_dataset(args.dataset)
    problem = None
    if any(group in OBJECTIVE_GROUPS for group in groups):
        if args.domain is None or args.dim is None:
            raise InvalidArgumentError('the conv and local groups need --domain and --dim')
    if args.domain is not None:
        dim = args.dim if args.dim is not None else dataset.dim
        if dim != dataset.dim:
            raise InvalidArgumentError(f'--dim {dim} does not match the dataset dimension {dataset.dim}')
        problem = objective_problem(args.domain, dim, Rng(args.seed).derive('problem'))
    vector = extract_all(dataset, problem, selector=groups, rng=Rng(args.seed))
    for code in selected_codes(groups):
        feature = vector[code]
        print(f'{code},{format_float(feature.value)},{feature.status}')
    Logger.info(f'Features: {len(vector.values)} values, {vector.evals_used} extra evaluations')
    return EXIT_OK


def _checkpoints(text):
    """'A' or 'A:B'"""
    first, _, second = text.partition(':')
    return parse_int(first), (parse_int(second) if second else None)


def _check_code(code):
    if not is_feature_code(code):
        raise InvalidArgumentError(f'unknown feature code {code!r}, expected one of f1..f{len(FEATURE_CODES)}')


def cmd_compare(args) -> int:
    _check_code(args.feature)
    try:
        at_a, at_b = _checkpoints(args.at)
    except ValueError:
        raise InvalidArgumentError(f'--at expects EVALS or EVALS_A:EVALS_B, got {args.at!r}')
    at_b = at_a if at_b is None else at_b
    records_a, records_b = read_records(args.a), read_records(args.b)
    result = compare(records_a, records_b, args.feature, at_a, at_b)
    median_a = median_iqr(checkpoint_values(records_a, args.feature, at_a))[0]
    median_b = median_iqr(checkpoint_values(records_b, args.feature, at_b))[0]
    print(','.join([args.feature, format_float(result.u_statistic), format_float(result.p_value),
                    str(result.n_a), str(result.n_b), format_float(median_a), format_float(median_b)]))
    Logger.info(f'Compare: {result.method} test, {result.excluded} undefined values excluded')
    return EXIT_OK


def _series_label(path, used):
    label = os.path.basename(os.path.dirname(os.path.abspath(path))) or path
    return path if label in used else label


def cmd_plot(args) -> int:
    _check_code(args.feature)
    spec = PlotSpec(feature_code=args.feature, marker=args.marker)
    rows = []
    for path in args.inputs:
        label = _series_label(path, {name for name, _ in spec.series})
        series = aggregate(read_records(path), args.feature)
        spec.series.append((label, series))
        rows.extend((label, *row) for row in series)
    plot_series(spec, args.out)
    data_path = os.path.splitext(args.out)[0] + '.csv'
    write_table(data_path, SERIES_HEADER, rows)
    Logger.info(f'Plot: data written to {data_path}')
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='qdela',
        description='Quality-diversity runs and landscape features of their elite archives',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run an experiment from a configuration file')
    run.add_argument('--config', required=True, help='experiment configuration (INI)')
    run.add_argument('--out', default=DEFAULT_OUT_DIR, help='output directory')
    run.set_defaults(func=cmd_run)

    features = commands.add_parser('features', help='landscape features of a dataset file')
    features.add_argument('--dataset', required=True, help='dataset CSV')
    features.add_argument('--groups', default=','.join(GROUP_ORDER),
                          help=f'comma separated groups out of {",".join(GROUP_ORDER)}')
    features.add_argument('--seed', type=int, default=0)
    features.add_argument('--domain', help='objective for the conv and local groups')
    features.add_argument('--dim', type=int, help='genotype dimension of --domain')
    features.set_defaults(func=cmd_features)

    compare_ = commands.add_parser('compare', help='Mann-Whitney test of a feature between two record files')
    compare_.add_argument('--a', required=True, help='records CSV')
    compare_.add_argument('--b', required=True, help='records CSV')
    compare_.add_argument('--feature', required=True, help='feature code, f1..f37')
    compare_.add_argument('--at', required=True, help='checkpoint EVALS, or EVALS_A:EVALS_B')
    compare_.set_defaults(func=cmd_compare)

    plot = commands.add_parser('plot', help='SVG trajectory of a feature')
    plot.add_argument('--in', dest='inputs', nargs='+', required=True, help='records CSV files')
    plot.add_argument('--feature', required=True, help='feature code, f1..f37')
    plot.add_argument('--out', required=True, help='SVG file; the plotted numbers go next to it as CSV')
    plot.add_argument('--marker', type=int, help='evaluation count of the dashed marker line')
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    setup(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ConfigError, InvalidArgumentError, InvalidProblemError, InvalidBudgetError) as exc:
        Logger.error(f'{args.command}: {exc}')
        return EXIT_USAGE
    except OSError as exc:
        Logger.error(f'{args.command}: {exc}')
        return EXIT_IO


if __name__ == '__main__':
    sys.exit(main())

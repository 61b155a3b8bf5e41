"""
Experiment orchestration: replicate runs of a sampler on one problem, landscape
features at every checkpoint, and the persisted tables they produce.
"""

import os
import shutil
import time
from dataclasses import dataclass
from itertools import count
from typing import List, Optional, Tuple

from kivy.logger import Logger

from . import (DEFAULT_BATCH, DEFAULT_BUDGET, DEFAULT_RUNS, DEFAULT_BASE_SEED,
               DEFAULT_GAUSSIAN_SIGMA, DEFAULT_ISOLINE_SIGMA1, DEFAULT_ISOLINE_SIGMA2,
               DEFAULT_CONV_PAIRS, DEFAULT_LOCAL_MAX_EVALS, DEFAULT_LEVEL_FOLDS, SAMPLERS,
               THREADS_ENV)
from .archive import Centroids, compute_centroids
from .csvio import (ARCHIVE_STATS_HEADER, RECORDS_HEADER, TIMINGS_HEADER, CsvAppender,
                    read_records, read_table, record_row, sort_records, write_dataset,
                    write_records, write_table)
from .ela import GROUP_ORDER, ElaBudget, extract_all, parse_selector, selected_codes
from .exceptions import ConfigError, InvalidArgumentError
from .map_elites import check_schedule, iter_map_elites
from .model import Dataset, Rng, RunRecord
from .problems import DOMAINS, Problem, make_problem
from .sampling import lhs_sample
from .stats import TestResult, mann_whitney_u, median_iqr
from .variation import OperatorConfig
from .utils import format_seconds

RECORDS_FILE = 'records.csv'
ARCHIVE_STATS_FILE = 'archive_stats.csv'
TIMINGS_FILE = 'timings.csv'
CONFIG_FILE = 'config.ini'
DATASETS_DIR = 'datasets'
STAGING_DIR = '.staging'


def default_checkpoints(batch: int, budget: int, archive_size: int) -> Tuple[int, ...]:
    """
    batch x {1, 2, 5} x 10^e up to budget, plus archive_size when it lies on
    the batch grid, plus budget
    """
    ladder = {budget}
    for exponent in count():
        step = batch * 10 ** exponent
        if step > budget:
            break
        ladder.update(v for v in (step, 2 * step, 5 * step) if v <= budget)
    if batch <= archive_size <= budget and archive_size % batch == 0:
        ladder.add(archive_size)
    return tuple(sorted(ladder))


@dataclass(frozen=True)
class ExperimentConfig:
    domain: str
    behaviour: str
    dim: int
    archive_size: int
    sampler: str
    budget: int = DEFAULT_BUDGET
    batch: int = DEFAULT_BATCH
    runs: int = DEFAULT_RUNS
    base_seed: int = DEFAULT_BASE_SEED
    checkpoints: Tuple[int, ...] = ()
    selector: Tuple[str, ...] = GROUP_ORDER
    save_datasets: bool = False
    gaussian_sigma: float = DEFAULT_GAUSSIAN_SIGMA
    isoline_sigma1: float = DEFAULT_ISOLINE_SIGMA1
    isoline_sigma2: float = DEFAULT_ISOLINE_SIGMA2
    conv_pairs: int = DEFAULT_CONV_PAIRS
    local_starts: Optional[int] = None
    local_max_evals: int = DEFAULT_LOCAL_MAX_EVALS
    level_folds: int = DEFAULT_LEVEL_FOLDS

    def __post_init__(self):
        """
        Validates every field and materialises the defaults that depend on
        other fields (checkpoint ladder, local_starts). Raises ConfigError
        naming the offending key.
        """
        if self.domain not in DOMAINS:
            raise ConfigError(f'unknown domain {self.domain!r}', key='domain')
        if self.behaviour not in DOMAINS[self.domain].behaviours:
            raise ConfigError(f'behaviour {self.behaviour!r} does not apply to {self.domain!r}',
                              key='behaviour')
        if self.sampler not in SAMPLERS:
            raise ConfigError(f'unknown sampler {self.sampler!r}', key='sampler')
        for key in ('dim', 'archive_size', 'budget', 'batch', 'runs'):
            if int(getattr(self, key)) < 1:
                raise ConfigError(f'{key} must be positive', key=key)
        if self.behaviour == 'subset' and self.dim < 2:
            raise ConfigError('the subset behaviour needs at least two dimensions', key='dim')
        if self.base_seed < 0:
            raise ConfigError('base_seed must not be negative', key='base_seed')
        try:
            object.__setattr__(self, 'selector', parse_selector(self.selector))
        except InvalidArgumentError as exc:
            raise ConfigError(str(exc), key='selector')
        try:
            budget = ElaBudget(self.conv_pairs, self.local_starts, self.local_max_evals, self.level_folds)
        except ValueError as exc:
            raise ConfigError(str(exc), key=str(exc).split(' ', 1)[0])
        object.__setattr__(self, 'local_starts', budget.starts_for(self.dim))
        for key in ('gaussian_sigma', 'isoline_sigma1', 'isoline_sigma2'):
            if not getattr(self, key) >= 0:
                raise ConfigError(f'{key} must not be negative', key=key)
        if self.is_qd:
            checkpoints = self.checkpoints or default_checkpoints(self.batch, self.budget, self.archive_size)
            try:
                checkpoints = tuple(check_schedule(self.budget, self.batch, checkpoints))
            except InvalidArgumentError as exc:
                key = 'budget' if 'budget' in str(exc) else 'checkpoints'
                raise ConfigError(str(exc), key=key)
            object.__setattr__(self, 'checkpoints', checkpoints)
        else:
            object.__setattr__(self, 'checkpoints', tuple(int(c) for c in self.checkpoints))

    @property
    def is_qd(self) -> bool:
        return self.sampler != 'lhs'

    def operator(self) -> OperatorConfig:
        return OperatorConfig.for_sampler(self.sampler, sigma=self.gaussian_sigma,
                                          sigma1=self.isoline_sigma1, sigma2=self.isoline_sigma2)

    def ela_budget(self) -> ElaBudget:
        return ElaBudget(self.conv_pairs, self.local_starts, self.local_max_evals, self.level_folds)

    def eval_counts(self) -> Tuple[int, ...]:
        """Evaluation counts that get records: the checkpoints, or archive_size for lhs"""
        return self.checkpoints if self.is_qd else (self.archive_size,)


class ExperimentRunner(object):

    def __init__(self, config: ExperimentConfig, out_dir, **kwargs):
        """
        Runs every replicate of an experiment one after the other.

        out_dir -- directory receiving records.csv, archive_stats.csv,
                   timings.csv and, with save_datasets, datasets/
        """
        self.config = config
        self.out_dir = str(out_dir)
        self.staging_dir = os.path.join(self.out_dir, STAGING_DIR)
        self.root_rng = Rng(config.base_seed)
        self.codes = selected_codes(config.selector)
        self.problem: Problem = make_problem(config.domain, config.behaviour, config.dim,
                                             self.root_rng.derive('problem'))
        self._centroids: Optional[Centroids] = None
        self._finished_runs = 0

    @property
    def centroids(self) -> Centroids:
        """Shared by all runs of the configuration"""
        if self._centroids is None:
            self._centroids = compute_centroids(self.config.archive_size, self.root_rng.derive('cvt'))
        return self._centroids

    def run(self) -> List[RunRecord]:
        start_time = time.time()
        self._prepare()
        Logger.info(f'Experiment: {self.config.runs} runs of {self.config.sampler} on '
                    f'{self.config.domain}/{self.config.behaviour} d={self.config.dim}')
        self._run_all()
        records = self._merge()
        Logger.info(f'Experiment: finished in {format_seconds(time.time() - start_time)}')
        return records

    def _run_all(self):
        for run_id in range(self.config.runs):
            self.run_single(run_id)

    def _prepare(self):
        os.makedirs(self.out_dir, exist_ok=True)
        shutil.rmtree(self.staging_dir, ignore_errors=True)
        os.makedirs(self.staging_dir)
        if self.config.save_datasets:
            os.makedirs(os.path.join(self.out_dir, DATASETS_DIR), exist_ok=True)
        if self.config.is_qd:
            # built here so worker threads share a finished tessellation
            self.centroids

    def _staging(self, run_id, name):
        return os.path.join(self.staging_dir, f'run{run_id}.{name}')

    def _check_stop(self):
        pass

    def _on_checkpoint(self, run_id, eval_count):
        Logger.debug(f'Experiment: run {run_id}: {eval_count}/{self.config.eval_counts()[-1]} evaluations')

    def _on_run_finished(self, run_id):
        self._finished_runs += 1
        Logger.info(f'Experiment: run {run_id} finished ({self._finished_runs}/{self.config.runs})')

    def run_single(self, run_id: int):
        """Runs one replicate and appends its tables to the staging files"""
        rng = self.root_rng.derive(f'run{run_id}')
        cfg = self.config
        with CsvAppender(self._staging(run_id, RECORDS_FILE), RECORDS_HEADER) as records, \
                CsvAppender(self._staging(run_id, ARCHIVE_STATS_FILE), ARCHIVE_STATS_HEADER) as stats, \
                CsvAppender(self._staging(run_id, TIMINGS_FILE), TIMINGS_HEADER) as timings:
            if not cfg.is_qd:
                self._check_stop()
                X = lhs_sample(cfg.archive_size, self.problem.bounds, rng.derive('lhs'))
                fitness, behaviours = self.problem.evaluate(X)
                dataset = Dataset(X, fitness, behaviours)
                self._checkpoint(run_id, cfg.archive_size, dataset, rng, records, timings)
            else:
                snapshots = iter_map_elites(self.problem, self.centroids, cfg.operator(), cfg.budget,
                                            cfg.batch, cfg.checkpoints, rng)
                for eval_count, archive in snapshots:
                    self._check_stop()
                    summary = archive.stats()
                    stats.append([[run_id, eval_count] + [summary[k] for k in ARCHIVE_STATS_HEADER[2:]]])
                    self._checkpoint(run_id, eval_count, archive.to_dataset(), rng, records, timings)
        self._on_run_finished(run_id)

    def _checkpoint(self, run_id, eval_count, dataset, rng, records, timings):
        if self.config.save_datasets:
            write_dataset(os.path.join(self.out_dir, DATASETS_DIR, f'run{run_id}_eval{eval_count}.csv'),
                          dataset)
        vector = extract_all(dataset, self.problem, self.config.ela_budget(), self.config.selector,
                             rng.derive(f'ela{eval_count}'))
        rows = []
        for code in self.codes:
            feature = vector[code]
            rows.append(record_row(RunRecord(run_id, eval_count, code, feature.value, feature.status)))
        records.append(rows)
        timings.append([[run_id, eval_count, group, seconds] for group, seconds in vector.timings.items()])
        self._on_checkpoint(run_id, eval_count)

    def _merge(self) -> List[RunRecord]:
        """Joins the staging files into the final tables in (run, eval_count, code) order"""
        records, stats, timings = [], [], []
        for run_id in range(self.config.runs):
            records.extend(read_records(self._staging(run_id, RECORDS_FILE)))
            stats.extend(read_table(self._staging(run_id, ARCHIVE_STATS_FILE)))
            timings.extend(read_table(self._staging(run_id, TIMINGS_FILE)))
        records = sort_records(records)
        write_records(os.path.join(self.out_dir, RECORDS_FILE), records)
        write_table(os.path.join(self.out_dir, ARCHIVE_STATS_FILE), ARCHIVE_STATS_HEADER,
                    sorted(stats, key=lambda row: (int(row[0]), int(row[1]))))
        write_table(os.path.join(self.out_dir, TIMINGS_FILE), TIMINGS_HEADER,
                    sorted(timings, key=lambda row: (int(row[0]), int(row[1]), GROUP_ORDER.index(row[2]))))
        shutil.rmtree(self.staging_dir, ignore_errors=True)
        Logger.info(f'Experiment: {len(records)} records written to {self.out_dir}')
        return records


def resolve_threads(threads: Optional[int] = None) -> int:
    """Explicit value, else QDELA_THREADS, else the machine's CPU count"""
    if threads is None:
        env = os.environ.get(THREADS_ENV, '').strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(int(threads), 1)


def run_experiment(cfg: ExperimentConfig, out_dir, threads: Optional[int] = None) -> List[RunRecord]:
    """Runs all replicates, in parallel when more than one thread is allowed"""
    threads = min(resolve_threads(threads), cfg.runs)
    if threads == 1:
        runner = ExperimentRunner(cfg, out_dir)
    else:
        from .harness_threaded import ExperimentRunnerThreaded
        runner = ExperimentRunnerThreaded(cfg, out_dir, threads=threads)
    return runner.run()


def aggregate(records, code: str) -> List[Tuple[int, Optional[float], Optional[float], Optional[float]]]:
    """(eval_count, median, q1, q3) per checkpoint over runs, sorted by eval_count"""
    by_eval = {}
    for record in records:
        if record.feature_code == code:
            by_eval.setdefault(record.eval_count, []).append(record.value)
    if not by_eval:
        raise InvalidArgumentError(f'no records for feature {code}')
    return [(eval_count, *median_iqr(by_eval[eval_count])) for eval_count in sorted(by_eval)]


def checkpoint_values(records, code: str, eval_count: int) -> List[Optional[float]]:
    """Per-run values (None when undefined) in run order"""
    selected = sorted((r for r in records if r.feature_code == code and r.eval_count == eval_count),
                      key=lambda r: r.run_id)
    if not selected:
        raise InvalidArgumentError(f'no records for feature {code} at {eval_count} evaluations')
    return [r.value for r in selected]


def compare(records_a, records_b, code: str, eval_count: int,
            eval_count_b: Optional[int] = None) -> TestResult:
    """
    Mann-Whitney test of one feature between two record sets at a checkpoint.
    eval_count_b picks a different checkpoint for the second set.
    """
    values_a = checkpoint_values(records_a, code, eval_count)
    values_b = checkpoint_values(records_b, code, eval_count if eval_count_b is None else eval_count_b)
    return mann_whitney_u(values_a, values_b)

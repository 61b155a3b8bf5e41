import numpy as np
import pytest

from conftest import write_text
from main import main
from qdela.csvio import read_records, read_table, write_dataset, write_records
from qdela.harness import aggregate
from qdela.utils import format_float
from qdela.model import Dataset, RunRecord

CONFIG = """\
[experiment]
domain = sphere
behaviour = subset
dim = 2
archive_size = 20
sampler = qd-isolinedd
budget = 200
batch = 100
runs = 2
selector = distr, nbc
"""


def _output_lines(capsys):
    return [line for line in capsys.readouterr().out.splitlines() if line.startswith('f')]


def _records_file(path, values, eval_count=100, code='f5'):
    records = [RunRecord(run_id, eval_count, code, value, 'ok') for run_id, value in enumerate(values)]
    write_records(path, records)
    return path


@pytest.fixture
def dataset_file(tmp_path):
    X = np.random.default_rng(0).uniform(-5, 5, (60, 2))
    path = tmp_path / 'linear.csv'
    write_dataset(path, Dataset(X, 2 * X[:, 0] + 3 * X[:, 1] + 1))
    return path


def test_features_distr(dataset_file, capsys):
    assert main(['features', '--dataset', str(dataset_file), '--groups', 'distr']) == 0
    lines = _output_lines(capsys)
    assert [line.split(',')[0] for line in lines] == ['f5', 'f6', 'f7']
    assert all(line.endswith(',ok') for line in lines)


def test_features_meta_on_linear_data(dataset_file, capsys):
    assert main(['--silent', 'features', '--dataset', str(dataset_file), '--groups', 'meta']) == 0
    values = dict(line.split(',')[:2] for line in _output_lines(capsys))
    assert float(values['f24']) == pytest.approx(1, abs=1e-9)


def test_features_with_objective(dataset_file, capsys):
    argv = ['features', '--dataset', str(dataset_file), '--groups', 'conv', '--domain', 'sphere', '--dim', '2']
    assert main(argv) == 0
    assert len(_output_lines(capsys)) == 4


@pytest.mark.parametrize('extra', [
    ['--groups', 'conv'],
    ['--groups', 'conv', '--domain', 'sphere', '--dim', '3'],
    ['--groups', 'local', '--domain', 'ackley', '--dim', '2'],
    ['--groups', 'shape'],
])
def test_features_usage_errors(dataset_file, extra):
    assert main(['features', '--dataset', str(dataset_file)] + extra) == 2


def test_features_missing_file(tmp_path):
    assert main(['features', '--dataset', str(tmp_path / 'none.csv')]) == 3


def test_compare_with_itself(tmp_path, capsys):
    path = str(_records_file(tmp_path / 'a.csv', [1.0, 2.0, 3.0]))
    assert main(['compare', '--a', path, '--b', path, '--feature', 'f5', '--at', '100']) == 0
    fields = _output_lines(capsys)[0].split(',')
    assert fields[0] == 'f5'
    assert float(fields[2]) == 1
    assert fields[3:] == ['3', '3', '2', '2']


def test_compare_disjoint(tmp_path, capsys):
    a = str(_records_file(tmp_path / 'a.csv', [1.0, 2.0, 3.0], eval_count=100_000))
    b = str(_records_file(tmp_path / 'b.csv', [4.0, 5.0, 6.0], eval_count=1000))
    assert main(['compare', '--a', a, '--b', b, '--feature', 'f5', '--at', '1e5:1000']) == 0
    fields = _output_lines(capsys)[0].split(',')
    assert float(fields[1]) == 0
    assert float(fields[2]) == pytest.approx(0.1)


@pytest.mark.parametrize('feature, at', [('f99', '100'), ('f5', '500'), ('f6', '100'), ('f5', 'soon')])
def test_compare_usage_errors(tmp_path, feature, at):
    path = str(_records_file(tmp_path / 'a.csv', [1.0, 2.0, 3.0]))
    assert main(['compare', '--a', path, '--b', path, '--feature', feature, '--at', at]) == 2


def test_plot(tmp_path):
    qd = _records_file(write_text(tmp_path / 'qd' / 'records.csv', ''), [1.0, 2.0, 3.0])
    lhs = _records_file(write_text(tmp_path / 'lhs' / 'records.csv', ''), [0.5])
    out = tmp_path / 'f5.svg'
    assert main(['plot', '--in', str(qd), str(lhs), '--feature', 'f5', '--out', str(out),
                 '--marker', '10000']) == 0
    assert out.read_text().lstrip().startswith('<?xml')
    assert (tmp_path / 'f5.csv').read_text().splitlines() == [
        'series,eval_count,median,q1,q3',
        'qd,100,2,1.5,2.5',
        'lhs,100,0.5,0.5,0.5',
    ]


def test_plot_data_is_labelled_aggregate(tmp_path):
    qd = _records_file(write_text(tmp_path / 'qd' / 'records.csv', ''), [1.0, 2.0, 3.0, 7.0])
    out = tmp_path / 'plots' / 'f5.svg'
    out.parent.mkdir()
    assert main(['plot', '--in', str(qd), '--feature', 'f5', '--out', str(out)]) == 0
    rows = read_table(tmp_path / 'plots' / 'f5.csv')
    expected = [[format_float(v) if isinstance(v, float) else str(v) for v in row]
                for row in aggregate(read_records(qd), 'f5')]
    assert [row[0] for row in rows] == ['qd'] * len(expected)
    assert [row[1:] for row in rows] == expected


def test_plot_without_values(tmp_path):
    path = tmp_path / 'a.csv'
    write_records(path, [RunRecord(0, 100, 'f8', None, 'insufficient-samples')])
    assert main(['plot', '--in', str(path), '--feature', 'f8', '--out', str(tmp_path / 'f8.svg')]) == 2


def test_run(tmp_path):
    config = write_text(tmp_path / 'experiment.ini', CONFIG)
    assert main(['run', '--config', str(config), '--out', str(tmp_path / 'a')]) == 0
    assert main(['run', '--config', str(config), '--out', str(tmp_path / 'b')]) == 0
    records = (tmp_path / 'a' / 'records.csv').read_bytes()
    assert records == (tmp_path / 'b' / 'records.csv').read_bytes()
    assert len(records.splitlines()) == 1 + 2 * 2 * 8
    resolved = (tmp_path / 'a' / 'config.ini').read_text()
    assert 'checkpoints = 100, 200' in resolved
    assert 'conv_pairs = 1000' in resolved


def test_run_errors(tmp_path):
    bad = write_text(tmp_path / 'bad.ini', CONFIG + 'colour = red\n')
    assert main(['run', '--config', str(bad), '--out', str(tmp_path / 'out')]) == 2
    assert main(['run', '--config', str(tmp_path / 'missing.ini')]) == 3


def test_usage():
    assert main([]) == 2
    assert main(['draw']) == 2

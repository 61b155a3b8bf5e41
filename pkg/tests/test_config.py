import pytest

from conftest import write_text
from qdela import DEFAULT_BUDGET, DEFAULT_RUNS
from qdela.config import load_config, save_config
from qdela.exceptions import ConfigError
from qdela.harness import ExperimentConfig

MINIMAL = """\
[experiment]
domain = sphere
behaviour = subset
dim = 8
archive_size = 1000
sampler = qd-isolinedd
"""


def test_minimal_config(tmp_path):
    config = load_config(write_text(tmp_path / 'a.ini', MINIMAL))
    assert config.dim == 8
    assert config.budget == DEFAULT_BUDGET
    assert config.runs == DEFAULT_RUNS
    assert config.local_starts == 400
    assert config.checkpoints[0] == 100 and config.checkpoints[-1] == DEFAULT_BUDGET
    assert 1000 in config.checkpoints
    assert config.selector == ('distr', 'level', 'meta', 'conv', 'local', 'nbc')


def test_all_sections(tmp_path):
    text = MINIMAL + """\
budget = 1e4
batch = 50
runs = 3
checkpoints = 1000, 50, 10000
selector = nbc, distr
save_datasets = yes

[operator]
isoline_sigma2 = 0.5

[ela]
local_starts =
level_folds = 5
"""
    config = load_config(write_text(tmp_path / 'a.ini', text))
    assert config.budget == 10_000
    assert config.checkpoints == (50, 1000, 10_000)
    assert config.selector == ('distr', 'nbc')
    assert config.save_datasets is True
    assert config.operator().kind == 'isolinedd'
    assert config.operator().sigma2 == 0.5
    assert config.ela_budget().level_folds == 5


@pytest.mark.parametrize('extra, lineno', [
    ('colour = red\n', 7),
    ('dim = 8\n', 7),
    ('runs = many\n', 7),
    ('budget = 150\n', 7),
    ('checkpoints = 250\nbudget = 1000\n', 7),
    ('\n[output]\npath = x\n', 8),
])
def test_errors_carry_line(tmp_path, extra, lineno):
    with pytest.raises(ConfigError) as info:
        load_config(write_text(tmp_path / 'a.ini', MINIMAL + extra))
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f'line {lineno}:')


@pytest.mark.parametrize('text, lineno', [
    ('[DEFAULT]\nfoo = 1\n\n' + MINIMAL, 1),
    (MINIMAL + '\n[DEFAULT]\nfoo = 1\n', 8),
    (MINIMAL + '\n[DEFAULT]\n', 8),
])
def test_default_section_rejected(tmp_path, text, lineno):
    with pytest.raises(ConfigError, match=r'\[DEFAULT\]') as info:
        load_config(write_text(tmp_path / 'a.ini', text))
    assert info.value.lineno == lineno


def test_invalid_pair_reports_key_line(tmp_path):
    text = MINIMAL.replace('behaviour = subset', 'behaviour = arm')
    with pytest.raises(ConfigError) as info:
        load_config(write_text(tmp_path / 'a.ini', text))
    assert info.value.key == 'behaviour'
    assert info.value.lineno == 3


def test_missing_required_key(tmp_path):
    with pytest.raises(ConfigError, match='sampler'):
        load_config(write_text(tmp_path / 'a.ini', MINIMAL.replace('sampler = qd-isolinedd\n', '')))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / 'missing.ini')


def test_save_round_trip(tmp_path):
    config = load_config(write_text(tmp_path / 'a.ini', MINIMAL + 'budget = 1000\nruns = 2\n'))
    save_config(config, tmp_path / 'resolved.ini')
    again = load_config(tmp_path / 'resolved.ini')
    assert again == config
    save_config(again, tmp_path / 'resolved2.ini')
    assert (tmp_path / 'resolved.ini').read_bytes() == (tmp_path / 'resolved2.ini').read_bytes()
    assert 'local_starts = 400' in (tmp_path / 'resolved.ini').read_text()


def test_lhs_keeps_no_ladder():
    config = ExperimentConfig('rastrigin', 'sine', 4, 100, 'lhs')
    assert config.checkpoints == ()
    assert config.eval_counts() == (100,)

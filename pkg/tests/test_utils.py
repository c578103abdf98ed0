import os
import logging

from pdcomplex import utils


CONFIG_DIR = os.path.join('scripts', 'config')
CONFIG_FILE = 'pdc_config.yaml'


def test_obj_io(tmp_path):
    obj = {'ranks': [1, 1, 1, 1], 'name': 'L(5,2)'}
    path = str(tmp_path / 'nested' / 'tmp.dill')
    utils.dump_obj(obj, path)
    assert os.path.isfile(path)

    obj_loaded = utils.load_obj(path)
    assert obj_loaded == obj


def test_full_path():
    path = utils.get_full_path(CONFIG_DIR, CONFIG_FILE)
    assert os.path.isabs(path)
    assert path.endswith(os.path.join('scripts', 'config', 'pdc_config.yaml'))
    assert utils.get_full_path('/tmp', 'x.json') == os.path.join('/tmp',
                                                                 'x.json')


def test_parse_config():
    cfg_path = utils.get_full_path(CONFIG_DIR, CONFIG_FILE)
    cfg = utils.parse_config(cfg_path)
    assert set(cfg) == {'cli', 'commands'}


def test_parse_config_with_sections():
    cfg_path = utils.get_full_path(CONFIG_DIR, CONFIG_FILE)
    cfg = utils.parse_config(cfg_path, 'cli')
    assert cfg['bound_group_order'] == 24
    assert cfg['bound_rank'] == 512


def test_logger_init(tmp_path):
    logger = utils.create_logger(str(tmp_path / 'logs' / 'pdc.log'),
                                 '%(asctime)s %(levelname)s %(message)s',
                                 '%Y-%m-%d %H:%M:%S',
                                 'INFO')
    assert isinstance(logger, logging.Logger)
    assert os.path.isdir(tmp_path / 'logs')


def test_json_io(tmp_path):
    data = {'b': [1, 2], 'a': {'y': None, 'x': 'text'}}
    path = str(tmp_path / 'doc.json')
    utils.write_json(data, path)
    with open(path, 'rb') as fp:
        assert fp.read() == b'{"a":{"x":"text","y":null},"b":[1,2]}\n'
    assert data == utils.read_json(path)


def test_canonical_bytes_ignore_key_order():
    first = utils.canonical_bytes({'x': 1, 'y': [2, 3]})
    second = utils.canonical_bytes({'y': [2, 3], 'x': 1})
    assert first == second
    assert utils.digest(first) == utils.digest(second)
    assert len(utils.digest(first)) == 64


def test_logger_reinit_replaces_handlers(tmp_path):
    for run in ('first', 'second'):
        logger = utils.create_logger(str(tmp_path / run / 'pdc.log'),
                                     '%(message)s', '%H:%M:%S', 'INFO')
    logger.info('second run')
    assert 'second run' in (tmp_path / 'second' / 'pdc.log').read_text()
    assert 'second run' not in (tmp_path / 'first' / 'pdc.log').read_text()

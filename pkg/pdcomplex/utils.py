import os
import json
import hashlib
import dill
import yaml
from logging import Logger, basicConfig, getLogger
from typing import Dict, Any


DIR_PATH = os.path.dirname(__file__)
ROOT_PATH = os.path.abspath(os.path.join(DIR_PATH, '..'))
BAR_FORMAT = '{desc:<20} {percentage:3.0f}%|{bar:20}{r_bar}'


def get_full_path(dirname_or_filename: str, filename: str = None) -> str:
    if os.path.isabs(dirname_or_filename):
        return os.path.join(dirname_or_filename, filename or '')\
            if filename else dirname_or_filename
    path_norm = os.path.normpath(dirname_or_filename)
    path_tokens = path_norm.split(os.sep)
    if not filename:
        return os.path.join(ROOT_PATH, *path_tokens)
    return os.path.join(ROOT_PATH, *path_tokens, filename)


def dump_obj(obj: Any, path: str, mode: str = 'wb') -> None:
    if not os.path.exists(path):
        os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, mode) as output_file:
        dill.dump(obj, output_file)


def load_obj(path: str, mode: str = 'rb') -> Any:
    with open(path, mode) as input_file:
        return dill.load(input_file)


def canonical_bytes(obj: Dict[str, Any]) -> bytes:
    """
    Canonical encoding of a JSON document: sorted keys, no whitespace and
    a trailing newline. Two documents are equal iff their encodings are.
    """
    text = json.dumps(obj, sort_keys=True, separators=(',', ':')) + '\n'
    return text.encode('utf-8')


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_json(obj: Dict[Any, Any], path: str) -> None:
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, 'wb') as fp:
        fp.write(canonical_bytes(obj))


def read_json(path: str) -> Dict[Any, Any]:
    """Raises json.JSONDecodeError with line and column on broken input."""
    with open(path, 'rb') as fp:
        return json.loads(fp.read().decode('utf-8'))


def parse_config(path: str, *sections: str) -> Dict[str, Any]:
    with open(path, 'r') as config:
        parsed_config = yaml.safe_load(config)
    for section in sections:
        parsed_config = parsed_config[section]
    return parsed_config


def create_logger(filename: str, msg_format: str, dt_format: str, level: str)\
        -> Logger:
    full_path = get_full_path(filename)
    os.makedirs(os.path.dirname(full_path), exist_ok=True)
    basicConfig(filename=full_path, format=msg_format, datefmt=dt_format,
                level=level, force=True)
    return getLogger('pdcomplex')

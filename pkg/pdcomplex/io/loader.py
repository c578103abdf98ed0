"""
Module contains loaders of complex documents from files and directories.
"""
import os
from abc import ABCMeta, abstractmethod
from collections.abc import Iterable
from logging import getLogger
from typing import Any, Dict, List, Union
from pdcomplex.core.chain import find_diagonal
from pdcomplex.core.errors import DocumentError
from pdcomplex.duality.poincare import PDChainComplex
from pdcomplex.io.document import ComplexDocument, loads
from pdcomplex.utils import digest, dump_obj, load_obj


logger = getLogger(__name__)

DOCUMENT_EXTENSION = '.json'


class AbstractDocumentLoader(metaclass=ABCMeta):
    def __init__(self, path: Union[str, Iterable]):
        if isinstance(path, str):
            if os.path.isdir(path):
                self._path = sorted(
                    os.path.join(path, file) for file in os.listdir(path)
                    if file.endswith(DOCUMENT_EXTENSION))
            elif os.path.exists(path):
                self._path = [path]
            else:
                raise DocumentError(f'Path {path} does not exist')
        elif isinstance(path, Iterable):
            missing = [p for p in path if not os.path.isfile(p)]
            if missing:
                fmt_paths = ', '.join(missing)
                raise DocumentError(f'These files do not exist: {fmt_paths}')
            self._path = list(path)
        else:
            raise TypeError(f'Unsupported path {path!r}')
        self.digests: Dict[str, str] = {}

    @property
    def paths(self) -> List[str]:
        return list(self._path)

    @abstractmethod
    def load_data(self, **kwargs) -> Any:
        pass


class JSONDocumentLoader(AbstractDocumentLoader):
    """
    Reads documents in the JSON document format. Parsed documents are
    cached with dill under cache_dir, keyed by the digest of the file
    bytes, so that a corpus is parsed (and its diagonals checked) once.
    """
    def __init__(self, path: Union[str, Iterable], cache_dir: str = None):
        super().__init__(path)
        self._cache_dir = cache_dir

    def _cache_path(self, key: str) -> str:
        return os.path.join(self._cache_dir, f'{key}.dill')

    def load_file(self, path: str) -> ComplexDocument:
        with open(path, 'rb') as fp:
            raw = fp.read()
        key = digest(raw)
        self.digests[path] = key
        if self._cache_dir and os.path.exists(self._cache_path(key)):
            logger.debug('Document %s loaded from cache', path)
            return load_obj(self._cache_path(key))
        try:
            doc = loads(raw.decode('utf-8'))
        except UnicodeDecodeError as err:
            raise DocumentError(f'{path} is not UTF-8 text') from err
        except DocumentError as err:
            raise DocumentError(f'{os.path.basename(path)}: {err}',
                                err.path) from err
        if self._cache_dir:
            dump_obj(doc, self._cache_path(key))
        return doc

    def load_data(self) -> List[ComplexDocument]:
        return [self.load_file(p) for p in self._path]


def load_document(path: str, cache_dir: str = None) -> ComplexDocument:
    docs = JSONDocumentLoader(path, cache_dir).load_data()
    if len(docs) != 1:
        raise DocumentError(f'{path} holds {len(docs)} documents, expected 1')
    return docs[0]


def pd_complex(doc: ComplexDocument, max_rank: int = None) -> PDChainComplex:
    """
    The PD-chain complex of a document. A missing diagonal is searched
    for within max_rank; a complex without one is rejected.
    """
    X = doc.pd_complex()
    if X.diagonal is None:
        logger.info('Searching a diagonal for %s', doc.name)
        X.diagonal = find_diagonal(X.complex, max_rank)
        if X.diagonal is None:
            raise DocumentError(f'No diagonal found for {doc.name}',
                                ['diagonal'])
    return X

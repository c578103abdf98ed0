"""
Exceptions shared by the library and mapped to exit codes by the CLI.

Negative mathematical answers (no homotopy, not isomorphic, not a PD
complex) are never raised: they are returned as values.
"""
from typing import Sequence, Union


class DocumentError(ValueError):
    """Malformed or inconsistent input document (exit code 2)."""
    def __init__(self, message: str,
                 path: Sequence[Union[str, int]] = ()):
        self.path = tuple(path)
        location = '/'.join(str(p) for p in self.path)
        super().__init__(f'{location}: {message}' if location else message)


class ResourceBoundError(RuntimeError):
    """A configured bound was hit before an answer was reached (exit 3)."""


class EnumerationBoundError(ResourceBoundError):
    pass


class PeifferCollectionError(ResourceBoundError):
    """Presentation outside the range where Peiffer collection is certified."""


class UndecidedError(ResourceBoundError):
    """The available chain data cannot decide the question."""


def check_bound(value: int, bound: int, what: str) -> None:
    if bound is not None and value > bound:
        raise ResourceBoundError(f'{what} {value} exceeds the configured'
                                 f' bound {bound}')

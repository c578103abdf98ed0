import os
from dataclasses import dataclass, field
from importlib import import_module
from typing import Any, Callable, Dict, List, Sequence, Tuple
from pdcomplex.core.errors import (DocumentError, ResourceBoundError,
                                   check_bound)
from pdcomplex.duality.poincare import PDChainComplex
from pdcomplex.io.document import ComplexDocument
from pdcomplex.io.loader import JSONDocumentLoader, pd_complex
from pdcomplex.io.report import (EXIT_INPUT_ERROR, EXIT_RESOURCE_BOUND,
                                 RunReport)
from pdcomplex.utils import create_logger


@dataclass
class RunContext:
    """Bounds and output options shared by all commands of one run."""
    bound_group_order: int = 24
    bound_rank: int = 512
    bound_isomorphisms: int = None
    form_bound: int = 2
    resolution: str = 'killing'
    witnesses: bool = False
    progress: bool = False
    cache_dir: str = None
    options: Dict[str, Any] = field(default_factory=dict)

    def loader(self, path) -> JSONDocumentLoader:
        return JSONDocumentLoader(path, self.cache_dir)

    def load(self, path: str, report: RunReport) -> ComplexDocument:
        """Loads exactly one document and records its digest in report."""
        loader = self.loader(path)
        docs = loader.load_data()
        if len(docs) != 1:
            raise DocumentError(f'{path} holds {len(docs)} documents,'
                                ' expected 1')
        report.inputs.update(loader.digests)
        self.check_size(docs[0])
        return docs[0]

    def check_size(self, doc: ComplexDocument) -> None:
        check_bound(doc.group.order, self.bound_group_order, 'Group order')
        if doc.complex is not None:
            check_bound(sum(doc.complex.ranks) * doc.group.order,
                        self.bound_rank, 'Total rank')

    def complex(self, doc: ComplexDocument,
                need_diagonal: bool = False) -> PDChainComplex:
        if need_diagonal:
            return pd_complex(doc, self.bound_rank)
        return doc.pd_complex()


Command = Callable[[RunContext, Sequence[str]], RunReport]


class CommandHandler:
    def __init__(self, config: Dict[str, Any]) -> None:
        """
        Imports the configured commands and sets up logging.

        Config fields:
        * commands: mapping of command name to the dotted path of the
        function implementing it
        * bound_group_order: largest group order accepted (default 24)
        * bound_rank: largest total Z-rank of a complex and of the tensor
        degrees searched for a diagonal (default 512)
        * bound_isomorphisms: largest number of candidate isomorphisms
        enumerated by compare, null for no bound
        * form_bound: entry bound of the isometry search of forms
        * resolution: 'killing' or 'bar', the resolution of 3-dimensional
        triples
        * format: 'json' or 'text'
        * progress: whether long enumerations show progress bars
        * cache_dir: directory of parsed document caches, null to disable
        * log_file, log_level, log_msg_format, log_dt_format: logging setup
        """
        self._logger = create_logger(config['log_file'],
                                     config['log_msg_format'],
                                     config['log_dt_format'],
                                     config['log_level'])
        self._commands: Dict[str, Command] = {}
        for name, path in config['commands'].items():
            module_name, func_name = path.rsplit('.', 1)
            self._commands[name] = getattr(import_module(module_name),
                                           func_name)
        cache_dir = config.get('cache_dir')
        self.context = RunContext(
            bound_group_order=config.get('bound_group_order', 24),
            bound_rank=config.get('bound_rank', 512),
            bound_isomorphisms=config.get('bound_isomorphisms'),
            form_bound=config.get('form_bound', 2),
            resolution=config.get('resolution', 'killing'),
            progress=config.get('progress', False),
            cache_dir=os.path.abspath(cache_dir) if cache_dir else None)
        self.format = config.get('format', 'json')
        self._logger.info('Commands available: %s',
                          ', '.join(sorted(self._commands)))

    @property
    def commands(self) -> List[str]:
        return sorted(self._commands)

    def handle(self, command: str, paths: Sequence[str]) -> RunReport:
        if command not in self._commands:
            raise ValueError(f'Unknown command {command}')
        self._logger.info('Running %s on %s', command, ', '.join(paths))
        try:
            report = self._commands[command](self.context, paths)
        except ValueError as err:
            self._logger.error('Input error in %s: %s', command, err)
            report = RunReport(command, exit_code=EXIT_INPUT_ERROR,
                               message=str(err))
        except ResourceBoundError as err:
            self._logger.error('Resource bound in %s: %s', command, err)
            report = RunReport(command, exit_code=EXIT_RESOURCE_BOUND,
                               message=str(err))
        self._logger.info('%s finished: %s', command, report.verdict)
        return report

    def render(self, report: RunReport) -> Tuple[str, int]:
        return (report.render(self.format, self.context.witnesses),
                report.exit_code)

"""
Run reports written by the command line interface. A report is rendered
either as canonical JSON or as aligned text; both orderings are fixed so
that identical runs produce identical bytes.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
from pdcomplex.core.linalg import AbelianGroup
from pdcomplex.core.pipeline import CheckReport
from pdcomplex.utils import canonical_bytes


EXIT_PASS = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_BOUND = 3

VERDICTS = {
    EXIT_PASS: 'pass',
    EXIT_NEGATIVE: 'fail',
    EXIT_INPUT_ERROR: 'input-error',
    EXIT_RESOURCE_BOUND: 'resource-bound'
}


def to_plain(obj: Any) -> Any:
    """Converts numpy scalars and arrays, groups and reports to json types."""
    if isinstance(obj, AbelianGroup):
        return obj.to_dict()
    if isinstance(obj, CheckReport):
        return obj.to_dict()
    if hasattr(obj, 'tolist'):
        return obj.tolist()
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    return obj


@dataclass
class RunReport:
    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    exit_code: int = EXIT_PASS
    checks: List[CheckReport] = field(default_factory=list)
    groups: Dict[str, AbelianGroup] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    message: Optional[str] = None

    @property
    def verdict(self) -> str:
        return VERDICTS[self.exit_code]

    def fail(self, message: str = None) -> 'RunReport':
        self.exit_code = EXIT_NEGATIVE
        self.message = message or self.message
        return self

    def to_dict(self, with_witnesses: bool = False) -> Dict[str, Any]:
        result = {
            'command': self.command,
            'inputs': dict(self.inputs),
            'verdict': self.verdict,
            'exit_code': self.exit_code,
            'checks': [report.to_dict() for report in self.checks],
            'groups': {name: group.to_dict()
                       for name, group in self.groups.items()},
            'results': to_plain(self.results)
        }
        if self.message:
            result['message'] = self.message
        if with_witnesses and self.witnesses:
            result['witnesses'] = to_plain(self.witnesses)
        return result

    def to_json(self, with_witnesses: bool = False) -> str:
        return canonical_bytes(self.to_dict(with_witnesses)).decode('utf-8')

    def to_text(self, with_witnesses: bool = False) -> str:
        lines = [f'{self.command}: {self.verdict} (exit {self.exit_code})']
        if self.message:
            lines.append(f'  {self.message}')
        for path in sorted(self.inputs):
            lines.append(f'  input {path} sha256:{self.inputs[path][:16]}')
        for report in self.checks:
            for check in report.checks:
                status = 'ok' if check.passed else 'FAILED'
                detail = f' ({check.detail})' if check.detail else ''
                lines.append(f'  [{status:>6}] {report.subject}:'
                             f' {check.name}{detail}')
        for name in sorted(self.groups):
            lines.append(f'  {name} = {self.groups[name]!r}')
        for name in sorted(self.results):
            lines.append(f'  {name}: {to_plain(self.results[name])}')
        if with_witnesses:
            for name in sorted(self.witnesses):
                lines.append(f'  witness {name}:'
                             f' {to_plain(self.witnesses[name])}')
        return '\n'.join(lines) + '\n'

    def render(self, fmt: str = 'json', with_witnesses: bool = False) -> str:
        if fmt == 'json':
            return self.to_json(with_witnesses)
        if fmt == 'text':
            return self.to_text(with_witnesses)
        raise ValueError(f'Unknown report format {fmt}')

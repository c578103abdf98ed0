"""
Named check pipelines. Validators in the library are written as a
sequence of (name, callable) steps whose verdicts are collected into a
CheckReport instead of being raised.
"""
from dataclasses import dataclass, field
from logging import getLogger
from typing import Any, Callable, Dict, List, Optional, Tuple, Union


logger = getLogger(__name__)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ''
    degree: Optional[int] = None
    data: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        result = {'name': self.name, 'passed': self.passed}
        if self.detail:
            result['detail'] = self.detail
        if self.degree is not None:
            result['degree'] = self.degree
        if self.data:
            result['data'] = self.data
        return result


class CheckReport:
    def __init__(self, subject: str, checks: List[Check]):
        self.subject = subject
        self.checks = list(checks)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def first_failure(self) -> Optional[Check]:
        failures = self.failures
        return failures[0] if failures else None

    def __getitem__(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {'subject': self.subject, 'passed': self.passed,
                'checks': [check.to_dict() for check in self.checks]}

    def __repr__(self) -> str:
        verdict = 'pass' if self.passed else 'fail'
        return f'CheckReport({self.subject}: {verdict})'


StepResult = Union[Check, bool, Tuple[bool, str]]


class CheckPipeline:
    def __init__(self, *steps: Tuple[str, Callable[[Any], StepResult]]):
        self._pipeline = []
        for step_num, step in enumerate(steps):
            if len(step) == 0:
                raise AttributeError(
                    f'Step #{step_num + 1} is empty!'
                )
            if len(step) != 2:
                raise AttributeError(
                    'Each step must be of length 2'
                    ' and match a form (<check_name>, <check_func>)'
                )
            self._pipeline.append({
                'step_name': step[0], 'step_func': step[1]
            })

    @property
    def step_names(self) -> List[str]:
        return [step['step_name'] for step in self._pipeline]

    def schema(self) -> str:
        lines = ['Check pipeline schema:']
        for num, step in enumerate(self._pipeline):
            name, func = step.values()
            lines.append(f'{num + 1}. Name: {name:<5}\n   Check: {func}')
        return '\n'.join(lines)

    def run(self, subject: Any, name: str = '',
            stop_on_failure: bool = False) -> CheckReport:
        checks = []
        for step in self._pipeline:
            outcome = step['step_func'](subject)
            if isinstance(outcome, Check):
                check = outcome
                check.name = check.name or step['step_name']
            elif isinstance(outcome, tuple):
                check = Check(step['step_name'], bool(outcome[0]), outcome[1])
            else:
                check = Check(step['step_name'], bool(outcome))
            checks.append(check)
            logger.debug('Check %s on %s: %s', check.name, name,
                         'pass' if check.passed else 'fail')
            if stop_on_failure and not check.passed:
                break
        return CheckReport(name, checks)

import json
import numpy as np
import pytest
from pdcomplex.core.linalg import AbelianGroup
from pdcomplex.core.pipeline import Check, CheckReport
from pdcomplex.io.report import RunReport, to_plain


@pytest.fixture
def report():
    report = RunReport('homology', inputs={'a.json': 'ab' * 32})
    report.checks.append(CheckReport('a', [Check('h1', True),
                                           Check('cone', False, 'Z/2')]))
    report.groups['H_1'] = AbelianGroup(0, [5])
    report.results['ranks'] = np.array([1, 1, 1, 1], dtype=object)
    report.witnesses['cycle'] = np.array([1])
    return report


def test_json_is_canonical(report):
    text = report.render('json')
    assert text.endswith('\n')
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data['verdict'] == 'pass'
    assert data['groups'] == {'H_1': {'free_rank': 0, 'torsion': [5]}}
    assert data['results'] == {'ranks': [1, 1, 1, 1]}
    assert 'witnesses' not in data
    assert json.loads(report.render('json', True))['witnesses'] == {
        'cycle': [1]}
    assert report.render('json') == text


def test_fail(report):
    assert report.fail('not isomorphic') is report
    assert report.exit_code == 1
    assert report.verdict == 'fail'
    assert report.to_dict()['message'] == 'not isomorphic'


def test_text(report):
    lines = report.to_text().splitlines()
    assert lines[0] == 'homology: pass (exit 0)'
    assert '  input a.json sha256:abababababababab' in lines
    assert '  [FAILED] a: cone (Z/2)' in lines
    assert '  H_1 = Z/5' in lines
    assert not any('witness' in line for line in lines)
    assert '  witness cycle: [1]' in report.to_text(True)


def test_unknown_format(report):
    with pytest.raises(ValueError, match='format'):
        report.render('yaml')


def test_to_plain():
    plain = to_plain({1: (np.int64(3), AbelianGroup(2)), 'x': [None]})
    assert plain == {'1': [3, {'free_rank': 2, 'torsion': []}], 'x': [None]}

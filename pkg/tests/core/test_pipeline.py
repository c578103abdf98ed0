import pytest
from pdcomplex.core.pipeline import Check, CheckPipeline


def test_step_results_are_normalized():
    pipeline = CheckPipeline(
        ('positive', lambda x: x > 0),
        ('even', lambda x: (x % 2 == 0, f'{x} is odd')),
        ('small', lambda x: Check('', x < 10, degree=2)))
    report = pipeline.run(7, 'seven')
    assert pipeline.step_names == ['positive', 'even', 'small']
    assert [c.name for c in report.checks] == ['positive', 'even', 'small']
    assert not report
    assert report.first_failure().detail == '7 is odd'
    assert report['small'].to_dict() == {'name': 'small', 'passed': True,
                                         'degree': 2}
    assert report.to_dict()['subject'] == 'seven'
    with pytest.raises(KeyError):
        report['large']


def test_stop_on_failure():
    pipeline = CheckPipeline(('first', lambda x: False),
                             ('second', lambda x: True))
    report = pipeline.run(None, stop_on_failure=True)
    assert [c.name for c in report.checks] == ['first']
    assert 'Name: second' in pipeline.schema()


@pytest.mark.parametrize('steps', [[()], [('only_name',)]])
def test_malformed_steps(steps):
    with pytest.raises(AttributeError):
        CheckPipeline(*steps)

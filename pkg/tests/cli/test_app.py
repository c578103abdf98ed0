import json
import pytest
import yaml
from pdcomplex.cli.app import main, parse_arguments
from pdcomplex.cli.commands import default_hom
from pdcomplex.core.errors import DocumentError
from pdcomplex.core.groupring import cyclic_group
from pdcomplex.utils import get_full_path, parse_config, read_json, write_json


@pytest.fixture
def config(tmp_path):
    path = get_full_path('scripts/config', 'pdc_config.yaml')
    data = {'cli': parse_config(path, 'cli'),
            'commands': parse_config(path, 'commands')}
    data['cli']['log_file'] = str(tmp_path / 'logs' / 'pdc.log')
    config_path = tmp_path / 'pdc_config.yaml'
    config_path.write_text(yaml.safe_dump(data))
    return str(config_path)


@pytest.fixture
def run(config, capsys):
    def runner(*argv):
        code = main([*argv, '--config', config])
        out = capsys.readouterr().out
        return code, (json.loads(out) if '--format' not in argv else out)
    return runner


def corpus(name: str) -> str:
    return get_full_path('corpus', name)


def test_homology(run):
    code, report = run('homology', corpus('lens_5_2.json'))
    assert code == 0
    assert report['verdict'] == 'pass'
    assert report['groups']['H_1'] == {'free_rank': 0, 'torsion': []}
    assert report['groups']['H_1^w'] == {'free_rank': 0, 'torsion': [5]}
    assert report['groups']['H_3'] == {'free_rank': 1, 'torsion': []}
    assert report['results']['ranks'] == [1, 1, 1, 1]
    assert list(report['inputs']) == [corpus('lens_5_2.json')]


def test_text_format(run):
    code, out = run('homology', corpus('s3.json'), '--format', 'text')
    assert code == 0
    assert out.splitlines()[0] == 'homology: pass (exit 0)'


@pytest.mark.slow
def test_verify_corpus(run):
    code, report = run('verify-pd', get_full_path('corpus'))
    assert code == 0
    assert report['results']['verified'] == 47
    assert all(check['passed'] for check in report['checks'])


def test_verify_single_document_has_table(run):
    code, report = run('verify-pd', corpus('lens_7_3.json'))
    assert code == 0
    table = report['results']['duality_table']
    assert [row['r'] for row in table] == [0, 1, 2, 3]
    assert all(row['match'] for row in table)


def test_verify_rejects_wrong_cycle(run, tmp_path):
    data = read_json(corpus('lens_5_2.json'))
    data['fundamental_cycle'] = [2]
    path = str(tmp_path / 'doubled.json')
    write_json(data, path)
    code, report = run('verify-pd', path)
    assert code == 1
    assert report['results']['failed'] == ['L(5,2)']


def test_compare_lens_spaces(run):
    code, report = run('compare', corpus('lens_5_1.json'),
                       corpus('lens_5_2.json'))
    assert code == 1
    assert report['results']['isomorphic'] is False
    code, report = run('compare', corpus('lens_7_1.json'),
                       corpus('lens_7_2.json'))
    assert code == 0
    m = report['results']['multiplier']
    assert (m * m - 2) % 7 == 0 or (2 * m * m - 1) % 7 == 0


def test_compare_dimensions(run):
    code, report = run('compare', corpus('s3.json'), corpus('s4.json'))
    assert code == 1
    assert report['message'] == 'formal dimensions differ'


def test_compare_forms(run):
    code, report = run('compare', corpus('s2xs2.json'), corpus('s2xs2.json'))
    assert code == 0
    code, report = run('compare', corpus('cp2_cp2bar.json'),
                       corpus('s2xs2.json'))
    assert code == 1


def test_degree_one(run):
    code, report = run('degree-one', corpus('lens_5_1.json'),
                       corpus('lens_5_2.json'))
    assert code == 1
    assert report['results']['failed_step'] == 'decompose'
    assert report['results']['triple_criterion'] is False
    code, report = run('degree-one', corpus('lens_5_1.json'),
                       corpus('s3.json'), '--witnesses')
    assert code == 0
    assert report['results']['degree'] == 1
    assert report['results']['phi'] == [0, 0, 0, 0, 0]
    assert set(report['witnesses']['chain_map']) == {'0', '1', '2', '3'}


def test_degree_one_images(run):
    code, report = run('degree-one', corpus('lens_5_1.json'),
                       corpus('lens_5_1.json'), '--images', '7')
    assert code == 2
    assert 'Generator images' in report['message']


def test_pt_chain(run):
    code, report = run('pt-chain',
                       get_full_path('corpus/two_types', 's2_cup2_e3.json'))
    assert code == 0
    assert report['groups']['pi2'] == {'free_rank': 0, 'torsion': [2]}
    assert report['groups']['H_4'] == {'free_rank': 0, 'torsion': [4]}


def test_diagonal(run):
    code, report = run('diagonal', corpus('cp2.json'), '--witnesses')
    assert code == 0
    assert report['results']['cocommutative'] is True
    assert report['witnesses']['diagonal'] == read_json(
        corpus('cp2.json'))['diagonal']


def test_triple(run):
    code, report = run('triple', corpus('lens_5_2.json'))
    assert code == 0
    assert report['groups']['H_3'] == {'free_rank': 0, 'torsion': [5]}
    code, report = run('triple', corpus('cp2.json'))
    assert code == 0
    assert report['results']['triple']['form'] in ([[1]], [[-1]])


def test_obstruction_targets(run):
    code, report = run('obstruction-targets',
                       get_full_path('tests/data', 'z3_obstruction.json'))
    assert code == 0
    assert report['groups']['h2'] == {'free_rank': 3, 'torsion': []}
    assert report['groups']['exterior_coinvariants'] == {
        'free_rank': 1, 'torsion': []}
    assert report['results']['odd_order'] is True


@pytest.mark.parametrize('argv', [
    ('homology', 'missing.json'),
    ('homology', 'corpus/s3.json', 'corpus/s4.json'),
    ('triple', 'corpus/s4.json'),
    ('pt-chain', 'corpus/s3.json')
])
def test_input_errors(run, argv):
    command, *paths = argv
    code, report = run(command, *[get_full_path(p) if p.startswith('corpus')
                                  else p for p in paths])
    assert code == 2
    assert report['verdict'] == 'input-error'


@pytest.mark.parametrize('option', [
    ('--bound-group-order', '4'),
    ('--bound-rank', '3')
])
def test_resource_bounds(run, option):
    code, report = run('homology', corpus('lens_5_2.json'), *option)
    assert code == 3
    assert report['verdict'] == 'resource-bound'


def test_arguments():
    arguments = parse_arguments(['compare', 'a.json', 'b.json',
                                 '--resolution', 'bar'])
    assert arguments.paths == ['a.json', 'b.json']
    assert arguments.resolution == 'bar'
    with pytest.raises(SystemExit):
        parse_arguments(['unknown', 'a.json'])


def test_default_hom():
    Z5, Z1 = cyclic_group(5), cyclic_group(1)
    assert default_hom(Z5, Z1).images == (0, 0, 0, 0, 0)
    assert default_hom(Z5, Z5, [2])(1) == 2
    with pytest.raises(DocumentError, match='no homomorphism'):
        default_hom(Z5, cyclic_group(3), [1])

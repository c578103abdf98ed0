import os
import pytest
from pdcomplex.core.errors import DocumentError
from pdcomplex.io.document import document_bytes
from pdcomplex.io.loader import JSONDocumentLoader, load_document, pd_complex
from pdcomplex.utils import digest, get_full_path


TWO_TYPES = get_full_path('corpus/two_types')


def test_directory_loader():
    loader = JSONDocumentLoader(TWO_TYPES)
    assert [os.path.basename(p) for p in loader.paths] == [
        's2.json', 's2_cup2_e3.json']
    docs = loader.load_data()
    assert [doc.name for doc in docs] == ['S2', 'S2_cup2_e3']
    for path, doc in zip(loader.paths, docs):
        with open(path, 'rb') as fp:
            assert loader.digests[path] == digest(fp.read())


def test_missing_paths():
    with pytest.raises(DocumentError, match='does not exist'):
        JSONDocumentLoader(get_full_path('corpus', 'lens_1_1.json'))
    with pytest.raises(DocumentError, match='lens_0_1.json'):
        JSONDocumentLoader([get_full_path('corpus', 'lens_5_2.json'),
                            get_full_path('corpus', 'lens_0_1.json')])
    with pytest.raises(TypeError):
        JSONDocumentLoader(5)


def test_load_document_wants_one_file():
    with pytest.raises(DocumentError, match='holds 2 documents'):
        load_document(TWO_TYPES)


def test_loader_errors_name_the_file(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"format": "pdcomplex/1"}')
    with pytest.raises(DocumentError, match='broken.json'):
        load_document(str(path))


def test_cache(tmp_path):
    path = get_full_path('corpus', 'cp2.json')
    cache_dir = str(tmp_path / 'cache')
    first = load_document(path, cache_dir)
    cached = os.listdir(cache_dir)
    assert len(cached) == 1 and cached[0].endswith('.dill')
    second = load_document(path, cache_dir)
    assert document_bytes(first) == document_bytes(second)


def test_pd_complex_finds_diagonal():
    doc = load_document(get_full_path('corpus', 'lens_3_1.json'))
    assert doc.diagonal is None
    X = pd_complex(doc)
    assert X.diagonal is not None
    assert X.formal_dim == 3

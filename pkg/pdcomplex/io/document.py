"""
Complex documents: parsing into library objects and canonical
serialization. Every parsed document re-serializes to the same canonical
bytes when its input was canonical (sorted keys, entries sorted by
element, zero coefficients omitted).
"""
import json
from dataclasses import dataclass
from logging import getLogger
from typing import Any, Dict, List, Optional, Sequence, Tuple
import numpy as np
from pdcomplex.core.chain import (Diagonal, ReducedComplex,
                                  diagonal_from_components, tensor_complexes,
                                  validate_reduced)
from pdcomplex.core.errors import DocumentError
from pdcomplex.core.groupring import (FiniteGroup, GroupRingElement,
                                      OrientationChar, cyclic_group)
from pdcomplex.core.linalg import LambdaMatrix, as_int_vector
from pdcomplex.crossed.presentation import presentation
from pdcomplex.crossed.words import FreeWord, PreCrossedModule
from pdcomplex.duality.poincare import PDChainComplex, WeaklyStandardData
from pdcomplex.io.schema import FORMAT_VERSION, validate_schema
from pdcomplex.utils import canonical_bytes


logger = getLogger(__name__)

Path = List[Any]


@dataclass
class ComplexDocument:
    name: str
    kind: str
    group: FiniteGroup
    group_kind: str
    omega: Optional[OrientationChar] = None
    complex: Optional[ReducedComplex] = None
    fundamental_cycle: Optional[np.ndarray] = None
    diagonal: Optional[Diagonal] = None
    precrossed: Optional[PreCrossedModule] = None
    b_generators: Optional[List[List[GroupRingElement]]] = None
    weakly_standard: Optional[WeaklyStandardData] = None

    @property
    def formal_dim(self) -> Optional[int]:
        return self.complex.top if self.complex is not None else None

    def pd_complex(self, diagonal: Diagonal = None) -> PDChainComplex:
        if self.kind != 'pd_complex':
            raise DocumentError(f'{self.name} is a {self.kind} document, not'
                                ' a PD-chain complex', ['kind'])
        return PDChainComplex(self.complex, self.omega, self.fundamental_cycle,
                              diagonal or self.diagonal)


def _element(pairs: Sequence[Sequence[int]], group: FiniteGroup,
             path: Path) -> GroupRingElement:
    for k, (g, _) in enumerate(pairs):
        if not 0 <= g < group.order:
            raise DocumentError(f'element {g} outside the group of order'
                                f' {group.order}', path + [k])
    return GroupRingElement(group, [(g, c) for g, c in pairs])


def _vector(entries, group: FiniteGroup, path: Path)\
        -> List[GroupRingElement]:
    return [_element(x, group, path + [k]) for k, x in enumerate(entries)]


def _matrix(rows, group: FiniteGroup, shape: Tuple[int, int],
            path: Path) -> LambdaMatrix:
    if len(rows) != shape[0]:
        raise DocumentError(f'{len(rows)} rows, expected {shape[0]}', path)
    for i, row in enumerate(rows):
        if len(row) != shape[1]:
            raise DocumentError(f'{len(row)} columns, expected {shape[1]}',
                                path + [i])
    return LambdaMatrix(group, [_vector(row, group, path + [i])
                                for i, row in enumerate(rows)], *shape)


def _parse_precrossed(data: Dict[str, Any], name: str) -> PreCrossedModule:
    n_gens = len(data['generators'])
    relators, names = [], []
    for k, rel in enumerate(data['relators']):
        for j, (gen, power) in enumerate(rel['word']):
            if not 0 <= gen < n_gens or power == 0:
                raise DocumentError(f'invalid letter [{gen}, {power}]',
                                    ['precrossed', 'relators', k, 'word', j])
        relators.append(FreeWord.from_powers(n_gens, rel['word']))
        names.append(rel['name'])
    return PreCrossedModule(n_gens, relators, data['generators'], names, name)


def _parse_group(data: Dict[str, Any],
                 M: Optional[PreCrossedModule]) -> FiniteGroup:
    entry = data['group']
    kind = entry['kind']
    if kind == 'cyclic':
        group = cyclic_group(entry['order'])
    elif kind == 'table':
        table = entry['table']
        width = max((len(row) for row in table), default=0)
        if len(table) < width:
            raise DocumentError(f'row {len(table)} of the multiplication'
                                ' table is missing',
                                ['group', 'table', len(table)])
        for i, row in enumerate(table):
            if len(row) != len(table):
                raise DocumentError(f'row {i} has {len(row)} entries, expected'
                                    f' {len(table)}', ['group', 'table', i])
        try:
            group = FiniteGroup(table, name=data['name'])
        except ValueError as err:
            raise DocumentError(str(err), ['group', 'table']) from err
    else:
        if M is None:
            raise DocumentError('a presented group needs pre-crossed data',
                                ['group'])
        return presentation(M).group
    if M is not None and presentation(M).group != group:
        raise DocumentError('the presentation does not reproduce the group'
                            ' table', ['precrossed'])
    return group


def _parse_diagonal(data: Dict[str, List[List[int]]],
                    C: ReducedComplex) -> Diagonal:
    T = tensor_complexes(C, C)
    n = C.group.order
    components = {}
    for k in range(C.top + 1):
        terms = data.get(str(k))
        if terms is None:
            continue
        entries = [[{} for _ in range(C.rank(k))] for _ in range(T.rank(k))]
        for t, (col, i, a, b, g, h, c) in enumerate(terms):
            path = ['diagonal', str(k), t]
            if not (0 <= col < C.rank(k) and 0 <= i <= k
                    and 0 <= a < C.rank(i) and 0 <= b < C.rank(k - i)
                    and 0 <= g < n and 0 <= h < n):
                raise DocumentError('term outside the tensor basis', path)
            cell = entries[T.index(k, i, a, b)][col]
            cell[g * n + h] = cell.get(g * n + h, 0) + c
        components[k] = LambdaMatrix(
            T.group, [[GroupRingElement(T.group, x) for x in row]
                      for row in entries], T.rank(k), C.rank(k))
    components.setdefault(0, LambdaMatrix.identity(T.group, 1))
    try:
        return diagonal_from_components(C, components, T)
    except ValueError as err:
        raise DocumentError(str(err), ['diagonal']) from err


def _parse_complex(data: Dict[str, Any], group: FiniteGroup) -> ReducedComplex:
    ranks = data['ranks']
    boundaries = {}
    for key in data['boundaries']:
        k = int(key)
        if k >= len(ranks):
            raise DocumentError(f'boundary d_{k} above the top degree',
                                ['boundaries', key])
    for k in range(1, len(ranks)):
        rows = data['boundaries'].get(str(k))
        if rows is not None:
            boundaries[k] = _matrix(rows, group, (ranks[k - 1], ranks[k]),
                                    ['boundaries', str(k)])
    C = ReducedComplex(group, ranks, boundaries, name=data['name'])
    report = validate_reduced(C)
    if not report.passed:
        failure = report.first_failure()
        path = ['boundaries', str(failure.degree)] if failure.degree\
            else ['ranks']
        raise DocumentError(f'{failure.name}: {failure.detail}', path)
    return C


def parse_document(data: Dict[str, Any]) -> ComplexDocument:
    validate_schema(data)
    name = data['name']
    M = _parse_precrossed(data['precrossed'], name)\
        if 'precrossed' in data else None
    group = _parse_group(data, M)
    doc = ComplexDocument(name, data['kind'], group, data['group']['kind'],
                          precrossed=M)
    if 'orientation' in data:
        try:
            doc.omega = OrientationChar(group, data['orientation'])
        except ValueError as err:
            raise DocumentError(str(err), ['orientation']) from err
    else:
        doc.omega = OrientationChar.trivial(group)
    if 'b_generators' in data:
        doc.b_generators = [_vector(v, group, ['b_generators', k])
                            for k, v in enumerate(data['b_generators'])]
    if doc.kind == 'two_type':
        return doc
    C = _parse_complex(data, group)
    doc.complex = C
    cycle = as_int_vector(data['fundamental_cycle'])
    if len(cycle) != C.rank(C.top):
        raise DocumentError(f'{len(cycle)} coordinates, C_{C.top} has rank'
                            f' {C.rank(C.top)}', ['fundamental_cycle'])
    doc.fundamental_cycle = cycle
    if 'diagonal' in data:
        doc.diagonal = _parse_diagonal(data['diagonal'], C)
    if 'weakly_standard' in data:
        ws = data['weakly_standard']
        splitting = [_vector(v, group, ['weakly_standard', 'splitting', k])
                     for k, v in enumerate(ws['splitting'])]\
            if 'splitting' in ws else None
        doc.weakly_standard = WeaklyStandardData.standard(
            C, ws['top_cell'], splitting)
    logger.debug('Parsed document %s (%s over %s)', name, doc.kind,
                 group.name)
    return doc


def _encode_element(x: GroupRingElement) -> List[List[int]]:
    return [[int(g), int(c)] for g, c in x.terms]


def encode_vector(v: Sequence[GroupRingElement]) -> List[List[List[int]]]:
    return [_encode_element(x) for x in v]


def _encode_word(word: FreeWord) -> List[List[int]]:
    runs: List[List[int]] = []
    for gen, exp in word.letters:
        if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (exp > 0):
            runs[-1][1] += exp
        else:
            runs.append([gen, exp])
    return runs


def encode_diagonal(diagonal: Diagonal) -> Dict[str, List[List[int]]]:
    C, T = diagonal.complex, diagonal.tensor
    n = C.group.order
    result = {}
    for k in range(C.top + 1):
        component = diagonal.component(k)
        terms = []
        for col in range(component.cols):
            for row in range(component.rows):
                i, a, b = T.decompose(k, row)
                for pair, c in component[row, col].terms:
                    g, h = divmod(pair, n)
                    terms.append([col, i, a, b, g, h, int(c)])
        if terms:
            result[str(k)] = sorted(terms)
    return result


def serialize_document(doc: ComplexDocument) -> Dict[str, Any]:
    G = doc.group
    data: Dict[str, Any] = {'format': FORMAT_VERSION, 'kind': doc.kind,
                            'name': doc.name}
    if doc.group_kind == 'cyclic':
        data['group'] = {'kind': 'cyclic', 'order': G.order}
    elif doc.group_kind == 'table':
        data['group'] = {'kind': 'table', 'table': G.table.tolist()}
    else:
        data['group'] = {'kind': 'presentation'}
    if doc.precrossed is not None:
        M = doc.precrossed
        data['precrossed'] = {
            'generators': list(M.gen_names),
            'relators': [{'name': name, 'word': _encode_word(word)}
                         for name, word in zip(M.rel_names, M.relators)]}
    if doc.b_generators is not None:
        data['b_generators'] = [encode_vector(v) for v in doc.b_generators]
    if doc.kind == 'two_type':
        if doc.omega is not None and not doc.omega.is_trivial():
            data['orientation'] = list(doc.omega.values)
        return data
    C = doc.complex
    data['orientation'] = list(doc.omega.values)
    data['ranks'] = list(C.ranks)
    data['boundaries'] = {str(k): [encode_vector(C.boundary(k).row(i))
                                   for i in range(C.rank(k - 1))]
                          for k in range(1, C.top + 1)}
    data['fundamental_cycle'] = [int(z) for z in doc.fundamental_cycle]
    if doc.diagonal is not None:
        data['diagonal'] = encode_diagonal(doc.diagonal)
    if doc.weakly_standard is not None:
        ws = doc.weakly_standard
        data['weakly_standard'] = {'top_cell': ws.top_cell_index}
        if ws.splitting is not None:
            data['weakly_standard']['splitting'] = [
                encode_vector(v) for v in ws.splitting]
    return data


def document_bytes(doc: ComplexDocument) -> bytes:
    return canonical_bytes(serialize_document(doc))


def loads(text: str) -> ComplexDocument:
    """Parses document text; JSON syntax errors name line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f'invalid JSON at line {err.lineno} column'
                            f' {err.colno}: {err.msg}') from err
    return parse_document(data)


def encode_matrix(matrix: LambdaMatrix) -> List[List[List[List[int]]]]:
    return [encode_vector(matrix.row(i)) for i in range(matrix.rows)]

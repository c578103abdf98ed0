"""
Commands of the command line interface. Every command takes the run
context and its input paths and returns a RunReport; negative answers
set exit code 1, input errors and exhausted bounds are raised and mapped
by the handler.
"""
from logging import getLogger
from typing import List, Optional, Sequence
from tqdm import tqdm
from pdcomplex.core.chain import (ChainMap, check_coassociative,
                                  check_cocommutative)
from pdcomplex.core.errors import DocumentError
from pdcomplex.core.groupring import FiniteGroup, GroupHom
from pdcomplex.core.linalg import LambdaMatrix
from pdcomplex.core.pipeline import Check, CheckReport
from pdcomplex.crossed.ptcomplex import b_from_boundary, build_pt, pt_homology
from pdcomplex.duality.poincare import (PDChainComplex, WeaklyStandardData,
                                        check_weakly_standard,
                                        construct_degree_one, degree_of_map,
                                        poincare_duality_table, verify_pd)
from pdcomplex.duality.triples import (FundamentalTriple, degree_one_exists,
                                       pd4_obstruction_targets, triple_pd3,
                                       triple_pd4, triples_isomorphic)
from pdcomplex.io.document import (ComplexDocument, encode_diagonal,
                                   encode_matrix, encode_vector)
from pdcomplex.io.report import RunReport
from pdcomplex.cli.handler import RunContext
from pdcomplex.utils import BAR_FORMAT


logger = getLogger(__name__)


def _expect(paths: Sequence[str], count: int, command: str) -> None:
    if len(paths) != count:
        raise DocumentError(f'{command} takes {count} input(s), got'
                            f' {len(paths)}')


def homology(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 1, 'homology')
    report = RunReport('homology')
    doc = ctx.load(paths[0], report)
    X = ctx.complex(doc)
    for k in range(X.formal_dim + 1):
        report.groups[f'H_{k}'] = X.complex.homology(k)
        report.groups[f'H_{k}^w'] = X.complex.twisted_homology(k, X.omega)
    report.results['ranks'] = list(X.complex.ranks)
    return report


class CorpusRunner:
    def __init__(self, context: RunContext) -> None:
        """
        Runs the PD checks over files and directories of documents.

        Context fields used:
        * bound_group_order, bound_rank: size bounds of every document
        * progress: whether to show a progress bar
        * cache_dir: parsed document cache
        """
        self._context = context

    def files(self, paths: Sequence[str]) -> List[str]:
        files = []
        for path in paths:
            files.extend(self._context.loader(path).paths)
        return files

    def check(self, doc: ComplexDocument, report: RunReport,
              with_table: bool) -> bool:
        X = self._context.complex(doc, need_diagonal=True)
        checks = verify_pd(X)
        report.checks.append(checks)
        passed = checks.passed
        if doc.weakly_standard is not None:
            standard = check_weakly_standard(X, doc.weakly_standard)
            report.checks.append(standard)
            passed = passed and standard.passed
        if with_table:
            report.results['duality_table'] = poincare_duality_table(X)
        return passed

    def run(self, paths: Sequence[str]) -> RunReport:
        report = RunReport('verify-pd')
        files = self.files(paths)
        if not files:
            raise DocumentError(f'No documents found in {", ".join(paths)}')
        failed = []
        for path in tqdm(files, desc='verify-pd', bar_format=BAR_FORMAT,
                         disable=not self._context.progress):
            doc = self._context.load(path, report)
            if not self.check(doc, report, len(files) == 1):
                failed.append(doc.name)
        report.results['verified'] = len(files) - len(failed)
        if failed:
            report.results['failed'] = failed
            report.fail(f'not a PD complex: {", ".join(failed)}')
        return report


def verify_pd_command(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    return CorpusRunner(ctx).run(paths)


def _triple(ctx: RunContext, doc: ComplexDocument) -> FundamentalTriple:
    n = doc.formal_dim
    if n == 3:
        return triple_pd3(ctx.complex(doc), ctx.resolution, ctx.bound_rank)
    if n == 4:
        if doc.precrossed is None:
            raise DocumentError('4-dimensional triples need pre-crossed data',
                                ['precrossed'])
        return triple_pd4(ctx.complex(doc, need_diagonal=True),
                          doc.precrossed)
    raise DocumentError(f'No fundamental triple in formal dimension {n}',
                        ['ranks'])


def triple(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 1, 'triple')
    report = RunReport('triple')
    doc = ctx.load(paths[0], report)
    T = _triple(ctx, doc)
    report.groups[f'H_{T.formal_dim}'] = T.homology
    report.results['triple'] = T.to_dict()
    report.witnesses['cycle'] = T.cycle
    return report


def compare(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 2, 'compare')
    report = RunReport('compare')
    docs = [ctx.load(path, report) for path in paths]
    if docs[0].formal_dim != docs[1].formal_dim:
        report.results['isomorphic'] = False
        return report.fail('formal dimensions differ')
    T, T2 = (_triple(ctx, doc) for doc in docs)
    report.results['triples'] = {doc.name: t.to_dict()
                                 for doc, t in zip(docs, (T, T2))}
    iso = triples_isomorphic(T, T2, ctx.bound_group_order,
                             ctx.bound_isomorphisms, ctx.form_bound,
                             ctx.progress)
    report.results['isomorphic'] = iso is not None
    if iso is None:
        return report.fail('not isomorphic')
    report.results['isomorphism'] = iso.to_dict()
    if all(doc.group_kind == 'cyclic' for doc in docs) and T.group.order > 1:
        multiplier = iso.phi(1)
        report.results['multiplier'] = multiplier
        report.message = f'isomorphic via t -> t^{multiplier}'
    else:
        report.message = 'isomorphic'
    return report


def default_hom(source: FiniteGroup, target: FiniteGroup,
                images: Optional[Sequence[int]] = None) -> GroupHom:
    """
    φ from generator images, or the evident map: trivial into the trivial
    group, the identity between equal groups and generator ↦ same index
    otherwise (t ↦ t between cyclic groups).
    """
    gens = source.generators()
    if images is None:
        if target.order == 1:
            return GroupHom.trivial(source, target)
        if source == target:
            return GroupHom.identity(source)
        images = gens
    if len(images) != len(gens) or any(not 0 <= h < target.order
                                       for h in images):
        raise DocumentError(f'Generator images {list(images)} do not fit'
                            f' generators {gens} of {source.name}')
    phi = GroupHom.from_generators(source, target, gens, images)
    if phi is None:
        raise DocumentError(f'Generator images {list(images)} define no'
                            ' homomorphism')
    return phi


def default_lower_map(Y: PDChainComplex, X: PDChainComplex,
                      phi: GroupHom) -> ChainMap:
    """Identity matrices where the ranks agree, zero elsewhere."""
    components = {}
    for k in range(X.formal_dim):
        rows, cols = X.complex.rank(k), Y.complex.rank(k)
        components[k] = LambdaMatrix.identity(X.group, rows) if rows == cols\
            else LambdaMatrix.zeros(X.group, rows, cols)
    return ChainMap(Y.complex, X.complex, phi, components)


def degree_one(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 2, 'degree-one')
    report = RunReport('degree-one')
    doc_Y, doc_X = (ctx.load(path, report) for path in paths)
    Y, X = ctx.complex(doc_Y), ctx.complex(doc_X)
    phi = default_hom(Y.group, X.group, ctx.options.get('images'))
    report.results['phi'] = list(phi.images)
    W_Y = doc_Y.weakly_standard or WeaklyStandardData.standard(Y.complex)
    W_X = doc_X.weakly_standard or WeaklyStandardData.standard(X.complex)
    result = construct_degree_one(Y, X, phi, default_lower_map(Y, X, phi),
                                  W_Y, W_X)
    if X.formal_dim == 3:
        T_Y = triple_pd3(Y, ctx.resolution, ctx.bound_rank)
        T_X = triple_pd3(X, ctx.resolution, ctx.bound_rank)
        report.results['triple_criterion'] = degree_one_exists(T_Y, T_X, phi)
    if not result.succeeded:
        report.results['failed_step'] = result.failed_step
        return report.fail(f'no degree one map: {result.failed_step}'
                           f' ({result.detail})')
    report.results['degree'] = degree_of_map(result.chain_map, Y, X)
    report.witnesses['chain_map'] = {
        str(k): encode_matrix(m) for k, m in result.chain_map.components
        .items()}
    for name, value in result.witnesses.items():
        report.witnesses[name] = encode_matrix(value)\
            if isinstance(value, LambdaMatrix) else encode_vector(value)
    return report


def pt_chain(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 1, 'pt-chain')
    report = RunReport('pt-chain')
    doc = ctx.load(paths[0], report)
    if doc.precrossed is None:
        raise DocumentError('pt-chain needs pre-crossed data', ['precrossed'])
    if doc.b_generators is not None:
        B = doc.b_generators
    elif doc.complex is not None and doc.complex.top >= 3:
        B = b_from_boundary(doc.complex.boundary(3))
    else:
        B = []
    P = build_pt(doc.precrossed, B)
    homology_ = pt_homology(P, doc.omega)
    report.checks.append(homology_.pattern)
    report.groups['pi2'] = P.pi2
    for k, H in sorted(homology_.groups.items()):
        report.groups[f'H_{k}'] = H
    report.results['approximation_ranks'] = list(
        homology_.approximation.complex.ranks)
    for k in (3, 4):
        report.witnesses[f'd_{k}'] = encode_matrix(P.complex.boundary(k))
    if not homology_.pattern.passed:
        report.fail('homology pattern of P(T) fails')
    return report


def diagonal(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 1, 'diagonal')
    report = RunReport('diagonal')
    doc = ctx.load(paths[0], report)
    given = doc.diagonal is not None
    X = ctx.complex(doc, need_diagonal=True)
    D = X.diagonal
    report.checks.append(CheckReport(doc.name, [
        Check('chain_map', True, 'document' if given else 'search'),
        Check('counit', True, 'strict' if D.strict else 'up to homotopy')]))
    cocommutative = check_cocommutative(X.complex, D)
    coassociative = check_coassociative(X.complex, D)
    report.results.update({'strict': D.strict,
                           'cocommutative': cocommutative is not None,
                           'coassociative': coassociative is not None})
    report.witnesses['diagonal'] = encode_diagonal(D)
    if cocommutative is not None:
        report.witnesses['cocommutativity_homotopy'] = {
            str(k): encode_matrix(m)
            for k, m in cocommutative.components.items()}
    return report


def obstruction_targets(ctx: RunContext, paths: Sequence[str]) -> RunReport:
    _expect(paths, 1, 'obstruction-targets')
    report = RunReport('obstruction-targets')
    doc = ctx.load(paths[0], report)
    targets = pd4_obstruction_targets(ctx.complex(doc, need_diagonal=True))
    for name in ('h2', 'gamma_coinvariants', 'tensor_coinvariants',
                 'exterior_coinvariants', 'ker_h', 'two_torsion'):
        report.groups[name] = getattr(targets, name)
    report.results.update({
        'odd_order': targets.odd_order,
        'cocommutative': targets.cocommutative,
        'realization_certified': targets.realization_certified})
    return report

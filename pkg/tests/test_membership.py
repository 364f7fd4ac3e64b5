import pytest

from errors import DomainError
from models import Mode, Verdict
from algebra.ncalg import NCPoly
from algebra.qmatrix import QMatrixContext, det_q_row, matq_relations
from algebra.qseries import q_pow
from verify.membership import MembershipQuery, ideal_membership, is_member


@pytest.fixture
def mat2():
    return QMatrixContext(2), matq_relations(2)


def _a(ctx, i, j):
    return NCPoly.of(ctx.gen(i, j))


def test_relation_multiple_is_member(mat2):
    ctx, rels = mat2
    rel = _a(ctx, 1, 1) * _a(ctx, 1, 2) - (_a(ctx, 1, 2) * _a(ctx, 1, 1)).scale(q_pow(1))
    report = is_member(rel * _a(ctx, 2, 1), rels, mode=Mode.EXACT)
    assert report.verdict == Verdict.MEMBER_EXACT
    assert report.degree == 3
    assert report.dims.rank > 0


def test_single_word_is_not_member(mat2):
    ctx, rels = mat2
    report = is_member(_a(ctx, 1, 2) * _a(ctx, 1, 1), rels, mode=Mode.EXACT)
    assert report.verdict == Verdict.NONMEMBER
    assert report.verdict.exit_code == 1


def test_specialized_refutation_carries_witness(mat2):
    ctx, rels = mat2
    report = is_member(_a(ctx, 1, 2) * _a(ctx, 1, 1), rels, mode=Mode.SPECIALIZE, samples=2, seed=7)
    assert report.verdict == Verdict.NONMEMBER
    assert report.witness is not None
    assert report.witness in report.q0


def test_specialized_runs_are_reproducible(mat2):
    ctx, rels = mat2
    det = det_q_row(2)
    x = _a(ctx, 1, 2)
    first = is_member(x * det - det * x, rels, mode=Mode.SPECIALIZE, samples=3, seed=11)
    second = is_member(x * det - det * x, rels, mode=Mode.SPECIALIZE, samples=3, seed=11)
    assert first.verdict == Verdict.MEMBER_SPECIALIZED
    assert first.q0 == second.q0
    assert len(first.q0) == 3


def test_determinant_is_central(mat2):
    ctx, rels = mat2
    det = det_q_row(2)
    for x in (_a(ctx, 1, 1), _a(ctx, 2, 1)):
        report = is_member(x * det - det * x, rels, mode=Mode.EXACT)
        assert report.verdict == Verdict.MEMBER_EXACT


def test_resource_limit_is_inconclusive(mat2):
    ctx, rels = mat2
    element = _a(ctx, 1, 2) * _a(ctx, 1, 1) * _a(ctx, 2, 2)
    report = is_member(element, rels, mode=Mode.EXACT, max_rows=1)
    assert report.verdict == Verdict.INCONCLUSIVE
    assert "limit" in report.reason
    report = is_member(element, rels, mode=Mode.EXACT, max_dim=1)
    assert report.verdict == Verdict.INCONCLUSIVE


def test_zero_is_member(mat2):
    _, rels = mat2
    report = ideal_membership(MembershipQuery(NCPoly.zero(), rels, mode=Mode.EXACT))
    assert report.verdict == Verdict.MEMBER_EXACT


def test_rejects_bad_queries(mat2):
    ctx, rels = mat2
    with pytest.raises(DomainError):
        MembershipQuery(_a(ctx, 1, 1) + _a(ctx, 1, 1) * _a(ctx, 1, 2), rels)
    with pytest.raises(DomainError):
        MembershipQuery(_a(ctx, 1, 1), rels, samples=0)

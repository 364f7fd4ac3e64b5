import pytest

from errors import DomainError, UnknownCheckError
from models import Mode, Verdict
from verify.registry import (
    REGISTRY,
    CheckOptions,
    check_theorem,
    classical_det,
    classical_pfaffian,
    combine,
    list_checks,
)


@pytest.fixture
def exact():
    return CheckOptions(mode=Mode.EXACT, seed=3)


def test_listing_keeps_registration_order():
    ids = [info.id for info in list_checks()]
    assert len(ids) == len(REGISTRY) == 42
    assert ids[0] == "trel-equivalence"
    assert ids[-1] == "det-pf-constant"
    assert {"pluecker-thp1a", "pluecker-thp1b", "pluecker-thp3"} <= set(ids)
    assert all(info.anchor for info in list_checks())


def test_unknown_check_is_rejected():
    with pytest.raises(UnknownCheckError):
        check_theorem("no-such-check")


def test_weakest_verdict_wins():
    assert combine([]) == Verdict.EXACT_ZERO
    assert combine([Verdict.EXACT_ZERO, Verdict.MEMBER_SPECIALIZED]) == Verdict.MEMBER_SPECIALIZED
    assert combine([Verdict.MEMBER_EXACT, Verdict.INCONCLUSIVE, Verdict.NONMEMBER]) == Verdict.NONMEMBER


def test_numeric_helpers():
    assert classical_det([[1, 2], [3, 4]]) == -2
    assert classical_pfaffian([[0, 2], [-2, 0]]) == 2
    assert classical_pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]) == 0


def test_worked_example(exact):
    report = check_theorem("hyperdet-example-2cubed", options=exact)
    assert report.verdict == Verdict.EXACT_ZERO
    assert report.params == {}


def test_unknown_parameters_are_ignored(exact):
    report = check_theorem("detq-row-eq-col", {"n": 2, "blocks": 5}, exact)
    assert report.params == {"n": 2}
    assert report.verdict == Verdict.EXACT_ZERO


@pytest.mark.parametrize("check_id", [
    "detq-multiplicative",
    "detq-coproduct-grouplike",
    "detq-row-interchange",
])
def test_quantum_determinant_checks(check_id, exact):
    assert check_theorem(check_id, {"n": 2}, exact).verdict == Verdict.EXACT_ZERO


def test_row_interchange_reports_column_residual(exact):
    report = check_theorem("detq-row-interchange", {"n": 2}, exact)
    assert any(note.startswith("column action residual") for note in report.notes)


def test_confluence_with_few_trials(exact):
    report = check_theorem("matq-confluence", {"n": 2, "trials": 10}, exact)
    assert report.verdict == Verdict.EXACT_ZERO
    assert report.parts["words"].reason == "10/10 word instances agree"


def test_axis_permutations_fix_the_full_sum(exact):
    report = check_theorem("sm-invariance-normalized", {"n": 2, "m": 3}, exact)
    assert report.verdict == Verdict.EXACT_ZERO
    assert len(report.parts) == 2


@pytest.mark.parametrize("check_id, params", [
    ("hyperdet-volume", {"n": 2, "m": 3, "axis": 2}),
    ("uq-weight", {"n": 2, "m": 2}),
    ("pf-volume", {"k": 1, "m": 2, "n": 2}),
    ("pf-classical", {"n": 2, "trials": 5}),
    ("cayley-odd-vanish", {"n": 2, "m": 3, "trials": 10}),
    ("circ-invariance-classical", {"n": 2, "m": 2, "trials": 5}),
    ("classical-product-invariance", {"n": 2, "m": 2, "l": 2, "trials": 5}),
])
def test_identities_checked_without_membership(check_id, params, exact):
    report = check_theorem(check_id, params, exact)
    assert report.verdict == Verdict.EXACT_ZERO
    assert report.mode == "exact"


def test_numeric_checks_are_seeded():
    first = check_theorem("circ-invariance-classical", {"trials": 3}, CheckOptions(seed=5))
    second = check_theorem("circ-invariance-classical", {"trials": 3}, CheckOptions(seed=5))
    assert first.parts["instances"].reason == second.parts["instances"].reason
    assert first.seed == 5


def test_classical_product_needs_even_axes(exact):
    with pytest.raises(DomainError):
        check_theorem("classical-product-invariance", {"m": 3}, exact)


def test_phi_constant_matches_q_factorial(exact):
    report = check_theorem("phi-image", {"n": 2, "m": 1}, exact)
    assert report.parts["homomorphism"].verdict == Verdict.EXACT_ZERO
    assert report.parts["proportional"].verdict == Verdict.EXACT_ZERO
    assert "agrees" in report.notes[-1]


def test_pfaffian_definitions_agree_exactly(exact):
    report = check_theorem("pf-equivalence", {"k": 1, "m": 2, "n": 2}, exact)
    assert report.parts["prime vs recursive"].verdict == Verdict.EXACT_ZERO


@pytest.mark.slow
def test_fixed_axis_forms_agree(exact):
    report = check_theorem("re-det", {"n": 2, "m": 3}, exact)
    assert report.verdict.verified
    assert set(report.parts) == {"axis 1 vs 2", "axis 1 vs 3"}


@pytest.mark.slow
def test_two_axis_relations_match_mat_q(exact):
    report = check_theorem("matq-m2-consistency", {"n": 2}, exact)
    assert report.verdict.verified


@pytest.mark.slow
@pytest.mark.parametrize("check_id", [
    "trel-equivalence",
    "rea3-derived",
    "hyperdet-normalized-vs-fixed",
    "sm-invariance-fixed",
    "eta-commutation",
    "delta-homomorphism",
    "delta-laplace",
    "coaction-left-det",
    "coaction-right-det",
    "uq-e-annihilates",
    "uq-f-annihilates",
    "row-laplace",
    "minor-laplace",
    "circ-invariance-quantum",
    "pf-lemma-equiv",
    "pf-composition",
    "pf-remark-k1",
    "pf-det-bridge",
    "det-as-pf-corollary",
    "det-pf-constant",
    "pf-laplace",
    "pluecker-thp1a",
    "pluecker-thp1b",
    "pluecker-thp3",
])
def test_check_verifies_at_default_sizes(check_id, exact):
    report = check_theorem(check_id, options=exact)
    assert report.verdict.verified, report.notes
    assert report.verdict.exit_code == 0


@pytest.mark.slow
@pytest.mark.parametrize("check_id, params", [
    ("det-pf-constant", {"k": 2, "m": 2, "n": 2}),
    ("pf-det-bridge", {"k": 2, "m": 2, "n": 2}),
    ("det-as-pf-corollary", {"n": 2, "m": 3}),
])
def test_pfaffian_bridges_verify_with_two_blocks(check_id, params, exact):
    report = check_theorem(check_id, params, exact)
    assert report.params == params
    assert report.verdict.verified, report.notes


@pytest.mark.slow
def test_det_pf_constant_keeps_the_displayed_comparison(exact):
    report = check_theorem("det-pf-constant", {"k": 2, "m": 2, "n": 2}, exact)
    assert report.parts["derived"].verdict == Verdict.MEMBER_EXACT
    assert any(note.startswith("derived constant") for note in report.notes)
    assert any("displayed constant" in note and "nonmember" in note for note in report.notes)


@pytest.mark.slow
@pytest.mark.parametrize("params", [
    {"k": 1, "m": 1, "n": 2, "t": 1},
    {"k": 2, "m": 1, "n": 2, "t": 1},
])
def test_laplace_constant_divides(params, exact):
    report = check_theorem("pf-laplace", params, exact)
    assert report.parts["multiply"].verdict == Verdict.NONMEMBER
    assert report.parts["divide"].verdict.verified
    assert report.verdict == report.parts["divide"].verdict
    assert report.notes[0] == "resolved constant placement: divide by the q-binomial"


@pytest.mark.slow
def test_left_action_needs_the_opposite_twist(exact):
    report = check_theorem("uq-e-annihilates", options=exact)
    displayed = report.parts["left e_1 displayed (1, 1)"]
    twisted = report.parts["left e_1 twist (1, -1)"]
    assert not displayed.verdict.verified
    assert twisted.verdict.verified
    assert "left e_1: " + twisted.verdict.value + " with twist (1, -1)" in report.notes
    assert report.verdict.verified


@pytest.mark.slow
@pytest.mark.parametrize("check_id", sorted(REGISTRY))
def test_exact_and_specialized_modes_agree(check_id):
    exact_report = check_theorem(check_id, options=CheckOptions(mode=Mode.EXACT, seed=3))
    special = check_theorem(check_id, options=CheckOptions(mode=Mode.SPECIALIZE, seed=3))
    if Verdict.INCONCLUSIVE in (exact_report.verdict, special.verdict):
        pytest.skip("one mode did not complete")
    assert exact_report.verdict.exit_code == special.verdict.exit_code

import pytest

from trimser.forms import PolyForm
from trimser.linalg import FormSpace, span
from trimser.properties import (
    FAIL,
    FAMILIES,
    PASS,
    PropertyReport,
    _Claims,
    check_decompositions,
    check_exactness,
    check_inclusion,
    check_J_identities,
    check_lemma_identities,
    check_serendipity_structure,
    check_subcomplex,
    check_trace,
)

CELLS = [(n, k, r) for n in (1, 2, 3) for k in range(n + 1) for r in range(1, 5)]
CELLS += [(4, k, r) for k in range(5) for r in (1, 2)]

PER_CELL = [
    check_inclusion,
    check_subcomplex,
    check_trace,
    check_decompositions,
    check_J_identities,
    check_lemma_identities,
    check_serendipity_structure,
]


@pytest.mark.parametrize("n,k,r", CELLS)
def test_every_cell_property_passes(n, k, r):
    for check in PER_CELL:
        rep = check(n, k, r)
        assert rep.passed, rep.record()
        assert (rep.n, rep.k, rep.r) == (n, k, r)


@pytest.mark.parametrize("family", sorted(FAMILIES))
@pytest.mark.parametrize("n,r", [(n, r) for n in (1, 2, 3) for r in range(1, 5)] + [(4, 1), (4, 2)])
def test_exactness(family, n, r):
    rep = check_exactness(n, r, family)
    assert rep.passed, rep.record()
    assert rep.property == f"exactness[{family}]"
    assert rep.k is None


def test_exactness_detail():
    rep = check_exactness(2, 2, "Sminus")
    assert "dims 8,10,3" in rep.detail
    assert "ranks 7,3,0" in rep.detail


def test_exactness_dims_sum_to_zero_euler_characteristic():
    for n in (1, 2, 3):
        for r in range(1, 5):
            for family in FAMILIES:
                dims = [int(x) for x in check_exactness(n, r, family).detail.split(";")[0].split()[1].split(",")]
                assert sum((-1) ** k * d for k, d in enumerate(dims)) == 1


def test_unknown_family():
    with pytest.raises(ValueError):
        check_exactness(2, 1, "Q")


def test_reports_are_deterministic():
    a = [check(3, 1, 2).record() for check in PER_CELL]
    b = [check(3, 1, 2).record() for check in PER_CELL]
    assert a == b


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        PropertyReport("x", 2, 1, 1, FAIL, "broken")
    ok = PropertyReport("x", 2, 1, 1, PASS, "fine")
    assert ok.passed and ok.record()["verdict"] == "pass"


def test_false_claim_produces_witness():
    c = _Claims()
    big = span([PolyForm.monomial((1, 0), (0,)), PolyForm.monomial((0, 1), (0,))])
    small = span([PolyForm.monomial((1, 0), (0,))])
    c.subset("big in small", big, small)
    rep = c.report("demo", 2, 1, 1)
    assert rep.verdict == FAIL
    assert rep.witness == "(1) x2 dx1"
    assert "big in small (subset) failed" in rep.record()["detail"]
    assert "witness: (1) x2 dx1" in rep.record()["detail"]


def test_false_direct_sum_and_dimension_claims():
    v = span([PolyForm.monomial((1, 0), (0,))])
    c = _Claims()
    c.direct("v + v", v, v)
    assert c.report("demo", 2, 1, 1).witness == "dim of sum 1 < 1 + 1"
    c = _Claims()
    c.holds("dims", False, "3 vs 4")
    c.equal("never reached first", v, FormSpace(2, 1))
    rep = c.report("demo", 2, 1, 1)
    assert rep.witness == "3 vs 4"


def test_inclusion_is_strict_for_positive_order():
    rep = check_inclusion(2, 1, 2)
    assert rep.passed and "dims 14 <= 17 <= 22" in rep.detail
    assert "dims 8 <= 12 <= 12" in check_inclusion(2, 0, 2).detail

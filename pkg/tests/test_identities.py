import pytest

from qdivisor import identities
from qdivisor.identities import UnknownIdentity, check, check_all, ids, printed_f_recurrence_holds
from qdivisor.series import QSeries

SPEC_IDS = {
    "thm-1.1", "lem-3.1", "core-2.4", "cheb-ar-2.1", "u1-0", "u1-1-pent", "u1-neg1-theta", "bilateral-fold",
    "a113661", "u1-1-q4", "relay-q4", "lem-7.1-a", "lem-7.1-b", "lem-7.1-c", "hex-lattice", "ex-7-theta",
    "ex-7-e2", "ex-7-eta", "prop-7-ft", "mac-neg2", "mac-2", "mac-0", "mac-1", "mac-neg1", "u1-neg1-minus-u1-1",
}


def test_registry_covers_required_ids():
    assert SPEC_IDS <= set(ids())
    assert ids() == sorted(ids())


def test_u1_0_small():
    comps = identities.REGISTRY["u1-0"].build(3)
    (_, lhs, rhs), = comps
    assert lhs == rhs == QSeries([0, 1, 1, 0], 3)


def test_unknown():
    with pytest.raises(UnknownIdentity):
        check("unknown-id", 10)


def test_thm_1_1():
    assert check("thm-1.1", 200).passed


def test_order_zero_all_pass():
    assert all(r.passed for r in check_all(0))


def test_all_pass_at_120_in_parallel():
    reports = check_all(120, jobs=2)
    assert [r.id for r in reports] == ids()
    bad = [(r.id, r.first_mismatch) for r in reports if not r.passed]
    assert bad == []


@pytest.mark.parametrize("k", [0, 5, 17])
def test_perturbation_is_caught_at_k(k):
    for i in ("thm-1.1", "hex-lattice", "u1-0", "ex-7-e2", "core-2.4"):
        r = check(i, 40, perturb_at=k)
        assert not r.passed
        assert r.first_mismatch.n == k


def test_every_identity_detects_perturbation():
    for i in ids():
        assert not check(i, 30, perturb_at=3).passed, i


def test_printed_recurrence_variant_fails():
    # shifting f_{t-1} to argument n breaks the recurrence; the registered form uses n+1
    assert not printed_f_recurrence_holds()


def test_cutoffs_recorded():
    assert "sqrt" in identities.REGISTRY["hex-lattice"].cutoff
    r = check("hex-lattice", 20)
    assert r.detail["cutoff"]

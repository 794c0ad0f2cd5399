import pytest

from nestcorr.errors import ValidationError
from nestcorr.verify import CHECKS, LITERAL_FORMS, Params, run_all, run_check


def test_all_small_checks_pass():
    results = run_all(Params(small=True))
    assert [r.name for r in results] == list(CHECKS)
    for r in results:
        assert r.ok, r.line()
        assert r.cases > 0


@pytest.mark.parametrize("name", LITERAL_FORMS)
def test_printed_variants_are_reported_as_mismatches(name):
    result = run_check(name, Params(small=True, form="literal"))
    assert not result.ok
    assert result.status == "MISMATCH"


def test_pinned_parameters():
    result = run_check("theorem3", Params(N=3, L=2, M=3))
    assert result.status == "EXACT-MATCH"
    assert result.cases == 4


def test_unknown_check():
    with pytest.raises(ValidationError):
        run_check("nope")

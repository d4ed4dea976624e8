import json
import time

import pytest

from partlab import identities
from partlab.errors import DomainError, UnknownIdentityError
from partlab.identities import (
    adjudicate_orientation,
    format_params,
    identity_ids,
    list_identities,
    overall_ok,
    reports_to_csv,
    reports_to_json,
    verify,
    verify_cells,
)


def test_registry_complete_and_unique():
    ids = identity_ids()
    for k in range(1, 17):
        assert f"I{k}" in ids
    assert "I15-swapped" in ids
    assert len(ids) == len(set(ids))
    assert len(list_identities()) == len(ids)


def test_smoke_all_default_grids():
    reports = verify_cells(n_max=20)
    assert overall_ok(reports)
    # every registered identity appears in the batch
    assert {r.id for r in reports} == set(identity_ids())


def test_verify_i8_both_engines():
    report = verify("I8", None, 40, "both")
    assert report.holds
    assert report.engine == "both"


def test_verify_i6_series_to_order_200():
    report = verify("I6", {"p": 5, "offset": 4}, 200, "series")
    assert report.holds
    assert report.n_max == 200


def test_verify_i1_enum():
    assert verify("I1", None, 25, "enum").holds


def test_default_engines_and_n_max():
    report = verify("I9")
    assert report.engine == "enum" and report.n_max == 60 and report.holds
    report = verify("I5", {"p": 2})
    assert report.engine == "series" and report.n_max == 200 and report.holds


def test_adjudication_exactly_one_orientation():
    for p in (2, 3):
        assert adjudicate_orientation(p, 30) == "swapped"


def test_printed_orientation_counterexample_reproducible():
    report = verify("I15", {"p": 2}, 30, "enum")
    assert not report.holds
    ce = report.counterexample
    assert (ce.n, ce.lhs, ce.rhs) == (2, 1, 0)
    again = verify("I15", {"p": 2}, ce.n, "enum")
    assert again.counterexample == ce


def test_pair_auto_included_and_counts_as_holding():
    reports = verify_cells(["I15"], n_max=20)
    assert {r.id for r in reports} == {"I15", "I15-swapped"}
    assert overall_ok(reports)


def test_overall_ok_fails_when_plain_identity_fails():
    reports = verify_cells(["I1"], n_max=20)
    assert overall_ok(reports)
    broken = [identities.IdentityReport(
        id="I1", params=(), n_max=5, engine="enum", status="fails",
        counterexample=identities.Counterexample(3, 1, 2), ms=0)]
    assert not overall_ok(broken)


def test_unknown_identity_and_bad_params():
    with pytest.raises(UnknownIdentityError):
        verify("I99")
    with pytest.raises(DomainError):
        verify("I4", {"p": 9, "r": 0})
    with pytest.raises(DomainError):
        verify("I4")  # grid has many cells, parameters required
    with pytest.raises(DomainError):
        verify("I1", None, 0)
    with pytest.raises(DomainError):
        verify("I1", None, 10, "series")  # no closed form on both sides


def test_grid_filtering():
    reports = verify_cells(["I11"], params={"p": 3, "k": 4}, n_max=15)
    assert len(reports) == 3  # r in 0..2
    assert all(dict(r.params)["p"] == 3 and dict(r.params)["k"] == 4 for r in reports)


def test_blanket_engine_request_skips_unsupported():
    reports = verify_cells(n_max=30, engine="series")
    ran = {r.id for r in reports}
    assert "I5" in ran and "I14" in ran
    assert "I1" not in ran and "I16" not in ran
    assert overall_ok(reports)
    # explicitly requested ids still reject an unsupported engine
    with pytest.raises(DomainError):
        verify_cells(["I1"], engine="series")


def test_i5_enum_engine():
    assert verify("I5", {"p": 3}, 25, "enum").holds
    assert verify("I5", {"p": 3}, 25, "both").holds


def test_enum_n_max_beyond_cap_fails_fast():
    from partlab.errors import ResourceLimitError

    start = time.perf_counter()
    with pytest.raises(ResourceLimitError):
        verify("I9", None, 100, "enum")
    assert time.perf_counter() - start < 1.0


def test_i2_sign_is_checked_as_signed_integers():
    # b(n) itself is negative at n = 3; the identity is about signed values.
    from partlab import families

    assert families.count_enum("b", 3) == -1
    assert families.count_enum("c", 3) == 1
    assert verify("I2", None, 10, "enum").holds


def test_parallel_jobs_match_sequential():
    seq = verify_cells(["I4"], n_max=12, jobs=1)
    par = verify_cells(["I4"], n_max=12, jobs=2)
    strip = lambda rs: [(r.id, r.params, r.status) for r in rs]
    assert strip(seq) == strip(par)


def test_json_and_csv_serialization():
    reports = verify_cells(["I13"], n_max=10)
    payload = json.loads(reports_to_json(reports))
    assert len(payload) == 4
    assert set(payload[0]) == {"id", "params", "n_max", "engine", "status", "counterexample", "ms"}
    assert payload[0]["status"] == "holds"

    csv_text = reports_to_csv(reports)
    lines = csv_text.strip().splitlines()
    assert lines[0] == ",".join(identities.CSV_FIELDS)
    assert len(lines) == 5
    assert lines[1].startswith("I13,p=2;k=2,")
    # every row keeps the same column count
    assert {line.count(",") for line in lines} == {len(identities.CSV_FIELDS) - 1}


def test_format_params_order_is_stable():
    assert format_params({"k": 4, "p": 3, "r": 1}) == "p=3,k=4,r=1"
    assert format_params({}) == ""

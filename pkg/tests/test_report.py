from fractions import Fraction

import pytest

from reprodet.core.report import IdentityRecord, Verdict, VerificationReport
from reprodet.core.scalars import prime_field


class TestIdentityRecord:
    def test_defaults(self):
        first = IdentityRecord("demo", Verdict.PASS)
        second = IdentityRecord("demo", Verdict.PASS)
        assert first.field == "rational"
        assert first.witness == {}
        first.witness["lhs"] = "1"
        assert second.witness == {}

    def test_reports_do_not_share_records(self):
        VerificationReport().skip("demo", "degenerate")
        assert VerificationReport().records == []


class TestVerificationReport:
    def test_empty_report_passes(self):
        report = VerificationReport()
        assert report.passed
        assert report.counts() == {"pass": 0, "fail": 0, "skipped": 0}

    def test_failure_carries_witness(self):
        report = VerificationReport()
        record = report.check("demo", Fraction(1, 2), Fraction(1, 3), dn=Fraction(-2))
        assert record.verdict is Verdict.FAIL
        assert record.witness == {"lhs": "1/2", "rhs": "1/3", "dn": "-2"}
        assert not report.passed

    def test_pass_has_no_witness(self):
        report = VerificationReport()
        f = prime_field(7)
        record = report.check("demo", f(3), f(10), f.name)
        assert record.verdict is Verdict.PASS
        assert record.witness == {}
        assert record.field == "prime:7"

    def test_skips_do_not_fail(self):
        report = VerificationReport()
        report.skip("demo", "degenerate")
        assert report.passed
        assert report.to_dict()["records"][0]["note"] == "degenerate"

    def test_confirm(self):
        report = VerificationReport()
        report.confirm("ok", True, row="0")
        bad = report.confirm("bad", False, row="1")
        assert report.get("ok").witness == {}
        assert bad.witness == {"row": "1"}

    def test_get_unknown(self):
        with pytest.raises(KeyError):
            VerificationReport().get("missing")

    def test_merge_and_sort(self):
        first = VerificationReport()
        first.check("a", 1, 1)
        second = VerificationReport()
        second.check("b", 1, 2)
        merged = VerificationReport.merge([second.for_trial(1), first.for_trial(0)]).sorted_by_trial()
        assert [r.identity for r in merged.records] == ["a", "b"]
        assert merged.to_dict()["verdict"] == "fail"
        assert merged.counts() == {"pass": 1, "fail": 1, "skipped": 0}

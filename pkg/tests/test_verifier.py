"""
Oracle verification tests
"""

import pytest
from test_tate import TAME_CORPUS, WILD_CURVE

from modules.config import Settings
from modules.input_parser import parse_curve_file
from modules.series_core import ReductionData, WildEllipticData
from modules.verifier import VerifyReport, base_change_violations, tate_oracle, verify_curve, verify_data

IV_STAR = "a6 = t^4"
I1 = "a1 = 1\na6 = t"
WILD = "field = F2\na3 = t^2\na6 = t"


@pytest.fixture
def settings():
    return Settings(dmax=12)


class TestOracle:
    """Tate oracle tests"""

    def test_iv_star_orders(self, settings):
        """Test phi over K(d) follows 3, 3, 1"""
        oracle = tate_oracle(parse_curve_file(IV_STAR), 9, settings)
        assert [oracle[d].phi for d in range(1, 10)] == [3, 3, 1, 3, 3, 1, 3, 3, 1]

    def test_skips_wild_degrees(self, settings):
        """Test only d prime to p are swept"""
        oracle = tate_oracle(parse_curve_file("field = F5\na1 = 1\na6 = t"), 12, settings)
        assert 5 not in oracle and 10 not in oracle
        assert oracle[7].phi == 7

    def test_threads_agree(self):
        """Test the threaded sweep gives the same answer"""
        model = parse_curve_file(IV_STAR)
        serial = tate_oracle(model, 8, Settings(workers=1))
        threaded = tate_oracle(model, 8, Settings(workers=4))
        assert serial == threaded

    def test_violations(self):
        """Test phi(d) = d^t phi(1) check"""
        assert base_change_violations({1: 2, 2: 4, 3: 6}, 1, 1) == []
        assert base_change_violations({1: 2, 2: 4, 3: 5}, 1, 1) == [3]
        assert base_change_violations({1: 3, 2: 3, 3: 1}, 3, 0) == []


class TestVerifyCurve:
    """Curve verification tests"""

    @pytest.mark.parametrize("text", [text for text, _, _ in TAME_CORPUS] + [WILD_CURVE])
    def test_corpus_passes(self, text):
        """Test closed form agrees with the oracle on every Kodaira type up to d = 24"""
        report = verify_curve(parse_curve_file(text), 24, Settings(dmax=24))
        assert report.passed
        assert report.first_mismatch is None
        assert len(report.rows) == 24

    def test_corpus_covers_every_type(self):
        """Test the swept curves reach every Kodaira family over K"""
        labels = {label for _, label, _ in TAME_CORPUS}
        assert {"I0", "I1", "I3", "I0*", "I1*", "II", "III", "IV", "II*", "III*", "IV*"} <= labels

    def test_degree_signs(self, settings):
        """Test zero over Q for potential good reduction, negative otherwise"""
        assert verify_curve(parse_curve_file(IV_STAR), 12, settings).degree_sign_computed == "zero"
        assert verify_curve(parse_curve_file(I1), 12, settings).degree_sign_computed == "negative"
        f5 = parse_curve_file("field = F5\na6 = t^4")
        assert verify_curve(f5, 12, settings).degree_sign_computed == "negative"

    def test_wild_curve(self, settings):
        """Test the F2 curve is checked against the wild series"""
        report = verify_curve(parse_curve_file(WILD), 12, settings)
        assert report.regime == "wild"
        assert report.passed
        assert report.degree_sign_computed == "negative"
        rows = {row.d: row for row in report.rows}
        assert rows[3].oracle == 4 and rows[3].kodaira_type == "I0*"
        assert rows[5].oracle == 1
        assert rows[4].oracle == 0

    def test_wrong_claim_detected(self, settings):
        """Test a wrong tower fails at the first bad coefficient"""
        claimed = ReductionData(p=1, e=3, tower={1: (3, 0), 3: (2, 0)}, potential_good=True)
        report = verify_curve(parse_curve_file(IV_STAR), 12, settings, claimed)
        assert not report.passed
        assert report.first_mismatch == 3


class TestVerifyData:
    """Abstract data verification tests"""

    def test_tame_data(self):
        """Test tame data against direct summation"""
        report = verify_data(ReductionData(p=1, e=1, tower={1: (2, 1)}), 30)
        assert report.passed
        assert report.pole_order_computed == 2

    def test_wild_data(self):
        """Test wild elliptic data"""
        report = verify_data(WildEllipticData(p=2, e_prime=3, tower={1: 1, 3: 4}), 30)
        assert report.passed
        assert report.regime == "wild"

    def test_large_semi_stable_degree(self):
        """Test e = 25 data passes with denominator 1 - T^25"""
        data = ReductionData(p=1, e=25, tower={1: (2, 0), 5: (3, 0), 25: (1, 0)}, potential_good=True)
        report = verify_data(data, 60)
        assert report.first_mismatch is None
        assert report.in_cyclotomic_ring
        assert report.passed


class TestVerifyReport:
    """Pass/fail bookkeeping tests"""

    def _report(self, **overrides):
        fields = {
            "regime": "tame",
            "rows": [],
            "pole_order_claimed": 1,
            "pole_order_computed": 1,
            "degree_sign_claimed": "zero",
            "degree_sign_computed": "zero",
            "in_cyclotomic_ring": True,
        }
        return VerifyReport(**{**fields, **overrides})

    def test_clean(self):
        """Test no failed claims"""
        report = self._report()
        assert report.passed
        assert report.failures == []

    def test_claims_without_mismatch(self):
        """Test failures name the claim when every coefficient matches"""
        report = self._report(pole_order_computed=2, in_cyclotomic_ring=False, base_change_violations=[5])
        assert not report.passed
        assert report.first_mismatch is None
        assert report.failures == [
            "pole order 2, claimed 1",
            "denominator outside Z[T, 1/(T^j - 1)]",
            "base change law at d=5",
        ]

"""
Report template tests
"""

import json
from fractions import Fraction

import pytest
from sympy import S

from modules.galois_lattice import CyclicLatticeAction, h1, invariants_rank
from modules.input_parser import parse_curve_file
from modules.ratfun import psi
from modules.series_core import ReductionData, assemble
from modules.tate import reduction_tower, tate_algorithm
from modules.verifier import verify_data
from templates import render_json, render_text, to_json_value
from templates.series_template import PsiTemplate, SeriesTemplate
from templates.tate_template import TateTemplate
from templates.torus_template import TorusTemplate
from templates.verify_template import VerifyTemplate


class TestJsonValues:
    """Canonical JSON conversion tests"""

    def test_large_integers_as_strings(self):
        """Test integers beyond 2^53"""
        assert to_json_value(2 ** 53) == 2 ** 53
        assert to_json_value(2 ** 60) == str(2 ** 60)
        assert to_json_value(-(2 ** 60)) == str(-(2 ** 60))

    def test_fractions(self):
        """Test exact rationals"""
        assert to_json_value(Fraction(-2, 3)) == "-2/3"
        assert to_json_value(Fraction(4, 2)) == 2

    def test_infinities(self):
        """Test degree and valuation sentinels"""
        assert to_json_value(S.NegativeInfinity) == "-oo"
        assert to_json_value(float("inf")) == "oo"

    def test_ratfun(self):
        """Test rational functions as coefficient arrays"""
        assert to_json_value({"f": psi(0)}) == {"f": {"numerator": [0, -1], "denominator": [-1, 1]}}

    def test_unknown_type(self):
        """Test unsupported values are rejected"""
        with pytest.raises(TypeError):
            to_json_value(object())

    def test_sorted_keys(self):
        """Test canonical key order"""
        assert render_json({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}'


class TestTateTemplate:
    """Tate report tests"""

    @pytest.fixture
    def template(self):
        return TateTemplate()

    def test_build(self, template):
        """Test IV* report with its tower"""
        model = parse_curve_file("a6 = t^4")
        kodaira, _ = tate_algorithm(model)
        tower, _ = reduction_tower(model)
        report = template.build(kodaira, "Q", tower)
        assert (report["type"], report["phi"], report["e"], report["e_prime"]) == ("IV*", 3, 3, 3)
        assert report["tower"] == [
            {"a": 1, "type": "IV*", "phi": 3, "t": 0},
            {"a": 3, "type": "I0", "phi": 1, "t": 0},
        ]

    def test_text_sections(self, template):
        """Test text rendering has both sections"""
        kodaira, _ = tate_algorithm(parse_curve_file("a1 = 1\na6 = t"))
        text = render_text(template.build(kodaira, "Q"), template.SECTIONS)
        assert "Reduction" in text
        assert "type: I1" in text
        assert "e: -" in text


class TestSeriesTemplate:
    """Series report tests"""

    @pytest.fixture
    def template(self):
        return SeriesTemplate()

    def test_build(self, template):
        """Test IV* data series report"""
        report = assemble(ReductionData(p=1, e=3, tower={1: (3, 0), 3: (1, 0)}, potential_good=True))
        built = template.build(report, 6)
        assert built["series"] == "(3T + 3T^2 + T^3)/(1 - T^3)"
        assert built["coefficients"] == [3, 3, 1, 3, 3, 1]
        assert built["cyclotomic_orders"] == [1, 3]
        assert built["pole_order"] == 1
        assert built["degree"] == 0

    def test_json(self, template):
        """Test JSON output parses back and renders to the same text"""
        report = assemble(ReductionData(p=1, e=1, tower={1: (2, 1)}))
        rendered = render_json(template.build(report, 4))
        data = json.loads(rendered)
        assert render_json(data) == rendered
        assert data["coefficients"] == [2, 4, 6, 8]
        assert data["closed_form"] == {"numerator": [0, 2], "denominator": [1, -2, 1]}
        assert data["residue"] == 2

    def test_psi(self):
        """Test psi report"""
        built = PsiTemplate().build(2, psi(2), 5)
        assert built["series"] == "(T + T^2)/(1 - 3T + 3T^2 - T^3)"
        assert built["coefficients"] == [1, 4, 9, 16, 25]
        assert (built["pole_order"], built["residue"]) == (3, -2)


class TestVerifyTemplate:
    """Verify report tests"""

    def test_build(self):
        """Test rows and summary"""
        report = verify_data(ReductionData(p=1, e=1, tower={1: (1, 0)}, potential_good=True), 5)
        built = VerifyTemplate().build(report)
        assert built["passed"] is True
        assert built["first_mismatch"] is None
        assert [row["oracle"] for row in built["rows"]] == [1, 1, 1, 1, 1]
        text = render_text(built, VerifyTemplate.SECTIONS)
        assert "passed: True" in text


class TestTorusTemplate:
    """Torus report tests"""

    def test_build(self):
        """Test sign action report"""
        action = CyclicLatticeAction(rank=1, order=2, matrix=((-1,),))
        built = TorusTemplate().build(action, invariants_rank(action), h1(action))
        assert (built["h1"], built["phi"], built["invariants_rank"]) == ("Z/2", 2, 0)

"""
Command-line interface tests
"""

import json
import re

import pytest
from main import main

from templates import render_json

E25 = "p = 1\ne = 25\npotential_good = yes\ntower = 1 2 0\ntower = 5 3 0\ntower = 25 1 0\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


class TestTateCommand:
    """neron tate"""

    def test_iv_star(self, write, capsys):
        """Test IV* report"""
        code, report = run_json(capsys, ["tate", write("c.txt", "field = Q\na6 = t^4\n")])
        assert code == 0
        assert (report["type"], report["phi"], report["e"]) == ("IV*", 3, 3)
        assert report["tower"][1] == {"a": 3, "type": "I0", "phi": 1, "t": 0}

    def test_wild_curve_reported(self, write, capsys):
        """Test the wild tower is shown for a wild curve"""
        code, report = run_json(capsys, ["tate", write("w.txt", "field = F2\na3 = t^2\na6 = t\n")])
        assert code == 0
        assert (report["type"], report["regime"], report["e_prime"]) == ("II", "wild", 3)

    def test_parse_error(self, write, capsys):
        """Test exit code 1 with a located message"""
        code = main(["tate", write("bad.txt", "a6 = t^^2\n")])
        assert code == 1
        assert "line 1, column 8" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        """Test unreadable input"""
        assert main(["tate", str(tmp_path / "absent.txt")]) == 1

    def test_singular(self, write):
        """Test singular curve"""
        assert main(["tate", write("s.txt", "a2 = t^2\n")]) == 1


class TestSeriesCommand:
    """neron series"""

    def test_curve(self, write, capsys):
        """Test series of y^2 = x^3 + t^4"""
        code, report = run_json(capsys, ["series", write("c.txt", "a6 = t^4\n"), "--terms", "6"])
        assert code == 0
        assert report["coefficients"] == [3, 3, 1, 3, 3, 1]
        assert report["series"] == "(3T + 3T^2 + T^3)/(1 - T^3)"

    def test_data_file(self, write, capsys):
        """Test wild elliptic data"""
        path = write("d.txt", "p = 2\ne_prime = 3\ntower = 1 1\ntower = 3 4\n")
        code, report = run_json(capsys, ["series", path, "--terms", "9"])
        assert code == 0
        assert report["coefficients"] == [1, 0, 4, 0, 1, 0, 1, 0, 4]
        assert (report["pole_order"], report["degree"], report["regime"]) == (1, -1, "wild")

    def test_wild_curve_needs_flag(self, write, capsys):
        """Test exit code 3 and the hint for a wild curve"""
        path = write("w.txt", "field = F2\na3 = t^2\na6 = t\n")
        assert main(["series", path]) == 3
        assert "--wild" in capsys.readouterr().err
        code, report = run_json(capsys, ["series", path, "--wild", "--terms", "3"])
        assert code == 0
        assert report["coefficients"] == [1, 0, 4]

    def test_text_output(self, write, capsys):
        """Test human-readable output"""
        assert main(["series", write("c.txt", "a1 = 1\na6 = t\n"), "--terms", "4"]) == 0
        out = capsys.readouterr().out
        assert "Closed form" in out
        assert "pole_order: 2" in out


class TestVerifyCommand:
    """neron verify"""

    def test_passes(self, write, capsys):
        """Test a correct closed form"""
        code, report = run_json(capsys, ["verify", write("c.txt", "a6 = t^4\n"), "--dmax", "9"])
        assert code == 0
        assert report["passed"] is True
        assert len(report["rows"]) == 9

    def test_mismatch(self, write, capsys, caplog):
        """Test exit code 4 for a wrong claimed tower"""
        curve = write("c.txt", "a6 = t^4\n")
        claimed = write("d.txt", "p = 1\ne = 3\npotential_good = yes\ntower = 1 3 0\ntower = 3 2 0\n")
        code, report = run_json(capsys, ["verify", curve, "--dmax", "6", "--data", claimed])
        assert code == 4
        assert report["first_mismatch"] == 3
        assert "Verification failed: coefficient at d=3" in caplog.text

    def test_workers(self, write, capsys):
        """Test threaded sweep"""
        code, report = run_json(capsys, ["verify", write("c.txt", "a1 = 1\na6 = t\n"), "--dmax", "8", "--workers", "2"])
        assert code == 0
        assert [row["oracle"] for row in report["rows"]] == list(range(1, 9))

    def test_large_semi_stable_degree(self, write, capsys):
        """Test e = 25 data verifies and its series lies over 1 - T^25"""
        path = write("e25.txt", E25)
        code, report = run_json(capsys, ["verify", path, "--terms", "60"])
        assert code == 0
        assert report["first_mismatch"] is None
        assert report["in_cyclotomic_ring"] is True
        code, report = run_json(capsys, ["series", path])
        assert code == 0
        assert report["cyclotomic_orders"] == [1, 5, 25]


class TestTorusCommand:
    """neron torus"""

    def test_sign(self, write, capsys):
        """Test Z with the sign action"""
        code, report = run_json(capsys, ["torus", write("l.txt", "rank 1\norder 2\n-1\n")])
        assert code == 0
        assert (report["h1"], report["phi"]) == ("Z/2", 2)

    def test_split_part(self, write):
        """Test infinite component group"""
        assert main(["torus", write("l.txt", "rank 1\norder 1\n1\n")]) == 1


class TestPsiCommand:
    """neron psi"""

    def test_psi(self, capsys):
        """Test psi 2"""
        code, report = run_json(capsys, ["psi", "2", "--terms", "4"])
        assert code == 0
        assert report["coefficients"] == [1, 4, 9, 16]
        assert (report["pole_order"], report["residue"]) == (3, -2)

    def test_default_terms(self, capsys):
        """Test psi prints 20 coefficients by default"""
        code, report = run_json(capsys, ["psi", "0"])
        assert code == 0
        assert report["coefficients"] == [1] * 20

    def test_negative_index(self, capsys):
        """Test a < 0 is an input error"""
        assert main(["psi", "-1"]) == 1


def _numbers(value) -> list:
    return sorted(re.findall(r"-?\d+", value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)))


def _text_fields(text: str) -> dict:
    """'  key: value' lines, with indented table rows folded into their key"""
    fields, key = {}, None
    for line in text.splitlines():
        match = re.match(r"^  (\w+): ?(.*)$", line)
        if match:
            key = match.group(1)
            fields[key] = match.group(2)
        elif line.startswith("    ") and key:
            fields[key] += " " + line.strip()
    return fields


OUTPUT_CASES = [
    ("tate", "c.txt", "a6 = t^4\n", []),
    ("series", "c.txt", "a1 = 1\na6 = t\n", ["--terms", "6"]),
    ("series", "d.txt", "p = 2\ne_prime = 3\ntower = 1 1\ntower = 3 4\n", ["--terms", "9"]),
    ("verify", "c.txt", "a6 = t^4\n", ["--dmax", "6"]),
    ("torus", "l.txt", "rank 3\norder 3\n0 0 1\n1 0 0\n0 1 0\n", []),
    ("psi", None, "2", ["--terms", "5"]),
]


class TestOutputFormats:
    """JSON and text renderings of every command"""

    def _argv(self, write, command, name, text, extra):
        target = write(name, text) if name else text
        return [command, target] + extra

    @pytest.mark.parametrize("command, name, text, extra", OUTPUT_CASES)
    def test_json_rerenders_identically(self, write, capsys, command, name, text, extra):
        """Test rendering the parsed JSON again gives the same bytes"""
        assert main(self._argv(write, command, name, text, extra) + ["--json"]) == 0
        out = capsys.readouterr().out
        assert render_json(json.loads(out)) + "\n" == out

    @pytest.mark.parametrize("command, name, text, extra", OUTPUT_CASES)
    def test_text_matches_json(self, write, capsys, command, name, text, extra):
        """Test every text field carries the same numbers as its JSON value"""
        argv = self._argv(write, command, name, text, extra)
        assert main(argv + ["--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert main(argv) == 0
        fields = _text_fields(capsys.readouterr().out)
        assert fields
        for key, value in fields.items():
            json_value = data[key]
            expected = "-" if json_value is None else json_value
            assert _numbers(value) == _numbers(expected), key

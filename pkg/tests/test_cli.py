import io
import json

import pytest
from rich.console import Console

from oddarc import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from src.analysis.associator import Cochain, explicit_twist
from src.errors import CocycleError, TorsionError


def invoke(*argv):
    buffer = io.StringIO()
    code = run(list(argv), Console(file=buffer, width=240, color_system=None))
    return code, buffer.getvalue()


class TestCommands:
    def test_enumerate(self):
        code, text = invoke("enumerate", "--n", "3")
        assert code == EXIT_OK
        assert "Catalan(3) = 5 matchings" in text

    def test_enumerate_json(self):
        code, text = invoke("enumerate", "--n", "3", "--format", "json")
        assert code == EXIT_OK
        record = json.loads(text)
        assert record['passed']
        assert len(record['matchings']) == 5
        assert record['command'] == "enumerate"

    @pytest.mark.parametrize("algebra", ["odd", "even", "twisted"])
    @pytest.mark.parametrize("side", ["a", "b"])
    def test_table_matches_golden(self, algebra, side):
        code, text = invoke("table", "--n", "2", "--side", side, "--algebra", algebra)
        assert code == EXIT_OK
        assert f"[OK] table matches {algebra}_n2_{side}.json" in text

    def test_table_json(self):
        code, text = invoke("table", "--n", "2", "--format", "json")
        record = json.loads(text)
        assert code == EXIT_OK
        assert record['table']['rows'][:4] == ["1_a", "a1", "a2", "a1^a2"]

    def test_multiply(self):
        code, text = invoke("multiply", "--n", "2", "--format", "json", "1_ba", "1_ab")
        assert code == EXIT_OK
        assert json.loads(text)['product']

    def test_springer(self):
        code, text = invoke("springer", "--n", "2")
        assert code == EXIT_OK
        assert "1+3q^2+2q^4" in text

    def test_center(self):
        assert invoke("center", "--n", "2")[0] == EXIT_OK
        assert invoke("center", "--n", "2", "--even")[0] == EXIT_OK

    def test_twist_written(self, tmp_path):
        path = tmp_path / "tau.json"
        code, _ = invoke("twist", "--n", "2", "--out", str(path))
        assert code == EXIT_OK
        assert Cochain.load(str(path)).n == 2

    def test_verify_twist_from_file(self, tmp_path):
        path = tmp_path / "tau.json"
        explicit_twist().save(str(path))
        assert invoke("verify-twist", "--n", "2", "--tau", str(path))[0] == EXIT_OK

    def test_failing_twist_exit_code(self, tmp_path):
        path = tmp_path / "zero.json"
        Cochain(2, 2, 4).save(str(path))
        code, text = invoke("verify-twist", "--n", "2", "--tau", str(path))
        assert code == EXIT_FAILED
        assert "witness" in text

    def test_classify(self):
        assert invoke("classify", "--n", "2")[0] == EXIT_OK

    @pytest.mark.slow
    def test_verify_all(self):
        code, text = invoke("verify-all", "--n", "2")
        assert code == EXIT_OK, text


class TestErrors:
    def test_unknown_command(self):
        assert invoke("frobnicate", "--n", "2")[0] == EXIT_USAGE

    def test_missing_n(self):
        assert invoke("enumerate")[0] == EXIT_USAGE

    def test_size_guard(self):
        code, text = invoke("enumerate", "--n", "9")
        assert code == EXIT_USAGE
        assert "[ERROR]" in text

    def test_size_guard_json(self):
        code, text = invoke("enumerate", "--n", "9", "--format", "json")
        assert code == EXIT_USAGE
        assert "n=9" in json.loads(text)['error']

    def test_bad_element(self):
        assert invoke("multiply", "--n", "2", "zz")[0] == EXIT_USAGE

    def test_bad_choice_file(self, tmp_path):
        code, _ = invoke("associator", "--n", "2", "--choice", str(tmp_path / "none.json"))
        assert code == EXIT_USAGE

    def test_center_has_no_odd_flag(self):
        assert invoke("center", "--n", "2", "--odd")[0] == EXIT_USAGE

    def test_arithmetic_failure_is_a_failed_check(self, monkeypatch):
        def unsolvable(assoc):
            raise CocycleError("slope U: no solution over Z/4")
        monkeypatch.setattr("oddarc.solve_twist", unsolvable)
        code, text = invoke("twist", "--n", "2", "--format", "json")
        assert code == EXIT_FAILED
        record = json.loads(text)
        assert not record['passed']
        assert record['checks'][0]['witness'] == {'error': "CocycleError"}

    def test_torsion_is_a_failed_check(self, monkeypatch):
        def torsion(n):
            raise TorsionError("degree 2: divisor 2")
        monkeypatch.setattr("oddarc.quotient_basis", torsion)
        code, text = invoke("springer", "--n", "2")
        assert code == EXIT_FAILED
        assert "[!] springer, n=2" in text


class TestVerifyIso:
    @pytest.mark.parametrize("n", ["1", "2"])
    def test_exit_code(self, n):
        code, text = invoke("verify-iso", "--n", n)
        assert code == EXIT_OK, text
        assert "[OK] Springer quotient ~ odd center" in text

"""
cli 테스트: 서브커맨드, 출력 형식, 종료 코드.
"""

import csv
import io
import json

import pytest

from src.fibpart import oracle
from src.fibpart.bigfib import fib, max_fib_index
from src.fibpart.cli import build_parser, main, parse_config
from src.fibpart.common.constants import DEFAULT_DIGITS, DIGITS_ENV_VAR
from src.fibpart.common.exceptions import EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from src.fibpart.models import Command, OutputFormat
from src.fibpart.summatory import a_fib


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _csv_rows(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.integration
class TestScalarCommands:
    """단일 값 명령"""

    def test_r_example(self, capsys):
        assert _run(capsys, "r", "1234") == (EXIT_OK, "22\n", "")

    @pytest.mark.parametrize("method", ["exact", "robbins"])
    def test_r_methods(self, capsys, method):
        code, out, _ = _run(capsys, "r", "1234", "--method", method)
        assert code == EXIT_OK
        assert out == "22\n"

    @pytest.mark.parametrize("method", ["exact", "recursive"])
    def test_a_methods(self, capsys, method):
        code, out, _ = _run(capsys, "a", "46368", "--method", method)
        assert code == EXIT_OK
        assert out == "2796215\n"

    def test_fib(self, capsys):
        assert _run(capsys, "fib", "20")[1] == "6765\n"

    def test_zeck_text(self, capsys):
        assert _run(capsys, "zeck", "1234")[1] == "1234 = F_16 + F_13 + F_7 + F_2\n"

    def test_zeck_json(self, capsys):
        code, out, _ = _run(capsys, "zeck", "1234", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out) == {"n": 1234, "indices": [16, 13, 7, 2]}

    def test_r_json_and_csv(self, capsys):
        assert json.loads(_run(capsys, "r", "1234", "--format", "json")[1]) == {
            "H": 1234,
            "R": 22,
        }
        assert _csv_rows(_run(capsys, "r", "1234", "--format", "csv")[1]) == [
            ["H", "R"],
            ["1234", "22"],
        ]

    def test_mean(self, capsys):
        assert _run(capsys, "mean", "8")[1] == "7/4\n"
        data = json.loads(_run(capsys, "mean", "8", "--format", "json")[1])
        assert data["mean"] == {"numerator": 7, "denominator": 4}

    def test_hundred_digit_input(self, capsys):
        code, out, _ = _run(capsys, "r", "1" + "0" * 99)
        assert code == EXIT_OK
        assert int(out) > 0

    def test_argument_beyond_default_str_digits(self, capsys):
        code, out, _ = _run(capsys, "zeck", "9" * 5000, "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["indices"][0] == max_fib_index(10**5000 - 1)

    def test_output_beyond_default_str_digits(self, capsys):
        code, out, _ = _run(capsys, "fib", "25000")
        assert code == EXIT_OK
        assert len(out.strip()) > 5000
        assert int(out) == fib(25000)

    def test_bavg(self, capsys):
        code, out, _ = _run(capsys, "bavg", "100", "--digits", "20")
        assert code == EXIT_OK
        assert float(out) > 0

    def test_bavg_csv_series(self, capsys):
        code, out, _ = _run(capsys, "bavg", "30", "--format", "csv", "--digits", "20")
        rows = _csv_rows(out)
        assert code == EXIT_OK
        assert rows[0] == ["H", "value"]
        assert [int(row[0]) for row in rows[1:]] == list(range(2, 31))


@pytest.mark.integration
class TestTableCommands:
    """표/데이터 명령"""

    def test_oracle_dump_csv(self, capsys):
        code, out, _ = _run(capsys, "oracle-dump", "--limit", "8", "--format", "csv")
        assert code == EXIT_OK
        assert out == (
            "n,R,A\n0,1,1\n1,1,2\n2,1,3\n3,2,5\n4,1,6\n5,2,8\n6,2,10\n7,1,11\n8,3,14\n"
        )

    def test_oracle_dump_figure_range(self, capsys):
        code, out, _ = _run(capsys, "oracle-dump", "--limit", "6765", "--format", "csv")
        rows = _csv_rows(out)
        assert code == EXIT_OK
        assert len(rows) == 6767
        assert rows[-1] == ["6765", "10", str(a_fib(20))]

    def test_oracle_dump_json(self, capsys):
        rows = json.loads(_run(capsys, "oracle-dump", "--limit", "3", "--format", "json")[1])
        assert rows[-1] == {"n": 3, "R": 2, "A": 5}

    def test_ratio_series_csv(self, capsys):
        code, out, _ = _run(
            capsys, "ratio-series", "--limit", "50", "--format", "csv", "--digits", "20"
        )
        rows = _csv_rows(out)
        assert code == EXIT_OK
        assert rows[0] == ["H", "ratio"]
        assert len(rows) == 51
        assert all(0.4 < float(ratio) < 2.1 for _, ratio in rows[1:])

    def test_bounds_json(self, capsys):
        code, out, _ = _run(
            capsys, "bounds", "--depth", "6", "--digits", "20", "--format", "json"
        )
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["depth"] == 6
        assert data["endpoint_count"] == 13
        low, high = (float(x) for x in data["c1"])
        assert low <= high
        assert isinstance(data["argmin_pattern"], list)

    def test_bounds_text(self, capsys):
        code, out, _ = _run(capsys, "bounds", "--depth", "4", "--digits", "20")
        assert code == EXIT_OK
        assert out.startswith("depth: 4\ndigits: 20\nendpoints: 5\n")
        assert "argmin_pattern: (" in out

    def test_bounds_csv_endpoint_table(self, capsys):
        code, out, _ = _run(
            capsys, "bounds", "--depth", "4", "--digits", "20", "--format", "csv"
        )
        rows = _csv_rows(out)
        assert code == EXIT_OK
        assert rows[0] == ["pattern", "v_num", "v_den", "w", "L", "U"]
        assert len(rows) == 7
        assert rows[1][:3] == ["", "1", "6"]
        assert rows[4][0] == "2"
        assert rows[5][0] == "2;4"
        assert rows[6][:3] == ["super", "1", "3"]
        assert rows[6][4:] == ["", ""]

    def test_idempotent_output(self, capsys):
        first = _run(capsys, "bounds", "--depth", "6", "--digits", "25", "--format", "json")
        second = _run(capsys, "bounds", "--depth", "6", "--digits", "25", "--format", "json")
        assert first[1] == second[1]

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "dump.csv"
        code, out, _ = _run(
            capsys, "oracle-dump", "--limit", "5", "--format", "csv", "--output", str(path)
        )
        assert code == EXIT_OK
        assert out == ""
        assert path.read_text(encoding="utf-8").splitlines()[0] == "n,R,A"


@pytest.mark.integration
class TestVerifyCommand:
    """verify 명령"""

    def test_passes(self, capsys):
        code, out, _ = _run(capsys, "verify", "--limit", "500", "--samples", "50")
        assert code == EXIT_OK
        assert out.startswith("PASS")

    def test_json_report(self, capsys):
        code, out, _ = _run(
            capsys, "verify", "--limit", "300", "--samples", "20", "--format", "json"
        )
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["passed"] is True
        assert data["samples"] == 20

    def test_fails_on_mismatch(self, capsys, monkeypatch):
        monkeypatch.setattr(oracle, "r_robbins", lambda H: 0)
        code, out, err = _run(capsys, "verify", "--limit", "100", "--samples", "0")
        assert code == EXIT_FAILURE
        assert out.startswith("FAIL")
        assert "VERIFICATIONERROR" in err

    @pytest.mark.slow
    def test_release_gate(self, capsys):
        code, out, _ = _run(capsys, "verify", "--limit", "100000")
        assert code == EXIT_OK
        assert out.startswith("PASS")


@pytest.mark.integration
class TestErrors:
    """종료 코드"""

    def test_domain_error_exits_one(self, capsys):
        code, out, err = _run(capsys, "zeck", "0")
        assert code == EXIT_FAILURE
        assert out == ""
        assert "error: [DOMAINERROR]" in err

    def test_bavg_domain_error(self, capsys):
        assert _run(capsys, "bavg", "1")[0] == EXIT_FAILURE

    @pytest.mark.parametrize(
        "argv",
        [
            ["r", "abc"],
            ["r", "-5"],
            ["r", "12.5"],
            ["r", "\u00b2"],
            ["bounds", "--depth", "1"],
            ["fib", "5", "--digits", "10"],
            ["oracle-dump", "--limit", "-1"],
            ["r", "5", "--method", "recursive"],
            ["unknown"],
            [],
        ],
    )
    def test_usage_errors_exit_two(self, capsys, argv):
        assert main(argv) == EXIT_USAGE

    @pytest.mark.parametrize("raw", ["many", "²²"])
    def test_malformed_env_digits_is_usage_error(self, capsys, monkeypatch, raw):
        monkeypatch.setenv(DIGITS_ENV_VAR, raw)
        assert main(["fib", "5"]) == EXIT_USAGE

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == EXIT_OK


@pytest.mark.unit
class TestConfig:
    """CliConfig 생성과 digits 우선순위"""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv(DIGITS_ENV_VAR, raising=False)
        config, values = parse_config(build_parser(), ["r", "1234"])
        assert config.command == Command.R
        assert config.digits == DEFAULT_DIGITS
        assert config.depth == 27
        assert config.limit == 100_000
        assert config.output_format == OutputFormat.TEXT
        assert values == [1234]

    def test_env_overrides_default(self, monkeypatch):
        monkeypatch.setenv(DIGITS_ENV_VAR, "40")
        config, _ = parse_config(build_parser(), ["bounds"])
        assert config.digits == 40

    def test_flag_overrides_env(self, monkeypatch):
        monkeypatch.setenv(DIGITS_ENV_VAR, "40")
        config, _ = parse_config(build_parser(), ["bounds", "--digits", "60"])
        assert config.digits == 60
        assert config.asymptotics().digits == 60

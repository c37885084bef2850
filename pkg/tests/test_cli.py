import json
import pytest
from argparse import ArgumentTypeError
from fractions import Fraction
from pathlib import Path
from tempfile import TemporaryDirectory

from padic_euler import __version__
from padic_euler.cli import main, prime_arg, rational_arg, rational_list, strategy_arg
from padic_euler.errors import DomainError
from padic_euler.identities import Identity, registry
from padic_euler.settings import OutputFormat, Settings, settings
from padic_euler.zeta import Strategy


def run(capsys, *args: str):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *args: str):
    code, out, _ = run(capsys, *args, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_rational_arg():
    assert rational_arg("3") == 3
    assert rational_arg("-1/5") == Fraction(-1, 5)
    assert rational_list("1,2/3, -5") == [1, Fraction(2, 3), -5]
    for bad in ["x", "1/0", "1.5"]:
        with pytest.raises(ArgumentTypeError):
            rational_arg(bad)
    assert strategy_arg("reduce(2)") == Strategy.reduce(2)
    with pytest.raises(ArgumentTypeError):
        strategy_arg("fast")


def test_euler_poly(capsys):
    code, out, _ = run(capsys, "euler-poly", "--N", "2", "--omega", "1,1", "--n", "1", "--x", "0")
    assert code == 0 and out.strip() == "-1"


def test_euler_poly_table(capsys):
    result = run_json(capsys, "euler-poly", "--omega", "1,1", "--n", "3", "--table")
    assert result["kind"] == "euler-table" and result["N"] == 2
    assert [(c["num"], c["den"]) for c in result["table"]] == [(1, 1), (-1, 1), (1, 2), (1, 2)]


def test_euler_poly_mismatched_order(capsys):
    with pytest.raises(SystemExit) as e:
        main(["euler-poly", "--N", "3", "--omega", "1,1", "--n", "1", "--x", "0"])
    assert e.value.code == 2


def test_zeta(capsys):
    result = run_json(capsys, "zeta", "--s", "1", "--x", "1/5", "--omega", "1,2", "--prec", "5")
    assert result["schema"] == 1 and result["kind"] == "zeta"
    assert result["value"] == {"p": 5, "val": 0, "digits": [1, 0, 0, 0, 0], "prec": 5}
    assert result["strategy"] == "series" and result["guaranteed_prec"] == 5


def test_zeta_text(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "0", "--x", "1/5", "--omega", "1", "--prec", "3")
    # -3/2 = 1 + 2*5 + 2*5^2 + ... in Z_5
    assert code == 0
    assert out.splitlines()[0] == "5^0 * (1 + 2*5 + 2*5^2) + O(5^3)"
    assert "strategy: series" in out


def test_zeta_in_lambda(capsys):
    code, out, err = run(capsys, "zeta", "--s", "0", "--x", "0", "--omega", "1")
    assert code == 3 and out == ""
    assert "x in Lambda; use zeta-star" in err


def test_loggamma_in_lambda(capsys):
    code, _, err = run(capsys, "loggamma", "--x", "0", "--omega", "1")
    assert code == 3 and "x in Lambda; use loggamma-star" in err


def test_star_commands(capsys):
    result = run_json(capsys, "zeta-star", "--x", "0", "--omega", "5", "--prec", "6")
    assert result["value"]["val"] is None and result["strategy"] == "star"
    result = run_json(capsys, "loggamma-star", "--x", "0", "--omega", "5", "--prec", "6")
    assert result["kind"] == "loggamma-star" and result["value"]["val"] is None


def test_loggamma_and_psi(capsys):
    result = run_json(capsys, "loggamma", "--x", "1/5", "--omega", "", "--prec", "4")
    # LogGamma(1/5; ()) = -1/5
    assert result["value"]["val"] == -1 and result["value"]["digits"] == [4, 4, 4, 4, 4]
    result = run_json(capsys, "psi", "--k", "2", "--x", "1/5", "--prec", "4")
    assert result["kind"] == "psi" and result["k"] == 2


def test_teichmuller(capsys):
    code, out, _ = run(capsys, "teichmuller", "--x", "2", "--p", "5", "--prec", "2")
    assert code == 0
    assert out.splitlines() == ["5^0 * (2 + 1*5) + O(5^2)", "angle: 5^0 * (1 + 2*5) + O(5^2)"]


def test_integrate(capsys):
    result = run_json(capsys, "integrate", "--n", "1", "--x", "0", "--omega", "1", "--level", "4")
    assert result["kind"] == "integral" and result["level"] == 4
    assert result["stable_digits"] >= 3
    result = run_json(
        capsys, "integrate", "--kind", "xlogx", "--x", "0", "--starred", "--level", "2"
    )
    assert result["terms"] == 25


@pytest.mark.parametrize("p", ["9", "4", "2", "1", "five"])
def test_invalid_prime(capsys, p):
    with pytest.raises(SystemExit) as e:
        main(["teichmuller", "--x", "2", "--p", p])
    assert e.value.code == 2
    assert "argument --p" in capsys.readouterr().err


def test_invalid_prime_message():
    assert prime_arg("7") == 7
    with pytest.raises(ArgumentTypeError, match="9 is not an odd prime"):
        prime_arg("9")


def test_reduction_cap(capsys):
    args = ["zeta", "--x", "1/2", "--omega", "5", "--strategy", "reduce(2)"]
    code, _, err = run(capsys, *args, "--kcap", "1")
    assert code == 3 and "reduction cap" in err
    code, out, _ = run(capsys, *args, "--kcap", "2", "--prec", "4")
    assert code == 0 and "strategy: reduce(2)" in out


def test_usage_errors(capsys):
    for args in [
        ["zeta", "--x", "abc"],
        ["zeta", "--x", "1/5", "--strategy", "fast"],
        ["unknown"],
        ["euler-poly", "--n", "2"],
        ["zeta", "--x", "1/5", "--prec", "0"],
    ]:
        with pytest.raises(SystemExit) as e:
            main(args)
        assert e.value.code == 2, args


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--suite", "euler", "--instances", "1")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 failed")


def test_check_json_is_reproducible(capsys):
    args = ["check", "--suite", "euler", "--instances", "2", "--seed", "3", "--format", "json"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    result = json.loads(first)
    assert result["seed"] == 3 and result["failed"] == 0 and result["kind"] == "check"
    assert all(r["verdict"] == "pass" for r in result["reports"])


def test_check_failure(capsys, monkeypatch):
    def broken():
        raise DomainError("broken identity")

    monkeypatch.setitem(registry, "padic.broken", Identity("padic.broken", broken, [{}]))
    code, out, _ = run(capsys, "check", "--suite", "padic", "--instances", "0")
    assert code == 1
    assert "FAIL padic.broken" in out


def test_config_file(capsys):
    with TemporaryDirectory(dir=Path(__file__).parent) as dir:
        path = Path(dir) / "settings.json"
        config = Settings()
        config.precision = 3
        config.output_format = OutputFormat.json
        config.save(path)
        code, out, _ = run(capsys, "zeta", "--s", "1", "--x", "1/5", "--config", str(path))
    assert code == 0
    assert json.loads(out)["value"]["prec"] == 3
    assert settings.precision == 3


def test_missing_config_file():
    with pytest.raises(SystemExit) as e:
        main(["zeta", "--x", "1/5", "--config", "does-not-exist.json"])
    assert e.value.code == 2


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("PADIC_EULER_BUDGET", "10")
    args = ["zeta", "--x", "1/2", "--omega", "5", "--strategy", "reduce(2)", "--budget", "1000"]
    code, _, err = run(capsys, *args)
    assert code == 3 and "term budget" in err


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert __version__ in capsys.readouterr().out

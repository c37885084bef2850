import pytest

from padic_euler import identities
from padic_euler.errors import DomainError
from padic_euler.fermionic import IntegralEstimate
from padic_euler.identities import Identity, registry, run_suite, suites
from padic_euler.report import EXACT, IdentityReport, check, compare
from padic_euler.padic import from_rational, with_prec
from fractions import Fraction

expected_identities = {
    "padic.ring_laws",
    "padic.round_trip",
    "padic.inverse",
    "padic.conservative_precision",
    "projection.teichmuller_root",
    "projection.angle_multiplicative",
    "projection.angle_one_unit",
    "projection.log_power",
    "projection.log_homomorphism",
    "projection.binomial_integrality",
    "euler.alternating_sum",
    "euler.difference",
    "euler.homogeneity",
    "euler.symmetry",
    "euler.witt",
    "fermionic.difference",
    "fermionic.negation_shift",
    "fermionic.dilation",
    "fermionic.backend_agreement",
    "fermionic.step_lemma",
    "fermionic.witt",
    "zeta.difference",
    "zeta.scaling",
    "zeta.reflection",
    "zeta.distribution",
    "zeta.interpolation",
    "zeta.derivative",
    "zeta.strategy_independence",
    "zeta.star",
    "zeta.integral_oracle",
    "gamma.difference",
    "gamma.scaling",
    "gamma.reflection",
    "gamma.distribution",
    "gamma.psi_closed_form",
    "gamma.definitional_derivative",
    "gamma.laurent_derivative",
    "gamma.star",
    "gamma.integral_oracle",
}


def test_registry_is_complete():
    assert set(registry) == expected_identities
    assert {item.suite for item in registry.values()} == set(suites)


def test_every_identity_has_instances():
    for item in registry.values():
        assert len(item.instances(1, 0, 10)) >= 1, item.name


@pytest.mark.parametrize("suite", suites)
def test_suite_passes(suite, request):
    count = 3 if request.config.getoption("--slow") else 1
    reports = run_suite(suite, instances=count, seed=0)
    assert len(reports) > 0
    failed = [r.to_json() for r in reports if not r.passed]
    assert failed == []


def test_reports_are_deterministic():
    first = [r.to_json() for r in run_suite("euler", instances=2, seed=7)]
    second = [r.to_json() for r in run_suite("euler", instances=2, seed=7)]
    assert first == second


def test_seed_changes_random_instances():
    item = registry["padic.ring_laws"]
    assert item.instances(2, 1, 10) == item.instances(2, 1, 10)
    assert item.instances(2, 1, 10) != item.instances(2, 2, 10)
    assert item.fixed == [] and len(item.instances(0, 1, 10)) == 0


def test_order():
    names = [r.name for r in run_suite("euler", instances=1, seed=0)]
    assert names == sorted(names)


def test_errors_become_failures(monkeypatch):
    def broken():
        raise DomainError("broken identity")

    monkeypatch.setitem(registry, "euler.broken", Identity("euler.broken", broken, [{}]))
    reports = [r for r in run_suite("euler", instances=0) if r.name == "euler.broken"]
    assert len(reports) == 1 and not reports[0].passed
    assert reports[0].params["error"] == "broken identity"


def test_register_twice():
    with pytest.raises(AssertionError):
        identities.identity("padic.ring_laws")(lambda: None)


def test_compare():
    assert compare(Fraction(1, 3), Fraction(1, 3)) == EXACT
    assert compare(Fraction(1, 3), Fraction(2, 3)) == 0
    assert compare(from_rational(1, 5, 6), Fraction(1 + 125)) == 3
    assert compare(Fraction(1), from_rational(1, 5, 6)) == 6


def test_report_json():
    report = check("padic.example", from_rational(1, 5, 4), Fraction(1), 4, x=Fraction(1, 2))
    assert report.passed
    assert report.to_json() == {
        "name": "padic.example",
        "params": {"x": "1/2"},
        "agreement": 4,
        "required": 4,
        "verdict": "pass",
    }
    assert not IdentityReport("padic.example", {}, 2, 3).passed


def test_oracle_needs_stable_digits():
    exact = from_rational(Fraction(2, 3), 5, 10)
    thin = IntegralEstimate(with_prec(exact, 3), 3, 3, 125)
    report = identities._oracle_check("fermionic.example", thin.value, exact, thin, 4)
    assert not report.passed and report.required == 4

    deep = IntegralEstimate(with_prec(exact, 6), 6, 5, 3125)
    assert identities._oracle_check("fermionic.example", deep.value, exact, deep, 4).passed
    report = identities._oracle_check("fermionic.example", deep.value, exact + 5**4, deep, 4)
    assert not report.passed and report.agreement == 4 and report.required == 6


@pytest.mark.parametrize("name", ["gamma.integral_oracle", "zeta.integral_oracle"])
def test_oracle_instances_are_certified(name):
    for params in registry[name].fixed:
        report = registry[name].run(**params)
        assert report.passed and report.required >= identities.oracle_digits, report.to_json()

import numpy as np
import pytest

from algebra.spgroup import dft_element, sp_element, sp_identity
from config import Config
from tests.conftest import character
from tools.fixtures import fixture_space
from weil.identities import CheckResult, IdentityVerifier, verify_identities


def _failures(results):
    return [r.to_report() for r in results if not r.passed]


class TestCheckResult:
    def test_report_uses_pass_key(self):
        result = CheckResult(check="demo", params={"g": [[1, 0], [0, 1]]}, expected="1", got="1", passed=True)
        report = result.to_report()
        assert report["pass"] is True
        assert list(report) == ["check", "params", "expected", "got", "residual", "pass"]

    def test_accepts_alias(self):
        result = CheckResult.model_validate({"check": "demo", "expected": "a", "got": "b", "pass": False})
        assert result.passed is False
        assert result.residual == 0.0


class TestBattery:
    def test_z3_passes(self, z3):
        results = verify_identities(z3, character(z3), seed=3, samples=6)
        assert results
        assert _failures(results) == []

    def test_every_family_reports(self, z3):
        names = {r.check for r in verify_identities(z3, character(z3), seed=1, samples=4)}
        for expected in (
            "identity_value",
            "minus_one_value",
            "dft_value",
            "convolution",
            "opposite_product",
            "lambda_twist",
            "cayley_roundtrip",
            "oracle_agreement",
            "t_squared",
            "matrix_homomorphism",
            "gauss_square",
            "prime_field_value",
        ):
            assert expected in names

    def test_deterministic_per_seed(self, z5):
        first = [r.to_report() for r in verify_identities(z5, character(z5), seed=9, samples=4)]
        second = [r.to_report() for r in verify_identities(z5, character(z5), seed=9, samples=4)]
        assert first == second
        assert [e for e in first if not e["pass"]] == []

    def test_sampled_elements_include_fixed_ones(self, h33):
        verifier = IdentityVerifier(h33, character(h33), seed=2, samples=3)
        keys = [g.key for g in verifier.elements]
        assert len(keys) == len(set(keys))
        assert verifier.elements[0].is_identity()

    def test_crt_split_on_composite_modulus(self, z15):
        verifier = IdentityVerifier(z15, character(z15), seed=5, samples=3)
        verifier.check_crt_split()
        assert verifier.results
        assert all(r.check == "crt_split" and r.passed for r in verifier.results)

    def test_orthogonal_split_on_hyperbolic(self, h39):
        verifier = IdentityVerifier(h39, character(h39), seed=5, samples=3)
        verifier.check_orthogonal_split()
        assert verifier.results
        assert all(r.passed for r in verifier.results)

    def test_oracle_checks_skipped_above_guard(self, z9, monkeypatch):
        monkeypatch.setattr(Config, "MAX_ORACLE_ORDER", 9)
        verifier = IdentityVerifier(z9, character(z9), seed=1, samples=2)
        assert verifier.oracle is None
        names = {r.check for r in verifier.verify_identities()}
        assert "oracle_agreement" not in names
        assert "convolution" in names

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["Z5^2", "Z9^2", "H(3,3)", "H(3,9)", "Z15^2"])
    def test_fixture_passes(self, name):
        space = fixture_space(name)
        assert _failures(verify_identities(space, character(space), seed=7, samples=10)) == []


class TestRationality:
    def test_real_irrational_values(self, z5):
        verifier = IdentityVerifier(z5, character(z5), seed=7, samples=0)
        unipotent = sp_element(z5, [[1, 1], [0, 1]])
        lower = sp_element(z5, [[1, 0], [3, 1]])
        verifier.elements = [sp_identity(z5), unipotent, lower, dft_element(z5)]
        value = verifier._psi(unipotent)
        assert value.c == 5 and value.is_real
        verifier.check_rationality()
        rationality = {str(r.params["g"]): r for r in verifier.results if r.check == "rationality"}
        assert len(rationality) == 4
        assert all(r.passed for r in rationality.values())
        assert rationality[str(unipotent.to_list())].expected == "False"
        coprime = [r for r in verifier.results if r.check == "rationality_coprime_order"]
        assert len(coprime) == 2
        assert all(r.passed for r in coprime)

    def test_composite_modulus(self, z15):
        verifier = IdentityVerifier(z15, character(z15), seed=7, samples=0)
        verifier.elements = [sp_element(z15, [[7, 13], [8, 0]]), sp_element(z15, [[1, 1], [0, 1]])]
        verifier.check_rationality()
        assert _failures(verifier.results) == []


class TestGuarding:
    def test_numeric_failure_is_recorded(self, z3, monkeypatch):
        verifier = IdentityVerifier(z3, character(z3), seed=1, samples=2)

        def singular(g):
            raise np.linalg.LinAlgError("Singular matrix")

        monkeypatch.setattr(verifier.oracle, "oracle_trace", singular)
        verifier.check_oracle_agreement()
        assert len(verifier.results) == len(verifier.elements)
        assert all(not r.passed and r.got.startswith("numeric_failure") for r in verifier.results)

    def test_gauss_base_change_family(self, z9):
        verifier = IdentityVerifier(z9, character(z9), seed=4, samples=6)
        verifier.check_gauss_laws()
        base_change = [r for r in verifier.results if r.check == "gauss_base_change"]
        assert base_change
        assert all(r.passed for r in base_change)

"""
Tests for the command-line front end.
"""

import inspect
import json
import math

import pytest

from matspec import cli
from matspec.schemas.reports import EvalReport
from matspec.services import catalog
from matspec.services.families import draw_arguments, draw_rng, draw_roles
from matspec.services.gammabeta import GammaBetaService
from matspec.services.hyper import HyperService
from matspec.services.multivar import MultivarService
from matspec.utils.matrix_json import encode_matrix

FAST = ["--draws", "2", "--orders", "1", "2", "--max-levels", "10"]


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """No user config file or MATSPEC_* variables leak into a test."""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    for name in ("MATSPEC_CONFIG", "MATSPEC_DRAWS", "MATSPEC_SEED", "MATSPEC_ORDERS", "MATSPEC_CORRECTED"):
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    """Run the CLI and return (exit code, parsed stdout)."""
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out


class TestEval:
    """Tests for `matspec eval`."""

    def test_gamma_identity(self, capsys):
        """Test Gamma(I) = I."""
        code, payload = run(capsys, "eval", "gamma_matrix", "--input", '{"params": {"A": [[1, 0], [0, 1]]}}')

        assert code == cli.EXIT_OK
        assert payload["converged"] is True
        entries = payload["value"]["entries"]
        assert entries[0][0][0] == pytest.approx(1.0)
        assert entries[0][1][0] == pytest.approx(0.0, abs=1e-12)

    def test_gamma_half(self, capsys):
        """Test a bare number as a 1x1 matrix."""
        code, payload = run(capsys, "eval", "gamma_matrix", "--input", '{"params": {"A": 0.5}}')

        assert code == cli.EXIT_OK
        assert payload["value"]["entries"][0][0][0] == pytest.approx(math.sqrt(math.pi), rel=1e-10)

    def test_input_file(self, capsys, tmp_path):
        """Test reading the input document from a path."""
        path = tmp_path / "input.json"
        path.write_text(json.dumps({"params": {"A1": 1, "B1": 1, "C1": 2}, "args": {"z": 0.5}}))

        code, payload = run(capsys, "eval", "gauss_2f1", "--input", str(path))

        assert code == cli.EXIT_OK
        assert payload["value"]["entries"][0][0][0] == pytest.approx(2 * math.log(2), rel=1e-12)

    def test_output_file(self, capsys, tmp_path):
        """Test that --output receives the JSON and stdout stays empty."""
        path = tmp_path / "out.json"

        code = cli.main(["eval", "gamma_matrix", "--input", '{"params": {"A": 2}}', "--output", str(path)])

        assert code == cli.EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(path.read_text())["converged"] is True

    def test_not_positive_stable(self, capsys):
        """Test that a precondition failure exits 1 with an error object."""
        code, payload = run(capsys, "eval", "gamma_matrix", "--input", '{"params": {"A": [[-1, 0], [0, 1]]}}')

        assert code == cli.EXIT_ERROR
        assert payload["error"]["type"] == "PreconditionError"
        assert "positive stable" in payload["error"]["message"]

    def test_unknown_function(self, capsys):
        """Test that an unknown function id lists the valid ids."""
        code, payload = run(capsys, "eval", "zeta_matrix", "--input", "{}")

        assert code == cli.EXIT_ERROR
        assert "gamma_matrix" in payload["error"]["valid_ids"]

    def test_malformed_json(self, capsys):
        """Test that a JSON syntax error reports its position."""
        code, payload = run(capsys, "eval", "gamma_matrix", "--input", '{"params": ')

        assert code == cli.EXIT_ERROR
        assert payload["error"]["type"] == "JSONDecodeError"
        assert payload["error"]["line"] == 1

    def test_bad_matrix(self, capsys):
        """Test that a non-square matrix is a dimension error."""
        code, payload = run(capsys, "eval", "gamma_matrix", "--input", '{"params": {"A": [[1, 2]]}}')

        assert code == cli.EXIT_ERROR
        assert payload["error"]["type"] == "DimensionError"

    def test_unconverged(self, capsys):
        """Test that an exhausted series budget exits 2."""
        code, payload = run(
            capsys,
            "eval",
            "kummer_1f1",
            "--max-terms",
            "5",
            "--input",
            '{"params": {"A": 1, "B": 1.5, "M": 30}}',
        )

        assert code == cli.EXIT_UNCONVERGED
        assert payload["converged"] is False
        assert payload["warnings"]

    def test_missing_input(self, capsys):
        """Test that eval without --input is a usage error."""
        code, payload = run(capsys, "eval", "gamma_matrix")

        assert code == cli.EXIT_ERROR
        assert "--input" in payload["error"]["message"]


class TestVerify:
    """Tests for `matspec verify`."""

    def test_single_case(self, capsys):
        """Test a passing case and its report document."""
        code, payload = run(capsys, "verify", "shell-reindexing", *FAST)

        assert code == cli.EXIT_OK
        assert payload["failures"] == 0
        assert payload["orders"] == [1, 2]
        assert payload["cases"][0]["draws"] == 2

    def test_reproducible(self, capsys):
        """Test that two runs with one seed produce identical output."""
        first = run(capsys, "verify", "pochhammer-gamma-ratio", "--seed", "5", *FAST)
        second = run(capsys, "verify", "pochhammer-gamma-ratio", "--seed", "5", *FAST)

        assert first == second

    def test_unknown_case(self, capsys):
        """Test that an unknown case id exits 1 with the valid ids."""
        code, payload = run(capsys, "verify", "no-such-case", *FAST)

        assert code == cli.EXIT_ERROR
        assert "pfaff-4.11" in payload["error"]["valid_ids"]

    def test_bad_orders(self, capsys):
        """Test that orders outside 1..10 are rejected."""
        code, payload = run(capsys, "verify", "shell-reindexing", "--orders", "11")

        assert code == cli.EXIT_ERROR
        assert "orders" in payload["error"]["message"]


class TestList:
    """Tests for `matspec list`."""

    def test_text(self, capsys):
        """Test the text listing."""
        code, out = run(capsys, "list")

        assert code == cli.EXIT_OK
        assert "beta_new_extended (Eq. (3.2))" in out
        assert "pfaff-4.11" in out
        assert "[diagnostic]" in out

    def test_json(self, capsys):
        """Test the JSON listing of functions only."""
        code, payload = run(capsys, "list", "functions", "--json")

        assert code == cli.EXIT_OK
        assert set(payload) == {"functions"}
        assert "beta_new_extended" in [entry["id"] for entry in payload["functions"]]

    def test_bad_target(self, capsys):
        """Test that list accepts only functions or cases."""
        code, _ = run(capsys, "list", "identities")

        assert code == cli.EXIT_ERROR


def test_unknown_command(capsys):
    """Test that an unknown command exits 1."""
    code, payload = run(capsys, "integrate")

    assert code == cli.EXIT_ERROR
    assert payload["error"]["type"] == "UsageError"


def test_missing_config_file(capsys, monkeypatch, tmp_path):
    """Test that MATSPEC_CONFIG naming a missing file exits 1."""
    monkeypatch.setenv("MATSPEC_CONFIG", str(tmp_path / "absent.yaml"))

    code, payload = run(capsys, "list")

    assert code == cli.EXIT_ERROR
    assert payload["error"]["type"] == "FileNotFoundError"


# Public service methods that are exposed under another catalog id.
ALIASES = {
    "gamma_reciprocal_report": "gamma_reciprocal",
    "pochhammer_via_gamma_report": "pochhammer_via_gamma",
    "normalizer": "beta_matrix",
}
# Shared integration driver, not an evaluation of its own.
HELPERS = {"integrate_forms"}
MATCALC_OPS = ("real_power", "pochhammer", "binomial_series")


def evaluation_methods():
    """Names of public service methods returning an EvalReport."""
    names = []
    for service in (GammaBetaService, HyperService, MultivarService):
        for name, method in inspect.getmembers(service, inspect.isfunction):
            if not name.startswith("_") and inspect.signature(method).return_annotation is EvalReport:
                names.append(name)
    return names


def eval_document(function_id):
    """Input document for one function from a seeded draw of its roles."""
    entry = catalog.get_function(function_id)
    rng = draw_rng(11, 0)
    _, matrices = draw_roles(entry.roles, 2, rng)
    return {
        "params": {name: encode_matrix(matrices[name]) for name in entry.role_names()},
        "args": draw_arguments(entry.arguments, rng),
    }


class TestCatalogParity:
    """Tests that every public evaluation is listed and evaluable from the command line."""

    def test_every_evaluation_listed(self, capsys):
        """Test that each service evaluation and matcalc op has a listed function id."""
        code, payload = run(capsys, "list", "--json")
        listed = {entry["id"] for entry in payload["functions"]}
        expected = {ALIASES.get(name, name) for name in evaluation_methods() if name not in HELPERS}

        assert code == cli.EXIT_OK
        assert expected | set(MATCALC_OPS) <= listed
        assert {case["id"] for case in payload["cases"]} == set(catalog.case_ids())

    @pytest.mark.parametrize(
        "function_id",
        [
            pytest.param(function_id, marks=pytest.mark.slow)
            if function_id.startswith(("appell_f2", "f2_", "lauricella_fd3", "fd3_"))
            else function_id
            for function_id in catalog.function_ids()
        ],
    )
    def test_every_function_evaluates(self, capsys, function_id):
        """Test `matspec eval` on a drawn input for each listed function."""
        code, payload = run(
            capsys, "eval", function_id, "--input", json.dumps(eval_document(function_id)), "--max-levels", "10"
        )

        assert code in (cli.EXIT_OK, cli.EXIT_UNCONVERGED), payload
        assert payload["value"]["order"] == 2

import csv
import io
import json

import pytest

from lattice_expansion import __version__
from lattice_expansion.cli import main
from lattice_expansion.verify import SUITES, UnknownSuiteError, verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_json_embeds_config(capsys):
    code, out, _ = run(capsys, "count", "--model", "animal", "--dim", "2", "--order", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["engine"] == f"lattice_expansion {__version__}"
    assert doc["config"]["model"] == "animal" and doc["config"]["N"] == 4
    assert doc["result"]["counts"] == ["1", "4", "18", "88", "439"]


@pytest.mark.parametrize("fmt", ["text", "csv", "json"])
def test_reruns_are_byte_identical(capsys, fmt):
    first = run(capsys, "series", "--dim", "2", "--order", "4", "--format", fmt)[1]
    second = run(capsys, "series", "--dim", "2", "--order", "4", "--format", fmt)[1]
    assert first == second


def test_csv_output(capsys):
    _, out, _ = run(capsys, "pi", "--dim", "2", "--order", "4", "--format", "csv")
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    assert rows[0] == ["n", "Pi_hat", "Pi_hat(1)", "Pi_hat(2)"]
    assert rows[3] == ["2", "-12", "12", "0"]


def test_text_output_has_header(capsys):
    _, out, _ = run(capsys, "q", "--order", "3")
    assert out.startswith("# engine: ")
    assert "Q*(s)" in out


@pytest.mark.parametrize("args", [
    ["gamma", "--order", "3"],
    ["polyd", "--order", "3"],
    ["expansion-table", "--model", "animal", "--dims", "10", "20"],
    ["ratio", "--dim", "2", "--order", "5"],
])
def test_other_commands(capsys, args):
    code, out, _ = run(capsys, *args)
    assert code == 0 and len(out.splitlines()) > 3


def test_expansion_table_prints_exact_coefficients(capsys):
    _, out, _ = run(capsys, "expansion-table", "--model", "animal", "--format", "json")
    rows = json.loads(out)["result"]["rows"]
    z6 = next(r for r in rows if r["quantity"] == "z_c" and r["order"] == 6)
    assert z6["bracket"] == {"0": "543967/768", "1": "-395/12", "2": "-55/24"}
    assert z6["status"] == "predicted"


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "rgG", "--dim", "2", "--order", "5")
    assert code == 0 and "FAIL" not in out


def test_usage_errors(capsys):
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "count", "--model", "site")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "expansion-table", "--order", "7")[0] == 2
    assert run(capsys, "count", "--dim", "0")[0] == 2


def test_resource_ceiling_exit_code(capsys):
    code, _, err = run(capsys, "count", "--model", "animal", "--dim", "3", "--order", "9")
    assert code == 3 and "ceiling" in err


def test_verification_failure_exit_code(capsys, monkeypatch):
    from lattice_expansion import verify as v

    def broken(model=None, d=2, N=6):
        return v._run("rgG", lambda rec: rec.add("deliberately false", False, "[z^0]"))

    monkeypatch.setitem(v.SUITES, "rgG", broken)
    code, out, _ = run(capsys, "verify", "rgG")
    assert code == 1 and "FAIL" in out


def test_cache_commands(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LATTICE_EXPANSION_CACHE", str(tmp_path))
    assert run(capsys, "count", "--order", "3", "--cache-dir", str(tmp_path))[0] == 0
    code, out, _ = run(capsys, "cache", "ls", "--cache-dir", str(tmp_path))
    assert code == 0 and "tree-d2" in out
    code, out, _ = run(capsys, "cache", "gc", "--cache-dir", str(tmp_path))
    assert code == 0 and "tree-d2" not in out


def test_unknown_suite_in_library():
    with pytest.raises(UnknownSuiteError):
        verify("nope")


@pytest.mark.parametrize("suite", ["onept", "rgG", "chi", "qdecomp", "dkernel"])
def test_cheap_suites_pass(suite):
    rep = verify(suite, N=4 if suite != "dkernel" else 3)
    assert rep.passed, rep.failure
    assert set(SUITES) == {"onept", "gams", "rgG", "lace", "qdecomp", "smn", "polyd", "chi", "dkernel"}


def test_report_names_identity_and_coefficient():
    from lattice_expansion import verify as v
    from lattice_expansion.series import Series

    rep = v._run("demo", lambda rec: rec.series_eq("a = b", Series([1, 2, 3]), Series([1, 2, 4])))
    assert not rep.passed
    assert rep.failure.identity == "a = b" and rep.failure.detail.startswith("[z^2]")

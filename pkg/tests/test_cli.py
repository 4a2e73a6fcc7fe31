import io
import json
import subprocess
import sys

import pytest

from lparity import claims as C
from lparity import cli
from lparity import fixtures as F
from lparity.core import cyclic_square, format_square, parse_square


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def fx(tmp_path):
    F.emit_fixtures(tmp_path)
    return tmp_path


def test_analyze_depleted_prints_t11(fx):
    code, out = run("analyze", str(fx / "L5.lsq"), "--depleted")
    assert code == 0
    assert "t_11 = 1" in out


def test_analyze_signed_order9(fx):
    code, out = run("analyze", str(fx / "order9.lsq"), "--signed", "--json")
    rep = json.loads(out)
    assert rep["transversals"] == 218
    assert (rep["signed"] - rep["transversals"]) % 2 == 0


def test_analyze_json_round_trips_square(fx):
    code, out = run("analyze", str(fx / "order10.lsq"), "--json", "--types")
    rep = json.loads(out)
    assert F.fixture("order10").to_lists() == rep["square"]
    t = rep["types"]
    assert t["w"] + t["x"] + t["y"] + t["z"] == rep["transversals"]


def test_analyze_empty_square(tmp_path):
    p = tmp_path / "empty.lsq"
    p.write_text("0\n")
    code, out = run("analyze", str(p), "--json", "--spectrum", "--depleted")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 0 and rep["transversals"] == 1


def test_analyze_guard_is_reported_not_fatal(tmp_path):
    p = tmp_path / "z12.lsq"
    p.write_text(format_square(cyclic_square(12)))
    code, out = run("analyze", str(p), "--spectrum")
    assert code == 0
    assert "skipped-cost" in out


def test_analyze_parse_error_has_location(tmp_path, capsys):
    p = tmp_path / "bad.lsq"
    p.write_text("2\n1 2\n2 2\n")
    code, _ = run("analyze", str(p))
    assert code == cli.EXIT_USAGE
    assert "line 3, column 2" in capsys.readouterr().err


def test_verify_exhaustive_all_theorems():
    code, out = run("verify", "--exhaustive", "5", "--all-theorems")
    assert code == 0
    assert "0 theorem failures" in out


def test_verify_named_claims_with_jsonl(tmp_path):
    report = tmp_path / "r.jsonl"
    code, out = run("verify", "--exhaustive", "4", "--claims", "thm-bala,cor-types",
                    "--report", str(report))
    assert code == 0
    lines = [json.loads(x) for x in report.read_text().splitlines()]
    assert len(lines) == 8
    assert {x["claim"] for x in lines} == {"thm-bala", "cor-types"}


def test_verify_unknown_claim(capsys):
    code, _ = run("verify", "--fixtures", "--claims", "thm-bala,nope")
    assert code == cli.EXIT_USAGE
    assert "nope" in capsys.readouterr().err


def test_verify_random_conjectures_needs_seed():
    with pytest.raises(SystemExit):
        cli.main(["verify", "--random", "7", "3"])
    code, out = run("verify", "--random", "7", "5", "42", "--conjectures")
    assert code == 0 and "0 conjecture counterexamples" in out


def test_verify_threads_from_environment(monkeypatch):
    monkeypatch.setenv("LPARITY_THREADS", "3")
    assert cli._threads(None) == 3
    assert cli._threads(2) == 2
    monkeypatch.delenv("LPARITY_THREADS")
    assert cli._threads(None) == 1


def test_conjecture_counterexample_banner(monkeypatch, tmp_path):
    fake = C.Claim("conj-fake", C.CONJECTURE, "latin", "always false",
                   C._always, lambda p: {}, lambda w: False)
    monkeypatch.setitem(C.REGISTRY, "conj-fake", fake)
    code, out = run("verify", "--fixtures", "--claims", "conj-fake",
                    "--counterexample-dir", str(tmp_path / "ce"))
    assert code == 0
    assert "CONJECTURE COUNTEREXAMPLE" in out
    saved = list((tmp_path / "ce").iterdir())
    assert len(saved) == 4  # the four Latin fixtures
    parse_square(saved[0].read_text())


def test_theorem_failure_exit_code(monkeypatch):
    fake = C.Claim("thm-fake", C.THEOREM, "latin", "always false",
                   C._always, lambda p: {}, lambda w: False)
    monkeypatch.setitem(C.REGISTRY, "thm-fake", fake)
    code, out = run("verify", "--exhaustive", "3", "--claims", "thm-fake")
    assert code == cli.EXIT_THEOREM_FAILURE
    assert "THEOREM FAILURE" in out


def test_search_fixture():
    code, out = run("search", "--order-fixture", "9", "--target", "3", "--mod", "8", "--seed", "0")
    data = json.loads(out)
    assert code == 0 and data["status"] == "found" and data["count"] % 8 == 3


def test_search_excluded():
    code, out = run("search", "--order-fixture", "10", "--target", "1", "--mod", "2", "--seed", "0")
    assert code == 0 and json.loads(out)["status"] == "excluded"


def test_search_input_file_and_validation(tmp_path):
    p = tmp_path / "z5.lsq"
    p.write_text(format_square(cyclic_square(5)))
    code, out = run("search", "--input", str(p), "--target", "0", "--mod", "2",
                    "--budget", "20", "--seed", "1")
    assert code == cli.EXIT_EXHAUSTED and json.loads(out)["status"] == "exhausted"
    assert run("search", "--input", str(p), "--target", "2", "--mod", "2", "--seed", "1")[0] == 2
    with pytest.raises(SystemExit):
        cli.main(["search", "--order-fixture", "9", "--target", "1", "--mod", "2"])


def test_gen_is_deterministic():
    a = run("gen", "--order", "6", "--seed", "7")[1]
    b = run("gen", "--order", "6", "--seed", "7")[1]
    assert a == b
    assert parse_square(a).order == 6


def test_gen_many():
    out = run("gen", "--order", "4", "--seed", "1", "--count", "3")[1]
    assert out.count("\n4\n") == 2


def test_fixtures_list_and_emit(tmp_path):
    code, out = run("fixtures", "--list")
    assert code == 0 and "order11" in out
    code, out = run("fixtures", "--emit", str(tmp_path))
    files = sorted(p.name for p in tmp_path.iterdir())
    assert len(files) == 6
    for p in tmp_path.iterdir():
        parse_square(p.read_text())


def test_module_entry_point(fx):
    proc = subprocess.run([sys.executable, "-m", "lparity", "analyze", str(fx / "L5.lsq")],
                          capture_output=True, text=True, check=True)
    assert "E_5 = 3" in proc.stdout

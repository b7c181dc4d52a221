import json
import random

import pytest

from cremona.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from cremona.detmap import polymatrix_to_json
from cremona.fields import GF
from cremona.poly import Poly, PolyMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_relations_table_exit_zero(capsys):
    code, out, _ = run(capsys, "relations", "--table")
    assert code == EXIT_PASS
    data = json.loads(out)
    names = {row["name"]: row["value"] for row in data["rows"]}
    assert names["cremona_d2(n=4,d1=4,r1=2)"] == 4
    assert names["liaison(5,5,12)"] == 13
    assert all("provenance" in row and "anchor" in row for row in data["rows"])


def test_relations_deterministic_bytes(capsys):
    _, out1, _ = run(capsys, "relations", "--table")
    _, out2, _ = run(capsys, "relations", "--table")
    assert out1 == out2


def test_verify_segre_prime3_passes(capsys):
    code, out, _ = run(capsys, "verify", "segre_p5", "--prime", "3")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["pass"] is True
    assert rep["prime"] == 3


def test_verify_deterministic_bytes(capsys):
    code1, out1, _ = run(capsys, "verify", "segre_p5", "--prime", "101", "--seed", "7")
    code2, out2, _ = run(capsys, "verify", "segre_p5", "--prime", "101", "--seed", "7")
    assert code1 == code2 == EXIT_PASS
    assert out1 == out2


def test_verify_degenerate_matrix_fails(tmp_path, capsys):
    # repeated columns: every maximal minor vanishes, smoothness must fail
    F = GF(101)
    rng = random.Random(3)
    col = [Poly.linear_form(F, 5, [rng.randrange(-2, 3) for _ in range(5)]) for _ in range(5)]
    other = [Poly.linear_form(F, 5, [rng.randrange(-2, 3) for _ in range(5)]) for _ in range(5)]
    A = PolyMatrix([[col[i], col[i], other[i], col[i]] for i in range(5)])
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(polymatrix_to_json(A)))
    code, out, _ = run(capsys, "verify", "--matrix", str(path))
    assert code == EXIT_FAIL
    rep = json.loads(out)
    smooth = next(c for c in rep["checks"] if c["name"] == "x1_smooth")
    assert smooth["pass"] is False
    assert smooth["actual"] == "singular"


def test_verify_budget_starved_exit_two(capsys):
    code, out, _ = run(capsys, "verify", "segre_p5", "--gb-pairs", "1")
    assert code == EXIT_BUDGET
    rep = json.loads(out)
    assert rep["budget_exhausted"] is True
    assert any(c["outcome"] == "unknown" for c in rep["checks"])


def test_fiber_todd_room(capsys):
    code, out, _ = run(capsys, "fiber", "todd_room", "--point", "0:0:0:0:1")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["rank"] == 2
    assert rep["equations"] == [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    assert rep["intersection"]["degree"] == 4
    assert rep["intersection"]["dimension"] == 1


def test_fiber_quinto_solid(capsys):
    code, out, _ = run(capsys, "fiber", "quinto_p5_solid", "--point", "0:0:0:0:0:1")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["fiber_dim"] == 3
    assert rep["equations"] == [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]


def test_fiber_segre(capsys):
    code, out, _ = run(capsys, "fiber", "segre_p5", "--point", "1:0:0")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["fiber_dim"] == 3
    assert rep["equations"] == [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]


def test_stratify_todd_room(capsys):
    code, out, _ = run(capsys, "stratify", "todd_room", "--rank", "2")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["points"]["1"] == ["(0:0:0:0:1)"]
    assert rep["certified_all_extensions"] is True


def test_stratify_segre_rank1_empty_over_f3(capsys):
    code, out, _ = run(capsys, "stratify", "segre_p5", "--prime", "3", "--rank", "1")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["points"]["1"] == []
    assert rep["hilbert"]["dimension"] == -1


def test_stratify_conic_special_flags_singular_point(capsys):
    code, out, _ = run(capsys, "stratify", "conic_p5_special", "--rank", "2")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["points"]["1"] == ["(0:0:0:0:1)"]


def test_usage_errors_exit_three(capsys):
    assert run(capsys, "verify")[0] == EXIT_USAGE  # neither example nor matrix
    assert run(capsys, "fiber", "todd_room", "--point", "a:b")[0] == EXIT_USAGE
    assert run(capsys, "fiber", "todd_room", "--point", "0:0:1")[0] == EXIT_USAGE  # arity
    assert run(capsys, "stratify", "todd_room", "--rank", "9")[0] == EXIT_USAGE
    assert run(capsys, "verify", "no_such_example")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--matrix", "/nonexistent.json")[0] == EXIT_USAGE
    assert run(capsys, "fiber", "del_pezzo_cubic", "--point", "0:0:0:0:1")[0] == EXIT_USAGE


def test_env_budget_override(capsys, monkeypatch):
    monkeypatch.setenv("CREMONA_GB_PAIRS", "1")
    code, out, _ = run(capsys, "verify", "segre_p5")
    assert code == EXIT_BUDGET
    # flags win over the environment
    monkeypatch.setenv("CREMONA_GB_PAIRS", "1")
    code, out, _ = run(capsys, "verify", "segre_p5", "--gb-pairs", "200000")
    assert code == EXIT_PASS


def test_output_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "relations", "--output", str(path))
    assert code == EXIT_PASS
    assert json.loads(path.read_text())["rows"]

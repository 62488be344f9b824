import json

import pytest

from rotlat import io
from rotlat.cli import main
from rotlat.congruence import all_congruences, principal_congruence
from rotlat.lattice import chain
from rotlat.rotational import direct_product, find_isomorphism, free_one_generated, rotational_cube
from rotlat.varieties import validate_ideal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="a.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


# --- JSON ---------------------------------------------------------------------------

def test_algebra_round_trip(corpus4):
    for item in corpus4:
        A = item.algebra
        doc = json.loads(json.dumps(io.algebra_to_json(A)))
        assert find_isomorphism(A, io.algebra_from_json(doc)) is not None
        doc = json.loads(json.dumps(io.rot_poset_to_json(item.poset, item.sigma)))
        assert find_isomorphism(A, io.algebra_from_json(doc)) is not None


def test_round_trip_of_generated_algebras():
    for A in (rotational_cube(5), free_one_generated(3).algebra,
              direct_product([rotational_cube(2), rotational_cube(3)])):
        assert find_isomorphism(A, io.algebra_from_json(io.algebra_to_json(A))) is not None


def test_plain_documents_get_identity_rotation():
    A = io.algebra_from_json(io.poset_to_json(chain(2)))
    assert A.size == 3 and A.order == 1
    B = io.algebra_from_json(io.lattice_to_json(A.lattice))
    assert B.size == 3 and B.order == 1


def test_congruence_and_ideal_documents():
    A = direct_product([rotational_cube(2), rotational_cube(1)])
    theta = principal_congruence(A, 0, 1)
    doc = io.congruence_to_json(theta)
    assert doc == {"kind": "congruence", "algebra_size": 8, "labels": [0, 0, 2, 2, 4, 4, 6, 6]}
    assert io.congruence_from_json(doc, A) == theta
    X = validate_ideal([1, 2, 4])
    assert io.ideal_to_json(X) == {"kind": "order_ideal", "members": [1, 2, 4]}
    assert io.ideal_from_json(io.ideal_to_json(X)) == X


def test_format_errors():
    with pytest.raises(io.FormatError):
        io.loads("[1, 2]")
    with pytest.raises(io.FormatError):
        io.loads("{not json")
    with pytest.raises(io.FormatError):
        io.algebra_from_json({"kind": "rotational_lattice", "size": 2, "leq": [[0, 1]]})
    with pytest.raises(io.FormatError):
        io.algebra_from_json({"kind": "banana"})


def test_dot_exports():
    dot = io.algebra_to_dot(rotational_cube(3))
    assert dot.startswith("digraph algebra {") and dot.count("->") == 12
    assert "fillcolor" in dot
    con = all_congruences(direct_product([rotational_cube(2), rotational_cube(3)]))
    assert io.con_lattice_to_dot(con).count("->") == 4
    assert io.poset_to_dot(chain(3)).count("->") == 2


# --- CLI ----------------------------------------------------------------------------

def test_cli_cube(capsys):
    code, out, _ = run(capsys, "cube", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "rotational_lattice" and doc["size"] == 8
    code, out, _ = run(capsys, "cube", "2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_cli_hs(capsys):
    code, out, _ = run(capsys, "hs", "4", "6")
    assert code == 0 and json.loads(out) == {"hs": False, "reason": "4 does not divide 6"}
    code, out, _ = run(capsys, "hs", "2", "6", "--compact")
    assert json.loads(out)["hs"] is True and "\n" not in out.strip()


def test_cli_embed(capsys):
    code, out, _ = run(capsys, "embed", "2", "6")
    assert code == 0 and json.loads(out)["map"][1] == 0b010101
    code, _, err = run(capsys, "embed", "4", "6")
    assert code == 2 and "does not divide" in err


def test_cli_file_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "product", "2", "B3")
    assert code == 0
    path = write(tmp_path, json.loads(out))
    code, out, _ = run(capsys, "con", path)
    assert code == 0 and json.loads(out)["size"] == 4
    code, out, _ = run(capsys, "si", path)
    assert json.loads(out)["subdirectly_irreducible"] is False
    code, out, _ = run(capsys, "factors", path)
    assert [f["cube"] for f in json.loads(out)] == [2, 3]
    code, out, _ = run(capsys, "member", "--ideal", "1,2,3", path)
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "member", "--ideal", "1,2", path)
    assert json.loads(out)["member"] is False
    code, out, _ = run(capsys, "export-dot", path)
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "product", path, "1")
    assert code == 0 and json.loads(out)["size"] == 64


def test_cli_free(capsys):
    code, out, _ = run(capsys, "free", "2")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == 4 and doc["terms"][doc["generator"]] == [[0]]


def test_cli_verify(capsys):
    code, out, _ = run(capsys, "verify", "si", "--max-poset", "3")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["counterexamples"] == []
    code, out, _ = run(capsys, "verify", "varieties", "--max", "4")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "lemmas", "--max-poset", "2")
    assert code == 0


def test_cli_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-poset", "2")
    items = json.loads(out)
    assert code == 0 and len(items) == 5
    code, out, _ = run(capsys, "enumerate", "--max-poset", "2", "--no-trivial")
    assert len(json.loads(out)) == 4


@pytest.mark.parametrize("argv", [
    [],
    ["cube"],
    ["cube", "x"],
    ["bogus"],
    ["member", "--ideal", "2", "missing.json"],
    ["si", "/nonexistent/file.json"],
    ["cube", "13"],
    ["hs", "0", "3"],
    ["verify", "si", "--max-poset", "9"],
    ["si", "3", "--format", "dot"],
])
def test_cli_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("rotlat:")


def test_cli_invalid_document(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    code, _, err = run(capsys, "si", str(path))
    assert code == 2 and "invalid JSON" in err
    path = write(tmp_path, {"kind": "rotational_lattice", "size": 3, "leq": [[0, 1], [1, 2]], "g": [2, 1, 0]})
    code, _, err = run(capsys, "si", path)
    assert code == 2


def test_cli_counterexamples_exit_one(capsys, monkeypatch):
    from rotlat import cli
    from rotlat.harness import VerificationReport

    def broken(corpus):
        return VerificationReport("si_classification", 1, [{"check": "si_iff_cube"}])

    monkeypatch.setattr(cli, "verify_si_classification", broken)
    code, out, _ = run(capsys, "verify", "si", "--max-poset", "1")
    assert code == 1 and json.loads(out)["ok"] is False


def test_module_entry_point():
    import subprocess
    import sys
    done = subprocess.run([sys.executable, "-m", "rotlat", "hs", "2", "4", "--compact"],
                          capture_output=True, text=True, check=False)
    assert done.returncode == 0 and json.loads(done.stdout)["hs"] is True

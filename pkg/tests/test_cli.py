import json
import subprocess
import sys

import pytest

from constraint_minors import formats
from constraint_minors.catalog import PRISM_EDGES
from constraint_minors.cli import main
from constraint_minors.graph import MinorCertificate, build
from constraint_minors.realizer import cycle_matroid_equal

from conftest import EARS_EDGES, EARS_X, two_four_cycles


def write(tmp_path, g, name="g.txt"):
    path = tmp_path / name
    path.write_text(formats.dump(g, "json" if name.endswith(".json") else "text"))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(tmp_path, capsys, cat):
    code, out, _ = run(capsys, "check", write(tmp_path, cat.weird_prism))
    assert code == 1 and out.startswith("3 components")
    code, out, _ = run(capsys, "check", write(tmp_path, build(3, [(0, 1), (1, 2), (0, 2)])))
    assert code == 0 and out.startswith("connected")


def test_check_malformed(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1 0\n0 1 0\n")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2 and "line 3" in err


def test_export_then_check(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "weird_prism")
    assert code == 0
    path = tmp_path / "w.txt"
    path.write_text(out)
    assert run(capsys, "check", str(path))[0] == 1


def test_certify(tmp_path, capsys, cat):
    code, out, _ = run(capsys, "certify", write(tmp_path, cat.constraint_k4))
    assert code == 1 and out.startswith("forbidden constraint_k4")
    code, out, _ = run(capsys, "--format", "json", "certify", write(tmp_path, cat.constraint_wagner))
    data = json.loads(out)
    assert code == 1 and data["schema"] == 1 and data["certificate"]["ops"]
    cert = MinorCertificate.from_json(data["certificate"])
    assert cert.check(cat.constraint_wagner, cat[cert.target])
    code, out, _ = run(capsys, "certify", write(tmp_path, build(6, PRISM_EDGES, [0, 1, 2])))
    assert code == 0 and out.strip() == "connected"


def test_certify_needs_3_connected(tmp_path, capsys):
    code, _, err = run(capsys, "certify", write(tmp_path, two_four_cycles([0, 6])))
    assert code == 3 and "realize" in err


def test_realize(tmp_path, capsys, cat):
    g = two_four_cycles([0, 6])
    code, out, _ = run(capsys, "--format", "json", "realize", write(tmp_path, g, "g.json"))
    data = json.loads(out)
    assert code == 0 and len(data["flips"]) == 1
    h = formats.parse_json(json.dumps({"n": data["n"], "edges": [e[1:] for e in data["edges"]]}))
    labels = [e[0] for e in data["edges"]]
    assert labels == sorted(labels)
    assert cycle_matroid_equal(g, h)
    code, out, _ = run(capsys, "realize", write(tmp_path, cat.constraint_k4))
    assert code == 1 and "constraint_k4" in out
    code, out, _ = run(capsys, "realize", write(tmp_path, build(6, PRISM_EDGES, [0, 1])))
    assert code == 0 and "0 flip(s)" in out


def test_realize_outside_the_six(tmp_path, capsys):
    code, out, _ = run(capsys, "realize", write(tmp_path, build(6, EARS_EDGES, EARS_X)))
    assert code == 1 and "none of the six" in out


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "--jobs", "1", "verify", "lemma45", "6")
    assert code == 0 and "[PASS] four contractible edges" in out
    code, out, _ = run(capsys, "--jobs", "1", "--format", "json", "verify", "theorem2", "5")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["properties"]["equivalence"]


def test_verify_rejects_large_n(capsys):
    code, _, err = run(capsys, "verify", "obstructions", "9")
    assert code == 3 and "exhaustive only up to" in err


def test_verify_writes_reproducers(capsys, tmp_path):
    out_dir = tmp_path / "repro"
    code, out, _ = run(capsys, "--jobs", "1", "verify", "realizer", "6", "--reproducers", str(out_dir))
    # the two unrealizable instances outside the six are reported honestly
    assert code == 1 and "six-obstruction completeness" in out
    files = sorted(out_dir.iterdir())
    assert len(files) == 2
    for f in files:
        assert formats.read_graph(f).m == 9


def test_seed_free_flag(tmp_path, capsys, cat):
    assert run(capsys, "--seed-free", "check", write(tmp_path, cat.constraint_k4))[0] == 1


def test_module_entry_point(tmp_path, cat):
    path = write(tmp_path, cat.weird_prism)
    proc = subprocess.run([sys.executable, "-m", "constraint_minors", "check", path],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "3 components" in proc.stdout


@pytest.mark.parametrize("argv", [[], ["bogus"], ["export", "nothing"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2

import io
import json
import os
import re
import shlex
from pathlib import Path

import pytest

from distlat.cli import run

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def readme_examples():
    """(command, expected output) pairs from the console blocks of the README."""
    text = (ROOT / "README.md").read_text()
    cases = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        cmd, expected = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd:
                    cases.append((cmd, "\n".join(expected) + "\n"))
                cmd, expected = line[2:], []
            else:
                expected.append(line)
        if cmd:
            cases.append((cmd, "\n".join(expected) + "\n"))
    return cases


@pytest.mark.parametrize("cmd, expected", readme_examples(), ids=lambda c: c if isinstance(c, str) and c.startswith("distlat") else "")
def test_readme_example(cmd, expected, monkeypatch):
    monkeypatch.chdir(ROOT)
    argv = shlex.split(cmd)
    assert argv[0] == "distlat"
    code, out, err = call(*argv[1:])
    assert code == 0, err
    assert out == expected


def test_readme_has_examples():
    assert len(readme_examples()) >= 8


def test_json_output_is_deterministic():
    args = ("embed", "--poset", DATA / "vee.poset", "--close")
    first = call(*args)[1]
    assert first == call(*args)[1]
    data = json.loads(first)
    assert data["product"] == [2, 1]
    assert data["classification"] == {"full": True, "subdirect": True, "tight": True}


def test_birkhoff_on_the_diamond():
    code, out, _ = call("birkhoff", "--lattice", DATA / "b2.lattice")
    assert code == 0
    data = json.loads(out)
    assert data["join_irreducibles"] == [1, 2]
    assert data["order"] == []
    assert [r["downset"] for r in data["map"]] == [[], [1], [2], [1, 2]]


def test_downsets_of_the_vee():
    code, out, _ = call("downsets", "--poset", DATA / "vee.poset", "--close")
    data = json.loads(out)
    assert code == 0 and len(data["elements"]) == 5
    assert data["join_irreducibles"] == sorted(data["join_irreducibles"])


def test_extract_diagonal():
    code, out, _ = call("extract", "--sublattice", DATA / "diagonal.sublattice")
    data = json.loads(out)
    assert code == 0 and data["closed"]
    assert data["product"] == [2, 2]
    assert data["intervals"]


def test_build_d_full_output():
    code, out, _ = call("build-d", "--intervals", DATA / "subdirect.intervals")
    data = json.loads(out)
    assert code == 0
    assert "2e1 -> 2e2" in data["arcs"] and "2e2 -> 2e1" in data["arcs"]
    assert set(data["added"]) <= set(data["arcs"])
    assert data["vertices"][0] == "0"


def test_decompose_json():
    code, out, _ = call("decompose", "--poset", DATA / "vee.poset", "--close")
    assert json.loads(out) == {"width": 2, "chains": [[0, 1], [2]]}


def test_verify_small_suite_text():
    code, out, _ = call("verify", "--format", "text", "--max", "2")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 9
    assert all(line.startswith("[PASS] criterion ") for line in lines)


def test_verify_json_is_deterministic():
    a = call("verify", "--max", "2")[1]
    b = call("verify", "--max", "2")[1]
    assert a == b
    assert json.loads(a)["passed"] is True


def test_render_two_chain():
    code, out, _ = call("render", "--lattice", DATA / "b2.lattice")
    assert code == 0
    assert out.count("label=") == 4
    assert out.count(" -> ") == 4


def test_render_d_of_the_one_interval_example():
    code, out, _ = call("render", "--intervals", DATA / "one_interval.intervals")
    assert code == 0
    assert out.count("label=") == 11
    labels = dict(re.findall(r"(n\d+) \[label=\"([^\"]+)\"", out))
    arcs = [(labels[u], labels[v]) for u, v in re.findall(r"(n\d+) -> (n\d+);", out)]
    crossing = [(u, v) for u, v in arcs if "e" in u and "e" in v and u[-1] != v[-1]]
    assert crossing == [("3e2", "3e1")]


def test_render_a_of_the_one_interval_example():
    code, out, _ = call("render", "--intervals", DATA / "one_interval.intervals", "--graph", "a")
    assert code == 0
    assert out.startswith('digraph "digraph"')


def test_render_cyclic_digraph(tmp_path):
    f = tmp_path / "cycle.digraph"
    f.write_text("digraph 2\narc 0 1\narc 1 0\narc 0 0\n")
    code, out, _ = call("render", "--digraph", f)
    assert code == 0
    assert "n0 -> n1;" in out and "n1 -> n0;" in out
    assert "doublecircle" in out


@pytest.mark.parametrize("argv", [
    ("build-d", "--intervals", "no/such/file"),
    ("build-d",),
    ("decompose",),
    ("birkhoff",),
    ("extract",),
    ("classify",),
    ("embed",),
    ("correspond", "--poset", DATA / "point.poset", "--close"),
    ("classify", "--intervals", DATA / "subdirect.intervals", "--product", "2 x"),
    ("classify", "--intervals", DATA / "subdirect.intervals", "--product", "3 3"),
])
def test_malformed_input_exits_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert err.startswith("distlat: format error:")


def test_domain_error_exits_1(tmp_path):
    # x_1 >= 0 and x_2 <= 1 holds everywhere, so nothing is left
    f = tmp_path / "all.intervals"
    f.write_text("product 1 1\ninterval 1 2 0 1\n")
    code, _, err = call("classify", "--intervals", f)
    assert code == 1
    assert err.startswith("distlat: error:")


def test_unclosed_poset_exits_1():
    code, _, err = call("decompose", "--poset", DATA / "vee.poset")
    assert code == 1
    assert "reflexive" in err


def test_verify_failure_exits_3(monkeypatch):
    from distlat import verify

    def broken(settings):
        raise verify.CheckFailed("forced")

    monkeypatch.setattr(verify, "CRITERIA", [(1, "always fails", broken)])
    code, out, _ = call("verify", "--format", "text")
    assert code == 3
    assert out.startswith("[FAIL] criterion 1: always fails")


def test_entry_point_module():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "distlat", "classify", "--sublattice",
                           str(DATA / "diagonal.sublattice"), "--format", "text"],
                          capture_output=True, text=True, env={**os.environ})
    assert proc.returncode == 0
    assert proc.stdout == "full=true subdirect=false tight=false\n"

import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pydot
import pytest

from orbisect.cli import EXIT_INPUT, EXIT_USAGE, run

ROOT = Path(__file__).resolve().parents[1]
SPECS = ROOT / "specs"
SCHEMA = json.loads((ROOT / "src" / "orbisect" / "data" / "output.schema.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def spec(name):
    return SPECS / f"{name}.json"


def as_json(*argv):
    code, text, _ = call(*argv, "--format", "json")
    data = json.loads(text)
    jsonschema.validate(data, SCHEMA)
    return code, data


@pytest.mark.parametrize(
    "argv, code",
    [
        (("obstruct", spec("d6_s5"), "--gamma", "free:2"), 2),
        (("obstruct", spec("d6_s5"), "--gamma", "free:1"), 3),
        (("obstruct", spec("d6_s5_z")), 3),
        (("obstruct", spec("d6_s5_f2")), 2),
        (("obstruct", spec("trivial_torus")), 0),
        (("obstruct", spec("trivial_sphere")), 2),
        (("obstruct", spec("pillowcase")), 2),
        (("obstruct-boundary", spec("disk_z4")), 2),
        (("obstruct-boundary", spec("interval")), 0),
        (("obstruct-boundary", spec("annulus")), 0),
        (("obstruct-open", spec("pillowcase_open")), 0),
        (("obstruct-open", spec("pillowcase_open"), "--removed", "[[0]]"), 2),
        (("sectors", spec("d6_s5")), 0),
        (("bundle-check", spec("bundle_z6")), 0),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_witnesses_are_listed():
    code, data = as_json("obstruct", spec("d6_s5"), "--gamma", "free:2")
    assert code == 2 and data["status"] == "OBSTRUCTED"
    secs = {s["sector_id"]: s for s in data["table"]["sectors"]}
    assert len(data["witnesses"]) == 3
    assert all(secs[w]["dim"] == 2 and secs[w]["chi_es"] == "2" for w in data["witnesses"])
    _, text, _ = call("obstruct", spec("d6_s5"), "--gamma", "free:2")
    assert text.startswith("verdict: OBSTRUCTED") and "witnesses: sector" in text


def test_torus_table():
    code, data = as_json("sectors", spec("trivial_torus"))
    assert code == 0
    assert len(data["sectors"]) == 1 and data["sectors"][0]["chi_es"] == "0"


def test_inertia_and_multisectors():
    _, data = as_json("inertia", spec("d6_s5"))
    assert [(s["image_order"], s["centralizer_order"], s["dim"]) for s in data["sectors"]] == [(1, 6, 5), (3, 3, 3), (2, 2, 3)]
    _, data = as_json("multisectors", 2, spec("d6_s5"))
    assert data["hom_class_count"] == 11 and data["total_hom_count"] == 36


@pytest.mark.parametrize(
    "argv",
    [
        ("sectors", spec("pillowcase")),
        ("obstruct", spec("octahedron_z4")),
        ("obstruct", spec("octahedron_z2_edge")),
        ("obstruct-boundary", spec("disk_z4")),
        ("obstruct-open", spec("pillowcase_open")),
        ("bundle-check", spec("bundle_z6")),
        ("sectors", spec("bundle_z6")),
    ],
)
def test_json_matches_schema(argv):
    as_json(*argv)


def test_bundle_report():
    _, data = as_json("bundle-check", spec("bundle_z6"))
    assert data["is_good"] is True and data["fiber_dim"] == 4
    rows = {r["sector_id"]: r for r in data["sectors"]}
    assert (rows[1]["base_kernel_order"], rows[1]["fiber_kernel_order"], rows[1]["fiber_rank"], rows[1]["good"]) == (6, 2, 2, False)
    assert rows[0]["good"] and rows[0]["fiber_rank"] == 4
    assert all(r["good"] == (r["base_kernel_order"] == r["fiber_kernel_order"]) for r in rows.values() if r["sector_id"])


def _dot_edges(text):
    (graph,) = pydot.graph_from_dot_data(text)
    names = {n.get_name() for n in graph.get_nodes()} - {"node", "edge", "graph"}
    edges = {(e.get_source(), e.get_destination()) for e in graph.get_edges()}
    return names, edges


@pytest.mark.parametrize("name, gamma", [("d6_s5", "free:2"), ("d6_s5", "free:1"), ("pillowcase", "free:1"), ("z4_s3", "free:2")])
def test_dot_matches_poset(name, gamma):
    code, text, _ = call("poset", spec(name), "--gamma", gamma)
    assert code == 0
    names, edges = _dot_edges(text)
    _, data = as_json("sectors", spec(name), "--gamma", gamma)
    poset = data["poset"]
    assert names == {f"n{n['node_id']}" for n in poset["nodes"]}
    assert edges == {(f"n{a}", f"n{b}") for a, b in poset["edges"]}


def test_poset_edges_for_pairs():
    _, text, _ = call("poset", spec("d6_s5"), "--gamma", "free:2")
    assert _dot_edges(text)[1] == {("n1", "n0"), ("n2", "n0"), ("n3", "n1"), ("n3", "n2")}


@pytest.mark.parametrize("fmt", ["table", "json", "dot"])
def test_output_is_deterministic(fmt):
    a = call("obstruct", spec("d6_s5_f2"), "--format", fmt)
    b = call("obstruct", spec("d6_s5_f2"), "--format", fmt)
    assert a == b


def test_subdivision_flag_keeps_verdict():
    _, base = as_json("obstruct", spec("pillowcase"))
    _, finer = as_json("obstruct", spec("pillowcase"), "--subdivisions", 3)
    assert base["status"] == finer["status"]
    assert sorted(base["chi_es_values"].values()) == sorted(finer["chi_es_values"].values())


@pytest.mark.parametrize(
    "argv",
    [
        ("obstruct", SPECS / "missing.json"),
        ("obstruct", spec("d6_s5"), "--gamma", "free:x"),
        ("obstruct", spec("disk_z4")),
        ("obstruct-boundary", spec("d6_s5")),
        ("obstruct-open", spec("d6_s5")),
        ("obstruct-open", spec("pillowcase_open"), "--removed", "not json"),
        ("obstruct-open", spec("pillowcase"), "--removed", "[[0, 1]]"),
        ("bundle-check", spec("d6_s5")),
        ("sectors", spec("d6_s5"), "--subdivisions", "-1"),
        ("multisectors", -1, spec("d6_s5")),
    ],
)
def test_input_errors(argv):
    code, out, err = call(*argv)
    assert code == EXIT_INPUT and out == "" and err.startswith("orbisect: ")


def test_malformed_document(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"group": {"perm_degree": 2, "generators": [[2, 2]]}, "space": {"type": "simplicial"}}')
    code, _, err = call("sectors", p)
    assert code == EXIT_INPUT and "group.generators[0]" in err


@pytest.mark.parametrize("argv", [(), ("frobnicate",), ("sectors",), ("sectors", spec("d6_s5"), "--format", "xml")])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(list(map(str, argv)))
    assert exc.value.code == EXIT_USAGE


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "orbisect.cli", "obstruct", str(spec("d6_s5")), "--gamma", "free:1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 3 and "INCONCLUSIVE" in res.stdout

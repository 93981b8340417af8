import json

import pytest

from ihamilton.certify import iso_certificate, solve, verify
from ihamilton.cli import main
from ihamilton.families import IParams, XParams, i_graph, x_graph
from ihamilton.io import (
    InstanceSpec,
    SchemaError,
    dumps_certificate,
    from_graph6,
    graph_from_json,
    graph_to_json,
    loads_certificate,
    parse_instance,
    to_dot,
    to_graph6,
)
from ihamilton.multigraph import Multigraph
from ihamilton.oracle import brute_isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_instance_aliases():
    assert parse_instance(["i", "5", "1", "2"]) == InstanceSpec("i_graph", (5, 1, 2))
    assert parse_instance(["g", "7", "2"]).graph() == i_graph(IParams(7, 1, 2))
    with pytest.raises(ValueError):
        parse_instance(["x", "4", "2"])
    with pytest.raises(ValueError):
        parse_instance(["i", "6", "3", "1"])


def test_graph_json_round_trip_keeps_multi_edges():
    g = x_graph(XParams(2, 3, 1))
    assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))) == g


def test_graph_json_schema_error_names_field():
    data = graph_to_json(x_graph(XParams(3, 2, 1)))
    data["edges"][4] = [1]
    with pytest.raises(SchemaError, match="edges/4"):
        graph_from_json(data)


def test_graph6_round_trip_and_multigraph_rejection():
    g = i_graph(IParams(5, 1, 2))
    assert brute_isomorphic(from_graph6(to_graph6(g)), g) is not None
    with pytest.raises(ValueError):
        to_graph6(Multigraph(2, [(0, 1), (0, 1)]))


def test_dot_lists_every_node_and_edge():
    text = to_dot(x_graph(XParams(5, 4, 3)))
    assert text.count(" -- ") == 40
    assert sum(1 for line in text.splitlines() if line.strip().rstrip(";").isdigit()) == 20


@pytest.mark.parametrize("tokens,positive", [
    (["i", "5", "1", "2"], False),
    (["i", "12", "2", "3"], True),
    (["i", "6", "2", "2"], False),
    (["x", "5", "4", "3"], True),
    (["x", "5", "2", "0"], False),
    (["sgi", "4", "2", "2"], True),
    (["cir", "5", "1", "2"], True),
])
def test_solve_and_verify(tokens, positive):
    cert = loads_certificate(dumps_certificate(solve(parse_instance(tokens))))
    assert cert.positive == positive
    ok, message = verify(cert)
    assert ok, message


def test_exact_and_constructive_agree():
    spec = parse_instance(["x", "6", "4", "2"])
    assert solve(spec, "exact").positive == solve(spec, "constructive").positive


def test_tampered_cycle_fails_verification():
    cert = solve(parse_instance(["i", "12", "2", "3"]))
    cycle = cert.payload["cycle"]
    cycle[1], cycle[5] = cycle[5], cycle[1]
    ok, _ = verify(cert)
    assert not ok


def test_tampered_tour_fails_verification():
    cert = solve(parse_instance(["x", "5", "4", "3"]))
    cert.payload["tour"] = cert.payload["tour"][1:]
    assert not verify(cert)[0]


def test_certificate_schema_errors_name_the_field():
    data = json.loads(dumps_certificate(solve(parse_instance(["i", "12", "2", "3"]))))
    data["payload"]["cycle"][0] = "a"
    with pytest.raises(SchemaError, match="payload/cycle/0"):
        loads_certificate(json.dumps(data))
    del data["instance"]
    with pytest.raises(SchemaError, match="<root>"):
        loads_certificate(json.dumps(data))
    with pytest.raises(SchemaError):
        loads_certificate("{not json")


def test_iso_certificates():
    cert, info = iso_certificate(XParams(8, 1, 3), XParams(4, 2, 2), oracle=True)
    assert cert.positive and info == {"predicate": True, "oracle": True}
    assert verify(cert)[0]
    cert, _ = iso_certificate(XParams(8, 1, 3), XParams(8, 1, 1))
    assert cert.kind == "non_isomorphism" and verify(cert)[0]


def test_cli_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "i", "5", "1", "2")
    assert code == 1
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and out.startswith("PASS")
    assert run(capsys, "solve", "i", "12", "2", "3")[0] == 0
    assert run(capsys, "solve", "i", "6", "3", "1")[0] == 2
    assert run(capsys, "gen", "x", "2", "3", "1", "--format", "graph6")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "--version")[0] == 0


def test_cli_verify_reports_fail(capsys, tmp_path):
    _, out, _ = run(capsys, "solve", "i", "12", "2", "3")
    data = json.loads(out)
    cycle = data["payload"]["cycle"]
    cycle[-1] = cycle[0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and out.startswith("FAIL")


def test_cli_gen_dot_and_json(capsys):
    code, out, _ = run(capsys, "gen", "x", "5", "4", "3", "--format", "dot")
    assert code == 0 and out.count(" -- ") == 40
    code, out, _ = run(capsys, "gen", "i", "5", "1", "2")
    assert json.loads(out)["graph"]["vertex_count"] == 10


def test_cli_contract(capsys):
    code, out, _ = run(capsys, "contract", "i", "5", "1", "2")
    data = json.loads(out)
    assert code == 0 and data["quotient"]["vertex_count"] == 5
    assert data["coloring"].count("blue") == 5


def test_cli_iso(capsys):
    code, out, _ = run(capsys, "iso", "8", "1", "3", "4", "2", "2", "--oracle")
    assert code == 0 and json.loads(out)["predicate"]
    assert run(capsys, "iso", "8", "1", "3", "8", "1", "1")[0] == 1


def test_cli_witness(capsys):
    code, out, _ = run(capsys, "witness", "7", "4", "3")
    assert code == 0 and json.loads(out)["params"] == [7, 4, 3]
    assert run(capsys, "witness", "5", "2", "0")[0] == 1


def test_survey_is_deterministic_across_jobs(capsys, tmp_path):
    one, two = tmp_path / "one.csv", tmp_path / "two.csv"
    assert run(capsys, "survey", "--n-max", "9", "--no-timing", "--output", str(one))[0] == 0
    assert run(capsys, "survey", "--n-max", "9", "--no-timing", "--jobs", "2", "--output", str(two))[0] == 0
    assert one.read_text() == two.read_text()
    rows = one.read_text().splitlines()
    assert rows[0] == "n,p,q,connected,proper,hamiltonian,method,millis"
    assert "5,1,2,true,false,false,constructive,0" in rows

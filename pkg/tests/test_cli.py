import json
from fractions import Fraction

import pytest

from erdos_sos.certificates import canonical_json, check_certificate, digest, make_certificate, write_certificate
from erdos_sos.cli import main


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "g.txt"
    t = tmp_path / "t.txt"
    assert main(["gen", "--kind", "disjoint-cliques", "--n", "12", "--d", "4", "-o", str(g)]) == 0
    assert main(["gen", "--kind", "random-tree", "--k", "4", "--max-degree", "3", "-o", str(t)]) == 0
    return tmp_path, str(g), str(t)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 else out)


# certificates


def test_canonical_json_sorted_and_fractions():
    assert canonical_json({"b": Fraction(1, 3), "a": {2, 1}}) == '{"a":[1,2],"b":"1/3"}'


def test_digest_stable():
    assert digest({"x": 1, "y": [1, 2]}) == digest({"y": [1, 2], "x": 1})


def test_certificate_roundtrip(tmp_path):
    cert = make_certificate("kappa", {"kappa": Fraction(1, 2)}, {"graph": [[0, 1]]}, seed=3)
    assert check_certificate(cert)
    path = tmp_path / "c.json"
    write_certificate(cert, path)
    again = json.loads(path.read_text())
    assert again == cert and check_certificate(again)
    again["outputs"]["kappa"] = "1/3"
    assert not check_certificate(again)


# CLI


def test_gen_header(files):
    _, g, _ = files
    with open(g) as fh:
        assert fh.readline().split() == ["12", "18"]


def test_no_args_exits_2():
    assert main([]) == 2


def test_missing_file_exits_2(tmp_path):
    assert main(["kappa", "-g", str(tmp_path / "nope.txt")]) == 2


def test_malformed_file_exits_2(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    assert main(["kappa", "-g", str(bad)]) == 2


def test_oracle_contain_false(files, capsys):
    _, g, t = files
    code, cert = run_json(capsys, ["oracle", "--mode", "contain", "-g", g, "-t", t])
    assert code == 0 and cert["outputs"]["contained"] is False
    assert check_certificate(cert)


@pytest.mark.parametrize("argv", [
    ["kappa", "-g", "{g}"],
    ["kappa", "-g", "{g}", "--mode", "search"],
    ["decompose", "-g", "{g}", "--q", "1/10"],
    ["regularity", "-g", "{g}"],
    ["matchings", "-g", "{g}"],
    ["treeops", "-t", "{t}", "--op", "divide", "--m", "1"],
    ["treeops", "-t", "{t}", "--op", "paths-or-leaves"],
    ["detect", "-g", "{g}", "--k", "4"],
    ["oracle", "--mode", "erdos-sos", "--n", "8", "--d", "3", "--trials", "5"],
])
def test_subcommands_succeed(files, capsys, argv):
    _, g, t = files
    code, cert = run_json(capsys, [a.format(g=g, t=t) for a in argv])
    assert code == 0 and cert["subcommand"] == argv[0] and check_certificate(cert)


def test_embed_greedy(tmp_path, capsys):
    g = tmp_path / "k5.txt"
    t = tmp_path / "p.txt"
    main(["gen", "--kind", "disjoint-cliques", "--n", "5", "--d", "5", "-o", str(g)])
    main(["gen", "--kind", "random-tree", "--k", "3", "--max-degree", "2", "-o", str(t)])
    code, cert = run_json(capsys, ["embed", "-g", str(g), "-t", str(t), "--mode", "greedy"])
    assert code == 0 and cert["outputs"]["status"] == "embedded"
    assert len(cert["outputs"]["trace"]["embedding"]) == 4


def test_nu_f_triangle(tmp_path, capsys):
    g = tmp_path / "k3.txt"
    main(["gen", "--kind", "disjoint-cliques", "--n", "3", "--d", "3", "-o", str(g)])
    code, cert = run_json(capsys, ["oracle", "--mode", "nu-f", "-g", str(g)])
    assert code == 0 and "3/2" in json.dumps(cert["outputs"])


def test_nu_f_too_many_edges(files):
    _, g, _ = files
    assert main(["oracle", "--mode", "nu-f", "-g", g]) == 2


def test_embed_hypothesis_failure_exits_1(files, capsys):
    tmp, _, _ = files
    g = tmp / "sparse.txt"
    t = tmp / "big.txt"
    main(["gen", "--kind", "disjoint-cliques", "--n", "6", "--d", "3", "-o", str(g)])
    main(["gen", "--kind", "random-tree", "--k", "5", "--max-degree", "3", "-o", str(t)])
    capsys.readouterr()
    assert main(["embed", "-g", str(g), "-t", str(t), "--mode", "greedy"]) == 1


def test_output_is_deterministic(files):
    tmp, g, _ = files
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp / name
        assert main(["kappa", "-g", g, "--mode", "search", "--seed", "4", "-o", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        main(["gen", "--kind", "random-graph", "--n", "20", "--p", "1/3", "--seed", "7", "-o", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_suite_single(capsys):
    assert main(["verify-suite", "--only", "1"]) == 0
    out = capsys.readouterr().out
    assert "criterion  1 PASS" in out and "1/1 criteria passed" in out

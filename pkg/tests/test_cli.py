"""CLI surface: flags, exit codes, file formats."""

import json

import pytest

from mrlrc.cli import main

GEN_ARGS = ["construct", "--kind", "gen", "--r", "2", "--delta", "2",
            "--t", "1", "--N", "2", "--g", "2", "--k", "5"]


@pytest.fixture()
def bundle(tmp_path):
    out = tmp_path / "b"
    assert main(GEN_ARGS + ["--out", str(out)]) == 0
    return out / "bundle.json"


def test_construct_writes_bundle(bundle, capsys):
    assert bundle.exists()
    doc = json.loads(bundle.read_text())
    assert doc["kind"] == "gen" and doc["k"] == 5 and doc["h"] == 1
    assert (bundle.parent / doc["matrices"]["G"]).exists()
    assert (bundle.parent / doc["matrices"]["H"]).exists()


def test_construct_rejects_bad_params(tmp_path, capsys):
    rc = main(["construct", "--kind", "pc1", "--r", "2", "--delta", "2",
               "--t", "1", "--N", "2", "--g", "2", "--h", "3",
               "--out", str(tmp_path)])
    assert rc == 1
    assert "h <= r" in capsys.readouterr().err


def test_construct_usage_error(tmp_path):
    assert main(["construct", "--kind", "gen", "--r", "2",
                 "--out", str(tmp_path)]) == 1


def test_verify_exhaustive_pass(bundle, tmp_path, capsys):
    report = tmp_path / "rep.json"
    rc = main(["verify", str(bundle), "--report", str(report)])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out
    doc = json.loads(report.read_text())
    assert doc["verdict"] == "pass" and doc["patterns_checked"] == 64


def test_verify_sampled_deterministic(bundle, tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["verify", str(bundle), "--mode", "sampled", "--trials", "60",
                 "--seed", "5", "--report", str(r1)]) == 0
    assert main(["verify", str(bundle), "--mode", "sampled", "--trials", "60",
                 "--seed", "5", "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_corrupted_srmat_fails(bundle, capsys):
    doc = json.loads(bundle.read_text())
    gpath = bundle.parent / doc["matrices"]["G"]
    lines = gpath.read_text().splitlines()
    head, first = lines[0], lines[1].split()
    first[0] = "0" if first[0] != "0" else "1"
    gpath.write_text("\n".join([head, " ".join(first)] + lines[2:]) + "\n")
    rc = main(["verify", str(bundle)])
    out = capsys.readouterr().out
    assert rc == 2
    assert "FAIL" in out and "witness" in out


def test_encode_decode_round_trip(bundle, tmp_path, capsys):
    msg = tmp_path / "msg.txt"
    msg.write_text("1 2 3 4 5\n")
    cw = tmp_path / "cw.txt"
    assert main(["encode", str(bundle), str(msg), "--out", str(cw)]) == 0
    symbols = cw.read_text().split()
    assert len(symbols) == 10

    word = tmp_path / "word.txt"
    erased = ["?", "?"] + symbols[2:]
    word.write_text(" ".join(erased) + "\n")
    out = tmp_path / "decoded.txt"
    assert main(["decode", str(bundle), str(word), "--out", str(out)]) == 0
    assert out.read_text().split() == symbols


def test_decode_unrecoverable_exit_code(bundle, tmp_path, capsys):
    word = tmp_path / "word.txt"
    word.write_text(" ".join(["?"] * 10) + "\n")
    rc = main(["decode", str(bundle), str(word)])
    assert rc == 2
    assert "unrecoverable" in capsys.readouterr().out


def test_decode_rejects_wrong_length(bundle, tmp_path):
    word = tmp_path / "word.txt"
    word.write_text("1 2 3\n")
    assert main(["decode", str(bundle), str(word)]) == 1


def test_encode_message_length_checked(bundle, tmp_path):
    msg = tmp_path / "short.txt"
    msg.write_text("1 2\n")
    assert main(["encode", str(bundle), str(msg)]) == 1


def test_simulate_report(bundle, tmp_path, capsys):
    rep = tmp_path / "sim.json"
    rc = main(["simulate", str(bundle), "--trials", "100", "--seed", "7",
               "--model", "adversarial_maximal", "--report", str(rep)])
    assert rc == 0
    doc = json.loads(rep.read_text())
    assert doc["outcomes"]["data_loss"] == 0
    assert sum(doc["outcomes"].values()) == 100


def test_simulate_deterministic_bytes(bundle, tmp_path):
    r1, r2 = tmp_path / "s1.json", tmp_path / "s2.json"
    for rp in (r1, r2):
        assert main(["simulate", str(bundle), "--trials", "80", "--seed", "3",
                     "--model", "uniform_nodes", "--failures", "2",
                     "--report", str(rp)]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_bounds_fig1(capsys):
    rc = main(["bounds", "--r", "3", "--delta", "3", "--t", "2", "--g", "8",
               "--N", "2", "--k", "16"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "6561" in out                      # gen: 9^4
    assert "h <= r" in out                    # pc1 inapplicable: 16 > 3
    assert str(7 ** 64) in out                # pc2: (n/g - 1)^(g(N(delta-1)+t)+h)


def test_bounds_json_all_applicable(capsys):
    rc = main(["bounds", "--r", "2", "--delta", "2", "--t", "1", "--g", "2",
               "--N", "2", "--h", "1", "--json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    for kind in ("gen", "pc1", "pc2"):
        assert "bound_value" in doc[kind]
    assert doc["lower_bound"]["regime"] == "none"  # h = 1 < 2


def test_bounds_h1_regime_none(capsys):
    rc = main(["bounds", "--r", "2", "--delta", "2", "--t", "1", "--g", "4",
               "--N", "1", "--h", "1"])
    assert rc == 0
    assert "regime none" in capsys.readouterr().out


def test_missing_bundle_is_usage_error(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "nope.json")]) == 1
    assert "cannot load bundle" in capsys.readouterr().err


def test_unknown_command_is_usage_error():
    assert main(["frobnicate"]) == 1


def test_construct_pc2_bundle(tmp_path, capsys):
    out = tmp_path / "p2"
    rc = main(["construct", "--kind", "pc2", "--r", "2", "--delta", "2",
               "--t", "1", "--N", "1", "--g", "2", "--h", "1",
               "--out", str(out)])
    assert rc == 0
    assert "GF(3^5)" in capsys.readouterr().out
    doc = json.loads((out / "bundle.json").read_text())
    assert doc["m"] == 5 and doc["p"] == 3
    assert main(["verify", str(out / "bundle.json")]) == 0


def test_bounds_sorted_ascending(capsys):
    rc = main(["bounds", "--r", "2", "--delta", "2", "--t", "1", "--g", "2",
               "--N", "2", "--h", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    bounds = [int(line.split("bound=")[1].split()[0])
              for line in out.splitlines() if "bound=" in line]
    assert bounds == sorted(bounds) and len(bounds) == 3

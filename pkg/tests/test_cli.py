import json
import subprocess
import sys

import pytest

from vacdet import cli
from vacdet import determinants as dt
from vacdet.exact import Poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_schema_and_virasoro_oracle(capsys):
    code, rep = run_json(capsys, "det", "virasoro", "--N", "4", "--oracle")
    assert code == 0
    assert set(rep) == {"query", "result", "cutoffs", "provenance"}
    row = rep["result"][0]
    assert row["factors"] == [["c", 2], ["c + 22/5", 1]]
    assert row["oracle"]["agree"] is True
    assert rep["cutoffs"] == {"N": ["4"]}


def test_vacuum_depth_one(capsys):
    code, rep = run_json(capsys, "det", "vacuum", "--algebra", "sl2^", "--depth", "1")
    assert code == 0
    assert all(r["factors"] == [["k", 1]] for r in rep["result"])


def test_verma_vir(capsys):
    code, rep = run_json(capsys, "det", "verma", "--algebra", "Vir", "--N", "1")
    assert rep["result"][0]["factors"] == [["h", 1]]


def test_affine_oracle_tsv(capsys):
    code, out, _ = run(capsys, "det", "vacuum", "--algebra", "osp(1|2)^", "--depth", "1",
                       "--oracle", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[0] == "row\tkey\tvalue"
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    agree = [v for _, key, v in rows if key == "oracle.agree"]
    assert len(agree) == 3 and set(agree) == {"true"}


def test_oracle_mismatch_exit_code(capsys, monkeypatch):
    def wrong(N):
        d = dt.FactoredDeterminant("wrong", (N,))
        d.add(Poly.linear("c", 1, 1), 1)
        return d

    monkeypatch.setattr(dt, "virasoro_vacuum_det", wrong)
    code, rep = run_json(capsys, "det", "virasoro", "--N", "2", "--oracle")
    assert code == 2
    assert rep["result"][0]["oracle"]["agree"] is False
    assert rep["result"][0]["oracle"]["zero_diff"] == {"-1": [1, 0]}


def test_unsupported_exit_code(capsys):
    code, _, err = run(capsys, "simplicity", "--algebra", "E9", "--k", "1")
    assert code == 3 and "E9" in err
    with pytest.raises(SystemExit) as e:
        cli.main(["det", "bogus"])
    assert e.value.code == 3


def test_simplicity_examples(capsys):
    code, rep = run_json(capsys, "simplicity", "--algebra", "osp(1|2)", "--k", "-3/2+1/3")
    assert code == 0
    assert rep["query"]["k"] == ["-3/2+1/3"]
    assert rep["result"][0]["vacuum"]["criterion"] == "osp1-odd-root"
    assert rep["result"][0]["vacuum"]["k"] == "-7/6"
    code, rep = run_json(capsys, "simplicity", "--family", "N2", "--c", "0")
    assert rep["result"][0]["status"] == "NotSimple"
    code, rep = run_json(capsys, "simplicity", "--algebra", "sl3", "--k", "1/2-3")
    row = rep["result"][0]
    assert row["vacuum"]["status"] == "Irreducible"
    assert row["w_algebra"]["status"] == "Simple"


def test_kl_example(capsys):
    code, rep = run_json(capsys, "kl", "--diagram", "affine-C2", "--q", "s0", "s0s1s0s2s1s0")
    assert code == 0
    assert rep["result"][0]["value"] == "1+q^2"


def test_identity_and_mb(capsys):
    code, rep = run_json(capsys, "identity", "--name", "vircon1", "--cutoff", "60")
    assert rep["result"][0]["verdict"] == "PASS"
    code, rep = run_json(capsys, "mb", "--algebra", "sl2^", "--b", "1/3", "--cutoff", "12")
    assert rep["result"][0]["verdict"] == "zero up to cutoff 12"
    assert "caveat" in rep["cutoffs"]


def test_rationals_never_decimal(capsys):
    code, out, _ = run(capsys, "det", "ns", "--N", "0..3", "--format", "json")
    rep = json.loads(out)
    for row in rep["result"]:
        for f, _ in row["factors"]:
            assert "." not in f


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "vacdet.cfg"
    cfg.write_text("format = json\ndepth = 2\n")
    code, out, _ = run(capsys, "det", "vacuum", "--algebra", "sl2^", "--config", str(cfg))
    rep = json.loads(out)
    assert [2, 2] in rep["cutoffs"]["levels"]


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("VACDET_CACHE_DIR", str(tmp_path))
    run(capsys, "mb", "--algebra", "sl2^", "--b", "2", "--cutoff", "10")
    assert any(tmp_path.iterdir())
    code, rep = run_json(capsys, "mb", "--algebra", "sl2^", "--b", "2", "--cutoff", "10")
    assert rep["result"][0]["verdict"] == "nonzero"


def test_help_documents_environment():
    out = subprocess.run([sys.executable, "-m", "vacdet", "--help"], capture_output=True, text=True).stdout
    assert "VACDET_CACHE_DIR" in out and "VACDET_CONFIG" in out

import json

import pytest

from dpchroma.cli import main, parse_m_range


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main(list(argv) + ["--out", str(out)])
    text = out.read_text() if out.exists() else None
    return code, text


def result_of(text):
    return json.loads(text)["result"]


def test_parse_m_range():
    assert parse_m_range("2..5") == (2, 5)
    assert parse_m_range("3") == (3, 3)


def test_chrompoly_c4_file(tmp_path):
    f = tmp_path / "c4.txt"
    f.write_text("0 1\n1 2\n2 3\n3 0\n")
    code, text = run(tmp_path, "chrompoly", "--graph", str(f))
    assert code == 0
    res = result_of(text)
    assert res["whitney"] == {"coeffs": ["0", "-3", "6", "-4", "1"]}
    assert res["deletion_contraction"] == res["whitney"]
    assert res["coefficient_report"]["pass"] is True


def test_chrompoly_k4(tmp_path):
    code, _ = run(tmp_path, "chrompoly", "--graph", "K4")
    assert code == 0


def test_chrompoly_capacity_exit_2(tmp_path, capsys):
    f = tmp_path / "big.txt"
    # 25 edges: K7 (21 edges) plus a pendant path of 4 edges
    edges = [(i, j) for i in range(7) for j in range(i + 1, 7)] + [(6, 7), (7, 8), (8, 9), (9, 10)]
    assert len(edges) == 25
    f.write_text("".join(f"{u} {v}\n" for u, v in edges))
    code, text = run(tmp_path, "chrompoly", "--graph", str(f))
    assert code == 2 and text is None
    assert "MAX_SUBSET_EDGES=24" in capsys.readouterr().err


def test_parse_error_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("0 1\n2 2\n")
    code, _ = run(tmp_path, "chrompoly", "--graph", str(f))
    assert code == 2
    assert "line 2" in capsys.readouterr().err


def test_dpmin_c4(tmp_path):
    code, text = run(tmp_path, "dpmin", "--graph", "C4", "--m", "2..5")
    assert code == 0
    rows = result_of(text)["rows"]
    assert [r["value"] for r in rows] == [0, 15, 80, 255]
    assert [r["P"] for r in rows] == [2, 18, 84, 260]
    assert all("witness" in r for r in rows)


def test_dpmin_c5_and_tree(tmp_path):
    _, text = run(tmp_path, "dpmin", "--graph", "C5", "--m", "3")
    assert result_of(text)["rows"][0]["value"] == 30
    _, text = run(tmp_path, "dpmin", "--graph", "P5", "--m", "2..4")
    assert all(r["value"] == r["P"] for r in result_of(text)["rows"])


def test_dpmin_budget_exit_2(tmp_path):
    code, _ = run(tmp_path, "dpmin", "--graph", "W4", "--m", "5", "--budget", "100")
    assert code == 2


def test_gap_c4_and_c5(tmp_path):
    code, text = run(tmp_path, "gap", "--graph", "C4", "--m", "2..6")
    assert code == 0
    assert 0.9 <= result_of(text)["fitted_exponent"] <= 1.1
    _, text = run(tmp_path, "gap", "--graph", "C5", "--m", "2..5")
    res = result_of(text)
    assert all(r["gap"] == 0 for r in res["rows"]) and res["fitted_exponent"] is None


def test_gap_csv(tmp_path):
    code, text = run(tmp_path, "gap", "--graph", "C4", "--m", "2..4", "--format", "csv", name="g.csv")
    assert code == 0
    assert text.splitlines() == ["m,P,P_DP,gap", "2,2,0,2", "3,18,15,3", "4,84,80,4"]


def test_cone_k3(tmp_path):
    code, text = run(tmp_path, "cone", "--graph", "K3", "--m", "2..5")
    assert code == 0
    res = result_of(text)
    assert all(r["equal"] for r in res["rows"]) and res["first_equal_onset"] == 2
    code, text = run(tmp_path, "cone", "--graph", "K3", "--m", "2..3", "--format", "csv", name="c.csv")
    assert text.splitlines()[0] == "m,P,P_DP,equal"


def test_verify_examples(tmp_path):
    code, text = run(tmp_path, "verify", "lemma-formulas2", "--graph", "C5", "--m", "3")
    assert code == 0 and result_of(text)["summary"]["pass"]
    code, _ = run(tmp_path, "verify", "lemma-three", "--graph", "W4", "--m", "4", "--covers", "50")
    assert code == 0
    code, text = run(tmp_path, "verify", "coefficients", "--corpus", "small")
    assert code == 0 and result_of(text)["summary"]["graphs"] >= 40


def test_verify_lower_and_oracle(tmp_path):
    code, text = run(tmp_path, "verify", "lemma-lower", "--graph", "C4", "--covers", "10")
    assert code == 0
    rep = result_of(text)["reports"][0]
    assert rep["info"]["m"] == 50 and rep["info"]["hypothesis_met"]
    code, text = run(tmp_path, "verify", "oracle", "--graph", "glue:3", "--m", "2..3", "--covers", "3")
    assert code == 0 and result_of(text)["summary"]["checked"] > 0


def test_verify_corpus_default(tmp_path):
    code, text = run(tmp_path, "verify", "lemma-formulas2", "--corpus", "named", "--covers", "2")
    assert code == 0
    assert result_of(text)["summary"]["failed"] == 0


def test_identical_config_identical_result(tmp_path):
    _, a = run(tmp_path, "dpmin", "--graph", "K4", "--m", "2..4", name="a.json")
    _, b = run(tmp_path, "dpmin", "--graph", "K4", "--m", "2..4", name="b.json")
    assert result_of(a) == result_of(b)
    assert json.dumps(result_of(a), sort_keys=True) == json.dumps(result_of(b), sort_keys=True)


def test_cache_cold_warm_and_env_override(tmp_path, monkeypatch):
    cdir = tmp_path / "cache"
    _, cold = run(tmp_path, "dpmin", "--graph", "W4", "--m", "2..3", "--cache", str(cdir), name="1.json")
    assert any(cdir.iterdir())
    _, warm = run(tmp_path, "dpmin", "--graph", "W4", "--m", "2..3", "--cache", str(cdir), name="2.json")
    assert result_of(cold) == result_of(warm)
    env_dir = tmp_path / "envcache"
    monkeypatch.setenv("DPCHROMA_CACHE", str(env_dir))
    run(tmp_path, "dpmin", "--graph", "C4", "--m", "3", "--cache", str(tmp_path / "ignored"), name="3.json")
    assert any(env_dir.iterdir()) and not (tmp_path / "ignored").exists()


@pytest.mark.parametrize("argv", [["dpmin", "--graph", "C4", "--m", "5..2"],
                                  ["dpmin", "--graph", "C4", "--jobs", "0"]])
def test_bad_config_exit_2(tmp_path, argv):
    assert run(tmp_path, *argv)[0] == 2

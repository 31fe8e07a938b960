import json
import subprocess
import sys

import pytest

from krallcremona.cli import JobSpec, main, parse_ks, run


def cli(*args, cache=None):
    argv = list(args) + (["--cache-dir", str(cache)] if cache else ["--no-cache"])
    proc = subprocess.run([sys.executable, "-m", "krallcremona", *argv], capture_output=True, text=True)
    return proc.stdout, proc.returncode


def test_construct_one_n1_text():
    out, code = run(JobSpec("construct", "one", 1, format="text", use_cache=False))
    assert code == 0
    assert out.strip() == "( h + k(k+1)/2 l0 : h + (k+1)(k+2)/2 l0 )"


def test_construct_two_n1_at_k2():
    out, code = run(JobSpec("construct", "two", 1, k=parse_ks("2"), format="text", use_cache=False))
    assert code == 0
    assert out.strip() == "( h^2 + 2 h l0 + 2 h r0 + 3 l0 r0 : h l0 - h r0 : h^2 + 9/2 h l0 + 9/2 h r0 + 18 l0 r0 )"


def test_construct_degenerate_exit_1():
    out, code = run(JobSpec("construct", "one", 1, k=parse_ks("-1"), use_cache=False))
    assert code == 1
    assert json.loads(out)["degenerate"] is True


def test_census_two_n1_triple_line():
    out, code = run(JobSpec("census", "two", 1, use_cache=False))
    recs = {r["k"]: r for r in json.loads(out)["records"]}
    for k in ("-1/1", "0/1"):
        assert [(f["degree"], f["multiplicity"]) for f in recs[k]["factors"]] == [(1, 3)]


def test_invert_at_rational_k():
    out, code = run(JobSpec("invert", "two", 1, k=parse_ks("5/3"), use_cache=False))
    assert code == 0
    assert json.loads(out)["kind"] == "inverse"


def test_cache_cold_and_warm_are_byte_equal(tmp_path):
    spec = JobSpec("construct", "one", 2, cache_dir=str(tmp_path))
    cold, _ = run(spec)
    assert list(tmp_path.iterdir())
    warm, _ = run(spec)
    assert cold == warm


def test_threads_do_not_change_output(tmp_path):
    a, _ = run(JobSpec("construct", "two", 1, threads=1, use_cache=False))
    b, _ = run(JobSpec("construct", "two", 1, threads=2, use_cache=False))
    assert a == b


def test_verify_subprocess_and_mutation(tmp_path):
    out, code = cli("verify", "--family", "one", "--n", "2", "--no-timing", cache=tmp_path)
    assert code == 0
    rep = json.loads(out)
    d = next(c for c in rep["clauses"] if c["id"] == "D-root-set")
    assert d["witness"]["roots"] == ["-2/1", "-3/2", "-1/1"]
    out2, _ = cli("verify", "--family", "one", "--n", "2", "--no-timing", cache=tmp_path)
    assert out2 == out
    _, code = cli("verify", "--family", "one", "--n", "2", "--mutate-fixture")
    assert code == 1


def test_out_file(tmp_path):
    target = tmp_path / "map.json"
    assert main(["construct", "--family", "one", "--n", "1", "--no-cache", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["family"] == "one"


def test_bad_arguments_exit_2():
    assert main(["construct", "--family", "one", "--n", "0", "--no-cache"]) == 2
    with pytest.raises(SystemExit):
        main(["construct", "--family", "three", "--n", "1"])

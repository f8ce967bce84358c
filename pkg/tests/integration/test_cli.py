import pytest

from detour_cg.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

SMALL = ["--n-items", "6", "--capacity", "3", "--vehicles", "2", "--grid", "30"]


@pytest.fixture
def instance_file(tmp_path, capsys):
    assert main(["gen", "--seeds", "3", *SMALL, "--out-dir", str(tmp_path)]) == EXIT_OK
    capsys.readouterr()
    return tmp_path / "cvrp_seed3.json"


def test_gen_writes_one_file_per_seed(tmp_path, capsys):
    assert main(["gen", "--seeds", "1-2,5", *SMALL, "--out-dir", str(tmp_path)]) == EXIT_OK
    printed = capsys.readouterr().out.split()
    names = [p.rsplit("/", 1)[-1] for p in printed]
    assert names == ["cvrp_seed1.json", "cvrp_seed2.json", "cvrp_seed5.json"]
    assert all((tmp_path / name).exists() for name in ("cvrp_seed1.json", "cvrp_seed5.json"))


def test_gen_sscflp(tmp_path):
    args = ["gen", "--kind", "sscflp", "--seeds", "1", "--n-items", "6", "--facilities", "3"]
    assert main(args + ["--out-dir", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "sscflp_seed1.json").exists()


def test_gen_infeasible_family_is_a_usage_error(tmp_path):
    args = ["gen", "--n-items", "9", "--capacity", "2", "--vehicles", "2", "--out-dir", str(tmp_path)]
    assert main(args) == EXIT_USAGE


def test_run_writes_requested_outputs(instance_file, tmp_path, capsys):
    out = tmp_path / "log.csv"
    pool = tmp_path / "pool.jsonl"
    lp = tmp_path / "rmp.lp"
    args = ["run", "--instance", str(instance_file), "--stab", "sdoi", "--out", str(out)]
    assert main(args + ["--dump-columns", str(pool), "--write-lp", str(lp)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("optimal objective=")
    assert out.read_text().startswith("iteration,elapsed_sec,rmp_obj")
    assert pool.read_text().count("\n") >= 6
    assert lp.read_text().splitlines()[1] == "Minimize"


def test_run_hitting_the_cap_fails(instance_file, capsys):
    assert main(["run", "--instance", str(instance_file), "--max-iterations", "1"]) == EXIT_FAILURE
    assert capsys.readouterr().out.startswith("iteration_cap objective=")


def test_run_missing_instance(tmp_path):
    assert main(["run", "--instance", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_run_smoothing_on_sscflp(tmp_path, capsys):
    args = ["gen", "--kind", "sscflp", "--seeds", "2", "--n-items", "5", "--facilities", "2"]
    main(args + ["--out-dir", str(tmp_path)])
    capsys.readouterr()
    assert main(["run", "--instance", str(tmp_path / "sscflp_seed2.json"), "--stab", "sdoi"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("optimal objective=")


def test_run_time_cap_fails(instance_file, capsys):
    assert main(["run", "--instance", str(instance_file), "--max-seconds", "1e-9"]) == EXIT_FAILURE
    assert capsys.readouterr().out.startswith("time_cap objective=")


def test_unknown_stabilization_exits_by_argparse(instance_file):
    with pytest.raises(SystemExit) as error:
        main(["run", "--instance", str(instance_file), "--stab", "trust_region"])
    assert error.value.code == EXIT_USAGE


def test_bench_then_summarize(tmp_path, capsys):
    args = ["bench", "--seeds", "1,2", *SMALL, "--out-dir", str(tmp_path), "--sequential-timing"]
    assert main(args) == EXIT_OK
    table = capsys.readouterr().out
    assert table.startswith("| instance | unstab_time |")
    assert "| median |" in table

    assert main(["summarize", str(tmp_path), "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("instance,unstab_time,dtdoi_time,sdoi_time")
    assert [line.split(",")[0] for line in lines[1:]] == ["seed1", "seed2", "mean", "median"]


def test_summarize_empty_directory(tmp_path):
    assert main(["summarize", str(tmp_path)]) == EXIT_FAILURE

import json
import subprocess
import sys

from conftest import PROGRAMS
from lpodc.cli import main

LPODC = [sys.executable, "-m", "lpodc.cli"]


def run(args, stdin="", env_extra=None):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        LPODC + args,
        input=stdin,
        capture_output=True,
        text=True,
        env=env,
        cwd=str(PROGRAMS.parent),
    )


def test_translate_matches_library(tmp_path):
    out = run(["translate", "--criterion", "penalty-sum", "programs/pi1.lpod"])
    assert out.returncode == 0
    assert out.stdout.splitlines()[0].startswith("% source:")
    assert "{ap(X1,X2): X1=0..2, X2=0..2}." in out.stdout


def test_translate_crp_to_file(tmp_path):
    target = tmp_path / "out.lp"
    out = run(["translate", "programs/pi3.crp", "-o", str(target)])
    assert out.returncode == 0
    assert "pAS(X1,X2) :- candidate(X1,X2)" in target.read_text()


def test_translate_empty_input_warns():
    out = run(["translate", "--dialect", "lpod"], stdin="")
    assert out.returncode == 0
    assert out.stdout == ""
    assert "nothing to translate" in out.stderr


def test_translate_validation_error_exit_2():
    out = run(["translate", "--dialect", "lpod"], stdin="ap(1) :- b.\na * b.\n")
    assert out.returncode == 2
    assert "reserved" in out.stderr


def test_parse_error_exit_2():
    out = run(["solve", "--dialect", "lpod"], stdin="a :- ,.\n")
    assert out.returncode == 2
    assert "parse error" in out.stderr


def test_solve_pi2_cardinality_json():
    out = run(["solve", "--criterion", "cardinality", "--format", "json", "programs/pi2.lpod"])
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["preferred"] == [["close", "hotel(1)", "star2"]]
    assumptions = {tuple(c["assumption"]) for c in payload["candidates"]}
    assert assumptions == {(1, 3), (2, 2), (4, 1)}
    degrees = {tuple(c["degrees"]) for c in payload["candidates"]}
    assert degrees == {(1, 3), (2, 2), (4, 1)}


def test_solve_pi3_preferred():
    out = run(["solve", "--format", "json", "programs/pi3.crp"])
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert sorted(payload["preferred"]) == [["q", "r"], ["q", "s", "t"]]


def test_solve_all_criteria_text(tmp_path):
    out = run(["solve", "programs/pi1.lpod"])
    assert out.returncode == 0
    for name in ("cardinality", "inclusion", "pareto", "penalty-sum"):
        assert "preferred (%s):" % name in out.stdout


def test_solve_inconsistent_lpod_is_empty_but_ok():
    text = "a * b :- not c.\n:- a.\n:- b.\n"
    out = run(["solve", "--dialect", "lpod", "--format", "json", "--criterion", "pareto"], stdin=text)
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["candidates"] == []
    assert payload["preferred"] == []


def test_solve_deterministic():
    first = run(["solve", "programs/pi3p.crp"])
    second = run(["solve", "programs/pi3p.crp"])
    assert first.stdout == second.stdout


def test_solve_parallel_matches_serial():
    serial = run(["check", "programs/pi1.lpod"])
    threaded = run(["check", "--parallel", "3", "programs/pi1.lpod"])
    assert serial.stdout == threaded.stdout


def test_check_pi1_pareto_ok():
    out = run(["check", "programs/pi1.lpod", "--criterion", "pareto"])
    assert out.returncode == 0
    assert "OK" in out.stdout and "MISMATCH" not in out.stdout
    assert "1 preferred" in out.stdout


def test_check_pi3p_ok():
    out = run(["check", "programs/pi3p.crp"])
    assert out.returncode == 0
    assert "1 preferred answer sets, oracle == translation" in out.stdout


def test_check_random_smoke():
    out = run(["check", "--random", "5", "--seed", "7", "--dialect", "lpod"])
    assert out.returncode == 0
    assert "OK: 5 random lpod programs" in out.stdout


def test_cap_exceeded_exit_3():
    out = run(["solve", "--cap", "2", "programs/pi2.lpod"])
    assert out.returncode == 3
    assert "cap" in out.stderr


def test_cap_env_var():
    out = run(["solve", "programs/pi2.lpod"], env_extra={"LPODC_CAP": "2"})
    assert out.returncode == 3


def test_dialect_inferred_from_extension():
    out = run(["solve", "programs/pi3.crp", "--format", "json"])
    assert out.returncode == 0


def test_criterion_rejected_for_crp_input():
    out = run(["solve", "--criterion", "pareto", "programs/pi3.crp"])
    assert out.returncode == 2
    assert "lpod inputs only" in out.stderr


def test_main_callable_directly(capsys):
    rc = main(["solve", "--criterion", "penalty-sum", str(PROGRAMS / "pi1.lpod")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "preferred (penalty-sum):" in out
    assert "{a, b}" in out


def test_dump_ground_flag(tmp_path):
    target = tmp_path / "ground.lp"
    rc = main(["solve", str(PROGRAMS / "pi1.lpod"), "--dump-ground", str(target), "-o", str(tmp_path / "ignore.txt")])
    assert rc == 0
    assert "% tuple" in target.read_text()

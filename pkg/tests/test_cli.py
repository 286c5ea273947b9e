"""Command-line interface: formats, exit codes, cache, and prime scans."""

import io
import json
import subprocess
import sys

import pytest

from charp import CharpError
from charp.cli import (
    JobSpec,
    build_parser,
    cache_key,
    cache_path,
    job_from_args,
    main,
    parse_prime_range,
    parse_rational,
    run,
)
from charp.errors import UsageError

QUINTIC_ARGS = ["--vars", "x,y,z", "-f", "x^5+y^5+z^5"]


def cli(*args, timeout=240):
    return subprocess.run(
        [sys.executable, "-m", "charp.cli", *args],
        capture_output=True, text=True, timeout=timeout,
    )


def run_job(*args):
    out, err = io.StringIO(), io.StringIO()
    job = job_from_args(build_parser().parse_args(list(args)))
    code = run(job, out, err)
    return code, out.getvalue(), err.getvalue()


def test_hsl_text():
    code, out, err = run_job("hsl", "-p", "7", *QUINTIC_ARGS)
    assert (code, out) == (0, "2\n")


def test_fpt_text():
    code, out, _ = run_job("fpt", "-p", "11", *QUINTIC_ARGS)
    assert (code, out) == (0, "3/5 certified\n")


def test_tau_text_ten_generators():
    code, out, _ = run_job("tau", "-p", "7", *QUINTIC_ARGS, "--lambda", "48/49")
    assert code == 0
    inner = out.strip().removeprefix("(").removesuffix(")")
    assert len(inner.split(", ")) == 10


def test_root_matches_tau_at_p_power():
    _, via_root, _ = run_job("root", "-p", "7", *QUINTIC_ARGS, "-m", "6", "-e", "1")
    _, via_tau, _ = run_job("tau", "-p", "7", *QUINTIC_ARGS, "--lambda", "6/7")
    assert via_root == via_tau == "(x*y*z, x^2, y^2, z^2)\n"


def test_lucas_text_and_json():
    code, out, _ = run_job("lucas", "-p", "7", "-m", "10", "-n", "4")
    assert (code, out) == (0, "0\n")
    code, out, _ = run_job("lucas", "-p", "2", "-m", "7", "-n", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"nonzero": True, "residue": 1}


def test_jumps_json_fields():
    code, out, _ = run_job("jumps", "-p", "2", *QUINTIC_ARGS,
                           "--resolution-e", "4", "--format", "json")
    assert code == 0
    certs = json.loads(out)
    assert [c["value"] for c in certs] == ["1/4", "1/2", "3/4"]
    for c in certs:
        assert set(c) == {"value", "status", "tauAt", "tauLeft"}
        assert c["status"] == "certified-jump"


def test_hsl_json_chain():
    code, out, _ = run_job("hsl", "-p", "7", *QUINTIC_ARGS, "--format", "json")
    payload = json.loads(out)
    assert payload["hsl"] == 2
    assert payload["chain"][0] == ["1"]
    assert payload["chain"][-1] == payload["chain"][-2] == payload["stabilized"]


@pytest.mark.parametrize("args", [
    ["tau", "-p", "8", "--vars", "x", "-f", "x", "--lambda", "1/2"],
    ["tau", "-p", "7", "--vars", "x", "-f", "x^", "--lambda", "1/2"],
    ["tau", "-p", "7", "--vars", "x", "-f", "x+w", "--lambda", "1/2"],
    ["tau", "-p", "7", "--vars", "x", "-f", "x", "--lambda", "1/0"],
    ["tau", "-p", "7", "--vars", "x", "-f", "x", "--lambda", "-1/2"],
    ["tau", "-p", "7", "--vars", "x,x", "-f", "x", "--lambda", "1/2"],
    ["jumps", "-p", "7", "--vars", "x", "-f", "x", "--resolution-e", "0"],
    ["scan", "--primes", "2-9", "--vars", "x", "-f", "x"],
    ["scan", "--primes", "2..9", "--vars", "x", "-f", "x", "--report", "zeta"],
    ["nosuch", "-p", "7"],
])
def test_usage_errors_exit_1(args):
    r = cli(*args)
    assert r.returncode == 1
    assert r.stderr.startswith("charp:")


def test_json_error_payload():
    r = cli("tau", "-p", "7", "--vars", "x", "-f", "x+w",
            "--lambda", "1/2", "--format", "json")
    assert r.returncode == 1
    assert "error" in json.loads(r.stdout)


def test_resource_limit_exit_2():
    r = cli("root", "-p", "7", "--vars", "x", "-f", "x", "-m", "1", "-e", "99")
    assert r.returncode == 2


def test_internal_error_exit_3(monkeypatch):
    import charp.cli as cli_mod

    def boom(job):
        raise CharpError("invariant violated")

    monkeypatch.setitem(cli_mod._RUNNERS, "hsl", boom)
    out, err = io.StringIO(), io.StringIO()
    job = job_from_args(build_parser().parse_args(
        ["hsl", "-p", "7", *QUINTIC_ARGS]))
    assert run(job, out, err) == 3
    assert "invariant violated" in err.getvalue()


def test_parse_rational_and_range_helpers():
    from fractions import Fraction
    assert parse_rational("48/49") == Fraction(48, 49)
    assert parse_rational("3") == Fraction(3)
    with pytest.raises(UsageError):
        parse_rational("x")
    assert parse_prime_range("2..19") == (2, 19)
    with pytest.raises(UsageError):
        parse_prime_range("19")


def test_scan_fpt_hsl_table():
    r = cli("scan", "--primes", "2..19", *QUINTIC_ARGS, "--report", "fpt,hsl")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "prime,invariant,value,status,wall_ms"
    got = {}
    for line in lines[1:]:
        prime, invariant, value, status, _ = line.split(",")
        got[(int(prime), invariant)] = (value, status)
    fpt_expected = {2: "1/4", 3: "1/3", 5: "1/5", 7: "4/7",
                    11: "3/5", 13: "7/13", 17: "10/17", 19: "10/19"}
    hsl_expected = {p: ("2" if p % 5 in (2, 3) else "1") for p in fpt_expected}
    for p, v in fpt_expected.items():
        assert got[(p, "fpt")] == (v, "certified")
        assert got[(p, "hsl")] == (hsl_expected[p], "ok")
    primes = [int(line.split(",")[0]) for line in lines[1:]]
    assert primes == sorted(primes)


def test_scan_empty_range_is_silent():
    r = cli("scan", "--primes", "24..28", "--vars", "x", "-f", "x")
    assert (r.returncode, r.stdout) == (0, "")


def test_scan_records_timeout():
    r = cli("scan", "--primes", "19..19", *QUINTIC_ARGS,
            "--report", "jumps", "--timeout-secs", "1")
    assert r.returncode == 2
    row = r.stdout.strip().splitlines()[1]
    assert row.startswith("19,jumps,,timeout")


def test_scan_failure_rows_keep_going():
    # 5*x collapses to zero mod 5: that prime fails, the others still report
    r = cli("scan", "--primes", "3..7", "--vars", "x", "-f", "5*x+x^2",
            "--report", "hsl")
    assert r.returncode == 0
    rows = {line.split(",")[0]: line for line in r.stdout.strip().splitlines()[1:]}
    assert rows["3"].split(",")[2:4] == ["1", "ok"]
    assert rows["7"].split(",")[2:4] == ["1", "ok"]
    assert rows["5"].split(",")[2:4] == ["1", "ok"]


def test_scan_zero_polynomial_row():
    r = cli("scan", "--primes", "2..3", "--vars", "x", "-f", "2*x",
            "--report", "fpt")
    rows = r.stdout.strip().splitlines()[1:]
    by_prime = {line.split(",")[0]: line.split(",")[3] for line in rows}
    assert by_prime["2"].startswith("error")
    assert by_prime["3"] == "certified"
    assert r.returncode == 0


def test_scan_threads_match_serial(tmp_path):
    serial = cli("scan", "--primes", "2..13", *QUINTIC_ARGS,
                 "--report", "fpt", "--format", "json")
    parallel = cli("scan", "--primes", "2..13", *QUINTIC_ARGS,
                   "--report", "fpt", "--format", "json", "--threads", "3")
    strip = lambda text: [
        {k: v for k, v in json.loads(line).items() if k != "wall_ms"}
        for line in text.strip().splitlines()
    ]
    assert strip(serial.stdout) == strip(parallel.stdout)


def test_cache_roundtrip(tmp_path):
    args = ["tau", "-p", "7", *QUINTIC_ARGS, "--lambda", "6/7",
            "--cache-dir", str(tmp_path)]
    first = cli(*args)
    files = list(tmp_path.iterdir())
    assert first.returncode == 0 and len(files) == 1
    second = cli(*args)
    assert second.stdout == first.stdout
    # corrupt cache is ignored, not fatal
    files[0].write_text("{not json")
    third = cli(*args)
    assert third.stdout == first.stdout


def test_cache_audit_detects_poison(tmp_path, monkeypatch):
    job = job_from_args(build_parser().parse_args(
        ["tau", "-p", "7", *QUINTIC_ARGS, "--lambda", "6/7",
         "--cache-dir", str(tmp_path)]))
    assert run(job, io.StringIO(), io.StringIO()) == 0
    path = cache_path(str(tmp_path), 7, ("x", "y", "z"), "x^5 + y^5 + z^5")
    entries = json.loads(open(path).read())
    key = cache_key("tau", {"lambda": "6/7"})
    entries["entries"][key] = {"generators": ["x"]}
    with open(path, "w") as fh:
        json.dump(entries, fh)
    import charp.cli as cli_mod
    monkeypatch.setattr(cli_mod.random, "random", lambda: 0.0)  # force audit
    out, err = io.StringIO(), io.StringIO()
    assert run(job, out, err) == 3
    assert "audit" in err.getvalue()


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("CHARP_CACHE_DIR", str(tmp_path))
    job = job_from_args(build_parser().parse_args(
        ["hsl", "-p", "7", *QUINTIC_ARGS]))
    assert job.cache_dir == str(tmp_path)
    assert run(job, io.StringIO(), io.StringIO()) == 0
    assert list(tmp_path.iterdir())


def test_repeated_json_runs_byte_identical():
    a = cli("jumps", "-p", "7", *QUINTIC_ARGS, "--format", "json")
    b = cli("jumps", "-p", "7", *QUINTIC_ARGS, "--format", "json")
    assert a.stdout == b.stdout and a.stdout


def test_jobspec_defaults():
    job = JobSpec(command="hsl")
    assert job.fmt == "text" and job.threads == 1


def test_main_returns_usage_code():
    assert main(["tau", "-p", "9", "--vars", "x", "-f", "x",
                 "--lambda", "1/2"]) == 1

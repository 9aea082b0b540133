from __future__ import annotations

import io
import json
import math
import subprocess
import sys

from catentropy.cli import main
from catentropy.jsonio import canonical_json, format_float


def run_cli(args, stdin_text=None):
    proc = subprocess.run(
        [sys.executable, "-m", "catentropy", *args],
        input=stdin_text,
        capture_output=True,
        text=True,
    )
    return proc


def run_inproc(args):
    buf = io.StringIO()
    code = main(args, stdout=buf)
    return code, buf.getvalue()


def test_growth_command_parabolic(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[1, 1], [0, 1]]}')
    code, out = run_inproc(["--json", "growth", str(path)])
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["rho"] == 1
    assert doc["results"]["s"] == 1
    assert doc["results"]["quasi_unipotent_order"] == 1


def test_growth_command_identity(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[1, 0], [0, 1]]}')
    code, out = run_inproc(["--json", "growth", str(path)])
    doc = json.loads(out)
    assert doc["results"]["rho"] == 1 and doc["results"]["s"] == 0


def test_growth_command_hyperbolic_12_digits(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[2, 1], [1, 1]]}')
    code, out = run_inproc(["--json", "growth", str(path)])
    doc = json.loads(out)
    assert abs(doc["results"]["rho"] - (3 + math.sqrt(5)) / 2) < 1e-11
    # floats are serialized with 12 significant digits
    assert '"rho":2.61803398875' in out


def test_growth_accepts_rational_strings(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [["1/3", "0.25"], [0, "1/3"]]}')
    code, out = run_inproc(["--json", "growth", str(path)])
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["s"] == 1  # 2x2 Jordan block at 1/3


def test_growth_rejects_ragged_rows(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[1, 2], [3]]}')
    assert run_cli(["growth", str(path)]).returncode == 2


def test_growth_rejects_json_floats(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[0.25]]}')
    assert run_cli(["growth", str(path)]).returncode == 2


def test_growth_nilpotent_is_domain_error():
    proc = run_cli(["growth", "-"], stdin_text='{"rows": [[0, 1], [0, 0]]}')
    assert proc.returncode == 3


def test_parse_error_exit_code():
    proc = run_cli(["growth", "-"], stdin_text="not json")
    assert proc.returncode == 2


def test_missing_file_is_parse_error():
    assert run_cli(["growth", "/nonexistent/file.json"]).returncode == 2


def test_classify_command():
    code, out = run_inproc(["--json", "classify", "--context", "a2cy3", "T1"])
    doc = json.loads(out)
    assert doc["results"]["classification"] == "parabolic_non_central"
    assert doc["results"]["h_pol"] == 1
    assert doc["results"]["crosscheck"]["consistent"] is True


def test_classify_hyperbolic_word():
    code, out = run_inproc(
        ["--json", "classify", "--context", "a2cy3", "T1", "T2^-1"]
    )
    doc = json.loads(out)
    assert doc["results"]["classification"] == "hyperbolic"
    assert abs(doc["results"]["h_cat"]["float"] - 0.962423650119) < 1e-12
    assert doc["results"]["pseudo_anosov"] is True


def test_classify_elliptic_context():
    code, out = run_inproc(["--json", "classify", "--context", "elliptic", "S"])
    doc = json.loads(out)
    assert doc["results"]["classification"] == "elliptic_or_central"
    assert doc["results"]["h_pol"] == 0


def test_classify_bad_token_exit_2():
    assert run_cli(["classify", "--context", "a2cy3", "X9"]).returncode == 2


def test_endo_command(tmp_path):
    path = tmp_path / "endo.json"
    path.write_text(
        '{"dim": 2, "actions": {"0": [[1]], "1": [[2]], "2": [[4]]}}'
    )
    code, out = run_inproc(["--json", "endo", str(path), "--kuenneth"])
    doc = json.loads(out)
    assert abs(doc["results"]["h_cat"] - math.log(4)) < 1e-12
    assert doc["results"]["h_pol"] == 0
    assert doc["results"]["self_product"]["consistent"] is True


def test_endo_warnings_surfaced(tmp_path):
    path = tmp_path / "endo.json"
    path.write_text(
        '{"dim": 3, "actions": {"0": [[1]], "1": [[3]], "2": [[2]], "3": [[9]]}}'
    )
    code, out = run_inproc(["--json", "endo", str(path)])
    doc = json.loads(out)
    assert any("log-concavity" in w for w in doc["warnings"])


def test_linebundle_command(tmp_path):
    path = tmp_path / "lb.json"
    doc_in = {
        "dim": 2,
        "c1_action": [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
        "nef": "nef",
        "cohomology": {
            "0": [math.comb(n + 2, 2) for n in range(1, 101)]
        },
    }
    path.write_text(json.dumps(doc_in))
    code, out = run_inproc(["--json", "linebundle", str(path)])
    doc = json.loads(out)
    assert doc["results"]["h_pol_exact"] == 2
    assert abs(doc["results"]["empirical_s_hat"] - 2) < 0.2


def test_twist_command():
    code, out = run_inproc(
        ["--json", "twist", "--kind", "spherical", "--d", "2",
         "--t", "0", "--A", "1", "--B", "1", "--n", "10"]
    )
    doc = json.loads(out)
    assert doc["results"]["bound_at_n"] == 11
    assert doc["results"]["recurrence_at_n"] == 11
    assert doc["results"]["h_pol_at_t"] == [0, 1]


def test_quiver_command():
    proc = run_cli(
        ["--json", "quiver", "-"],
        stdin_text='{"vertices": 2, "arrows": [[1, 2], [1, 2]]}',
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["results"]["report"]["h_pol"] == 1
    assert doc["results"]["report"]["crosscheck_consistent"] is True


def test_quiver_rejects_cycle():
    proc = run_cli(
        ["quiver", "-"],
        stdin_text='{"vertices": 2, "arrows": [[1, 2], [2, 1]]}',
    )
    assert proc.returncode == 3


def test_estimate_command_newline_format():
    values = "\n".join(str((n + 1) * (n + 2) // 2) for n in range(1, 301))
    proc = run_cli(["--json", "estimate", "-"], stdin_text=values)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert abs(doc["results"]["s_hat"] - 2) < 0.15


def test_estimate_command_json_format():
    payload = json.dumps(
        {"n_start": 1, "values": [float(2**n) for n in range(1, 41)]}
    )
    proc = run_cli(["--json", "estimate", "-"], stdin_text=payload)
    doc = json.loads(proc.stdout)
    assert abs(doc["results"]["rho_hat"] - 2) < 1e-3


def test_json_determinism_across_processes(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[2, 1], [1, 1]]}')
    outs = {run_cli(["--json", "growth", str(path)]).stdout for _ in range(3)}
    assert len(outs) == 1


def test_envelope_digest_depends_on_canonical_input_only(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text('{"rows": [[1, 1], [0, 1]]}')
    b.write_text('{\n  "rows":  [[1,   1], [0, 1]]\n}')  # same canonical input
    out_a = run_cli(["--json", "growth", str(a)]).stdout
    out_b = run_cli(["--json", "growth", str(b)]).stdout
    assert out_a == out_b


def test_selftest_filter_runs_quickly():
    proc = run_cli(["selftest", "--filter", "minpoly"])
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_selftest_corrupt_negative_control():
    proc = run_cli(["selftest", "--filter", "quiver/coxeter", "--corrupt"])
    assert proc.returncode == 1
    assert "FAIL" in proc.stdout
    assert "coxeter-isometry" in proc.stdout


def test_human_readable_output():
    proc = run_cli(["classify", "--context", "a2cy3", "T1"])
    assert proc.returncode == 0
    assert "classification: parabolic_non_central" in proc.stdout
    assert "inputs digest:" in proc.stdout


def test_format_float_12_digits():
    assert format_float(math.log((3 + math.sqrt(5)) / 2)) == "0.962423650119"
    assert format_float(0.0) == "0"
    assert format_float(2.618033988749895) == "2.61803398875"


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": [1.5, None, True]}) == '{"a":[1.5,null,true],"b":1}'

import json
import os
from pathlib import Path

import pytest

from annforge.cli import main

FIXTURES = Path(__file__).parent / "fixtures"
CIRCUIT = str(FIXTURES / "squares_diff.txt")


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_encode_writes_seven_outputs(tmp_path, capsys):
    out = tmp_path / "enc.json"
    code, _ = run(capsys, "encode", "--circuit", CIRCUIT, "--alpha", "0,0",
                  "--beta", "0", "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert len(obj["outputs"]) == 7
    assert obj["seed_len"] == 6


def test_golden_round_trip(tmp_path, capsys):
    # encode -> annihilate reproduce the committed fixtures byte-exactly.
    enc = tmp_path / "enc.json"
    cert = tmp_path / "cert.json"
    assert run(capsys, "encode", "--circuit", CIRCUIT, "--alpha", "0,0",
               "--beta", "0", "--out", str(enc))[0] == 0
    assert run(capsys, "annihilate", "--encoding", str(enc),
               "--out", str(cert))[0] == 0
    assert enc.read_bytes() == (FIXTURES / "squares_diff_enc.json").read_bytes()
    assert cert.read_bytes() == (FIXTURES / "squares_diff_cert.json").read_bytes()


def test_pipeline_annihilate_then_verify(tmp_path, capsys):
    enc = tmp_path / "enc.json"
    run(capsys, "encode", "--circuit", CIRCUIT, "--alpha", "0,0", "--beta", "0",
        "--out", str(enc))
    cert = json.loads((FIXTURES / "squares_diff_cert.json").read_text())
    poly_file = tmp_path / "h.txt"
    poly_file.write_text(cert["h"])
    code, out = run(capsys, "verify", "--encoding", str(enc), "--poly", str(poly_file))
    assert code == 0
    assert "yes" in out

    poly_file.write_text("z1 + z7")
    code, _ = run(capsys, "verify", "--encoding", str(enc), "--poly", str(poly_file))
    assert code == 1


def test_search_ann_json_report(capsys):
    enc = str(FIXTURES / "squares_diff_enc.json")
    code, out = run(capsys, "search-ann", "--map", enc, "--degree", "2", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["dimension"] == 1


def test_ips_refute_then_verify(tmp_path, capsys):
    det = tmp_path / "det2.txt"
    run(capsys, "instance", "--family", "det", "--n", "2", "--out", str(det))
    enc = tmp_path / "enc.json"
    run(capsys, "encode", "--circuit", str(det), "--alpha", "1,0,0,1",
        "--beta", "0", "--out", str(enc))
    ref = tmp_path / "r.json"
    system = tmp_path / "sys.json"
    code, _ = run(capsys, "ips-refute", "--encoding", str(enc), "--out", str(ref),
                  "--system-out", str(system))
    assert code == 0
    code, out = run(capsys, "ips-verify", "--system", str(system),
                    "--refutation", str(ref), "--kind", "geometric")
    assert code == 0
    assert "Accept" in out


def test_ips_verify_rejects_bad_refutation(tmp_path, capsys):
    det = tmp_path / "det2.txt"
    run(capsys, "instance", "--family", "det", "--n", "2", "--out", str(det))
    enc = tmp_path / "enc.json"
    run(capsys, "encode", "--circuit", str(det), "--alpha", "1,0,0,1",
        "--beta", "0", "--out", str(enc))
    ref = tmp_path / "r.json"
    system = tmp_path / "sys.json"
    run(capsys, "ips-refute", "--encoding", str(enc), "--out", str(ref),
        "--system-out", str(system))
    obj = json.loads(ref.read_text())
    obj["r"] = obj["r"] + " + z1"
    ref.write_text(json.dumps(obj))
    code, out = run(capsys, "ips-verify", "--system", str(system),
                    "--refutation", str(ref))
    assert code == 1
    assert "Reject" in out


def test_pit_zero_and_nonzero(tmp_path, capsys):
    code, out = run(capsys, "pit", "--circuit", CIRCUIT, "--trials", "8",
                    "--seed", "5", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "nonzero"
    assert report["seed"] == 5

    zero = tmp_path / "zero.txt"
    zero.write_text(
        "circuit z\ninputs x1\ng1 = mul x1 -1\ng2 = add x1 g1\noutput g2\n"
    )
    code, out = run(capsys, "pit", "--circuit", str(zero), "--trials", "4",
                    "--expect", "zero")
    assert code == 0
    code, _ = run(capsys, "pit", "--circuit", str(zero), "--trials", "4",
                  "--expect", "nonzero")
    assert code == 1


def test_pit_generator_mode(capsys, tmp_path):
    cert = json.loads((FIXTURES / "squares_diff_cert.json").read_text())
    # Circuit computing h, tested against its own encoding: fooled.
    from annforge.circuit import circuit_from_polynomial, serialize_circuit
    from annforge.fields import QQ
    from annforge.poly import Namespace, parse_polynomial

    h = parse_polynomial(cert["h"], QQ, Namespace.outputs(7))
    c = circuit_from_polynomial(h, 7, name="h_circuit")
    cpath = tmp_path / "h_circuit.txt"
    cpath.write_text(serialize_circuit(c))
    code, out = run(capsys, "pit", "--circuit", str(cpath),
                    "--map", str(FIXTURES / "squares_diff_enc.json"),
                    "--mode", "symbolic", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "zero"


def test_hit_exit_codes(tmp_path, capsys):
    enc = str(FIXTURES / "squares_diff_enc.json")
    cert = json.loads((FIXTURES / "squares_diff_cert.json").read_text())
    poly_file = tmp_path / "p.txt"
    poly_file.write_text(cert["h"])
    code, out = run(capsys, "hit", "--map", enc, "--poly", str(poly_file))
    assert code == 1 and "fooled" in out

    poly_file.write_text("z1 + z2")
    code, out = run(capsys, "hit", "--map", enc, "--poly", str(poly_file))
    assert code == 0 and "hit" in out


def test_jacobian_command(tmp_path, capsys):
    polys = tmp_path / "polys.json"
    polys.write_text(json.dumps(["x1^2", "x2^2", "x1*x2"]))
    code, out = run(capsys, "jacobian", "--polys", str(polys), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["rank_lower_bound"] == 2
    assert "failure_bound" in report


def test_resultant_command(capsys):
    code, out = run(capsys, "resultant", "--f", "y - a", "--g", "y - b",
                    "--var", "y", "--cofactors", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["resultant"] == "a - b"


def test_instance_families(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, _ = run(capsys, "instance", "--family", "kayal", "--n", "2", "--d", "2",
                  "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["outputs"] == ["x1^2 - 1", "x2^2 - 1", "x1 + x2 - 2"]

    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 1\n1 -2 3 0\n")
    sys_out = tmp_path / "sys.json"
    code, _ = run(capsys, "instance", "--family", "cnf3", "--cnf", str(cnf),
                  "--out", str(sys_out))
    assert code == 0
    assert len(json.loads(sys_out.read_text())["equations"]) == 4


def test_stretch_command(tmp_path, capsys):
    enc = str(FIXTURES / "squares_diff_enc.json")
    out = tmp_path / "stretched.json"
    code, report_out = run(capsys, "stretch", "--map", enc, "--copies", "3",
                           "--out", str(out), "--json")
    assert code == 0
    report = json.loads(report_out)
    assert report["seed_len"] == 18
    assert report["out_len"] == 21
    assert report["stretch"] == 3


def test_metrics_command(capsys):
    code, out = run(capsys, "metrics", "--circuit", CIRCUIT, "--json")
    assert code == 0
    report = json.loads(out)
    assert (report["size"], report["depth"], report["degree_bound"]) == (4, 3, 2)

    code, out = run(capsys, "metrics",
                    "--encoding", str(FIXTURES / "squares_diff_enc.json"), "--json")
    assert code == 0
    assert json.loads(out)["stretch"] == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["encode", "--circuit"])  # missing value
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_budget_exceeded_exit_code(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AF_TERM_BUDGET", "2")
    cert = json.loads((FIXTURES / "squares_diff_cert.json").read_text())
    from annforge.circuit import circuit_from_polynomial, serialize_circuit
    from annforge.fields import QQ
    from annforge.poly import Namespace, parse_polynomial

    h = parse_polynomial(cert["h"], QQ, Namespace.outputs(7))
    cpath = tmp_path / "h.txt"
    cpath.write_text(serialize_circuit(circuit_from_polynomial(h, 7)))
    code, _ = run(capsys, "pit", "--circuit", str(cpath),
                  "--map", str(FIXTURES / "squares_diff_enc.json"),
                  "--mode", "symbolic")
    assert code == 3


def test_monomial_ceiling_env_override(capsys, monkeypatch):
    monkeypatch.setenv("AF_MONOMIAL_CEILING", "5")
    code, _ = run(capsys, "search-ann",
                  "--map", str(FIXTURES / "squares_diff_enc.json"), "--degree", "2")
    assert code == 3


def test_console_entry_point_installed():
    import shutil

    exe = shutil.which("annforge")
    if exe is None:
        pytest.skip("entry point not on PATH")
    import subprocess

    proc = subprocess.run([exe, "metrics", "--circuit", CIRCUIT],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "size 4" in proc.stdout

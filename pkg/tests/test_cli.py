import os
import subprocess
import sys

import pytest

from slnc.cli import main


def data_path(name):
    return os.path.join(os.path.dirname(__file__), "data", name)


FIG2 = data_path("fig2.net")
FIG2_Q3 = data_path("fig2_q3.net")
FIG2_Q11 = data_path("fig2_q11.net")
C3 = data_path("fig2_c3.slnc")
W1R1 = data_path("fig2_w1r1.slnc")
IDENT = data_path("fig2_w1r1_identity.slnc")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_net_info(capsys):
    code, out, _ = run(capsys, "net", "info", FIG2)
    assert code == 0
    assert out.splitlines() == ["nodes 7", "edges 11", "C_t1 3", "C_t2 3", "C_min 3"]


def test_net_info_single_edge(capsys):
    code, out, _ = run(capsys, "net", "info", data_path("single_edge.net"))
    assert code == 0
    assert "C_min 1" in out.splitlines()


def test_net_info_cyclic_exits_2(capsys):
    code, _, err = run(capsys, "net", "info", data_path("cyclic.net"))
    assert code == 2
    assert "line" in err and "cycle" in err


def test_net_info_missing_file(capsys):
    code, _, err = run(capsys, "net", "info", data_path("nope.net"))
    assert code == 2


def test_primary_sets_lines(capsys):
    code, out, _ = run(capsys, "net", "primary-sets", FIG2, "--r", "1")
    assert code == 0
    assert out.splitlines() == ["e1", "e2", "e3", "e4", "e9"]
    code, out, _ = run(capsys, "net", "primary-sets", FIG2, "--r", "2")
    assert code == 0
    assert len(out.splitlines()) == 8
    assert out.splitlines()[0] == "e1,e2"
    code, out, _ = run(capsys, "net", "primary-sets", FIG2, "--r", "0")
    assert code == 0 and out == ""
    code, _, err = run(capsys, "net", "primary-sets", FIG2, "--r", "4")
    assert code == 2


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "code", "verify", W1R1, FIG2)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "decodable pass"
    assert lines[-1] == "overall pass"
    code, out, _ = run(capsys, "code", "verify", IDENT, FIG2)
    assert code == 1
    assert "A=e2 verdict=fail witness=intersection_dim=1" in out.splitlines()
    assert "overall fail" in out.splitlines()


def test_verify_exhaustive_agrees_on_fixtures(capsys):
    for fixture in (W1R1, IDENT, C3):
        plain = run(capsys, "code", "verify", fixture, FIG2)
        exh = run(capsys, "code", "verify", fixture, FIG2, "--exhaustive")
        assert plain[0] == exh[0]
        plain_verdicts = [
            ln for ln in plain[1].splitlines() if ln.startswith(("A=", "overall"))
        ]
        exh_verdicts = [
            ln.split(" witness=")[0]
            for ln in exh[1].splitlines()
            if ln.startswith(("A=", "overall"))
        ]
        assert [ln.split(" witness=")[0] for ln in plain_verdicts] == exh_verdicts


def test_transmit_roundtrip_and_tap(capsys):
    code, out, _ = run(
        capsys, "code", "transmit", W1R1, FIG2, "--message", "2", "--key", "3",
        "--tap", "e2,e9",
    )
    assert code == 0
    lines = out.splitlines()
    assert "y_e2 3 tapped" in lines
    assert "y_e9 0 tapped" in lines
    assert "decode_t1 message=2 ok" in lines
    assert "decode_t2 message=2 ok" in lines


def test_transmit_zero_inputs(capsys):
    code, out, _ = run(capsys, "code", "transmit", W1R1, FIG2, "--message", "0", "--key", "0")
    assert code == 0
    for e in ("e1", "e5", "e11"):
        assert f"y_{e} 0" in out.splitlines()


def test_transmit_uniform_cover_over_keys(capsys):
    seen = set()
    for k in range(5):
        _, out, _ = run(
            capsys, "code", "transmit", W1R1, FIG2, "--message", "2", "--key", str(k)
        )
        line = next(ln for ln in out.splitlines() if ln.startswith("y_e2 "))
        seen.add(line.split()[1])
    assert seen == {"0", "1", "2", "3", "4"}


def test_transmit_bad_inputs(capsys):
    assert run(capsys, "code", "transmit", W1R1, FIG2, "--message", "1,2", "--key", "0")[0] == 2
    assert run(capsys, "code", "transmit", W1R1, FIG2, "--message", "1", "--key", "x")[0] == 2
    assert run(capsys, "code", "transmit", W1R1, FIG2, "--message", "1", "--key", "0",
               "--tap", "zz")[0] == 2


def test_construct_increment(tmp_path, capsys):
    out_dir = tmp_path / "inc"
    code, out, _ = run(
        capsys, "code", "construct", FIG2, "--mode", "increment",
        "--in", W1R1, "--out", str(out_dir),
    )
    assert code == 0
    assert "member w=1 r=2 file=code_w1_r2.slnc verdict=pass" in out.splitlines()
    emitted = out_dir / "code_w1_r2.slnc"
    assert emitted.exists()
    assert (out_dir / "manifest").exists()
    assert (out_dir / "region.png").exists()
    assert run(capsys, "code", "verify", str(emitted), FIG2)[0] == 0


def test_construct_increment_needs_headroom(tmp_path, capsys):
    code, _, err = run(
        capsys, "code", "construct", FIG2, "--mode", "increment",
        "--in", IDENT, "--out", str(tmp_path / "x"),
    )
    assert code == 2
    assert "headroom" in err or "dimension" in err


def test_construct_fixed_dim_manifest(tmp_path, capsys):
    out_dir = tmp_path / "fd"
    code, out, _ = run(
        capsys, "code", "construct", FIG2, "--mode", "fixed-dim", "--n", "3",
        "--in", C3, "--out", str(out_dir),
    )
    assert code == 0
    members = [ln for ln in out.splitlines() if ln.startswith("member ")]
    assert [m.split()[1:3] for m in members] == [
        ["w=0", "r=3"], ["w=1", "r=2"], ["w=2", "r=1"], ["w=3", "r=0"]
    ]
    assert all(m.endswith("verdict=pass") for m in members)


def test_construct_family_rate(tmp_path, capsys):
    out_dir = tmp_path / "fr"
    code, out, _ = run(
        capsys, "code", "construct", FIG2, "--mode", "family-rate", "--rate", "1",
        "--in", C3, "--out", str(out_dir),
    )
    assert code == 0
    assert sorted(os.listdir(out_dir)) == [
        "code_w1_r0.slnc", "code_w1_r1.slnc", "code_w1_r2.slnc", "manifest", "region.png"
    ]


def test_construct_pair_with_generated_seed(tmp_path, capsys):
    code, out, _ = run(
        capsys, "code", "construct", FIG2, "--mode", "pair", "--rate", "1",
        "--level", "1", "--out", str(tmp_path / "p"),
    )
    assert code == 0
    assert "member w=1 r=1 file=code_w1_r1.slnc verdict=pass" in out.splitlines()


def test_construct_region_guard_exit_3(tmp_path, capsys):
    code, _, err = run(
        capsys, "code", "construct", FIG2_Q3, "--mode", "region-c2",
        "--out", str(tmp_path / "r"),
    )
    assert code == 3
    assert "q > 8" in err


def test_construct_rejects_construction_1(tmp_path, capsys):
    code, _, err = run(
        capsys, "code", "construct", FIG2, "--mode", "construction-1",
        "--out", str(tmp_path / "c1"),
    )
    assert code == 2
    assert "construction-1" in err


def test_construct_missing_flags(tmp_path, capsys):
    assert run(capsys, "code", "construct", FIG2, "--mode", "pair",
               "--out", str(tmp_path / "q"))[0] == 2
    assert run(capsys, "code", "construct", FIG2, "--mode", "increment",
               "--out", str(tmp_path / "q2"))[0] == 2


def test_region_c3_deterministic_directories(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "code", "construct", FIG2_Q11, "--mode", "region-c3",
               "--out", str(a))[0] == 0
    assert run(capsys, "code", "construct", FIG2_Q11, "--mode", "region-c3",
               "--out", str(b))[0] == 0
    files_a = sorted(os.listdir(a))
    assert files_a == sorted(os.listdir(b))
    assert len([f for f in files_a if f.endswith(".slnc")]) == 10
    for name in files_a:
        with open(a / name, "rb") as fa, open(b / name, "rb") as fb:
            assert fa.read() == fb.read(), name


def test_console_script_runs():
    out = subprocess.run(
        [sys.executable, "-m", "slnc.cli", "net", "info", FIG2],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "C_min 3" in out.stdout


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "3")
    assert code == 0
    assert out.splitlines()[-1] == "selftest pass"

import subprocess
import sys

import numpy as np
import pytest

from magiclsb.cli import main
from magiclsb.image_io import load_pgm, save_pgm, synth_image
from magiclsb.stego import embed, make_plan


@pytest.fixture
def gradient16(tmp_path):
    path = tmp_path / "cover.pgm"
    save_pgm(path, synth_image("gradient", 16))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_embed_extract_round_trip(tmp_path, gradient16, capsys):
    stego = tmp_path / "stego.pgm"
    code, out, _ = run(capsys, "embed", "--cover", gradient16, "--message", "k", "--key", "U", "--out", stego)
    assert code == 0
    assert out.startswith("slots_used=40 changed_pixels=")
    assert "PSNR=" in out
    code, _, _ = run(capsys, "extract", "--stego", stego, "--key", "U", "--out", tmp_path / "msg.bin")
    assert code == 0
    assert (tmp_path / "msg.bin").read_bytes() == b"k"


def test_cli_matches_library(tmp_path, gradient16, capsys):
    stego = tmp_path / "stego.pgm"
    run(capsys, "embed", "--cover", gradient16, "--message", "héllo", "--key-hex", "55aa", "--ec", "1.5", "--out", stego)
    message = "héllo".encode()
    plan = make_plan(16, 16, 1.5, "headered", 8 * len(message))
    expected = embed(synth_image("gradient", 16), message, b"\x55\xaa", plan).stego
    assert np.array_equal(load_pgm(stego), expected)
    code, out, _ = run(capsys, "extract", "--stego", stego, "--key-hex", "55aa", "--ec", "3/2", "--stdout")
    assert code == 0


def test_stdout_bytes(tmp_path, gradient16):
    stego = tmp_path / "s.pgm"
    assert main(["embed", "--cover", str(gradient16), "--message", "hi", "--key", "k", "--out", str(stego)]) == 0
    proc = subprocess.run(
        [sys.executable, "-m", "magiclsb", "extract", "--stego", str(stego), "--key", "k", "--stdout"],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == b"hi"


def test_message_file_raw(tmp_path, gradient16, capsys):
    src = tmp_path / "secret.bin"
    src.write_bytes(bytes(range(20)))
    stego = tmp_path / "s.pgm"
    code, _, _ = run(capsys, "embed", "--cover", gradient16, "--message-file", src, "--key", "k", "--raw", "--out", stego)
    assert code == 0
    code, _, _ = run(capsys, "extract", "--stego", stego, "--key", "k", "--raw", "--length-bits", 160, "--out", tmp_path / "o")
    assert code == 0
    assert (tmp_path / "o").read_bytes() == bytes(range(20))


def test_raw_empty_message_copies_cover(tmp_path, gradient16, capsys):
    stego = tmp_path / "s.pgm"
    code, out, _ = run(capsys, "embed", "--cover", gradient16, "--message", "", "--key", "k", "--raw", "--out", stego)
    assert code == 0
    assert stego.read_bytes() == gradient16.read_bytes()
    assert "changed_pixels=0" in out


def test_capacity_error(tmp_path, capsys):
    small = tmp_path / "small.pgm"
    save_pgm(small, synth_image("constant", 3, 9))
    code, _, err = run(capsys, "embed", "--cover", small, "--message", "too long", "--key", "k", "--out", tmp_path / "x.pgm")
    assert code == 1
    assert "CapacityExceeded" in err
    assert len(err.strip().splitlines()) == 1


def test_raw_extract_needs_length(gradient16, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["extract", "--stego", str(gradient16), "--key", "k", "--raw", "--stdout"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["embed", "--cover", "COVER", "--message", "x", "--out", "OUT"],
        ["embed", "--cover", "COVER", "--message", "x", "--key", "a", "--key-hex", "00", "--out", "OUT"],
        ["embed", "--cover", "COVER", "--message", "x", "--key-hex", "zz", "--out", "OUT"],
        ["embed", "--cover", "COVER", "--message", "x", "--key", "a", "--ec", "3", "--out", "OUT"],
    ],
)
def test_usage_errors(argv, gradient16, tmp_path):
    argv = [str(gradient16) if a == "COVER" else str(tmp_path / "o.pgm") if a == "OUT" else a for a in argv]
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "args, error",
    [
        (["--key", ""], "EmptyKey"),
        (["--key", "k", "--ec", "0.1"], "HeaderTooLarge"),
    ],
)
def test_extract_errors(args, error, tmp_path, capsys):
    cover = tmp_path / "white.pgm"
    save_pgm(cover, synth_image("constant", 64, 255))
    code, _, err = run(capsys, "extract", "--stego", cover, *args, "--stdout")
    assert code == 1
    assert error in err


def test_wrong_key_is_not_a_crash(tmp_path, gradient16, capsys):
    stego = tmp_path / "s.pgm"
    run(capsys, "embed", "--cover", gradient16, "--message", "k", "--key", "U", "--out", stego)
    code, _, _ = run(capsys, "extract", "--stego", stego, "--key", "V", "--out", tmp_path / "o")
    assert code == 0
    assert (tmp_path / "o").read_bytes() != b"k"


def test_io_and_format_errors(tmp_path, capsys):
    code, _, err = run(capsys, "psnr", "--a", tmp_path / "missing.pgm", "--b", tmp_path / "missing.pgm")
    assert code == 1 and "FileNotFoundError" in err
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
    code, _, err = run(capsys, "psnr", "--a", bad, "--b", bad)
    assert code == 1 and "BadMagic" in err
    wide = tmp_path / "wide.pgm"
    save_pgm(wide, np.zeros((4, 5), np.uint8))
    code, _, err = run(capsys, "embed", "--cover", wide, "--message", "", "--key", "k", "--out", tmp_path / "o.pgm")
    assert code == 1 and "NonSquareImage" in err


def test_psnr_self(gradient16, capsys):
    code, out, _ = run(capsys, "psnr", "--a", gradient16, "--b", gradient16)
    assert code == 0
    assert out.strip() == "MSE=0 PSNR=inf"


def test_psnr_worked_example(tmp_path, capsys):
    save_pgm(tmp_path / "a.pgm", [[30, 46, 31], [65, 75, 22], [35, 98, 59]])
    save_pgm(tmp_path / "b.pgm", [[31, 46, 30], [65, 75, 23], [34, 98, 59]])
    _, out, _ = run(capsys, "psnr", "--a", tmp_path / "a.pgm", "--b", tmp_path / "b.pgm")
    assert out.strip() == "MSE=0.444444 PSNR=51.6526 dB"


def test_magic(capsys):
    code, out, _ = run(capsys, "magic", "--order", 3)
    assert code == 0
    assert out == "8 1 6\n3 5 7\n4 9 2\n"
    code, _, err = run(capsys, "magic", "--order", 2)
    assert code == 1 and "OrderTooSmall" in err


def test_bench_deterministic(capsys):
    argv = ["bench", "--covers", "synthetic:noise:64,synthetic:gradient:32", "--ec", "0.5,1,1.5", "--seed", "42"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert first.splitlines()[0] == "cover,method,ec,mse,psnr_db,analytic_psnr_db"
    assert len(first.splitlines()) == 1 + 3 * 2 * (2 + 1)


def test_bench_markdown_with_reference(capsys):
    code, out, _ = run(capsys, "bench", "--covers", "synthetic:noise:16", "--ec", "1", "--methods", "m-lsb",
                       "--format", "markdown", "--paper-reference-columns")
    assert code == 0
    assert "| Average" in out
    assert "reference, not computed" in out
    assert "51.1403" in out


def test_bench_bad_method(capsys):
    code, _, err = run(capsys, "bench", "--covers", "synthetic:noise:16", "--methods", "lsb-m")
    assert code == 1 and "methods" in err

import numpy as np
import pytest

from keyforge import cli, extractor, gc
from keyforge.channel import RngStream, bsc_sample


def _write_response(path, bits):
    path.write_bytes(extractor.pack_bits(bits))


@pytest.fixture
def workdir(tmp_path):
    return tmp_path


def test_gen_rep_roundtrip(workdir, capsys):
    code = gc.preset("gc-rs-1024")
    rng = RngStream(35)
    response = (rng.gen.random(code.n) < 0.5).astype(np.uint8)
    resp = workdir / "resp.bin"
    helper = workdir / "helper.puf"
    key1 = workdir / "key1.bin"
    key2 = workdir / "key2.bin"
    _write_response(resp, response)

    assert cli.main(["gen", "--code", "gc-rs-1024", "--response", str(resp),
                     "--helper", str(helper), "--key", str(key1), "--seed", "7"]) == 0
    assert key1.read_bytes() == extractor.hash_bits(response)

    noisy = bsc_sample(response.astype(np.int8), 0.05, rng).astype(np.uint8)
    noisy_path = workdir / "noisy.bin"
    _write_response(noisy_path, noisy)
    assert cli.main(["rep", "--helper", str(helper), "--response", str(noisy_path),
                     "--key", str(key2)]) == 0
    assert key2.read_bytes() == key1.read_bytes()


def test_gen_is_deterministic_per_seed(workdir):
    code = gc.preset("gc-rs-1024")
    response = (RngStream(36).gen.random(code.n) < 0.5).astype(np.uint8)
    resp = workdir / "resp.bin"
    _write_response(resp, response)
    h1, h2 = workdir / "h1.puf", workdir / "h2.puf"
    for h in (h1, h2):
        assert cli.main(["gen", "--code", "gc-rs-1024", "--response", str(resp),
                         "--helper", str(h), "--key", str(workdir / "k.bin"),
                         "--seed", "9"]) == 0
    assert h1.read_bytes() == h2.read_bytes()


def test_length_mismatch_exits_3(workdir):
    resp = workdir / "short.bin"
    resp.write_bytes(b"\x00" * 10)
    rc = cli.main(["gen", "--code", "gc-rs-1024", "--response", str(resp),
                   "--helper", str(workdir / "h.puf"), "--key", str(workdir / "k.bin")])
    assert rc == 3


def test_bad_helper_exits_2(workdir):
    bad = workdir / "bad.puf"
    bad.write_bytes(b"not a helper file")
    resp = workdir / "resp.bin"
    resp.write_bytes(b"\x00" * 128)
    assert cli.main(["rep", "--helper", str(bad), "--response", str(resp),
                     "--key", str(workdir / "k.bin")]) == 2


def test_unknown_preset_exits_2(workdir):
    resp = workdir / "resp.bin"
    resp.write_bytes(b"\x00" * 128)
    assert cli.main(["gen", "--code", "bogus", "--response", str(resp),
                     "--helper", str(workdir / "h.puf"), "--key", str(workdir / "k.bin")]) == 2


def test_missing_response_exits_2(workdir):
    assert cli.main(["gen", "--code", "gc-rs-1024", "--response", str(workdir / "nope"),
                     "--helper", str(workdir / "h.puf"), "--key", str(workdir / "k.bin")]) == 2


def test_decode_failure_exits_4(workdir):
    code = gc.preset("gc-rs-1024")
    rng = RngStream(37)
    response = (rng.gen.random(code.n) < 0.5).astype(np.uint8)
    resp = workdir / "resp.bin"
    _write_response(resp, response)
    helper = workdir / "h.puf"
    assert cli.main(["gen", "--code", "gc-rs-1024", "--response", str(resp),
                     "--helper", str(helper), "--key", str(workdir / "k.bin")]) == 0
    unrelated = (rng.gen.random(code.n) < 0.5).astype(np.uint8)
    bad = workdir / "unrelated.bin"
    _write_response(bad, unrelated)
    assert cli.main(["rep", "--helper", str(helper), "--response", str(bad),
                     "--key", str(workdir / "k2.bin")]) == 4


def test_simulate_runs(capsys):
    rc = cli.main(["simulate", "--code", "gc-rs-1024", "--p", "0.14",
                   "--trials", "30", "--seed", "1", "--threads", "1", "--csv"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "trials=30" in out
    assert "wilson95" in out
    assert "gc-rs-1024,0.14,30" in out


def test_radius_csv(capsys):
    assert cli.main(["radius", "--n", "32", "--k-range", "2:4"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(",") == ["k", "l_max", "tau_lmax", "half_distance"]
    assert lines[1].split(",") == ["2", "5", "23", "15"]
    assert len(lines) == 4


def test_radius_bad_range_exits_2(capsys):
    assert cli.main(["radius", "--n", "32", "--k-range", "oops"]) == 2

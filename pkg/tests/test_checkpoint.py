import numpy as np
import pytest

import noisycover as nc
from noisycover.checkpoint import CheckpointError, load_checkpoint, save_checkpoint, sidecar_path


@pytest.fixture
def trained_like(tmp_path):
    arch = nc.NetworkArch(4, (3, 2), sigma=0.07, gamma=0.15)
    params = nc.init_params(arch, 42)
    path = tmp_path / "net.ncap"
    save_checkpoint(
        path, params,
        train_config=nc.TrainConfig(epochs=1, seed=42),
        final_losses={"train": {"ramp": 0.5}},
    )
    return path, params


def test_round_trip_bit_exact(trained_like):
    path, params = trained_like
    loaded, meta = load_checkpoint(path)
    assert loaded.arch == params.arch
    for a, b in zip(loaded.weights, params.weights):
        assert np.array_equal(a, b)
    assert meta["sigma"] == 0.07 and meta["gamma"] == 0.15
    assert meta["train_config"]["epochs"] == 1


def test_header_layout(trained_like):
    path, params = trained_like
    raw = path.read_bytes()
    assert raw[:4] == b"NCAP"
    assert raw[4] == 1  # version
    count = int.from_bytes(raw[5:9], "little")
    assert count == 3
    dims = [int.from_bytes(raw[9 + 4 * i : 13 + 4 * i], "little") for i in range(count)]
    assert dims == [4, 3, 2]


def test_bad_magic(tmp_path, trained_like):
    path, _ = trained_like
    bad = tmp_path / "bad.ncap"
    bad.write_bytes(b"XXXX" + path.read_bytes()[4:])
    sidecar_path(bad).write_text(sidecar_path(path).read_text())
    with pytest.raises(CheckpointError, match="magic"):
        load_checkpoint(bad)


def test_missing_sidecar(tmp_path, trained_like):
    path, _ = trained_like
    orphan = tmp_path / "orphan.ncap"
    orphan.write_bytes(path.read_bytes())
    with pytest.raises(CheckpointError, match="sidecar"):
        load_checkpoint(orphan)


def test_truncated(tmp_path, trained_like):
    path, _ = trained_like
    cut = tmp_path / "cut.ncap"
    cut.write_bytes(path.read_bytes()[:-8])
    sidecar_path(cut).write_text(sidecar_path(path).read_text())
    with pytest.raises(CheckpointError, match="truncated"):
        load_checkpoint(cut)

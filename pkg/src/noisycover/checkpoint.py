"""Checkpoint container for trained networks.

Binary layout (little-endian):
    magic "NCAP" | version byte | u32 count | count * u32 dims | weights

dims is (input_dim, p_1, ..., p_T); each weight matrix follows row-major as
float64. A JSON sidecar at <path>.json records sigma, gamma, the training
configuration, and final losses.
"""

from __future__ import annotations

import dataclasses
import json
import struct
from pathlib import Path

import numpy as np

from .mlp import NetworkArch, ParamSet, TrainConfig

MAGIC = b"NCAP"
VERSION = 1


class CheckpointError(ValueError):
    pass


def sidecar_path(path) -> Path:
    return Path(str(path) + ".json")


def save_checkpoint(
    path,
    params: ParamSet,
    train_config: TrainConfig | dict | None = None,
    final_losses: dict | None = None,
    extra: dict | None = None,
):
    path = Path(path)
    dims = params.arch.dims
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<B", VERSION))
        f.write(struct.pack("<I", len(dims)))
        f.write(struct.pack(f"<{len(dims)}I", *dims))
        for w in params.weights:
            f.write(np.ascontiguousarray(w, dtype="<f8").tobytes())

    if dataclasses.is_dataclass(train_config):
        train_config = dataclasses.asdict(train_config)
    sidecar = {
        "sigma": params.arch.sigma,
        "gamma": params.arch.gamma,
        "train_config": train_config,
        "final_losses": final_losses,
    }
    if extra:
        sidecar.update(extra)
    with open(sidecar_path(path), "w") as f:
        json.dump(sidecar, f, indent=2, sort_keys=True)
        f.write("\n")


def load_checkpoint(path) -> tuple[ParamSet, dict]:
    path = Path(path)
    with open(path, "rb") as f:
        if f.read(4) != MAGIC:
            raise CheckpointError(f"bad magic in {path}")
        (version,) = struct.unpack("<B", f.read(1))
        if version != VERSION:
            raise CheckpointError(f"unsupported checkpoint version {version}")
        (count,) = struct.unpack("<I", f.read(4))
        if count < 2:
            raise CheckpointError("checkpoint must contain at least two dims")
        dims = struct.unpack(f"<{count}I", f.read(4 * count))
        weights = []
        for i in range(count - 1):
            n = dims[i] * dims[i + 1]
            buf = f.read(8 * n)
            if len(buf) != 8 * n:
                raise CheckpointError(f"truncated checkpoint {path}")
            weights.append(
                np.frombuffer(buf, dtype="<f8").reshape(dims[i], dims[i + 1]).copy()
            )

    side = sidecar_path(path)
    if not side.exists():
        raise CheckpointError(f"missing sidecar {side}")
    with open(side) as f:
        meta = json.load(f)
    for key in ("sigma", "gamma"):
        if key not in meta:
            raise CheckpointError(f"sidecar {side} lacks {key!r}")
    arch = NetworkArch(dims[0], tuple(dims[1:]), sigma=meta["sigma"], gamma=meta["gamma"])
    return ParamSet(arch, weights), meta

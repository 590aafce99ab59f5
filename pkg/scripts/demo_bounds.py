#!/usr/bin/env python3
"""Minimal end-to-end walkthrough: train a small noisy net on synthetic
data, print its five covering-number bounds and the NVAC each implies.
"""

import noisycover as nc
from noisycover.dataio import synthetic_blobs

train = synthetic_blobs(4000, input_dim=784, num_classes=5, noise=0.1, contrast=0.08, seed=0)
arch = nc.NetworkArch(784, (32, 32, 5), sigma=0.05, gamma=0.1)

params = nc.init_params(arch, seed=0)
config = nc.TrainConfig(epochs=40, batch_size=64, seed=0)


def stop_when_fit(epoch, p, loss):
    rep = nc.evaluate(p, train.images, train.labels, arch.gamma, "deterministic")
    print(f"epoch {epoch:2d}  ce {loss:.3f}  train 0-1 {rep.zero_one_loss:.4f}")
    return rep.zero_one_loss <= 0.005


params = nc.train_sgd(params, train.images, train.labels, config, on_epoch=stop_when_fit)

report = nc.evaluate(
    params, train.images, train.labels, arch.gamma,
    mode="expected", n_samples=50, seed=0,
)
quant = nc.quantifiers(arch, params, train=train)
print(f"\nexpected-output ramp loss {report.ramp_loss:.4f}"
      f" -> epsilon {(1 - report.ramp_loss) / 10:.4f}")
print(f"quantifiers: V={quant.V:.2f}  s={[round(x, 2) for x in quant.s]}  "
      f"x_frob={quant.x_frob:.2f}")

print(f"\n{'method':<12} {'ln N':>14} {'log10 NVAC':>12}")
for method in nc.METHODS:
    try:
        q = nc.BoundQuery(method, 0.099, len(train), arch.gamma, arch, quant)
        ln_n = nc.ln_cover(q).ln_n
        res = nc.solve_nvac(method, arch, quant, len(train), arch.gamma, report.ramp_loss)
        print(f"{method:<12} {ln_n:>14.4g} {res.nvac_log10:>12.3f}")
    except nc.BoundError as e:
        print(f"{method:<12} unavailable: {e}")

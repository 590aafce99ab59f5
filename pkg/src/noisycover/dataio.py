"""Dataset ingestion: IDX files (the MNIST container), splits, input norms."""

from __future__ import annotations

import gzip
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

MNIST_FILES = {
    "train_images": "train-images-idx3-ubyte",
    "train_labels": "train-labels-idx1-ubyte",
    "test_images": "t10k-images-idx3-ubyte",
    "test_labels": "t10k-labels-idx1-ubyte",
}


class IdxFormatError(ValueError):
    """Malformed IDX file (bad magic, truncation, or count mismatch)."""


@dataclass
class Dataset:
    images: np.ndarray  # (m, d), floats in [0, 1]
    labels: np.ndarray  # (m,), ints in [0, num_classes)
    name: str = ""
    num_classes: int = 10

    def __post_init__(self):
        self.images = np.asarray(self.images, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.images.ndim != 2 or self.images.shape[0] < 1:
            raise ValueError("images must be a nonempty (m, d) matrix")
        if self.labels.shape != (self.images.shape[0],):
            raise ValueError("labels must align with images")
        if self.images.min() < 0 or self.images.max() > 1:
            raise ValueError("pixel values must lie in [0, 1]")
        if self.labels.min() < 0 or self.labels.max() >= self.num_classes:
            raise ValueError("labels out of range")

    def __len__(self) -> int:
        return self.images.shape[0]

    @property
    def dim(self) -> int:
        return self.images.shape[1]

    def subset(self, idx: np.ndarray, name: str | None = None) -> "Dataset":
        return Dataset(
            self.images[idx], self.labels[idx], name or self.name, self.num_classes
        )


def _open_maybe_gz(path):
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, "rb")
    return open(path, "rb")


def _read_exact(f, n: int, path) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise IdxFormatError(f"truncated file: {path}")
    return buf


def load_idx(images_path, labels_path, name: str = "") -> Dataset:
    """Read an IDX image/label pair; pixels are scaled by 1/255.

    Big-endian headers are verified: magic 0x00000803 for images (3 dims)
    and 0x00000801 for labels (1 dim). Transparently handles .gz files.
    """
    with _open_maybe_gz(images_path) as f:
        magic, m, rows, cols = struct.unpack(">IIII", _read_exact(f, 16, images_path))
        if magic != IDX_IMAGES_MAGIC:
            raise IdxFormatError(f"bad magic 0x{magic:08x} in {images_path}")
        raw = _read_exact(f, m * rows * cols, images_path)
        images = np.frombuffer(raw, dtype=np.uint8).reshape(m, rows * cols)

    with _open_maybe_gz(labels_path) as f:
        magic, n = struct.unpack(">II", _read_exact(f, 8, labels_path))
        if magic != IDX_LABELS_MAGIC:
            raise IdxFormatError(f"bad magic 0x{magic:08x} in {labels_path}")
        labels = np.frombuffer(_read_exact(f, n, labels_path), dtype=np.uint8)

    if m != n:
        raise IdxFormatError(f"image/label count mismatch: {m} images vs {n} labels")
    return Dataset(images / 255.0, labels.astype(int), name=name)


def save_idx(dataset: Dataset, images_path, labels_path, shape: tuple[int, int] | None = None):
    """Write a dataset back to an IDX pair (inverse of load_idx).

    Pixels are rounded to bytes, so a dataset that came from an IDX file
    round-trips bit-exactly. shape is the (rows, cols) factorization of the
    flat dimension; defaults to (d, 1).
    """
    m, d = dataset.images.shape
    rows, cols = shape if shape is not None else (d, 1)
    if rows * cols != d:
        raise ValueError(f"shape {rows}x{cols} does not factor dimension {d}")
    pixels = np.rint(dataset.images * 255.0).astype(np.uint8)
    with open(images_path, "wb") as f:
        f.write(struct.pack(">IIII", IDX_IMAGES_MAGIC, m, rows, cols))
        f.write(pixels.tobytes())
    with open(labels_path, "wb") as f:
        f.write(struct.pack(">II", IDX_LABELS_MAGIC, m))
        f.write(dataset.labels.astype(np.uint8).tobytes())


def split(dataset: Dataset, n_train: int, n_val: int, seed: int) -> tuple[Dataset, Dataset]:
    """Disjoint train/validation split from a seeded permutation.

    The validation set is carved from the end of the permutation. The test
    set is not produced here; it lives in its own files.
    """
    m = len(dataset)
    if n_train + n_val > m:
        raise ValueError(f"requested {n_train}+{n_val} examples from {m}")
    perm = np.random.default_rng(seed).permutation(m)
    train = dataset.subset(perm[:n_train], name=f"{dataset.name}[train]")
    val = dataset.subset(perm[m - n_val :], name=f"{dataset.name}[val]")
    return train, val


def load_mnist_dir(
    mnist_dir, n_train: int = 59000, n_val: int = 1000, seed: int = 0
) -> tuple[Dataset, Dataset, Dataset]:
    """Load the four standard MNIST files from a directory and split.

    Accepts either raw or .gz files.
    """
    mnist_dir = Path(mnist_dir)

    def find(stem):
        for candidate in (mnist_dir / stem, mnist_dir / (stem + ".gz")):
            if candidate.exists():
                return candidate
        raise FileNotFoundError(f"missing MNIST file {stem}[.gz] in {mnist_dir}")

    full = load_idx(
        find(MNIST_FILES["train_images"]), find(MNIST_FILES["train_labels"]), name="mnist"
    )
    test = load_idx(
        find(MNIST_FILES["test_images"]), find(MNIST_FILES["test_labels"]), name="mnist[test]"
    )
    train, val = split(full, n_train, n_val, seed)
    return train, val, test


def input_frobenius(dataset: Dataset) -> float:
    """Per-example-normalized Frobenius norm sqrt(sum(x_ij^2) / m).

    Invariant under replicating the dataset, which keeps the bounds that
    consume it independent of the sample count.
    """
    m = len(dataset)
    return float(np.sqrt(np.sum(dataset.images**2) / m))


def synthetic_blobs(
    n: int,
    input_dim: int = 784,
    num_classes: int = 10,
    noise: float = 0.12,
    seed: int = 0,
    name: str = "synthetic",
    contrast: float | None = None,
) -> Dataset:
    """Clustered-pixel synthetic dataset with MNIST-like ranges.

    Each class has a fixed template in [0, 1]^d; examples are noisy copies
    clipped back to [0, 1]. With contrast=None the templates are sparse
    uniform draws, which makes an easy smoke-test task. A small contrast
    value instead places templates at 0.5 +- contrast on random pixels:
    the class signal is then weak relative to the noise, so a network has
    to grow substantial weights to fit, which mirrors the norm growth of
    long training runs on image data.
    """
    rng = np.random.default_rng(seed)
    if contrast is None:
        templates = rng.uniform(0.0, 1.0, size=(num_classes, input_dim))
        templates *= rng.random((num_classes, input_dim)) < 0.25  # sparse, digit-like
    else:
        pattern = rng.choice(
            [-1.0, 0.0, 1.0], size=(num_classes, input_dim), p=[0.25, 0.5, 0.25]
        )
        templates = 0.5 + contrast * pattern
    labels = rng.integers(0, num_classes, size=n)
    images = templates[labels] + noise * rng.standard_normal((n, input_dim))
    images = np.clip(images, 0.0, 1.0)
    return Dataset(images, labels, name=name, num_classes=num_classes)

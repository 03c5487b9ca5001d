import sys
from pathlib import Path

import numpy as np
import pytest

from rtlnp import GrayImage, save_pgm

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_image(rng, h, w, low=0, high=256):
    return GrayImage(rng.integers(low, high, size=(h, w)))


def class_image(rng, label_index, size=20):
    """Textured image whose structure depends on the class: stripes of a
    class-specific period plus mild noise."""
    period = 2 + label_index
    rows, cols = np.mgrid[0:size, 0:size]
    base = np.where(((cols + rows * (label_index % 2)) // period) % 2 == 0, 60, 190)
    noise = rng.integers(-20, 21, size=(size, size))
    return GrayImage(np.clip(base + noise, 0, 255))


def write_dataset(root, rng, n_classes=3, per_class=4, size=20):
    root = Path(root)
    for c in range(n_classes):
        d = root / f"class{c}"
        d.mkdir(parents=True)
        for i in range(per_class):
            save_pgm(class_image(rng, c, size), d / f"img{i:02d}.pgm")
    return root


@pytest.fixture
def dataset(tmp_path, rng):
    return write_dataset(tmp_path / "data", rng)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k[1:])):
        status, title, secs, note = RESULTS[key]
        extra = f"  ({note})" if note else ""
        terminalreporter.write_line(f"{status:4}  {key:>3}  {title}  [{secs:.2f} s]{extra}")

import numpy as np
import pytest
from PIL import Image

from wdfp.pipelines import ExtractConfig


def random_rgb(m: int, seed: int = 0) -> np.ndarray:
    """Random image with smooth structure plus per-pixel noise, in [0, 255]."""
    rng = np.random.default_rng(seed)
    coarse = rng.uniform(30, 220, (m // 8, m // 8, 3))
    scene = np.kron(coarse, np.ones((8, 8, 1)))
    return np.clip(scene + rng.standard_normal((m, m, 3)) * 4.0, 0.0, 255.0)


def small_config(**overrides) -> ExtractConfig:
    """Config sized for 32..64 pixel test images."""
    defaults = dict(levels=2, window_sides=(3, 5))
    defaults.update(overrides)
    return ExtractConfig(**defaults)


@pytest.fixture
def rgb64():
    return random_rgb(64, seed=7)


def write_camera_tree(root, cameras=2, per_camera=2, m=32, seed=0):
    """Synthetic per-camera dataset: root/<camera>/<image>.png.

    Each camera gets its own multiplicative noise field so same-camera
    pairs share structure.
    """
    rng = np.random.default_rng(seed)
    for c in range(cameras):
        cam_dir = root / f"cam{c}"
        cam_dir.mkdir(parents=True)
        prnu = rng.standard_normal((m, m, 3)) * 0.02
        for i in range(per_camera):
            scene = np.kron(
                rng.uniform(40, 210, (m // 8, m // 8, 3)), np.ones((8, 8, 1))
            )
            img = scene * (1.0 + prnu) + rng.standard_normal((m, m, 3)) * 2.0
            Image.fromarray(np.clip(img, 0, 255).astype(np.uint8)).save(
                cam_dir / f"img{i}.png"
            )
    return root

#!/usr/bin/env python3
"""Regenerates the committed image fixtures.

- fixtures/image2d_target.png: 128x128 smooth-but-structured RGB target for
  the 2D fitting benchmark.
- fixtures/mini_synthetic/: a 4-frame miniature dataset in the standard
  transforms-file layout (camera_angle_x + per-frame transform_matrix), with
  16x16 RGBA frames, used for loader fidelity tests.

Run from the repository root:  python3 tests/oracles/make_fixtures.py
"""

import json
import math
from pathlib import Path

import numpy as np
from PIL import Image

ROOT = Path(__file__).resolve().parents[1] / "fixtures"


def make_target_image():
    n = 128
    yy, xx = np.mgrid[0:n, 0:n].astype(np.float64) / (n - 1)
    r = np.hypot(xx - 0.35, yy - 0.4)
    g1 = np.exp(-((r / 0.28) ** 2))
    r2 = np.hypot(xx - 0.72, yy - 0.68)
    g2 = np.exp(-((r2 / 0.2) ** 2))
    waves = 0.5 + 0.5 * np.sin(9.0 * xx + 4.0 * yy + 1.3 * np.cos(7.0 * yy))
    ramp = 0.25 + 0.5 * xx

    red = 0.85 * g1 + 0.25 * waves * (1 - g1)
    green = 0.7 * g2 + 0.3 * ramp + 0.15 * waves
    blue = 0.55 * (1 - g1) * (0.4 + 0.6 * waves) + 0.35 * g2
    img = np.stack([red, green, blue], axis=-1)
    img = np.clip(img, 0.0, 1.0)
    out = ROOT / "image2d_target.png"
    Image.fromarray((img * 255.0 + 0.5).astype(np.uint8), "RGB").save(out)
    print("wrote", out)


def look_at(eye, target, up):
    fwd = np.asarray(target, dtype=np.float64) - np.asarray(eye, dtype=np.float64)
    fwd /= np.linalg.norm(fwd)
    right = np.cross(fwd, up)
    right /= np.linalg.norm(right)
    true_up = np.cross(right, fwd)
    m = np.eye(4)
    # camera looks along -z in its own frame
    m[:3, 0] = right
    m[:3, 1] = true_up
    m[:3, 2] = -fwd
    m[:3, 3] = eye
    return m


def make_mini_synthetic():
    base = ROOT / "mini_synthetic"
    (base / "train").mkdir(parents=True, exist_ok=True)
    (base / "test").mkdir(parents=True, exist_ok=True)

    frames = []
    radius = 3.0
    for idx in range(4):
        ang = 2.0 * math.pi * idx / 4.0
        eye = [radius * math.cos(ang), radius * math.sin(ang), 1.2]
        m = look_at(eye, [0, 0, 0], np.array([0.0, 0.0, 1.0]))
        frames.append({"file_path": f"./train/r_{idx}", "transform_matrix": m.tolist()})

        rgba = np.zeros((16, 16, 4), dtype=np.uint8)
        yy, xx = np.mgrid[0:16, 0:16]
        disk = (xx - 8) ** 2 + (yy - 8) ** 2 <= 25
        rgba[..., 0] = np.where(disk, 40 + 12 * idx, 0)
        rgba[..., 1] = np.where(disk, 200 - 20 * idx, 0)
        rgba[..., 2] = np.where(disk, 90, 0)
        rgba[..., 3] = np.where(disk, 255, 0)
        rgba[0, 0] = (255, 0, 0, 0)  # fully transparent red: compositing check
        Image.fromarray(rgba, "RGBA").save(base / "train" / f"r_{idx}.png")

    spec = {"camera_angle_x": 0.6911112070083618, "frames": frames}
    (base / "transforms_train.json").write_text(json.dumps(spec, indent=1))

    # single held-out pose, reusing frame 0 image content
    m = look_at([0.0, -radius, 1.5], [0, 0, 0], np.array([0.0, 0.0, 1.0]))
    test_spec = {
        "camera_angle_x": 0.6911112070083618,
        "frames": [{"file_path": "./test/r_0", "transform_matrix": m.tolist()}],
    }
    (base / "transforms_test.json").write_text(json.dumps(test_spec, indent=1))
    img = Image.open(base / "train" / "r_0.png")
    img.save(base / "test" / "r_0.png")
    print("wrote", base)


if __name__ == "__main__":
    make_target_image()
    make_mini_synthetic()

#!/usr/bin/env python3
"""Regenerates the 384x512 greymap fixtures used by the acceptance test.

The photographs are the colour samples bundled with scikit-image. Each one is
centre-cropped to a 3:4 aspect, resized to 512x384 with a box filter and
converted to 8-bit luma (ITU-R BT.601 weights), the same shape and pixel type
the cipher receives from the colour-to-latent stage.
"""
import pathlib

import numpy as np
import skimage.data
from PIL import Image

HEIGHT, WIDTH = 384, 512
SOURCES = ["astronaut", "coffee", "rocket", "chelsea", "immunohistochemistry"]


def crop_to_aspect(rgb):
    h, w = rgb.shape[:2]
    if w * HEIGHT > h * WIDTH:
        cw = h * WIDTH // HEIGHT
        x = (w - cw) // 2
        return rgb[:, x:x + cw]
    ch = w * HEIGHT // WIDTH
    y = (h - ch) // 2
    return rgb[y:y + ch]


def luma(rgb):
    r, g, b = (rgb[..., i].astype(np.float64) for i in range(3))
    return np.clip(np.rint(0.299 * r + 0.587 * g + 0.114 * b), 0, 255).astype(np.uint8)


def write_pgm(path, img):
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(img.tobytes())


def main():
    out = pathlib.Path(__file__).resolve().parent
    for name in SOURCES:
        rgb = crop_to_aspect(getattr(skimage.data, name)())
        rgb = np.asarray(Image.fromarray(rgb).resize((WIDTH, HEIGHT), Image.BOX))
        write_pgm(out / f"{name}.pgm", luma(rgb))
        print(name)


if __name__ == "__main__":
    main()

"""Regenerate the test fixture crops under tests/data from scikit-image sample data."""
import os

import numpy as np
from PIL import Image
from skimage import data

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "data")

CROPS = {
    # name: (loader, row, col, size)
    "camera_64": (data.camera, 90, 230, 64),
    "astronaut_64": (data.astronaut, 60, 180, 64),
    "chelsea_64": (data.chelsea, 90, 130, 64),
    "coffee_64": (data.coffee, 150, 250, 64),
    "camera_128": (data.camera, 60, 200, 128),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, (load, r, c, n) in CROPS.items():
        img = np.asarray(load())[r:r + n, c:c + n]
        Image.fromarray(img).save(os.path.join(OUT, name + ".png"))
        print(name, img.shape, img.dtype)


if __name__ == "__main__":
    main()

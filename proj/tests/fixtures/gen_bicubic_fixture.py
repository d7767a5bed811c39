#!/usr/bin/env python3
# Copyright 2026 The AdaSR Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0.
"""Scalar reference for the bicubic fixtures.

Deliberately naive: every output sample walks every input sample and weighs
it with the cubic-convolution kernel (a = -0.5). Borders replicate edges.
Writes bicubic_up2.txt and bicubic_down2_aa.txt next to this script.
"""
import math
import os


def cubic(x, a=-0.5):
    x = abs(x)
    if x <= 1.0:
        return (a + 2.0) * x ** 3 - (a + 3.0) * x ** 2 + 1.0
    if x < 2.0:
        return a * x ** 3 - 5.0 * a * x ** 2 + 8.0 * a * x - 4.0 * a
    return 0.0


def resize_1d(src, out_len, scale, antialias):
    n = len(src)
    stretch = 1.0 / scale if (antialias and scale < 1.0) else 1.0
    out = []
    for i in range(out_len):
        center = (i + 0.5) / scale - 0.5
        # Sum over every integer tap in a generous window, clamping indices.
        lo = int(math.floor(center - 2.0 * stretch)) - 2
        hi = int(math.ceil(center + 2.0 * stretch)) + 2
        acc = 0.0
        wsum = 0.0
        for j in range(lo, hi + 1):
            w = cubic((center - j) / stretch) / stretch
            if w == 0.0:
                continue
            jj = min(max(j, 0), n - 1)
            acc += w * src[jj]
            wsum += w
        out.append(acc / wsum)
    return out


def resize(img, scale, antialias):
    h, w = len(img), len(img[0])
    oh, ow = int(round(h * scale)), int(round(w * scale))
    rows = [resize_1d(r, ow, scale, antialias) for r in img]
    cols = []
    for x in range(ow):
        cols.append(resize_1d([rows[y][x] for y in range(h)], oh, scale, antialias))
    return [[cols[x][y] for x in range(ow)] for y in range(oh)]


def source_image(h, w):
    return [[((7 * y + 3 * x) % 11) / 10.0 + 0.05 * math.sin(x * y) for x in range(w)]
            for y in range(h)]


def dump(path, img):
    with open(path, "w") as f:
        f.write("%d %d\n" % (len(img), len(img[0])))
        for row in img:
            f.write(" ".join("%.9g" % v for v in row) + "\n")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    dump(os.path.join(here, "bicubic_src.txt"), source_image(7, 9))
    dump(os.path.join(here, "bicubic_up2.txt"), resize(source_image(7, 9), 2.0, False))
    dump(os.path.join(here, "bicubic_down2_aa.txt"), resize(source_image(12, 10), 0.5, True))
    dump(os.path.join(here, "bicubic_down2_src.txt"), source_image(12, 10))

"""Regenerate the bundled ``demo.csv`` (x, y with Laplace errors, spread rising with the mean)."""

import sys

from spreadloc.datasets import demo_path, make_demo_raw

x, y = make_demo_raw()
target = sys.argv[1] if len(sys.argv) > 1 else demo_path()
with open(target, "w", newline="\n") as fh:
    fh.write("x,y\n")
    for xi, yi in zip(x, y):
        fh.write(f"{xi:.4f},{yi:.4f}\n")
print(f"wrote {len(x)} rows to {target}")

"""Plot figure data written by `chshmd sweep`.

    chshmd sweep --figure fig3 --out fig3.csv
    python3 docs/plot_figures.py fig3.csv

Needs matplotlib. One-axis sweeps become line plots; two-axis sweeps become
contour plots of the first field, with NA cells left blank.
"""
import csv
import sys

import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    cols = list(zip(*body))
    to_num = lambda v: float("nan") if v == "NA" else float(v)
    return header, [[to_num(v) for v in c] for c in cols]


def main(path):
    header, cols = read(path)
    # Two-axis grids start with M1,M2.
    if header[:2] == ["M1", "M2"]:
        xs = sorted(set(cols[0]))
        ys = sorted(set(cols[1]))
        z = [[float("nan")] * len(xs) for _ in ys]
        for x, y, v in zip(cols[0], cols[1], cols[2]):
            z[ys.index(y)][xs.index(x)] = v
        cs = plt.contour(xs, ys, z, levels=12)
        plt.clabel(cs, fontsize=7)
        plt.xlabel("M1")
        plt.ylabel("M2")
        plt.title(header[2])
    else:
        for name, col in zip(header[1:], cols[1:]):
            plt.plot(cols[0], col, label=name)
        plt.xlabel(header[0])
        plt.legend()
    out = path.rsplit(".", 1)[0] + ".png"
    plt.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main(sys.argv[1])

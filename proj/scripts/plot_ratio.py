#!/usr/bin/env python3
"""Heatmap of grid/threshold cardinality ratio from `gridq sweep 2d` output."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", default="ratio.png")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    grid = df.pivot(index="k1", columns="k2", values="ratio").sort_index(ascending=False)
    fig, ax = plt.subplots(figsize=(7, 6))
    im = ax.imshow(grid.values, cmap="RdYlGn", vmin=0.5, vmax=1.5,
                   extent=[grid.columns.min() - 0.5, grid.columns.max() + 0.5,
                           grid.index.min() - 0.5, grid.index.max() + 0.5])
    ax.set_xlabel("k2")
    ax.set_ylabel("k1 (belief attribute)")
    fig.colorbar(im, ax=ax, label="|F| / threshold")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()

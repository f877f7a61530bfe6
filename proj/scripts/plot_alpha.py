#!/usr/bin/env python3
"""Heatmap of the failprone size gain at the largest alpha, from `gridq sweep alpha`."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", default="alpha.png")
    ap.add_argument("--annotate", action="store_true", help="write the value into each cell")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    grid = df.pivot(index="k1", columns="k2", values="increase_percent").sort_index(ascending=False)
    fig, ax = plt.subplots(figsize=(7, 6))
    im = ax.imshow(grid.values, cmap="viridis",
                   extent=[grid.columns.min() - 0.5, grid.columns.max() + 0.5,
                           grid.index.min() - 0.5, grid.index.max() + 0.5])
    if args.annotate:
        for k1 in grid.index:
            for k2 in grid.columns:
                ax.text(k2, k1, f"{grid.loc[k1, k2]:.0f}", ha="center", va="center", fontsize=6, color="w")
    ax.set_xlabel("k2")
    ax.set_ylabel("k1")
    ax.set_title(f"{df['method'].iloc[0].lower()} search")
    fig.colorbar(im, ax=ax, label="size increase of F_1 (%)")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()

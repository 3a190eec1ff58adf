"""Plot the symmetric-point values against their lower bound.

    liftproj recurrence --d 500 --figure3 -o figure3.csv
    python3 samples/plot_figure3.py figure3.csv figure3.png
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(argv):
    if len(argv) not in (2, 3):
        sys.exit("usage: plot_figure3.py data.csv [out.png]")
    df = pd.read_csv(argv[1])
    out = argv[2] if len(argv) == 3 else "figure3.png"

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(df["r"], df["c_plus"], label="c+(r,0,0)")
    ax.plot(df["r"], df["c"], "--", label="c(r,0,0)")
    ax.plot(df["r"], df["bound"], ":", label="1 - 1/(d/2+1-r)")
    ax.axhline(0.5, color="grey", linewidth=0.5)
    ax.set_xlabel("r")
    ax.set_ylim(0.45, 1.0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)


if __name__ == "__main__":
    main(sys.argv)

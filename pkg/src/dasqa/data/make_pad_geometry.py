"""Regenerate the bundled geometry-to-frequency table.

Synthetic stand-in for pre-collected simulation data: an 11x11 grid over
pad gap 10..60 um and pad height 160..280 um, frequencies from the ground
truth polynomial

    f(gap, height) = 7.2 - 0.012*height - 0.004*gap + 1.5e-5*height**2  [GHz]

The height range is chosen so a fixed default gap of 30 um sweeps through
the 5.0..5.3 GHz allocation band. Run as:

    python -m dasqa.data.make_pad_geometry
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

GAPS_UM = np.linspace(10.0, 60.0, 11)
HEIGHTS_UM = np.linspace(160.0, 280.0, 11)


def ground_truth(gap_um: float, height_um: float) -> float:
    return 7.2 - 0.012 * height_um - 0.004 * gap_um + 1.5e-5 * height_um**2


def rows() -> list[tuple[float, float, float]]:
    return [
        (g, h, ground_truth(g, h))
        for g in GAPS_UM
        for h in HEIGHTS_UM
    ]


def write_csv(path: Path) -> None:
    lines = ["pad_gap_um,pad_height_um,frequency_ghz"]
    for g, h, f in rows():
        lines.append(f"{g:.9g},{h:.9g},{f:.9g}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    target = Path(__file__).parent / "pad_geometry.csv"
    write_csv(target)
    print(f"wrote {target} ({len(rows())} rows)")

"""Classify lattice points (chi_h, c1^2) and plan a construction for each.

    python scripts/region_plot.py [xmax] [outdir]

Writes region.tsv, region.svg and plans.tsv (recipe per point in scope).
"""

import sys
from pathlib import Path

from genus2lf.geography import OutsideRegion, describe, plan, region_svg, region_table, region_tsv


def main(xmax="20", outdir="build"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    rows = region_table(int(xmax))
    (out / "region.tsv").write_text(region_tsv(rows), encoding="utf-8")
    (out / "region.svg").write_text(region_svg(rows), encoding="utf-8")
    lines = ["chi_h\tc1sq\ttype\trecipe"]
    for x, y, _ in rows:
        try:
            r = plan(x, y)
        except OutsideRegion:
            continue
        lines.append(f"{x}\t{y}\t{r.predicted_type()}\t{describe(r)}")
    (out / "plans.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(rows)} points classified, {len(lines) - 1} planned")


if __name__ == "__main__":
    main(*sys.argv[1:])

"""Run every catalog construction and write the resulting words and a report.

    python scripts/build_catalog.py [outdir]

Output files are deterministic; timings go to stderr only.
"""

import sys
import time
from pathlib import Path

from genus2lf import catalog
from genus2lf.factorization import Document, h1, verify_identity
from genus2lf.geography import invariants_from_type, pi1_presentation, slope, tietze_simplify

BUILDS = [
    ("X", lambda log: catalog.build_X(log)),
    ("X2", lambda log: catalog.build_Xt(2, log)),
    ("X3", lambda log: catalog.build_Xt(3, log)),
    ("Y2438", lambda log: catalog.build_2438(log)),
    ("M1", lambda log: catalog.build_Mt(1, log)),
]


def main(outdir="build"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    report = []
    for name, build in BUILDS:
        t0 = time.perf_counter()
        log = catalog.BuildLog()
        f = build(log)
        f, rep = verify_identity(f)
        inv = invariants_from_type(rep.type)
        report.append(f"[{name}]")
        report += [f"  {label}: {t}" for label, t in log.steps]
        report.append(f"  identity: {'yes' if rep.ok else 'no'}")
        report.append(f"  type: {rep.type}  H1: {h1(f)}")
        report.append(f"  e={inv.e} sigma={inv.sigma} chi_h={inv.chi_h} c1sq={inv.c1sq} slope={slope(rep.type)}")
        if name == "X":
            res = tietze_simplify(pi1_presentation(f))
            report.append(f"  pi1 after Tietze: {res.presentation.render()} ({res.moves} moves)")
        doc = Document()
        doc.add_factorization(name, f)
        (out / f"{name}.txt").write_text(doc.render(), encoding="utf-8")
        print(f"{name}: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    (out / "report.txt").write_text("\n".join(report) + "\n", encoding="utf-8")
    print("\n".join(report))


if __name__ == "__main__":
    main(*sys.argv[1:])

"""Print lambda1, perimeter, energy and residual across every equality family.

    python3 scripts/family_tables.py --csv-dir out/
"""

from __future__ import annotations

import argparse
import io
from dataclasses import dataclass, field
from pathlib import Path

from reillyspec.cli import main as cli_main


@dataclass
class TableConfig:
    trapeze_range: tuple[float, float, int] = (0.1, 1.4, 14)
    regular_range: tuple[int, int] = (3, 12)
    fake_range: tuple[int, int] = (2, 10)
    star_range: tuple[int, int] = (2, 12)
    csv_dir: Path | None = None
    jobs: int = 1
    sweeps: list[tuple[str, list[str]]] = field(init=False)

    def __post_init__(self):
        a, b, k = self.trapeze_range
        self.sweeps = [
            ("trapeze", ["--from", str(a), "--to", str(b), "--steps", str(k)]),
            ("regular", ["--from", str(self.regular_range[0]), "--to", str(self.regular_range[1])]),
            ("fake-regular", ["--from", str(self.fake_range[0]), "--to", str(self.fake_range[1])]),
            ("star", ["--from", str(self.star_range[0]), "--to", str(self.star_range[1])]),
        ]


def _cell(text: str) -> str:
    try:
        return format(float(text), ".6g")
    except ValueError:
        return text


def run(cfg: TableConfig) -> int:
    status = 0
    for family, flags in cfg.sweeps:
        argv = ["sweep", family, *flags, "--jobs", str(cfg.jobs)]
        if cfg.csv_dir is not None:
            cfg.csv_dir.mkdir(parents=True, exist_ok=True)
            argv += ["--csv", str(cfg.csv_dir / f"{family}.csv")]
            status |= cli_main(argv)
            print(f"wrote {cfg.csv_dir / f'{family}.csv'}")
            continue
        buf = io.StringIO()
        status |= cli_main(argv, out=buf)
        print(f"# {family}")
        for line in buf.getvalue().splitlines():
            print("  ".join(_cell(c).ljust(12) for c in line.split(",")))
        print()
    return status


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--csv-dir", type=Path)
    ap.add_argument("--jobs", type=int, default=1)
    ns = ap.parse_args()
    raise SystemExit(run(TableConfig(csv_dir=ns.csv_dir, jobs=ns.jobs)))

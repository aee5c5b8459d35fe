"""Parameter-space scans: one ScanRow per (d, g, r), serialized as CSV, JSON or a table."""
from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import EnumerationError
from .invariants import Params, brill_noether_number, expected_gonality
from .qform import DEFAULT_BOUND
from .verifier import compute_alpha, h1_normal_vanishes, theorem1_applicable, theorem3_applicable

CSV_HEADER = ["d", "g", "r", "rho", "expected_gonality", "thm3_ok", "alpha", "minimizers",
              "h1_vanishes", "thm1_ok"]
FILTERS = ("thm1", "thm3")

# JSON integers at or beyond this magnitude are written as decimal strings.
_JSON_INT_LIMIT = 2**63


@dataclass
class ScanRow:
    d: int
    g: int
    r: int
    rho: int
    expected_gonality: int
    thm3_flags: dict[str, bool]
    alpha: int | None = None
    minimizers: list[tuple[int, int]] | None = None
    h1_vanishes: bool | None = None
    thm1_applicable: bool | None = None
    derived_pairs: list[tuple[int, int, int]] | None = None

    @property
    def thm3_ok(self) -> bool:
        return all(self.thm3_flags.values())

    def to_json(self) -> dict:
        return {
            "d": _jint(self.d), "g": _jint(self.g), "r": _jint(self.r),
            "rho": _jint(self.rho),
            "expected_gonality": _jint(self.expected_gonality),
            "thm3_ok": self.thm3_ok,
            "thm3_flags": dict(self.thm3_flags),
            "alpha": None if self.alpha is None else _jint(self.alpha),
            "minimizers": None if self.minimizers is None
            else [[_jint(m), _jint(n)] for m, n in self.minimizers],
            "h1_vanishes": self.h1_vanishes,
            "thm1_ok": self.thm1_applicable,
            "derived_pairs": None if self.derived_pairs is None
            else [[_jint(x) for x in t] for t in self.derived_pairs],
        }

    def to_csv(self) -> list[str]:
        return [
            str(self.d), str(self.g), str(self.r), str(self.rho), str(self.expected_gonality),
            _cbool(self.thm3_ok),
            "" if self.alpha is None else str(self.alpha),
            format_minimizers(self.minimizers),
            _cbool(self.h1_vanishes),
            _cbool(self.thm1_applicable),
        ]


def _jint(x: int):
    return str(x) if abs(x) >= _JSON_INT_LIMIT else x


def _cbool(x: bool | None) -> str:
    return "" if x is None else ("true" if x else "false")


def format_minimizers(ms) -> str:
    if ms is None:
        return ""
    return ";".join(f"({m} {n})" for m, n in ms)


@dataclass
class ScanConfig:
    d_range: tuple[int, int]
    g_range: tuple[int, int]
    r_range: tuple[int, int]
    filters: tuple[str, ...] = ()
    fmt: str = "table"
    out: Path | None = None
    bound: int = DEFAULT_BOUND
    strict_a: bool = False
    jobs: int = 1

    def __post_init__(self):
        for name in ("d_range", "g_range", "r_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo}..{hi}")
        if self.d_range[0] < 1 or self.g_range[0] < 0 or self.r_range[0] < 1:
            raise ValueError("ranges must satisfy d >= 1, g >= 0, r >= 1")
        if self.bound < 1:
            raise ValueError(f"bound must be >= 1, got {self.bound}")
        bad = set(self.filters) - set(FILTERS)
        if bad:
            raise ValueError(f"unknown filters: {sorted(bad)}")
        if self.fmt not in ("table", "json", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")

    def triples(self):
        for d in range(self.d_range[0], self.d_range[1] + 1):
            for g in range(self.g_range[0], self.g_range[1] + 1):
                for r in range(self.r_range[0], self.r_range[1] + 1):
                    yield d, g, r


def build_row(p: Params, bound: int = DEFAULT_BOUND, strict_a: bool = False) -> ScanRow:
    """Every field comes from the public operations, so rows can be re-verified."""
    hyp = theorem3_applicable(p, bound)
    row = ScanRow(p.d, p.g, p.r, brill_noether_number(p), expected_gonality(p), dict(hyp.flags))
    try:
        rep = compute_alpha(p, strict_a=strict_a, bound=bound)
    except EnumerationError:
        pass
    else:
        row.alpha = rep.alpha
        row.minimizers = [tuple(D) for D in rep.minimizers]
    if p.r == 3:
        row.h1_vanishes = h1_normal_vanishes(p.d, p.g)
        t1 = theorem1_applicable(p.d, p.g)
        row.thm1_applicable = t1.ok
        row.derived_pairs = list(t1.derived_pairs)
    return row


def _row_for(args) -> ScanRow:
    d, g, r, bound, strict_a = args
    return build_row(Params(d, g, r), bound, strict_a)


def _keep(row: ScanRow, filters) -> bool:
    if "thm1" in filters and not row.thm1_applicable:
        return False
    if "thm3" in filters and not row.thm3_ok:
        return False
    return True


def run_scan(cfg: ScanConfig) -> list[ScanRow]:
    work = [(d, g, r, cfg.bound, cfg.strict_a) for d, g, r in cfg.triples()]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_row_for, work, chunksize=64))
    else:
        rows = [_row_for(w) for w in work]
    rows = [row for row in rows if _keep(row, cfg.filters)]
    rows.sort(key=lambda row: (row.d, row.g, row.r))
    return rows


def render(rows: list[ScanRow], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([row.to_json() for row in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(row.to_csv() for row in rows)
        return buf.getvalue()
    return render_table(CSV_HEADER, [row.to_csv() for row in rows])


def render_table(header: list[str], body: list[list[str]]) -> str:
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in body]
    return "\n".join(lines) + "\n"


def write_output(text: str, out: Path | None) -> None:
    """Write to ``out`` atomically (temp file + rename), or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    fd, tmp = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


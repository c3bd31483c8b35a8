"""Fixed-format MPS writer for LinearProgram instances.

Field layout follows the classic fixed columns (2-3, 5-12, 15-22, 25-36,
40-47, 50-61); names longer than eight characters keep their documented
structure and simply widen the field, which every modern reader accepts.
Ranged rows are emitted as L rows with a RANGES entry; integer columns are
wrapped in INTORG/INTEND markers.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .milp import LinearProgram


def _field(f1: str = "", f2: str = "", f3: str = "", f4: str = "",
           f5: str = "", f6: str = "") -> str:
    out = " " + f1.ljust(2) + " " + f2.ljust(9) + " " + f3.ljust(9)
    if f4:
        out += " " + f4.ljust(14)
    if f5:
        out += " " + f5.ljust(9)
    if f6:
        out += " " + f6
    return out.rstrip()


def _num(x: float) -> str:
    return f"{x:.12G}"


def write_mps(prob: LinearProgram, path: str | Path, name: str = "GRIDSYNTH") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"NAME          {name}", "ROWS", _field("N", "COST")]

    row_types = []
    for i in range(prob.nrows):
        rl, rh = prob.row_lower[i], prob.row_upper[i]
        if rl == rh:
            rtype = "E"
        elif np.isfinite(rh):
            rtype = "L"  # ranged rows are L + RANGES
        elif np.isfinite(rl):
            rtype = "G"
        else:
            rtype = "N"  # free row
        row_types.append(rtype)
        lines.append(_field(rtype, prob.row_names[i]))

    by_col: list[list[tuple[int, float]]] = [[] for _ in range(prob.ncols)]
    for i, entries in enumerate(prob.row_entries):
        for j, coef in entries:
            by_col[j].append((i, coef))

    lines.append("COLUMNS")
    in_int = False
    marker = 0
    for j in range(prob.ncols):
        if prob.integer[j] and not in_int:
            lines.append(_field("", f"MARKER{marker}", "'MARKER'",
                                "", "'INTORG'"))
            marker += 1
            in_int = True
        elif not prob.integer[j] and in_int:
            lines.append(_field("", f"MARKER{marker}", "'MARKER'",
                                "", "'INTEND'"))
            marker += 1
            in_int = False
        entries: list[tuple[str, float]] = []
        if prob.obj[j] != 0.0:
            entries.append(("COST", prob.obj[j]))
        entries.extend((prob.row_names[i], coef) for i, coef in by_col[j])
        if not entries:
            entries.append(("COST", 0.0))
        for k in range(0, len(entries), 2):
            pair = entries[k:k + 2]
            if len(pair) == 2:
                lines.append(_field("", prob.col_names[j], pair[0][0],
                                    _num(pair[0][1]), pair[1][0],
                                    _num(pair[1][1])))
            else:
                lines.append(_field("", prob.col_names[j], pair[0][0],
                                    _num(pair[0][1])))
    if in_int:
        lines.append(_field("", f"MARKER{marker}", "'MARKER'", "", "'INTEND'"))

    lines.append("RHS")
    for i in range(prob.nrows):
        rl, rh = prob.row_lower[i], prob.row_upper[i]
        rhs = rh if np.isfinite(rh) else (rl if np.isfinite(rl) else 0.0)
        if rhs != 0.0:
            lines.append(_field("", "RHS", prob.row_names[i], _num(rhs)))

    ranged = [i for i in range(prob.nrows)
              if row_types[i] == "L" and np.isfinite(prob.row_lower[i])]
    if ranged:
        lines.append("RANGES")
        for i in ranged:
            width = prob.row_upper[i] - prob.row_lower[i]
            lines.append(_field("", "RNG", prob.row_names[i], _num(width)))

    lines.append("BOUNDS")
    for j in range(prob.ncols):
        lo, hi = prob.lower[j], prob.upper[j]
        name_j = prob.col_names[j]
        if prob.integer[j] and lo == 0.0 and hi == 1.0:
            lines.append(_field("BV", "BND", name_j))
            continue
        if lo == hi:
            lines.append(_field("FX", "BND", name_j, _num(lo)))
            continue
        if not np.isfinite(lo) and not np.isfinite(hi):
            lines.append(_field("FR", "BND", name_j))
            continue
        if np.isfinite(lo) and lo != 0.0:
            lines.append(_field("LO", "BND", name_j, _num(lo)))
        elif not np.isfinite(lo):
            lines.append(_field("MI", "BND", name_j))
        if np.isfinite(hi):
            lines.append(_field("UP", "BND", name_j, _num(hi)))

    lines.append("ENDATA")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

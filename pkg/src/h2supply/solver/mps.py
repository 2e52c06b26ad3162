"""Fixed-format MPS writer and reader.

Columns are written as X0000001.., rows as R0000001.. and the objective row
as COST, so the output depends only on the numbers of the instance.  Rows
whose bound is infinite are written as free (N) rows and come back as
``<= +inf``.  The objective constant goes to the RHS of the objective row
with the sign most solvers expect (offset = -RHS).
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from ..model.instance import MilpInstance, VariableIndex

OBJ_ROW = "COST"
FIELD = 12


class MpsError(ValueError):
    pass


def fmt(v: float) -> str:
    """Shortest %g text that reads back to ``v`` within 12 characters.

    When no such text exists the value is truncated to the longest fitting
    precision and then re-rendered, so ``fmt(float(fmt(v))) == fmt(v)``."""
    v = float(v)
    if not math.isfinite(v):
        raise MpsError(f"cannot write non-finite number {v}")
    if v == 0.0:
        return "0"
    last = None
    for p in range(1, 18):
        s = format(v, f".{p}g")
        if len(s) > FIELD:
            break
        last = s
        if float(s) == v:
            return s
    if last is None:
        raise MpsError(f"{v!r} does not fit a {FIELD}-character field")
    return fmt(float(last))


def _line(kind: str, name1: str, name2: str = "", num: str = "", name3: str = "", num2: str = "") -> str:
    # fixed columns: 2-3, 5-12, 15-22, 25-36, 40-47, 50-61
    s = f" {kind:<2} {name1:<8}  {name2:<8}  {num:>12}"
    if name3:
        s += f"   {name3:<8}  {num2:>12}"
    return s.rstrip()


def col_name(j: int) -> str:
    return f"X{j + 1:07d}"


def row_name(i: int) -> str:
    return f"R{i + 1:07d}"


def write_mps(inst: MilpInstance, name: str = "H2SUPPLY") -> str:
    """Render ``inst`` as fixed-format MPS text."""
    if inst.n >= 10_000_000 or inst.m >= 10_000_000:
        raise MpsError("too many columns or rows for 8-character names")
    free = ~np.isfinite(inst.rhs)
    out = [f"NAME          {name}", "ROWS", f" N  {OBJ_ROW}"]
    for i, (s, f) in enumerate(zip(inst.sense, free)):
        out.append(f" {'N' if f else s}  {row_name(i)}")
    out.append("COLUMNS")
    A = sp.csc_matrix(inst.A)
    A.sort_indices()
    in_int = False
    for j in range(inst.n):
        if bool(inst.integer[j]) != in_int:
            tag = "INTORG" if not in_int else "INTEND"
            out.append(f"    MARKER                 'MARKER'                 '{tag}'")
            in_int = not in_int
        cname = col_name(j)
        if inst.c[j] != 0.0:
            out.append(_line("", cname, OBJ_ROW, fmt(inst.c[j])))
        for k in range(A.indptr[j], A.indptr[j + 1]):
            out.append(_line("", cname, row_name(int(A.indices[k])), fmt(A.data[k])))
        if inst.c[j] == 0.0 and A.indptr[j] == A.indptr[j + 1]:
            out.append(_line("", cname, OBJ_ROW, "0"))  # keep the column declared
    if in_int:
        out.append("    MARKER                 'MARKER'                 'INTEND'")
    out.append("RHS")
    if inst.c0 != 0.0:
        out.append(_line("", "RHS", OBJ_ROW, fmt(-inst.c0)))
    for i, v in enumerate(inst.rhs):
        if math.isfinite(v) and v != 0.0:
            out.append(_line("", "RHS", row_name(i), fmt(v)))
    out.append("BOUNDS")
    for j in range(inst.n):
        out.extend(_bounds(col_name(j), float(inst.lb[j]), float(inst.ub[j]), bool(inst.integer[j])))
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def _bounds(cname: str, lo: float, hi: float, integer: bool) -> list[str]:
    b = lambda kind, v="": _line(kind, "BND", cname, v)
    if integer and lo == 0.0 and hi == 1.0:
        return [b("BV")]
    if lo == hi:
        return [b("FX", fmt(lo))]
    if lo == -math.inf and hi == math.inf:
        return [b("FR")]
    lines = []
    if lo == -math.inf:
        lines.append(b("MI"))
    elif lo != 0.0:
        lines.append(b("LO", fmt(lo)))
    if hi != math.inf:
        lines.append(b("UP", fmt(hi)))
    elif integer:
        lines.append(b("PL"))  # some readers default integer columns to [0, 1]
    return lines


def export_mps(inst: MilpInstance, path, name: str = "H2SUPPLY") -> Path:
    path = Path(path)
    path.write_text(write_mps(inst, name), encoding="ascii")
    return path


def parse_mps(text_or_path) -> MilpInstance:
    """Read fixed-format MPS (as written by :func:`write_mps` or any tool
    using whitespace-free names) into a :class:`MilpInstance`."""
    text = text_or_path
    if isinstance(text_or_path, Path) or (isinstance(text_or_path, str) and "\n" not in text_or_path):
        text = Path(text_or_path).read_text(encoding="ascii")
    section = None
    obj_row = None
    rows: dict[str, int] = {}
    senses: list[str] = []
    cols: dict[str, int] = {}
    integer: list[bool] = []
    entries: list[tuple[int, int, float]] = []
    cost: dict[int, float] = {}
    rhs: dict[int, float] = {}
    c0 = 0.0
    bounds: dict[int, list[float]] = {}
    in_int = False

    def column(nm: str) -> int:
        if nm not in cols:
            cols[nm] = len(cols)
            integer.append(in_int)
        return cols[nm]

    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.startswith("*"):
            continue
        if not raw[0].isspace():
            section = raw.split()[0]
            if section == "RANGES":
                continue
            if section not in ("NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"):
                raise MpsError(f"line {lineno}: unknown section {section!r}")
            continue
        tok = raw.split()
        if section == "ROWS":
            kind, nm = tok[0], tok[1]
            if kind == "N" and obj_row is None:
                obj_row = nm
                continue
            if kind not in ("N", "L", "E", "G"):
                raise MpsError(f"line {lineno}: bad row type {kind!r}")
            rows[nm] = len(senses)
            senses.append(kind)
        elif section == "COLUMNS":
            if len(tok) >= 3 and tok[1] == "'MARKER'":
                in_int = tok[2] == "'INTORG'"
                continue
            j = column(tok[0])
            for rn, val in zip(tok[1::2], tok[2::2]):
                v = float(val)
                if rn == obj_row:
                    cost[j] = v
                elif rn in rows:
                    entries.append((rows[rn], j, v))
                else:
                    raise MpsError(f"line {lineno}: unknown row {rn!r}")
        elif section == "RHS":
            for rn, val in zip(tok[1::2], tok[2::2]):
                if rn == obj_row:
                    c0 = -float(val)
                elif rn in rows:
                    rhs[rows[rn]] = float(val)
                else:
                    raise MpsError(f"line {lineno}: unknown row {rn!r}")
        elif section == "RANGES":
            raise MpsError(f"line {lineno}: RANGES entries are not supported")
        elif section == "BOUNDS":
            kind, cn = tok[0], tok[2]
            if cn not in cols:
                raise MpsError(f"line {lineno}: unknown column {cn!r}")
            j = cols[cn]
            lo, hi = bounds.setdefault(j, [0.0, math.inf])
            val = float(tok[3]) if len(tok) > 3 else math.nan
            if kind == "UP":
                hi = val
                if val < 0 and lo == 0.0:
                    lo = -math.inf
            elif kind == "LO":
                lo = val
            elif kind == "FX":
                lo = hi = val
            elif kind == "FR":
                lo, hi = -math.inf, math.inf
            elif kind == "MI":
                lo = -math.inf
            elif kind == "PL":
                hi = math.inf
            elif kind == "BV":
                lo, hi = 0.0, 1.0
                integer[j] = True
            else:
                raise MpsError(f"line {lineno}: unsupported bound type {kind!r}")
            bounds[j] = [lo, hi]
        elif section == "ENDATA":
            break
    if obj_row is None:
        raise MpsError("no objective row")

    n, m = len(cols), len(senses)
    variables = VariableIndex()
    for nm in cols:
        variables.add(nm, ())
    lb = np.zeros(n)
    ub = np.full(n, math.inf)
    for j, (lo, hi) in bounds.items():
        lb[j], ub[j] = lo, hi
    r, cidx, v = (np.array(a) for a in zip(*entries)) if entries else (np.zeros(0, int),) * 2 + (np.zeros(0),)
    A = sp.csr_matrix((v, (r, cidx)), shape=(m, n))
    A.sort_indices()
    sense = np.array(["L" if s == "N" else s for s in senses], dtype="<U1")
    b = np.array([math.inf if s == "N" else rhs.get(i, 0.0) for i, s in enumerate(senses)], float)
    c = np.zeros(n)
    for j, val in cost.items():
        c[j] = val
    return MilpInstance(variables, lb, ub, np.array(integer, bool), A, sense, b, list(rows), c, c0,
                        objective="mps")

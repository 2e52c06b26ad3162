"""Reading and writing scenario bundles (a directory of plain-text tables)."""
from __future__ import annotations

import hashlib
import itertools
import os
from pathlib import Path

from .schema import BY_NAME, FILES, GROUPS, INDEX_TYPES, PARAMS, ParamSpec, params_in
from .types import SET_FIELDS, Options, Scenario, Sets

SETS_FILE = "sets.conf"
OPTIONS_FILE = "options.conf"

_SET_KEYS = {v: k for k, v in SET_FIELDS.items()}
_INT_SETS = {"periods", "years", "months"}


class ScenarioLoadError(Exception):
    """A bundle could not be turned into a Scenario.

    ``table`` names the offending file; ``line``/``column`` are 1-based positions
    when the failure is a parse error; ``keys`` lists missing index tuples.
    """

    def __init__(self, message, table=None, line=None, column=None, keys=None):
        super().__init__(message)
        self.table = table
        self.line = line
        self.column = column
        self.keys = list(keys or [])


def expected_keys(spec: ParamSpec, sets: Sets) -> list:
    if not spec.index:
        return [()]
    members = [sets.members(k) for k in spec.index]
    keys = list(itertools.product(*members))
    if len(spec.index) == 1:
        return [k[0] for k in keys]
    return keys


def _read_conf(path: Path) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioLoadError(f"{path.name}:{lineno}: expected key = value", path.name, lineno, 1)
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_sets(path: Path) -> Sets:
    if not path.exists():
        raise ScenarioLoadError(f"missing mandatory table {SETS_FILE}", SETS_FILE)
    conf = _read_conf(path)
    kwargs = {}
    for name, value in conf.items():
        if name not in _SET_KEYS and name != "years":
            raise ScenarioLoadError(f"{SETS_FILE}: unknown set '{name}'", SETS_FILE)
        items = [x.strip() for x in value.split(",") if x.strip()]
        if name in _INT_SETS:
            try:
                items = [int(x) for x in items]
            except ValueError:
                raise ScenarioLoadError(f"{SETS_FILE}: set '{name}' must hold integers", SETS_FILE) from None
        kwargs[name] = tuple(items)
    missing = [k for k in ("grids", "periods", "months") if k not in kwargs]
    if missing:
        raise ScenarioLoadError(f"{SETS_FILE}: missing sets {missing}", SETS_FILE, keys=missing)
    kwargs.setdefault("years", kwargs["periods"])
    return Sets(**kwargs)


def _parse_bool(text: str) -> bool:
    t = text.lower()
    if t in ("1", "on", "true", "yes"):
        return True
    if t in ("0", "off", "false", "no"):
        return False
    raise ValueError(text)


def _parse_options(path: Path) -> tuple[Options, str | None]:
    if not path.exists():
        return Options(), None
    conf = _read_conf(path)
    kwargs = {}
    name = conf.pop("name", None)
    try:
        for key, value in conf.items():
            if key == "retrofit":
                kwargs[key] = _parse_bool(value)
            elif key == "water":
                if value not in ("off", "on"):
                    value = format(float(value), "g")
                    if float(value) <= 0:
                        raise ValueError(value)
                kwargs[key] = value
            elif key == "storage_autonomy_days":
                kwargs[key] = float(value)
            elif key == "heating_value_mode":
                if value not in ("divide", "multiply"):
                    raise ValueError(value)
                kwargs[key] = value
            else:
                raise ScenarioLoadError(f"{OPTIONS_FILE}: unknown option '{key}'", OPTIONS_FILE)
    except ValueError as exc:
        raise ScenarioLoadError(f"{OPTIONS_FILE}: bad value for '{key}': {exc}", OPTIONS_FILE) from None
    return Options(**kwargs), name


def _parse_table(path: Path, sets: Sets, tables: dict[str, dict]) -> None:
    fname = path.name
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        spec = BY_NAME.get(fields[0])
        if spec is None or spec.file != fname:
            raise ScenarioLoadError(
                f"{fname}:{lineno}: unknown parameter '{fields[0]}'", fname, lineno, 1)
        if len(fields) != len(spec.index) + 2:
            raise ScenarioLoadError(
                f"{fname}:{lineno}: '{spec.name}' takes {len(spec.index)} indices and a value, "
                f"got {len(fields) - 1} fields", fname, lineno, len(fields))
        choices = []
        for col, (key, token) in enumerate(zip(spec.index, fields[1:-1]), 2):
            if token == "*":
                choices.append(sets.members(key))
                continue
            try:
                member = INDEX_TYPES[key](token)
            except ValueError:
                raise ScenarioLoadError(
                    f"{fname}:{lineno}:{col}: malformed index '{token}'", fname, lineno, col) from None
            if member not in sets.members(key):
                raise ScenarioLoadError(
                    f"{fname}:{lineno}:{col}: '{token}' is not a member of set {SET_FIELDS[key]}",
                    fname, lineno, col)
            choices.append((member,))
        col = len(fields)
        try:
            value = float(fields[-1])
        except ValueError:
            raise ScenarioLoadError(
                f"{fname}:{lineno}:{col}: malformed number '{fields[-1]}'", fname, lineno, col) from None
        if spec.integral:
            if value != int(value):
                raise ScenarioLoadError(
                    f"{fname}:{lineno}:{col}: '{spec.name}' must be integral, got {fields[-1]}",
                    fname, lineno, col)
            value = int(value)
        table = tables.setdefault(spec.name, {})
        for combo in itertools.product(*choices):
            key = combo[0] if len(combo) == 1 else (combo if combo else ())
            table[key] = value
            if spec.name == "distance":
                lines = tables.setdefault("_distance_lines", {})
                lines[key] = lineno


def _symmetrize_distances(tables, sets):
    """Mirror one-sided distance entries; reject pairs given twice with different values."""
    table = tables.get("distance", {})
    lines = tables.pop("_distance_lines", {})
    order = {g: n for n, g in enumerate(sets.grids)}
    for (a, b), value in sorted(table.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        other = table.get((b, a))
        if other is None:
            continue
        if other != value:
            first, second = sorted((a, b), key=order.get)
            raise ScenarioLoadError(
                f"distances.tsv: distance asymmetry for pair ({first},{second}): "
                f"{table[(first, second)]} vs {table[(second, first)]}",
                "distances.tsv", line=max(lines.get((a, b), 0), lines.get((b, a), 0)) or None,
                keys=[(first, second)])
    for (a, b), value in list(table.items()):
        table.setdefault((b, a), value)


def load_scenario(path: str | os.PathLike) -> Scenario:
    """Load a bundle directory into a Scenario, filling schema defaults."""
    root = Path(path)
    if not root.is_dir():
        raise FileNotFoundError(f"scenario bundle not found: {root}")
    sets = _parse_sets(root / SETS_FILE)
    options, name = _parse_options(root / OPTIONS_FILE)

    tables: dict[str, dict] = {}
    for fname in FILES:
        fpath = root / fname
        if fpath.exists():
            _parse_table(fpath, sets, tables)
        else:
            required = [p.name for p in params_in(fname) if p.required]
            if required:
                raise ScenarioLoadError(
                    f"missing mandatory table {fname} (parameters {', '.join(required)})",
                    fname, keys=required)
    _symmetrize_distances(tables, sets)

    grouped: dict[str, dict] = {g: {} for g in GROUPS}
    for spec in PARAMS:
        table = tables.get(spec.name, {})
        keys = expected_keys(spec, sets)
        if not spec.index:
            if () in table:
                grouped[spec.group][spec.name] = table[()]
            elif spec.required:
                raise ScenarioLoadError(
                    f"{spec.file}: missing mandatory parameter '{spec.name}'", spec.file, keys=[spec.name])
            continue
        missing = [k for k in keys if k not in table]
        if missing and spec.required:
            shown = ", ".join(map(str, missing[:5])) + (" ..." if len(missing) > 5 else "")
            raise ScenarioLoadError(
                f"{spec.file}: parameter '{spec.name}' is missing keys {shown}",
                spec.file, keys=missing)
        full = {}
        for k in keys:
            full[k] = table[k] if k in table else spec.default_for(sets, k)
        grouped[spec.group][spec.name] = full

    parts = {g: cls(**grouped[g]) for g, cls in GROUPS.items()}
    return Scenario(sets=sets, options=options, name=name or root.name, **parts)


def _fmt(value) -> str:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    v = float(value)
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def save_scenario(s: Scenario, path: str | os.PathLike) -> Path:
    """Write ``s`` as a bundle directory; output is deterministic."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    lines = []
    for field_name in ("grids", "periods", "years", "months", "sources", "techs", "sizes",
                       "forms", "modes", "storages", "stations"):
        lines.append(f"{field_name} = {', '.join(str(x) for x in getattr(s.sets, field_name))}")
    (root / SETS_FILE).write_text("\n".join(lines) + "\n")

    o = s.options
    (root / OPTIONS_FILE).write_text(
        f"name = {s.name}\n"
        f"retrofit = {'on' if o.retrofit else 'off'}\n"
        f"water = {o.water}\n"
        f"storage_autonomy_days = {_fmt(o.storage_autonomy_days)}\n"
        f"heating_value_mode = {o.heating_value_mode}\n"
    )

    for fname in FILES:
        out = [f"# {fname}: name index... value"]
        for spec in params_in(fname):
            data = getattr(getattr(s, spec.group), spec.name)
            if not spec.index:
                out.append(f"{spec.name}\t{_fmt(data)}")
                continue
            for k in expected_keys(spec, s.sets):
                idx = k if isinstance(k, tuple) else (k,)
                out.append("\t".join([spec.name, *map(str, idx), _fmt(data[k])]))
        (root / fname).write_text("\n".join(out) + "\n")
    return root


def bundle_hash(path: str | os.PathLike) -> str:
    """sha256 over the bundle's files (sorted by name)."""
    root = Path(path)
    h = hashlib.sha256()
    for f in sorted(p for p in root.iterdir() if p.is_file()):
        h.update(f.name.encode())
        h.update(b"\0")
        h.update(f.read_bytes())
    return h.hexdigest()


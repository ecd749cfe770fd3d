"""CSV and JSON serialization for every artifact the package produces.

All floating-point text uses 17 significant digits, so a write/read round
trip reproduces the exact double.  Output is locale-independent ('.' as the
decimal separator, ',' as the field separator) and byte-stable: the same
data always serializes to the same file.
"""

from __future__ import annotations

import csv
import json
from typing import List, Optional, Tuple

import numpy as np

from .classify import ClassifierConfig, ConfusionMatrix, TemplateSet
from .errors import DataFormatError
from .graphs import WeightedGraph
from .models import CurvePanel


def fmt(x: float) -> str:
    """17-significant-digit decimal text; round-trips any float64."""
    return format(float(x), ".17g")


def _parse_float(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise DataFormatError(f"{where}: cannot parse {token!r} as a number") from None


def _rows(path) -> List[List[str]]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            return [row for row in csv.reader(fh)]
    except OSError:
        raise
    except (csv.Error, UnicodeDecodeError) as exc:
        raise DataFormatError(f"{path}: unreadable CSV ({exc})") from exc


# ---------------------------------------------------------------- panels

def write_panel(path, panel: CurvePanel) -> None:
    """Header: t,<t_1>,...,<t_m>.  Rows: label,v_1,...,v_m ('-' = no label)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t"] + [fmt(t) for t in panel.grid])
        for i in range(panel.n):
            label = panel.labels[i] if panel.labels is not None else "-"
            w.writerow([label] + [fmt(v) for v in panel.values[i]])


def read_panel(path) -> CurvePanel:
    rows = _rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    header = rows[0]
    if not header or header[0] != "t":
        raise DataFormatError(f"{path}: row 1: expected a panel header starting with 't'")
    if len(header) < 3:
        raise DataFormatError(f"{path}: row 1: a panel needs at least two grid columns")
    grid = [_parse_float(tok, f"{path}: row 1") for tok in header[1:]]
    m = len(grid)
    labels: List[str] = []
    values: List[List[float]] = []
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != m + 1:
            raise DataFormatError(
                f"{path}: row {k}: expected {m + 1} fields, got {len(row)}"
            )
        labels.append(row[0])
        values.append([_parse_float(tok, f"{path}: row {k}") for tok in row[1:]])
    if not values:
        raise DataFormatError(f"{path}: no data rows")
    from .errors import UsageError

    try:
        return CurvePanel(
            grid=np.array(grid),
            values=np.array(values),
            labels=None if all(lab == "-" for lab in labels) else labels,
        )
    except UsageError as exc:
        raise DataFormatError(f"{path}: {exc}") from exc


# ----------------------------------------------------------- point clouds

def write_cloud(path, cloud) -> None:
    pts = np.asarray(cloud, dtype=float)
    if pts.ndim != 2:
        raise DataFormatError("a point cloud must be 2-D")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{k + 1}" for k in range(pts.shape[1])])
        for row in pts:
            w.writerow([fmt(v) for v in row])


def read_cloud(path) -> np.ndarray:
    rows = _rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    header = rows[0]
    if not header or header[0] != "x1":
        raise DataFormatError(f"{path}: row 1: expected a cloud header starting with 'x1'")
    p = len(header)
    data = []
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != p:
            raise DataFormatError(f"{path}: row {k}: expected {p} fields, got {len(row)}")
        data.append([_parse_float(tok, f"{path}: row {k}") for tok in row])
    if not data:
        raise DataFormatError(f"{path}: no data rows")
    return np.array(data)


def read_points_auto(path):
    """Dispatch on the header: a panel ('t,...') or a cloud ('x1,...').

    Returns ("panel", CurvePanel) or ("cloud", ndarray).
    """
    rows = _rows(path)
    if not rows or not rows[0]:
        raise DataFormatError(f"{path}: empty file")
    head = rows[0][0]
    if head == "t":
        return "panel", read_panel(path)
    if head == "x1":
        return "cloud", read_cloud(path)
    raise DataFormatError(
        f"{path}: row 1: unrecognized header {head!r}; expected 't' or 'x1'"
    )


# -------------------------------------------------------------- sidecars

def write_shifts(path, shifts) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "shift"])
        for i, s in enumerate(np.asarray(shifts, dtype=float)):
            w.writerow([i, fmt(s)])


def read_shifts(path) -> np.ndarray:
    rows = _rows(path)
    if not rows or rows[0] != ["index", "shift"]:
        raise DataFormatError(f"{path}: row 1: expected header 'index,shift'")
    out = []
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise DataFormatError(f"{path}: row {k}: expected 2 fields, got {len(row)}")
        out.append(_parse_float(row[1], f"{path}: row {k}"))
    return np.array(out)


def write_warp_params(path, warp_params: dict) -> None:
    keys = sorted(warp_params)
    cols = [np.asarray(warp_params[k], dtype=float) for k in keys]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index"] + keys)
        for i in range(len(cols[0])):
            w.writerow([i] + [fmt(col[i]) for col in cols])


# ------------------------------------------------------ matrices & graphs

def write_matrix(path, matrix) -> None:
    dm = np.asarray(matrix, dtype=float)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        for row in dm:
            w.writerow([fmt(v) for v in row])


def read_matrix(path) -> np.ndarray:
    rows = _rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    width = len(rows[0])
    data = []
    for k, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DataFormatError(f"{path}: row {k}: expected {width} fields, got {len(row)}")
        data.append([_parse_float(tok, f"{path}: row {k}") for tok in row])
    return np.array(data)


def write_edges(path, graph) -> None:
    """Edge list: header i,j,weight; 0-based indices with i < j."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j", "weight"])
        for i, j, weight in graph.edges:
            w.writerow([i, j, fmt(weight)])


def read_edges(path, n: Optional[int] = None) -> WeightedGraph:
    rows = _rows(path)
    if not rows or rows[0] != ["i", "j", "weight"]:
        raise DataFormatError(f"{path}: row 1: expected header 'i,j,weight'")
    edges: List[Tuple[int, int, float]] = []
    top = -1
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise DataFormatError(f"{path}: row {k}: expected 3 fields, got {len(row)}")
        try:
            i, j = int(row[0]), int(row[1])
        except ValueError:
            raise DataFormatError(f"{path}: row {k}: bad vertex index") from None
        edges.append((i, j, _parse_float(row[2], f"{path}: row {k}")))
        top = max(top, i, j)
    return WeightedGraph(n if n is not None else top + 1, edges)


# ------------------------------------------------------------- estimates

def write_curve(path, grid, values) -> None:
    """Two-column curve file: t,value."""
    g = np.asarray(grid, dtype=float)
    v = np.asarray(values, dtype=float)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "value"])
        for t, val in zip(g, v, strict=True):
            w.writerow([fmt(t), fmt(val)])


def read_curve(path) -> Tuple[np.ndarray, np.ndarray]:
    rows = _rows(path)
    if not rows or rows[0] != ["t", "value"]:
        raise DataFormatError(f"{path}: row 1: expected header 't,value'")
    grid, values = [], []
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise DataFormatError(f"{path}: row {k}: expected 2 fields, got {len(row)}")
        grid.append(_parse_float(row[0], f"{path}: row {k}"))
        values.append(_parse_float(row[1], f"{path}: row {k}"))
    return np.array(grid), np.array(values)


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: invalid JSON ({exc})") from exc


def read_classifier_config(path) -> ClassifierConfig:
    raw = read_json(path)
    if not isinstance(raw, dict):
        raise DataFormatError(f"{path}: classifier config must be a JSON object")
    from .errors import UsageError

    try:
        return ClassifierConfig.from_dict(raw)
    except (UsageError, TypeError) as exc:
        raise DataFormatError(f"{path}: {exc}") from exc


# ---------------------------------------------------------- classification

def write_templates(path, templates: TemplateSet) -> None:
    """Panel-format file whose row labels are the class labels."""
    panel = CurvePanel(
        grid=templates.grid, values=templates.curves, labels=templates.labels
    )
    write_panel(path, panel)


def write_predictions(path, references, predictions) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "reference", "predicted"])
        for i, (ref, pred) in enumerate(zip(references, predictions, strict=True)):
            w.writerow([i, ref, pred])


def write_confusion(path, cm: ConfusionMatrix) -> None:
    r"""Header: reference\predicted,<labels...>; one row per reference label."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["reference\\predicted"] + list(cm.labels))
        for i, label in enumerate(cm.labels):
            w.writerow([label] + [int(c) for c in cm.counts[i]])

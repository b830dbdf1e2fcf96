"""Text serialisation: JSON with fixed float formatting, CSV and OBJ."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import IO, Any

import numpy as np

from geodiscord.dynamics import Trajectory
from geodiscord.geometry import ContourSet, IsoMesh


def fmt(v: float, digits: int = 17) -> str:
    return format(float(v), f".{digits}g")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits.

    Key order is the insertion order of the dictionaries passed in.
    """
    return _dump(obj, indent, 0)


def _dump(obj, indent: int, depth: int) -> str:
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_dump(v, indent, depth + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _dump(v, indent, depth + 1) for v in seq) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return fmt(obj)
    return json.dumps(obj)


TRAJECTORY_HEADER = "p,c1,c2,c3,D_G,D,C"


def write_trajectory_csv(traj: Trajectory, fh: IO[str]) -> None:
    fh.write(TRAJECTORY_HEADER + "\n")
    for s in traj.samples:
        row = [s.p, *s.c, s.D_G, s.D, s.C]
        fh.write(",".join(fmt(v) for v in row) + "\n")


def write_obj(mesh: IsoMesh, fh: IO[str], comment: str | None = None) -> None:
    """Wavefront OBJ with ``v``/``f`` records; coordinates to 9 significant digits."""
    if comment:
        for line in comment.splitlines():
            fh.write(f"# {line}\n")
    for v in mesh.vertices:
        fh.write(f"v {fmt(v[0], 9)} {fmt(v[1], 9)} {fmt(v[2], 9)}\n")
    for t in mesh.triangles + 1:
        fh.write(f"f {t[0]} {t[1]} {t[2]}\n")


def read_obj(path: str | Path) -> IsoMesh:
    verts, faces = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(x.split("/")[0]) - 1 for x in parts[1:4]])
    return IsoMesh(np.array(verts).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 3))


def write_contour_csv(cs: ContourSet, fh: IO[str]) -> None:
    fh.write("polyline_id,c1,c2\n")
    for k, line in enumerate(cs.polylines):
        for c1, c2 in line:
            fh.write(f"{k},{fmt(c1)},{fmt(c2)}\n")

"""Tab-separated edge and community files (1-based node ids)."""

from __future__ import annotations

from pathlib import Path

import numpy as np


class MalformedFileError(ValueError):
    pass


def write_edges(path, edges: np.ndarray) -> Path:
    """One ``u<TAB>v`` line per edge, u <= v, sorted by (u, v)."""
    e = np.sort(np.asarray(edges, dtype=np.int64), axis=1) + 1
    e = e[np.lexsort((e[:, 1], e[:, 0]))]
    path = Path(path)
    with open(path, "w", newline="\n") as fh:
        fh.writelines(f"{u}\t{v}\n" for u, v in e.tolist())
    return path


def write_communities(path, membership: np.ndarray) -> Path:
    """``node<TAB>community`` for nodes 1..n; community ids are 1-based."""
    path = Path(path)
    with open(path, "w", newline="\n") as fh:
        fh.writelines(f"{i}\t{c}\n" for i, c in enumerate(np.asarray(membership).tolist(), start=1))
    return path


def _read_pairs(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise MalformedFileError(f"{path}:{lineno}: expected two fields, got {len(parts)}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise MalformedFileError(f"{path}:{lineno}: non-integer field") from None
            if a < 1 or b < 1:
                raise MalformedFileError(f"{path}:{lineno}: ids must be >= 1")
            rows.append((a, b))
    return np.array(rows, dtype=np.int64).reshape(-1, 2)


def read_edges(path) -> np.ndarray:
    """Edges as 0-based (u, v) rows with u <= v."""
    return np.sort(_read_pairs(path) - 1, axis=1)


def read_communities(path) -> np.ndarray:
    """0-based community index of each 0-based node."""
    pairs = _read_pairs(path)
    n = len(pairs)
    nodes = pairs[:, 0] - 1
    if n == 0 or not np.array_equal(np.sort(nodes), np.arange(n)):
        raise MalformedFileError(f"{path}: node ids must be exactly 1..n, each once")
    membership = np.empty(n, dtype=np.int64)
    membership[nodes] = pairs[:, 1] - 1
    return membership

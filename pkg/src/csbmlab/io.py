"""File ingestion: edge lists, label CSVs, feature CSVs.

Formats:
  edges     UTF-8 text, one edge per line, two whitespace-separated 0-based
            node indices; lines starting with '#' are ignored.
  labels    CSV with header "node,label", one row per node.
  features  CSV with header "node,f0,f1,...", one row per node.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .csbm import Features, Graph


class GraphFormatError(ValueError):
    """Malformed ingest file; message carries the path and line number."""


def _parse_edges(path: Path) -> tuple[list[tuple[int, int]], int]:
    edges: list[tuple[int, int]] = []
    max_index = -1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(
                    f"{path}:{lineno}: expected two node indices, got {line!r}"
                )
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise GraphFormatError(f"{path}:{lineno}: non-integer node index in {line!r}") from exc
            if u < 0 or v < 0:
                raise GraphFormatError(f"{path}:{lineno}: negative node index in {line!r}")
            edges.append((u, v))
            max_index = max(max_index, u, v)
    return edges, max_index


def _parse_labels(path: Path) -> dict[int, int]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise GraphFormatError(f"{path}:1: empty labels file") from None
        if [c.strip().lower() for c in header[:2]] != ["node", "label"]:
            raise GraphFormatError(f'{path}:1: expected header "node,label", got {",".join(header)!r}')
        labels: dict[int, int] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 2:
                raise GraphFormatError(f"{path}:{lineno}: expected node,label row")
            try:
                node, label = int(row[0]), int(row[1])
            except ValueError as exc:
                raise GraphFormatError(f"{path}:{lineno}: non-integer entry in {row!r}") from exc
            if node in labels:
                raise GraphFormatError(f"{path}:{lineno}: duplicate node {node}")
            labels[node] = label
    return labels


def _parse_features(path: Path) -> dict[int, list[float]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise GraphFormatError(f"{path}:1: empty features file") from None
        if not header or header[0].strip().lower() != "node":
            raise GraphFormatError(f'{path}:1: expected header "node,f0,f1,..."')
        dim = len(header) - 1
        if dim < 1:
            raise GraphFormatError(f"{path}:1: no feature columns in header")
        rows: dict[int, list[float]] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != dim + 1:
                raise GraphFormatError(
                    f"{path}:{lineno}: expected {dim + 1} columns, got {len(row)}"
                )
            try:
                node = int(row[0])
                values = [float(x) for x in row[1:]]
            except ValueError as exc:
                raise GraphFormatError(f"{path}:{lineno}: non-numeric entry in {row!r}") from exc
            if node in rows:
                raise GraphFormatError(f"{path}:{lineno}: duplicate node {node}")
            rows[node] = values
    return rows


def load_graph(
    edge_list_path: str | Path,
    labels_path: str | Path,
    features_path: str | Path | None = None,
) -> tuple[Graph, Features | None]:
    """Load an external graph.

    The adjacency is symmetrized with duplicate edges collapsed and
    self-loops dropped; labels are remapped to contiguous 1..C preserving
    the sorted order of the original values.  Isolated nodes are kept; they
    are discoverable via Graph.isolated_nodes() and rejected by the
    propagation operators.
    """
    edge_list_path = Path(edge_list_path)
    labels_path = Path(labels_path)
    label_map = _parse_labels(labels_path)
    if not label_map:
        raise GraphFormatError(f"{labels_path}: no label rows")
    n_nodes = len(label_map)
    missing = sorted(set(range(n_nodes)) - set(label_map))
    if missing:
        raise GraphFormatError(
            f"{labels_path}: node {missing[0]} has no label row (expected nodes 0..{n_nodes - 1})"
        )

    edges, max_index = _parse_edges(edge_list_path)
    if max_index >= n_nodes:
        raise GraphFormatError(
            f"{edge_list_path}: node index {max_index} out of range for {n_nodes} labeled nodes"
        )

    distinct = sorted(set(label_map.values()))
    remap = {orig: i + 1 for i, orig in enumerate(distinct)}
    labels = np.array([remap[label_map[v]] for v in range(n_nodes)], dtype=np.int64)

    if edges:
        rows = np.array([e[0] for e in edges] + [e[1] for e in edges])
        cols = np.array([e[1] for e in edges] + [e[0] for e in edges])
        data = np.ones(len(rows))
        adj = sp.csr_matrix((data, (rows, cols)), shape=(n_nodes, n_nodes))
        adj.data[:] = 1.0  # collapse duplicates
    else:
        adj = sp.csr_matrix((n_nodes, n_nodes), dtype=np.float64)
    graph = Graph.from_adjacency(adj, labels)

    features: Features | None = None
    if features_path is not None:
        rows_map = _parse_features(Path(features_path))
        missing_f = sorted(set(range(n_nodes)) - set(rows_map))
        if missing_f:
            raise GraphFormatError(
                f"{features_path}: node {missing_f[0]} has no feature row"
            )
        extra = sorted(set(rows_map) - set(range(n_nodes)))
        if extra:
            raise GraphFormatError(f"{features_path}: node index {extra[0]} out of range")
        matrix = np.array([rows_map[v] for v in range(n_nodes)], dtype=np.float64)
        matrix.setflags(write=False)
        features = Features(matrix=matrix, class_means=None)
    return graph, features

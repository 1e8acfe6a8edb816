"""Loader for the bundled MSLE ontology corpus.

The corpus is a manifest plus five files: schema, instances, and
alignment Turtle (merged into one data graph, in that order, so blank
node labels are reproducible), a shapes Turtle file, and the
competency-question suite. The MSLE_DATA_DIR environment variable
points the loader at a replacement directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .lexer import ParseError
from .maturity import CqSuite, load_cq_suite
from .model import Graph
from .shacl import NodeShape, ShapeParseError, parse_shapes
from .turtle import parse_turtle

__all__ = ["BundledData", "DatasetError", "ManifestEntry", "bundled_data_dir", "load_bundled"]

DATA_ENV_VAR = "MSLE_DATA_DIR"

_GRAPH_ROLES = ("schema", "instances", "alignment")


class DatasetError(Exception):
    """A bundled file is missing, malformed, or fails its manifest check."""


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    role: str
    triple_count: int


@dataclass
class BundledData:
    graph: Graph
    shapes: list[NodeShape]
    suite: CqSuite
    manifest: list[ManifestEntry]

    def __iter__(self):
        return iter((self.graph, self.shapes, self.suite))


def bundled_data_dir() -> Path:
    """Directory holding the bundled corpus (MSLE_DATA_DIR overrides)."""
    override = os.environ.get(DATA_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def _read(directory: Path, name: str) -> str:
    path = directory / name
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read bundled file {path}: {exc}") from exc


def load_manifest(directory: Path | None = None) -> list[ManifestEntry]:
    directory = directory or bundled_data_dir()
    try:
        doc = json.loads(_read(directory, "manifest.json"))
        entries = [ManifestEntry(**raw) for raw in doc["files"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError(f"malformed manifest.json: {exc}") from exc
    return entries


def load_graph(paths: list[str | Path]) -> Graph:
    """Parse several Turtle files into one merged graph, in argument order."""
    graph = Graph()
    for path in paths:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DatasetError(f"cannot read {path}: {exc}") from exc
        try:
            parse_turtle(text, graph)
        except ParseError as exc:
            raise DatasetError(f"{path}: {exc}") from exc
    return graph


def load_bundled(directory: Path | None = None) -> BundledData:
    """Load and cross-check the bundled graph, shapes, and CQ suite."""
    directory = directory or bundled_data_dir()
    manifest = load_manifest(directory)
    by_role = {entry.role: entry for entry in manifest}
    for role in _GRAPH_ROLES + ("shapes", "cq_suite"):
        if role not in by_role:
            raise DatasetError(f"manifest.json lists no file with role {role!r}")

    graph = Graph()
    for role in _GRAPH_ROLES:
        entry = by_role[role]
        before = len(graph)
        try:
            parse_turtle(_read(directory, entry.path), graph)
        except ParseError as exc:
            raise DatasetError(f"{entry.path}: {exc}") from exc
        added = len(graph) - before
        if added != entry.triple_count:
            raise DatasetError(
                f"{entry.path}: expected {entry.triple_count} triples, parsed {added}"
            )

    shapes_entry = by_role["shapes"]
    try:
        shapes_graph = parse_turtle(_read(directory, shapes_entry.path))
    except ParseError as exc:
        raise DatasetError(f"{shapes_entry.path}: {exc}") from exc
    if len(shapes_graph) != shapes_entry.triple_count:
        raise DatasetError(
            f"{shapes_entry.path}: expected {shapes_entry.triple_count} triples, "
            f"parsed {len(shapes_graph)}"
        )
    try:
        shapes = parse_shapes(shapes_graph)
    except ShapeParseError as exc:
        raise DatasetError(f"{shapes_entry.path}: {exc}") from exc

    try:
        suite = load_cq_suite(_read(directory, by_role["cq_suite"].path))
    except ValueError as exc:
        raise DatasetError(f"{by_role['cq_suite'].path}: {exc}") from exc

    return BundledData(graph, shapes, suite, manifest)

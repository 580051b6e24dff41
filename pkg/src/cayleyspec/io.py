"""File formats: edge lists, spectrum JSON, atomic writes."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from cayleyspec.spectrum import Spectrum


def atomic_write(path: str | os.PathLike, data: str | bytes) -> None:
    """Write via a temporary file in the same directory and rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    raw = data.encode() if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(raw)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def edgelist(edges: np.ndarray, header: list[str]) -> str:
    """``u v`` per line (0-based, u < v, sorted) after ``#`` header lines."""
    edges = np.asarray(edges).reshape(-1, 2)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    lines = [f"# {h}" for h in header]
    lines += [f"{u} {v}" for u, v in edges.tolist()]
    return "\n".join(lines) + "\n"


def cayley_edgelist(graph) -> str:
    from cayleyspec.genset import format_genset

    return edgelist(graph.edges(), [f"n {graph.n}", f"genset {format_genset(graph.genset)}"])


def arrangement_edgelist(graph) -> str:
    return edgelist(graph.edges(), [f"arrangement {graph.n} {graph.k} {graph.r}"])


def read_edgelist(text: str) -> tuple[list[str], list[tuple[int, int]]]:
    header, edges = [], []
    for line in text.splitlines():
        if line.startswith("#"):
            header.append(line[1:].strip())
        elif line.strip():
            u, v = line.split()
            edges.append((int(u), int(v)))
    return header, edges


def spectrum_json(n: int, genset: str, spectrum: Spectrum, **extra) -> str:
    obj = {"n": n, "genset": genset, "exact": spectrum.exact, "spectrum": spectrum.to_json_obj()}
    obj.update(extra)
    return json.dumps(obj, indent=2) + "\n"


def spectrum_from_json(text: str) -> Spectrum:
    from fractions import Fraction

    obj = json.loads(text)
    pairs = []
    for item in obj["spectrum"]:
        v = item["value"]
        if obj["exact"]:
            v = v if isinstance(v, int) else Fraction(v)
        else:
            v = float(v)
        pairs.append((v, item["multiplicity"]))
    return Spectrum(tuple(pairs), obj["exact"])

"""Reader/writer for the HGR1 text instance format.

Layout::

    HGR1 <n> <k> <edge_count>
    # optional metadata comment lines
    v1 v2 ... vk        (ascending within a line, lines sorted lexicographically)
"""

from __future__ import annotations

import os
from typing import Mapping

from .core import KGraph
from .errors import HgrParseError

MAGIC = "HGR1"


def write_instance(
    g: KGraph,
    path: str | os.PathLike,
    metadata: Mapping[str, object] | None = None,
    comment: str | None = None,
) -> None:
    edges = sorted(g.edges())
    with open(path, "w") as f:
        f.write(f"{MAGIC} {g.n} {g.k} {g.edge_count}\n")
        if comment:
            f.write(f"# {comment}\n")
        if metadata:
            pairs = " ".join(f"{k}={v}" for k, v in metadata.items())
            f.write(f"# {pairs}\n")
        for e in edges:
            f.write(" ".join(map(str, e)) + "\n")


def read_instance(path: str | os.PathLike) -> KGraph:
    with open(path) as f:
        lines = f.read().splitlines()
    if not lines:
        raise HgrParseError("empty file", line=1)
    head = lines[0].split()
    if len(head) != 4 or head[0] != MAGIC:
        raise HgrParseError(f"bad header, expected '{MAGIC} n k edge_count'", line=1)
    try:
        n, k, count = int(head[1]), int(head[2]), int(head[3])
    except ValueError:
        raise HgrParseError("header fields must be integers", line=1) from None

    edges: list[tuple[int, ...]] = []
    prev: tuple[int, ...] | None = None
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            e = tuple(int(t) for t in raw.split())
        except ValueError:
            raise HgrParseError(f"non-integer token in edge line {raw!r}", line=lineno) from None
        if len(e) != k:
            raise HgrParseError(f"edge has {len(e)} vertices, expected {k}", line=lineno)
        if any(e[i] >= e[i + 1] for i in range(k - 1)):
            raise HgrParseError("edge vertices must be strictly ascending", line=lineno)
        if e[0] < 0 or e[-1] >= n:
            raise HgrParseError(f"vertex outside 0..{n - 1}", line=lineno)
        if prev is not None and e <= prev:
            raise HgrParseError("edge lines must be sorted lexicographically", line=lineno)
        prev = e
        edges.append(e)
    if len(edges) != count:
        raise HgrParseError(
            f"header promises {count} edges, file has {len(edges)}", line=len(lines)
        )
    return KGraph.from_edges(n, k, edges)


def read_metadata(path: str | os.PathLike) -> dict[str, str]:
    """key=value pairs from the first metadata comment line, if any."""
    with open(path) as f:
        for line in f:
            s = line.strip()
            if s.startswith("#"):
                out = {}
                for tok in s[1:].split():
                    if "=" in tok:
                        key, val = tok.split("=", 1)
                        out[key] = val
                return out
            if not s.startswith(MAGIC):
                break
    return {}

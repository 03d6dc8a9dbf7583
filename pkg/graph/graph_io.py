import io
import logging
from pathlib import Path
from typing import TextIO, Union

from common.errors import GraphParseError, SteinerSentryError, SteinerSetError
from graph.weighted_graph import MAX_CAPACITY, WeightedGraph

logger = logging.getLogger(__name__)


def parse_graph(source: Union[str, bytes, TextIO]) -> WeightedGraph:
    """
    Reads the line-oriented graph format:

        # comment
        p <n> <m>
        s <vertex-id>
        e <u> <v> <w>

    Parallel edges are merged by summing capacities. Every violation is a
    GraphParseError carrying the offending line number and a reason code.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    stream = io.StringIO(source) if isinstance(source, str) else source

    n = None
    declared_m = 0
    edge_lines = 0
    steiner: list[int] = []
    seen_steiner: set[int] = set()
    edges: list[tuple[int, int, int]] = []

    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]

        if tag == "p":
            if n is not None:
                raise GraphParseError("duplicate header", lineno, code="malformed")
            if len(parts) != 3:
                raise GraphParseError(f"header must be 'p <n> <m>', got {line!r}", lineno)
            n = _parse_int(parts[1], lineno)
            declared_m = _parse_int(parts[2], lineno)
            if n < 1 or declared_m < 0:
                raise GraphParseError(f"invalid header values n={n}, m={declared_m}", lineno)
            continue

        if n is None:
            raise GraphParseError("'p <n> <m>' header must come first", lineno, code="missing_header")

        if tag == "s":
            if len(parts) != 2:
                raise GraphParseError(f"Steiner line must be 's <vertex>', got {line!r}", lineno)
            v = _parse_vertex(parts[1], n, lineno)
            if v in seen_steiner:
                raise GraphParseError(f"vertex {v} declared Steiner twice", lineno, code="duplicate_steiner")
            seen_steiner.add(v)
            steiner.append(v)

        elif tag == "e":
            if len(parts) != 4:
                raise GraphParseError(f"edge line must be 'e <u> <v> <w>', got {line!r}", lineno)
            u = _parse_vertex(parts[1], n, lineno)
            v = _parse_vertex(parts[2], n, lineno)
            w = _parse_int(parts[3], lineno)
            if w < 0:
                raise GraphParseError(f"negative capacity {w}", lineno, code="negative_capacity")
            if w > MAX_CAPACITY:
                raise GraphParseError(f"capacity {w} exceeds {MAX_CAPACITY}", lineno, code="capacity_overflow")
            if u == v:
                raise GraphParseError(f"self-loop on vertex {u}", lineno, code="self_loop")
            edges.append((u, v, w))
            edge_lines += 1

        else:
            raise GraphParseError(f"unknown line tag {tag!r}", lineno)

    if n is None:
        raise GraphParseError("missing 'p <n> <m>' header", 0, code="missing_header")
    if len(steiner) < 2:
        raise GraphParseError(f"Steiner set must contain at least two vertices, got {len(steiner)}",
                              0, code="too_few_steiner")
    if edge_lines != declared_m:
        logger.warning(f"⚠️ Header declares m={declared_m} but {edge_lines} edge lines were read")

    try:
        graph = WeightedGraph(n, edges, steiner)
    except SteinerSetError as e:
        raise GraphParseError(str(e), 0, code="too_few_steiner") from e
    except SteinerSentryError as e:
        raise GraphParseError(str(e), 0, code=e.code) from e

    logger.debug(f"Parsed {graph}")
    return graph


def load_graph(path: Union[str, Path]) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f)


def write_graph(g: WeightedGraph, comment: str = "") -> str:
    """Serializes g in the same format parse_graph reads (canonical edge order)."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"s {s}" for s in g.sorted_steiner)
    lines.extend(f"e {u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def save_graph(g: WeightedGraph, path: Union[str, Path], comment: str = ""):
    Path(path).write_text(write_graph(g, comment), encoding="utf-8")


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"expected an integer, got {token!r}", lineno, code="non_integer") from None


def _parse_vertex(token: str, n: int, lineno: int) -> int:
    v = _parse_int(token, lineno)
    if v < 0 or v >= n:
        raise GraphParseError(f"vertex {v} outside 0..{n - 1}", lineno, code="vertex_out_of_range")
    return v

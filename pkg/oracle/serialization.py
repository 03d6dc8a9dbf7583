"""
Versioned text container for a built FullOracle.

Layout: a magic line `STEINER-SENTRY-ORACLE 1` followed by one JSON document with
sorted keys, so two builds of the same graph produce identical bytes.
"""
import json
import logging
from pathlib import Path
from typing import Union

from common.errors import OracleFormatError
from graph.graph_io import parse_graph, write_graph
from graph.weighted_graph import Cut
from oracle.cap_oracle import CapTree
from oracle.cut_oracle import FullOracle, Type3Forest
from oracle.gomory_hu import GomoryHuTree
from oracle.laminar import LaminarTree

logger = logging.getLogger(__name__)

MAGIC = "STEINER-SENTRY-ORACLE"
VERSION = 1


def save_oracle(o: FullOracle) -> str:
    body = {
        "graph": write_graph(o.graph),
        "lambda_s": o.lambda_s,
        "baseline_mincut": sorted(o.baseline_mincut.side),
        "cap_tree": o.cap_tree.to_dict(),
        "type1": o.type1.to_dict() if o.type1 is not None else None,
        "gh": {"root": o.gh.root, "parent": o.gh.parent, "edge_cap": o.gh.edge_cap},
        "type3": {str(u): tree.to_dict() for u, tree in sorted(o.type3.trees.items())},
    }
    return f"{MAGIC} {VERSION}\n" + json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n"


def load_oracle(text: str) -> FullOracle:
    header, _, payload = text.partition("\n")
    parts = header.split()
    if len(parts) != 2 or parts[0] != MAGIC:
        raise OracleFormatError(f"not an oracle file (header {header[:40]!r})")
    if parts[1] != str(VERSION):
        raise OracleFormatError(f"oracle format version {parts[1]} is not supported (expected {VERSION})")

    try:
        body = json.loads(payload)
        g = parse_graph(body["graph"])
        lam = int(body["lambda_s"])
        baseline = Cut(frozenset(body["baseline_mincut"]), lam)
        cap_tree = CapTree.from_dict(g, lam, body["cap_tree"])
        type1 = CapTree.from_dict(g, lam, body["type1"]) if body["type1"] is not None else None
        gh_data = body["gh"]
        gh = GomoryHuTree(g, list(gh_data["parent"]), list(gh_data["edge_cap"]), root=gh_data["root"])
        type3 = Type3Forest({int(u): LaminarTree.from_dict(g.vertices, data)
                             for u, data in body["type3"].items()})
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise OracleFormatError(f"corrupt oracle body: {e}") from e

    logger.debug(f"Loaded oracle for {g}")
    return FullOracle(g, lam, baseline, cap_tree, type1, gh, type3)


def write_oracle_file(o: FullOracle, path: Union[str, Path]):
    Path(path).write_text(save_oracle(o), encoding="utf-8")


def read_oracle_file(path: Union[str, Path]) -> FullOracle:
    return load_oracle(Path(path).read_text(encoding="utf-8"))

from typing import Iterable


def edge_key(u: int, v: int) -> tuple[int, int]:
    """
    Canonical identity of an undirected edge: the unordered vertex pair,
    stored as (min endpoint, max endpoint).
    """
    return (u, v) if u <= v else (v, u)


def oriented_side(side: Iterable[int], n: int, anchor: int) -> list[int]:
    """
    Returns the sorted side of the bipartition that contains `anchor`.
    Flips to the complement when `side` does not contain it.
    """
    members = set(side)
    if anchor not in members:
        members = set(range(n)) - members
    return sorted(members)


def format_cut(side: Iterable[int], capacity: int, n: int, anchor: int = 0) -> str:
    """
    Canonical cut text used by the CLI and by golden tests.

    Format: sorted vertex ids of the side containing the anchor, space-separated,
    followed by `cap=<value>`, e.g. '0 1 cap=3'.
    """
    ids = oriented_side(side, n, anchor)
    return " ".join(str(v) for v in ids) + f" cap={capacity}"

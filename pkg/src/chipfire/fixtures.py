"""Named example graphs shipped with the package as ``.graph`` files."""

from __future__ import annotations

from importlib import resources

from .graph import MultiDigraph, parse_graph

__all__ = ["FIXTURES", "fixture_path", "fixture_text", "load_fixture", "directed_cycle"]

FIXTURES = ("G1", "G2", "G3", "C3", "C4", "C5", "C6", "K2", "K3", "cycle4_undirected")


def fixture_path(name: str):
    return resources.files(__package__).joinpath("data", f"{name}.graph")


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return fixture_path(name).read_text()


def load_fixture(name: str) -> MultiDigraph:
    return parse_graph(fixture_text(name))


def directed_cycle(n: int) -> MultiDigraph:
    from .graph import build_digraph

    return build_digraph(n, [(i, (i + 1) % n) for i in range(n)])

import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from museplan import load_bundled
from museplan.corpus import parse_museum
from museplan.textenergy import rank_artworks


@pytest.fixture(scope="session")
def orangerie():
    return load_bundled("orangerie")


@pytest.fixture(scope="session")
def orangerie_energy(orangerie):
    museum, _ = orangerie
    return rank_artworks(museum)


def build_museum(vertices, arcs, artworks, name="test"):
    """Terse dataset builder: vertices as (id, kind, room_time) tuples,
    arcs as (from, to, time), artworks as (id, artist, room[, time])."""
    return parse_museum({
        "meta": {"name": name},
        "vertices": [{"id": v, "kind": k, "room_time": rt} for v, k, rt in vertices],
        "arcs": [{"from": a, "to": b, "arc_time": t} for a, b, t in arcs],
        "artworks": [
            {"id": p[0], "title": p[0], "artist": p[1], "year": 2000,
             "description": f"une toile de {p[1]} nommée {p[0]}", "room": p[2],
             **({"artwork_time": p[3]} if len(p) > 3 else {})}
            for p in artworks],
    })


@pytest.fixture
def corridor():
    """E -> v1 -> v2 -> X with two artworks."""
    return build_museum(
        [("E", "entrance", 0), ("X", "exit", 0), ("v1", "room", 1), ("v2", "room", 1)],
        [("E", "v1", 0.5), ("v1", "v2", 0.5), ("v2", "X", 0.5)],
        [("a1", "alice", "v1", 2.0), ("a2", "bob", "v2", 2.0)],
    )


@pytest.fixture
def diamond():
    """Two parallel branches between entrance and exit."""
    return build_museum(
        [("E", "entrance", 0), ("X", "exit", 0),
         ("top", "room", 1), ("bottom", "room", 1)],
        [("E", "top", 0.5), ("E", "bottom", 0.5), ("top", "X", 0.5), ("bottom", "X", 0.5)],
        [("t1", "alice", "top", 10.0), ("b1", "bob", "bottom", 10.0)],
    )

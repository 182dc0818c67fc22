"""Built-in demo inputs and random instance generators."""

from __future__ import annotations

import random

from .digraph import Digraph, Presentation

# U_{2,4}: two source vertices fan onto a two-element target basis
U24_DOC = {
    "vertices": ["a", "b", "c", "d"],
    "arcs": [["c", "a"], ["c", "b"], ["d", "a"], ["d", "b"]],
    "ground": ["a", "b", "c", "d"],
    "targets": ["a", "b"],
}

# rank-3 gammoid on six elements whose ground set splits into the two
# bases {a,b,c} and {d,e,f}; not uniform ({a,b,d} is a circuit)
RANK3_DOC = {
    "vertices": ["a", "b", "c", "d", "e", "f"],
    "arcs": [
        ["d", "a"],
        ["d", "b"],
        ["e", "b"],
        ["e", "c"],
        ["f", "a"],
        ["f", "c"],
    ],
    "ground": ["a", "b", "c", "d", "e", "f"],
    "targets": ["a", "b", "c"],
}

PIPELINE_DEMOS = {
    "u24": U24_DOC,
    "rank3-gammoid": RANK3_DOC,
}

DEMO_NAMES = ("u24", "rank3-gammoid", "strict-gammoid-duality")


def random_digraph(rng: random.Random, max_vertices: int = 8) -> Digraph:
    n = rng.randint(1, max_vertices)
    vertices = [chr(ord("a") + i) for i in range(n)]
    density = rng.uniform(0.1, 0.5)
    arcs = [
        (u, v)
        for u in vertices
        for v in vertices
        if u != v and rng.random() < density
    ]
    return Digraph(vertices, arcs)


def random_presentation(
    rng: random.Random, max_vertices: int = 8, strict: bool = False
) -> Presentation:
    graph = random_digraph(rng, max_vertices)
    vertices = graph.vertices
    if strict:
        ground = vertices
    else:
        ground = tuple(v for v in vertices if rng.random() < 0.7) or vertices[:1]
    targets = tuple(v for v in vertices if rng.random() < 0.4)
    return Presentation(graph, ground, targets)


def random_vertex_subset(
    rng: random.Random, graph: Digraph, p: float = 0.5
) -> tuple[str, ...]:
    return tuple(v for v in graph.vertices if rng.random() < p)

"""Multigraph view of the isotropy structure on the fixed points.

Vertices are the fixed points, tagged with their negative-weight count.
For every k from 2 up to the largest |weight|, each Z_k component that
joins two or three points contributes edges between the points it
joins, labelled k.  The same pair can be linked for several k; the
emitted graph keeps one edge per pair, labelled with the largest such k
(a Z_6 sphere is also a Z_2 and a Z_3 sphere; the tightest group is the
informative one).

The DOT output is plain `graph { ... }` text with a `lambda` attribute
per vertex and a `k` attribute per edge, sorted so equal systems give
byte-equal files.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .constraints import PASS, pairing_check
from .core import FixedPointSystem, lambda_count
from .isotropy import classify_isotropy

__all__ = ["GraphDocument", "PairingRequired", "build_graph", "emit_dot"]


class PairingRequired(ValueError):
    """The graph is only defined for systems whose pairing check passes."""


@dataclass(frozen=True)
class GraphDocument:
    vertices: tuple  # (label, lambda) sorted by (lambda, label)
    edges: tuple  # (label_a, label_b, k), labels sorted within an edge

    def as_dict(self) -> dict:
        return {
            "vertices": [
                {"label": label, "lambda": lam} for label, lam in self.vertices
            ],
            "edges": [
                {"ends": [a, b], "k": k} for a, b, k in self.edges
            ],
        }


def build_graph(system: FixedPointSystem) -> GraphDocument:
    if len(system.points) > 3:
        raise ValueError("the isotropy graph needs at most 3 fixed points")
    if pairing_check(system).verdict != PASS:
        raise PairingRequired("pairing fails; the system has no isotropy graph")

    vertices = tuple(
        sorted(
            ((p.label, lambda_count(p.weights)) for p in system.points),
            key=lambda v: (v[1], v[0]),
        )
    )

    best = {}
    top = max((abs(w) for w in system.all_weights()), default=1)
    for k in range(2, top + 1):
        decomposition = classify_isotropy(system, k)
        if not decomposition:
            continue
        for component in decomposition.components:
            if len(component.labels) < 2:
                continue
            for a, b in combinations(sorted(component.labels), 2):
                if k > best.get((a, b), 0):
                    best[(a, b)] = k

    edges = tuple(
        (a, b, best[(a, b)]) for a, b in sorted(best)
    )
    return GraphDocument(vertices=vertices, edges=edges)


def emit_dot(document: GraphDocument) -> str:
    lines = ["graph {"]
    for label, lam in document.vertices:
        lines.append('  "%s" [lambda=%d];' % (label, lam))
    for a, b, k in document.edges:
        lines.append('  "%s" -- "%s" [k=%d];' % (a, b, k))
    lines.append("}")
    return "\n".join(lines) + "\n"

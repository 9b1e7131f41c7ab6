"""Graphviz output: Hasse diagrams for lattices, edge views for frames."""
from __future__ import annotations

from .frames import BiorthoLattice, MonadicOrthoFrame, OrthoFrame
from .lattice import FiniteOrtholattice, bits


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(structure, graph_name: str = "g") -> str:
    """Deterministic DOT text for a lattice or frame.

    Lattices render as Hasse diagrams (covering edges only, ranked
    bottom-up); frames render their orthogonality edges undirected
    (dashed) and, for monadic frames, the accessibility edges as
    arrows.  Nodes appear in declaration order.
    """
    if isinstance(structure, BiorthoLattice):
        structure = structure.lattice
    lines = [f"digraph {graph_name} {{"]
    if isinstance(structure, FiniteOrtholattice):
        lines.append("  rankdir=BT;")
        lines.append("  node [shape=plaintext];")
        for name in structure.names:
            lines.append(f"  {_quote(name)};")
        for a, b in structure.covers():
            lines.append(f"  {_quote(structure.names[a])} -> {_quote(structure.names[b])};")
    elif isinstance(structure, (OrthoFrame, MonadicOrthoFrame)):
        frame = structure.frame if isinstance(structure, MonadicOrthoFrame) else structure
        lines.append("  node [shape=circle];")
        for label in frame.labels:
            lines.append(f"  {_quote(label)};")
        for a in range(frame.m):
            for b in bits(frame.perp[a]):
                if a <= b:
                    lines.append(
                        f"  {_quote(frame.labels[a])} -> {_quote(frame.labels[b])}"
                        " [dir=none, style=dashed];"
                    )
        if isinstance(structure, MonadicOrthoFrame):
            for a in range(structure.m):
                for b in bits(structure.rel[a]):
                    lines.append(f"  {_quote(frame.labels[a])} -> {_quote(frame.labels[b])};")
    else:
        raise TypeError(f"cannot render a {type(structure).__name__} as DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"

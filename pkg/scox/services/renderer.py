"""
Diagram Rendering Service

Renders complexes and rex graphs as Graphviz DOT from jinja2 templates.
Output is byte-stable: callers pass vertices and edges in canonical order.
"""

from jinja2 import Environment, FileSystemLoader, select_autoescape
import os
import logging
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from scox.services.complexes import ComplexGraph
    from scox.services.rewrite import RexGraph

logger = logging.getLogger(__name__)

# one colour per generator index, cycled for larger ranks
GENERATOR_COLORS = (
    "red", "blue", "darkgreen", "orange", "purple",
    "brown", "magenta", "cyan", "gold", "gray",
)


def generator_color(index: int) -> str:
    return GENERATOR_COLORS[index % len(GENERATOR_COLORS)]


class DiagramRenderer:
    """Render scox diagrams"""

    def __init__(self):
        template_dir = os.path.join(os.path.dirname(__file__), '..', 'templates')
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=select_autoescape(['html', 'xml']),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def render_complex(self, complex_graph: "ComplexGraph") -> str:
        """
        Render a singular Coxeter complex.

        Vertices are labelled `I:minword`, edges coloured by generator and
        vertices of equal length share a rank.
        """
        system = complex_graph.system
        vertices = [complex_graph.vertex_label(p) for p in complex_graph.vertices]
        ranks = {}
        for p, label in zip(complex_graph.vertices, vertices):
            ranks.setdefault(p.length, []).append(label)
        edges = [
            {
                "source": complex_graph.vertex_label(e.source),
                "target": complex_graph.vertex_label(e.target),
                "label": ("+" if e.sign > 0 else "-") + system.labels[e.generator],
                "color": generator_color(e.generator),
            }
            for e in complex_graph.edges
        ]
        template = self.env.get_template('complex.dot.j2')
        return template.render(
            name=f"Cox_{complex_graph.left_label}({system.name})",
            ranks=[ranks[k] for k in sorted(ranks)],
            vertices=vertices,
            edges=edges,
        )

    def render_rex_graph(self, rex_graph: "RexGraph") -> str:
        """Render the reduced expressions of a coset joined by braid relations."""
        edges = [
            {
                "source": u,
                "target": v,
                "label": ",".join(sorted(data["kinds"])) + (f" x{data['multiplicity']}" if data["multiplicity"] > 1 else ""),
            }
            for u, v, data in sorted(rex_graph.graph.edges(data=True))
        ]
        template = self.env.get_template('rex_graph.dot.j2')
        return template.render(
            name=repr(rex_graph.coset),
            vertices=[str(e) for e in rex_graph.vertices],
            edges=edges,
        )


# Singleton instance
diagram_renderer = DiagramRenderer()

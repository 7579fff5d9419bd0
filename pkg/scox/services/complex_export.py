"""
Complex Export

DOT (through the diagram renderer) or JSON (through ComplexDocument);
both follow the canonical vertex order, so output is byte-stable.
"""

import logging

from scox.exceptions import UsageError
from scox.schemas.complexes import ComplexDocument, ComplexEdgeModel, ComplexVertex, TwoCellModel
from scox.services.complexes import ComplexGraph
from scox.services.renderer import diagram_renderer
from scox.utils import notation

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("dot", "json")


def complex_document(g: ComplexGraph) -> ComplexDocument:
    system = g.system
    labels = system.labels
    return ComplexDocument(
        system=system.name,
        generators=list(labels),
        left=notation.subset_labels(system, g.left),
        vertices=[
            ComplexVertex(
                id=g.vertex_label(p),
                right=notation.subset_labels(system, p.right),
                min=p.min.labels(),
                max=p.max.labels(),
                length=p.length,
            )
            for p in g.vertices
        ],
        edges=[
            ComplexEdgeModel(
                source=g.vertex_label(e.source),
                target=g.vertex_label(e.target),
                step="+" if e.sign > 0 else "-",
                generator=labels[e.generator],
            )
            for e in g.edges
        ],
        two_cells=[
            TwoCellModel(
                kind=c.kind.value,
                first=[g.vertex_label(v) for v in c.first],
                second=[g.vertex_label(v) for v in c.second],
            )
            for c in g.two_cells
        ],
    )


def export(g: ComplexGraph, fmt: str) -> str:
    """
    Raises:
        UsageError: for a format other than dot or json
    """
    if fmt == "dot":
        return diagram_renderer.render_complex(g)
    if fmt == "json":
        return complex_document(g).model_dump_json(indent=2) + "\n"
    raise UsageError(f"unknown complex format {fmt!r}", details={"formats": list(EXPORT_FORMATS)})

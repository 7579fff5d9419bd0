"""
Coxeter matrices, named finite types and finite-type classification.

Matrices are square tables with 1 on the diagonal and entries m(s,t) >= 2
off the diagonal; math.inf stands for an infinite label. A connected
diagram component (edges where m >= 3) is matched against the finite-type
list by shape and edge labels.
"""
import logging
import math
import re
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from scox.exceptions import ValidationError

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[float, ...], ...]

INFINITE_TYPE = "infinite-type"

_NAMED_PATTERN = re.compile(r"^(A|B|C|D|E|F|G|H)(\d+)$")
_DIHEDRAL_PATTERN = re.compile(r"^I2\((\d+|inf|∞)\)$")
_PRODUCT_SEPARATOR = re.compile(r"\s*[×x*]\s*")


# ============================================================================
# MATRIX VALIDATION
# ============================================================================

def parse_label(value) -> float:
    """Read one matrix entry; "inf", "∞" and None mean an infinite label."""
    if value is None or (isinstance(value, str) and value.strip().lower() in ("inf", "∞", "infinity")):
        return math.inf
    if isinstance(value, float) and math.isinf(value):
        return math.inf
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"invalid Coxeter matrix entry {value!r}", field="matrix")
    if isinstance(value, float) and value != number:
        raise ValidationError(f"invalid Coxeter matrix entry {value!r}", field="matrix")
    return number


def validate_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Normalize and validate a Coxeter matrix."""
    matrix = tuple(tuple(parse_label(v) for v in row) for row in rows)
    n = len(matrix)
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValidationError(f"matrix row {i} has length {len(row)}, expected {n}", field="matrix")
    for i in range(n):
        if matrix[i][i] != 1:
            raise ValidationError(f"m(s,s) must be 1 on the diagonal (row {i})", field="matrix")
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                raise ValidationError(f"matrix is not symmetric at ({i},{j})", field="matrix")
            if matrix[i][j] < 2:
                raise ValidationError(f"m(s,t) must be at least 2 at ({i},{j})", field="matrix")
    return matrix


# ============================================================================
# NAMED TYPES
# ============================================================================

def _chain(n: int, labels: Dict[Tuple[int, int], float]) -> Matrix:
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), m in labels.items():
        rows[i][j] = rows[j][i] = m
    return tuple(tuple(r) for r in rows)


def _irreducible_matrix(name: str) -> Tuple[Matrix, str]:
    """Matrix and canonical name of one irreducible named type, generators s1..sn."""
    dihedral = _DIHEDRAL_PATTERN.match(name)
    if dihedral:
        m = parse_label(dihedral.group(1))
        if m < 2:
            raise ValidationError(f"I2(m) needs m >= 2, got {name}", field="type")
        label = "∞" if math.isinf(m) else str(m)
        return _chain(2, {(0, 1): m}), f"I2({label})"

    match = _NAMED_PATTERN.match(name)
    if not match:
        raise ValidationError(f"unknown Coxeter type {name!r}", field="type")
    family, n = match.group(1), int(match.group(2))

    if family == "A" and n >= 1:
        return _chain(n, {(i, i + 1): 3 for i in range(n - 1)}), f"A{n}"
    if family in ("B", "C") and n >= 2:
        edges = {(i, i + 1): 3 for i in range(n - 1)}
        edges[(0, 1)] = 4
        return _chain(n, edges), f"{family}{n}"
    if family == "D" and n >= 3:
        edges = {(i, i + 1): 3 for i in range(n - 3)}
        edges[(n - 3, n - 2)] = 3
        edges[(n - 3, n - 1)] = 3
        return _chain(n, edges), f"D{n}"
    if family == "E" and n in (6, 7, 8):
        edges = {(0, 2): 3, (1, 3): 3}
        edges.update({(i, i + 1): 3 for i in range(2, n - 1)})
        return _chain(n, edges), f"E{n}"
    if family == "F" and n == 4:
        return _chain(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3}), "F4"
    if family == "G" and n == 2:
        return _chain(2, {(0, 1): 6}), "G2"
    if family == "H" and n in (3, 4):
        edges = {(i, i + 1): 3 for i in range(n - 2)}
        edges[(n - 2, n - 1)] = 5
        return _chain(n, edges), f"H{n}"
    raise ValidationError(f"unknown Coxeter type {name!r}", field="type")


def named_matrix(name: str) -> Tuple[Matrix, Tuple[str, ...], str]:
    """
    Matrix for a named type or a product of named types.

    Products use "×", "x" or "*"; factors are numbered consecutively,
    left factor first, and all generators are labelled s1..sn.

    Returns:
        (matrix, labels, canonical name)
    """
    text = name.strip()
    if not text:
        raise ValidationError("empty Coxeter type name", field="type")
    factors = [f for f in _PRODUCT_SEPARATOR.split(text) if f]
    blocks = [_irreducible_matrix(f) for f in factors]
    matrix = block_diagonal([b[0] for b in blocks])
    labels = tuple(f"s{i + 1}" for i in range(len(matrix)))
    return matrix, labels, "×".join(b[1] for b in blocks)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    """Coxeter matrix of a product: commuting blocks, left block first."""
    n = sum(len(b) for b in blocks)
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, m in enumerate(row):
                rows[offset + i][offset + j] = m
        offset += len(block)
    return tuple(tuple(r) for r in rows)


# ============================================================================
# CLASSIFICATION
# ============================================================================

def diagram(matrix: Matrix, nodes: Optional[Sequence[int]] = None) -> nx.Graph:
    """Coxeter diagram on `nodes` (all generators by default), edges where m >= 3."""
    nodes = range(len(matrix)) if nodes is None else nodes
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for i in graph.nodes:
        for j in graph.nodes:
            if i < j and matrix[i][j] >= 3:
                graph.add_edge(i, j, m=matrix[i][j])
    return graph


def components(matrix: Matrix, nodes: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """Connected components of the diagram, each sorted, ordered by smallest generator."""
    graph = diagram(matrix, nodes)
    comps = [tuple(sorted(c)) for c in nx.connected_components(graph)]
    return sorted(comps)


def _path_order(graph: nx.Graph) -> List[int]:
    ends = sorted(n for n in graph.nodes if graph.degree(n) == 1)
    return nx.shortest_path(graph, ends[0], ends[1])


def classify_component(matrix: Matrix, nodes: Sequence[int]) -> str:
    """Finite type name of one connected component, or INFINITE_TYPE."""
    graph = diagram(matrix, nodes)
    n = graph.number_of_nodes()
    if n == 1:
        return "A1"
    if n == 2:
        m = matrix[nodes[0]][nodes[1]]
        if math.isinf(m):
            return INFINITE_TYPE
        return {3: "A2", 4: "B2"}.get(m, f"I2({m})")

    if not nx.is_tree(graph):
        return INFINITE_TYPE
    labels = [d["m"] for _, _, d in graph.edges(data=True)]
    if any(m > 5 for m in labels):
        return INFINITE_TYPE
    special = [(u, v, d["m"]) for u, v, d in graph.edges(data=True) if d["m"] != 3]
    degrees = sorted((graph.degree(v) for v in graph.nodes), reverse=True)
    if degrees[0] > 3:
        return INFINITE_TYPE
    branch_nodes = [v for v in graph.nodes if graph.degree(v) == 3]

    if not special:
        if not branch_nodes:
            return f"A{n}"
        if len(branch_nodes) > 1:
            return INFINITE_TYPE
        center = branch_nodes[0]
        trimmed = graph.copy()
        trimmed.remove_node(center)
        arms = tuple(sorted(len(c) for c in nx.connected_components(trimmed)))
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(arms, INFINITE_TYPE)

    if len(special) > 1 or branch_nodes:
        return INFINITE_TYPE
    u, v, m = special[0]
    order = _path_order(graph)
    position = min(order.index(u), order.index(v))
    at_end = position in (0, n - 2)
    if m == 4:
        if at_end:
            return f"B{n}"
        return "F4" if n == 4 else INFINITE_TYPE
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return INFINITE_TYPE


def classify(matrix: Matrix, nodes: Optional[Sequence[int]] = None) -> List[Tuple[Tuple[int, ...], str]]:
    """Pairs (component, type name) for the diagram restricted to `nodes`."""
    return [(comp, classify_component(matrix, comp)) for comp in components(matrix, nodes)]


def positive_root_count(type_name: str) -> Optional[int]:
    """Number of positive roots of a finite irreducible type (None if infinite)."""
    if type_name == INFINITE_TYPE:
        return None
    dihedral = _DIHEDRAL_PATTERN.match(type_name)
    if dihedral:
        return int(dihedral.group(1))
    family, n = type_name[0], int(type_name[1:])
    if family == "A":
        return n * (n + 1) // 2
    if family in ("B", "C"):
        return n * n
    if family == "D":
        return n * (n - 1)
    return {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "H3": 15, "H4": 60}[type_name]

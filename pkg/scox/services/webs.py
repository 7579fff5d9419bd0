"""
Type A Webs

A web is a bottom object (n₁, …, n_k) and a list of layers, each one merge
or split of adjacent strands. Over S_N, N = Σnᵢ, an object is the parabolic
subset of adjacent transpositions that do not cross a block boundary: a
merge is the up-step adding the boundary generator, a split the down-step
removing it. Webs are compared by evaluating that expression.

Block positions are 0-based in the model and 1-based in the text notation
`(1,2,1) ; merge@1(1,2) ; split@1(2,1)`.
"""

import functools
import logging
import re
from dataclasses import dataclass
from itertools import accumulate
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from scox.bounds import DEFAULT_BOUNDS, SearchBounds, check_bound
from scox.core.system import CoxeterSystem, GenSubset, named_system
from scox.exceptions import NoMatchError, UsageError, ValidationError
from scox.monitoring.metrics import time_operation, track_enumeration
from scox.services.cosets import DoubleCoset, all_cosets
from scox.services.expressions import DOWN, UP, Expression, evaluate

logger = logging.getLogger(__name__)

ObjectSeq = Tuple[int, ...]

MERGE = "merge"
SPLIT = "split"

_LAYER = re.compile(r"^(merge|split)\s*@\s*(\d+)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_OBJECT = re.compile(r"^\(\s*([\d\s,]*)\)$")


@dataclass(frozen=True)
class WebVertex:
    """One trivalent vertex: merge of blocks at, at+1 labelled (a, b), or split of block at into (a, b)."""
    kind: str
    at: int
    a: int
    b: int

    @property
    def degree(self) -> int:
        return self.a * self.b

    def shifted(self, offset: int) -> "WebVertex":
        return WebVertex(self.kind, self.at + offset, self.a, self.b)

    def __str__(self) -> str:
        return f"{self.kind}@{self.at + 1}({self.a},{self.b})"


def _check_object(obj: Sequence[int]) -> ObjectSeq:
    obj = tuple(int(n) for n in obj)
    if any(n < 1 for n in obj):
        raise ValidationError("object entries must be positive integers", field="object")
    return obj


def _apply_vertex(obj: ObjectSeq, vertex: WebVertex, index: int = 0) -> ObjectSeq:
    if vertex.a < 1 or vertex.b < 1:
        raise ValidationError(f"layer {index}: labels must be positive", field="web")
    at = vertex.at
    if vertex.kind == MERGE:
        if not 0 <= at < len(obj) - 1 or obj[at] != vertex.a or obj[at + 1] != vertex.b:
            raise ValidationError(f"layer {index}: {vertex} does not fit {obj}", field="web")
        return obj[:at] + (vertex.a + vertex.b,) + obj[at + 2:]
    if vertex.kind == SPLIT:
        if not 0 <= at < len(obj) or obj[at] != vertex.a + vertex.b:
            raise ValidationError(f"layer {index}: {vertex} does not fit {obj}", field="web")
        return obj[:at] + (vertex.a, vertex.b) + obj[at + 1:]
    raise ValidationError(f"layer {index}: unknown vertex kind {vertex.kind!r}", field="web")


@dataclass(frozen=True)
class Web:
    bottom: ObjectSeq
    layers: Tuple[WebVertex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bottom", _check_object(self.bottom))
        object.__setattr__(self, "layers", tuple(self.layers))
        current = self.bottom
        for index, vertex in enumerate(self.layers):
            current = _apply_vertex(current, vertex, index)

    @property
    def slices(self) -> Tuple[ObjectSeq, ...]:
        result = [self.bottom]
        for vertex in self.layers:
            result.append(_apply_vertex(result[-1], vertex))
        return tuple(result)

    @property
    def top(self) -> ObjectSeq:
        return self.slices[-1]

    @property
    def total(self) -> int:
        return sum(self.bottom)

    @property
    def degree(self) -> int:
        return sum(v.degree for v in self.layers)

    def replace(self, start: int, stop: int, layers: Sequence[WebVertex]) -> "Web":
        return Web(self.bottom, self.layers[:start] + tuple(layers) + self.layers[stop:])

    def __str__(self) -> str:
        return format_web(self)


# ============================================================================
# TEXT NOTATION
# ============================================================================

def format_object(obj: ObjectSeq) -> str:
    return "(" + ",".join(str(n) for n in obj) + ")"


def format_web(web: Web) -> str:
    return " ; ".join([format_object(web.bottom)] + [str(v) for v in web.layers])


def parse_object(text: str) -> ObjectSeq:
    match = _OBJECT.match(text.strip())
    if not match:
        raise ValidationError(f"malformed object {text!r}", field="object")
    body = match.group(1).strip()
    if not body:
        return ()
    try:
        return _check_object(int(part) for part in body.split(",") if part.strip())
    except ValueError:
        raise ValidationError(f"malformed object {text!r}", field="object")


def parse_web(text: str) -> Web:
    """Read `(n₁,…,n_k) ; merge@i(a,b) ; split@j(c,d) ; …` with 1-based positions."""
    parts = [p.strip() for p in text.split(";")]
    if not parts or not parts[0]:
        raise ValidationError("a web starts with its bottom object", field="web")
    bottom = parse_object(parts[0])
    layers = []
    for part in parts[1:]:
        match = _LAYER.match(part)
        if not match:
            raise ValidationError(f"malformed web layer {part!r}", field="web")
        kind, position, a, b = match.group(1), int(match.group(2)), int(match.group(3)), int(match.group(4))
        if position < 1:
            raise ValidationError(f"web positions are 1-based, got {position}", field="web")
        layers.append(WebVertex(kind, position - 1, a, b))
    return Web(bottom, tuple(layers))


# ============================================================================
# CONSTRUCTION
# ============================================================================

def merge(at: int, a: int, b: int, bottom: Optional[Sequence[int]] = None) -> Web:
    """A single merge of blocks at, at+1; the bottom defaults to (a, b)."""
    bottom = (a, b) if bottom is None else tuple(bottom)
    return Web(bottom, (WebVertex(MERGE, at, a, b),))


def split(at: int, a: int, b: int, bottom: Optional[Sequence[int]] = None) -> Web:
    """A single split of block at; the bottom defaults to (a + b,)."""
    bottom = (a + b,) if bottom is None else tuple(bottom)
    return Web(bottom, (WebVertex(SPLIT, at, a, b),))


def compose(first: Web, second: Web) -> Web:
    """`first` then `second`, stacked upward."""
    if first.top != second.bottom:
        raise UsageError(
            "web boundaries do not match",
            details={"top": list(first.top), "bottom": list(second.bottom)},
        )
    return Web(first.bottom, first.layers + second.layers)


def tensor(left: Web, right: Web) -> Web:
    """Side by side: the layers of `left` first, then those of `right` shifted past left's top."""
    offset = len(left.top)
    return Web(left.bottom + right.bottom, left.layers + tuple(v.shifted(offset) for v in right.layers))


def degree(web: Web) -> int:
    return web.degree


# ============================================================================
# EXPRESSIONS OVER S_N
# ============================================================================

@functools.lru_cache(maxsize=32)
def symmetric_system(n: int) -> CoxeterSystem:
    """S_N as the Coxeter system A_{N−1}; rank 0 when N ≤ 1."""
    if n <= 1:
        return CoxeterSystem((), name="A0")
    return named_system(f"A{n - 1}")


def object_subset(obj: ObjectSeq) -> GenSubset:
    """Generators s_i (0-based i − 1) that do not sit on a block boundary."""
    total = sum(obj)
    boundaries = set(accumulate(obj[:-1]))
    return frozenset(i - 1 for i in range(1, total) if i not in boundaries)


def subset_object(n: int, subset: GenSubset) -> ObjectSeq:
    """The composition of N cut at every missing generator."""
    blocks, size = [], 1
    for i in range(1, n):
        if i - 1 in subset:
            size += 1
        else:
            blocks.append(size)
            size = 1
    if n >= 1:
        blocks.append(size)
    return tuple(blocks)


def expression_from_web(web: Web) -> Expression:
    system = symmetric_system(web.total)
    steps = []
    for obj, vertex in zip(web.slices, web.layers):
        offset = sum(obj[:vertex.at])
        boundary = offset + vertex.a
        steps.append((UP if vertex.kind == MERGE else DOWN, boundary - 1))
    return Expression(system, object_subset(web.bottom), tuple(steps))


def _is_symmetric_system(system: CoxeterSystem) -> bool:
    return system.matrix == symmetric_system(system.rank + 1).matrix


def web_from_expression(e: Expression) -> Web:
    """
    Raises:
        ValidationError: when the expression is not over a type A system
    """
    system = e.system
    if not _is_symmetric_system(system):
        raise ValidationError(f"{system.name} is not a symmetric group in type A numbering", field="system")
    n = system.rank + 1
    bottom = subset_object(n, e.start)
    layers = []
    current = bottom
    for sign, g in e.steps:
        boundary = g + 1
        ends = list(accumulate(current))
        if sign == UP:
            at = ends.index(boundary)
            vertex = WebVertex(MERGE, at, current[at], current[at + 1])
        else:
            at = next(i for i, end in enumerate(ends) if end > boundary)
            start = ends[at] - current[at]
            vertex = WebVertex(SPLIT, at, boundary - start, ends[at] - boundary)
        layers.append(vertex)
        current = _apply_vertex(current, vertex)
    return Web(bottom, tuple(layers))


def evaluate_web(web: Web) -> DoubleCoset:
    return evaluate(expression_from_web(web))


# ============================================================================
# WEB RELATIONS
# ============================================================================

def _layers(web: Web, at: int, count: int, which: str) -> Tuple[WebVertex, ...]:
    if not 0 <= at or at + count > len(web.layers):
        raise NoMatchError(f"{which} needs {count} layers from layer {at + 1}", relation=which, at=at)
    return web.layers[at:at + count]


def _no_match(which: str, at: int, reason: str) -> NoMatchError:
    return NoMatchError(f"{which} does not match at layer {at + 1}: {reason}", relation=which, at=at)


def _merge_split(layers: Sequence[WebVertex]) -> Optional[Tuple[int, int, int, int, int]]:
    """(i, a, x, b, y) for merge@i(a,x) then split@i(b,y)."""
    first, second = layers
    if first.kind == MERGE and second.kind == SPLIT and first.at == second.at:
        return first.at, first.a, first.b, second.a, second.b
    return None


def _square_one(layers: Sequence[WebVertex]) -> Optional[Tuple[int, int, int, int, int, int, int]]:
    """(i, a, x, b, y, f, g) for split@i+1(f,r), merge@i(a,f), split@i(b,g), merge@i+1(g,r)."""
    v0, v1, v2, v3 = layers
    if (v0.kind, v1.kind, v2.kind, v3.kind) != (SPLIT, MERGE, SPLIT, MERGE):
        return None
    i = v1.at
    if v0.at != i + 1 or v2.at != i or v3.at != i + 1:
        return None
    f, rest = v0.a, v0.b
    if v1.b != f or v3.a != v2.b or v3.b != rest:
        return None
    a, b, g = v1.a, v2.a, v2.b
    return i, a, f + rest, b, g + rest, f, g


def _square_two(layers: Sequence[WebVertex]) -> Optional[Tuple[int, int, int, int, int, int, int]]:
    """(i, a, x, b, y, f, g) for split@i(c,g), merge@i+1(g,x), split@i+1(f,y), merge@i(c,f)."""
    v0, v1, v2, v3 = layers
    if (v0.kind, v1.kind, v2.kind, v3.kind) != (SPLIT, MERGE, SPLIT, MERGE):
        return None
    i = v0.at
    if v1.at != i + 1 or v2.at != i + 1 or v3.at != i:
        return None
    c, g = v0.a, v0.b
    if v1.a != g or v3.a != c or v3.b != v2.a:
        return None
    x, f, y = v1.b, v2.a, v2.b
    return i, c + g, x, c + f, y, f, g


def _merge_split_layers(i: int, a: int, x: int, b: int, y: int) -> Tuple[WebVertex, ...]:
    return (WebVertex(MERGE, i, a, x), WebVertex(SPLIT, i, b, y))


def _square_one_layers(i: int, a: int, x: int, b: int, f: int) -> Tuple[WebVertex, ...]:
    g = a + f - b
    rest = x - f
    return (
        WebVertex(SPLIT, i + 1, f, rest),
        WebVertex(MERGE, i, a, f),
        WebVertex(SPLIT, i, b, g),
        WebVertex(MERGE, i + 1, g, rest),
    )


def _square_two_layers(i: int, a: int, x: int, y: int, f: int, g: int) -> Tuple[WebVertex, ...]:
    c = a - g
    return (
        WebVertex(SPLIT, i, c, g),
        WebVertex(MERGE, i + 1, g, x),
        WebVertex(SPLIT, i + 1, f, y),
        WebVertex(MERGE, i, c, f),
    )


def _bigon(web: Web, at: int) -> Web:
    first, second = _layers(web, at, 2, "bigon")
    if not (first.kind == SPLIT and second.kind == MERGE and first.at == second.at
            and (first.a, first.b) == (second.a, second.b)):
        raise _no_match("bigon", at, "needs split@i(a,b) followed by merge@i(a,b)")
    return web.replace(at, at + 2, ())


def _assoc(web: Web, at: int) -> Web:
    first, second = _layers(web, at, 2, "assoc")
    if first.kind != MERGE or second.kind != MERGE:
        raise _no_match("assoc", at, "needs two merges")
    i = first.at
    if second.at == i and second.a == first.a + first.b:
        a, b, c = first.a, first.b, second.b
        replacement = (WebVertex(MERGE, i + 1, b, c), WebVertex(MERGE, i, a, b + c))
    elif second.at == i - 1 and second.b == first.a + first.b:
        a, b, c = second.a, first.a, first.b
        replacement = (WebVertex(MERGE, i - 1, a, b), WebVertex(MERGE, i - 1, a + b, c))
    else:
        raise _no_match("assoc", at, "the merges do not share a strand")
    return web.replace(at, at + 2, replacement)


def _coassoc(web: Web, at: int) -> Web:
    first, second = _layers(web, at, 2, "coassoc")
    if first.kind != SPLIT or second.kind != SPLIT:
        raise _no_match("coassoc", at, "needs two splits")
    i = first.at
    if second.at == i and second.a + second.b == first.a:
        a, b, c = second.a, second.b, first.b
        replacement = (WebVertex(SPLIT, i, a, b + c), WebVertex(SPLIT, i + 1, b, c))
    elif second.at == i + 1 and second.a + second.b == first.b:
        a, b, c = first.a, second.a, second.b
        replacement = (WebVertex(SPLIT, i, a + b, c), WebVertex(SPLIT, i, a, b))
    else:
        raise _no_match("coassoc", at, "the splits do not share a strand")
    return web.replace(at, at + 2, replacement)


def _footprint(vertex: WebVertex) -> Tuple[int, int]:
    """(input blocks, output blocks)"""
    return (2, 1) if vertex.kind == MERGE else (1, 2)


def _interchange(web: Web, at: int) -> Web:
    first, second = _layers(web, at, 2, "interchange")
    in1, out1 = _footprint(first)
    in2, out2 = _footprint(second)
    if second.at >= first.at + out1:
        moved_second = second.shifted(in1 - out1)
        moved_first = first
    elif second.at + in2 <= first.at:
        moved_second = second
        moved_first = first.shifted(out2 - in2)
    else:
        raise _no_match("interchange", at, "the layers touch a common strand")
    return web.replace(at, at + 2, (moved_second, moved_first))


def _square1(web: Web, at: int) -> Web:
    n = len(web.layers) - at
    if n >= 2:
        found = _merge_split(web.layers[at:at + 2])
        if found:
            i, a, x, b, y = found
            if a + b < a + x:
                return web.replace(at, at + 2, _square_one_layers(i, a, x, b, b))
    if n >= 4:
        found = _square_one(web.layers[at:at + 4])
        if found:
            i, a, x, b, y, f, g = found
            if f == b:
                return web.replace(at, at + 4, _merge_split_layers(i, a, x, b, y))
    raise _no_match("square1", at, "needs merge-split with a+b<N or the matching square")


def _square2(web: Web, at: int) -> Web:
    n = len(web.layers) - at
    if n >= 2:
        found = _merge_split(web.layers[at:at + 2])
        if found:
            i, a, x, b, y = found
            if a + b > a + x:
                return web.replace(at, at + 2, _square_two_layers(i, a, x, y, x, y))
    if n >= 4:
        found = _square_two(web.layers[at:at + 4])
        if found:
            i, a, x, b, y, f, g = found
            if g == y and f == x:
                return web.replace(at, at + 4, _merge_split_layers(i, a, x, b, y))
    raise _no_match("square2", at, "needs merge-split with a+b>N or the matching square")


def _nonreduced_square(web: Web, at: int) -> Web:
    found = _square_one(_layers(web, at, 4, "nonreduced_square"))
    if not found:
        raise _no_match("nonreduced_square", at, "needs a square of the first shape")
    i, a, x, b, y, f, g = found
    if f <= b:
        raise _no_match("nonreduced_square", at, "needs f > b")
    return web.replace(at, at + 4, _merge_split_layers(i, a, x, b, y))


def _rung_swap(web: Web, at: int) -> Web:
    layers = _layers(web, at, 4, "rung_swap")
    found = _square_one(layers)
    if found:
        i, a, x, b, y, f, g = found
        if f < b:
            return web.replace(at, at + 4, _square_two_layers(i, a, x, y, f, g))
    found = _square_two(layers)
    if found:
        i, a, x, b, y, f, g = found
        if x - f >= 1:
            return web.replace(at, at + 4, _square_one_layers(i, a, x, b, f))
    raise _no_match("rung_swap", at, "needs a square with f < b")


WEB_RELATIONS: Dict[str, Callable[[Web, int], Web]] = {
    "bigon": _bigon,
    "assoc": _assoc,
    "coassoc": _coassoc,
    "square1": _square1,
    "square2": _square2,
    "nonreduced_square": _nonreduced_square,
    "rung_swap": _rung_swap,
    "interchange": _interchange,
}


def apply_web_relation(web: Web, which: str, at: int) -> Web:
    """
    Rewrite `web` by relation `which` at layer `at` (0-based).

    Raises:
        ValidationError: for an unknown relation name
        NoMatchError: when the pattern or its side condition fails at `at`
    """
    relation = WEB_RELATIONS.get(which)
    if relation is None:
        raise ValidationError(f"unknown web relation {which!r}", field="relation")
    if at < 0:
        raise _no_match(which, at, "negative layer index")
    result = relation(web, at)
    logger.debug(f"🕸️ [Webs] {which}@{at + 1}: {web} → {result}")
    return result


def web_redexes(web: Web) -> Iterator[Tuple[str, int, Web]]:
    """Every (relation, layer, result) that applies to `web`."""
    for which in WEB_RELATIONS:
        for at in range(len(web.layers)):
            try:
                yield which, at, apply_web_relation(web, which, at)
            except NoMatchError:
                continue


# ============================================================================
# HOM COUNTS AND RELATION CLASSES
# ============================================================================

def hom_count(bottom: Sequence[int], top: Sequence[int], bounds: Optional[SearchBounds] = None) -> int:
    """|S_top \\ S_N / S_bottom| by enumerating double cosets; 0 when totals differ."""
    bottom, top = _check_object(bottom), _check_object(top)
    if sum(bottom) != sum(top):
        return 0
    system = symmetric_system(sum(bottom))
    return len(all_cosets(system, object_subset(bottom), object_subset(top), bounds))


def contingency_count(rows: Sequence[int], columns: Sequence[int]) -> int:
    """Non-negative integer matrices with the given row and column sums."""
    rows, columns = _check_object(rows), _check_object(columns)
    if sum(rows) != sum(columns):
        return 0

    @functools.lru_cache(maxsize=None)
    def count(row: int, remaining: Tuple[int, ...]) -> int:
        if row == len(rows):
            return 1 if not any(remaining) else 0
        return sum(count(row + 1, rest) for rest in _fillings(rows[row], remaining))

    return count(0, columns)


def _fillings(total: int, capacity: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Capacities left after placing `total` units into columns, one way per distribution."""
    if not capacity:
        if total == 0:
            yield ()
        return
    head, tail = capacity[0], capacity[1:]
    for used in range(min(head, total) + 1):
        for rest in _fillings(total - used, tail):
            yield (head - used,) + rest


def _next_layers(obj: ObjectSeq) -> Iterator[WebVertex]:
    for i in range(len(obj) - 1):
        yield WebVertex(MERGE, i, obj[i], obj[i + 1])
    for i, n in enumerate(obj):
        for a in range(1, n):
            yield WebVertex(SPLIT, i, a, n - a)


def enumerate_webs(
    bottom: Sequence[int],
    top: Sequence[int],
    max_degree: int,
    bounds: Optional[SearchBounds] = None,
) -> List[Web]:
    """Every web from `bottom` to `top` of degree at most `max_degree`."""
    bounds = bounds or DEFAULT_BOUNDS
    bottom, top = _check_object(bottom), _check_object(top)
    found: List[Web] = []
    generated = 0

    def extend(obj: ObjectSeq, layers: Tuple[WebVertex, ...], budget: int) -> None:
        nonlocal generated
        if obj == top:
            found.append(Web(bottom, layers))
        if len(layers) >= bounds.webs.max_layers:
            return
        for vertex in _next_layers(obj):
            if vertex.degree > budget:
                continue
            generated += 1
            check_bound(generated, bounds.webs.max_webs, "SCOX_MAX_VERTICES")
            extend(_apply_vertex(obj, vertex), layers + (vertex,), budget - vertex.degree)

    if sum(bottom) == sum(top):
        extend(bottom, (), max_degree)
    return found


def max_coset_length(bottom: Sequence[int], top: Sequence[int], bounds: Optional[SearchBounds] = None) -> int:
    bottom, top = _check_object(bottom), _check_object(top)
    system = symmetric_system(sum(bottom))
    cosets = all_cosets(system, object_subset(bottom), object_subset(top), bounds)
    return max((p.length for p in cosets), default=0)


@dataclass(frozen=True)
class RelationClasses:
    bottom: ObjectSeq
    top: ObjectSeq
    max_degree: int
    webs: int
    classes: int
    cosets: int  # distinct evaluations among the enumerated webs

    def to_dict(self) -> dict:
        return {
            "bottom": list(self.bottom),
            "top": list(self.top),
            "max_degree": self.max_degree,
            "webs": self.webs,
            "classes": self.classes,
            "cosets": self.cosets,
        }


@time_operation("relation_classes")
def relation_classes(
    bottom: Sequence[int],
    top: Sequence[int],
    max_degree: Optional[int] = None,
    bounds: Optional[SearchBounds] = None,
) -> RelationClasses:
    """
    Classes of webs of degree ≤ max_degree under the web relations.

    The degree defaults to the largest coset length in Hom(bottom, top), so
    every coset has a reduced web in the enumeration.
    """
    bottom, top = _check_object(bottom), _check_object(top)
    if max_degree is None:
        max_degree = max_coset_length(bottom, top, bounds) if sum(bottom) == sum(top) else 0
    track_enumeration("web_classes")
    webs = enumerate_webs(bottom, top, max_degree, bounds)
    known = set(webs)
    classes = UnionFind(webs)
    for web in webs:
        for _, _, result in web_redexes(web):
            if result in known:
                classes.union(web, result)
    class_count = len(list(classes.to_sets()))
    coset_count = len({evaluate_web(w) for w in webs})
    logger.info(
        f"🕸️ [Webs] {format_object(bottom)} → {format_object(top)}, degree ≤ {max_degree}: "
        f"{len(webs)} webs, {class_count} classes"
    )
    return RelationClasses(bottom, top, max_degree, len(webs), class_count, coset_count)

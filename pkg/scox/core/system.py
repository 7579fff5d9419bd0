"""
Coxeter systems and their elements.

A finite system carries a root table; an Element is the permutation it
induces on the 2N root indices, so products are array compositions and
lengths are counts of positive roots sent to negative ones.

Generator subsets are frozensets of generator indices (0-based, in the
declared generator order).
"""
import functools
import logging
import math
import threading
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from scox.core import classification
from scox.core.classification import INFINITE_TYPE, Matrix
from scox.core.roots import RootTable, build_root_table
from scox.exceptions import (
    CapabilityError,
    DomainError,
    InvariantViolation,
    ResourceBoundError,
    UsageError,
    ValidationError,
)
from scox.monitoring.metrics import track_system_built

logger = logging.getLogger(__name__)

GenSubset = FrozenSet[int]
EMPTY: GenSubset = frozenset()

_ALIASES = ("s", "t", "u")


class CoxeterSystem:
    """
    A Coxeter system (W, S) given by its matrix.

    Immutable after construction. Longest elements and finitarity verdicts
    are memoized behind a lock, so instances can be shared across threads.
    """

    def __init__(
        self,
        matrix: Sequence[Sequence],
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
        aliases: Optional[Mapping[str, int]] = None,
    ):
        self.matrix: Matrix = classification.validate_matrix(matrix)
        self.rank = len(self.matrix)
        labels = tuple(labels) if labels is not None else tuple(f"s{i + 1}" for i in range(self.rank))
        if len(labels) != self.rank:
            raise ValidationError(
                f"{len(labels)} labels given for a rank {self.rank} matrix", field="labels"
            )
        if len(set(labels)) != len(labels) or any(not label for label in labels):
            raise ValidationError("generator labels must be distinct and non-empty", field="labels")
        self.labels: Tuple[str, ...] = labels
        self.aliases: Dict[str, int] = dict(aliases or {})
        self._label_index = {label: i for i, label in enumerate(labels)}

        self.components = classification.components(self.matrix)
        self.component_types = [classification.classify_component(self.matrix, c) for c in self.components]
        self.is_finite = INFINITE_TYPE not in self.component_types
        self.name = name or self.cartan_name

        self._lock = threading.Lock()
        self._finitary: Dict[GenSubset, bool] = {}
        self._longest: Dict[GenSubset, "Element"] = {}
        self._parabolic: Dict[GenSubset, List["Element"]] = {}

        self._roots: Optional[RootTable] = None
        if self.is_finite:
            self._roots = build_root_table(self.matrix, self.components)
            self._check_root_count()
        track_system_built()
        logger.debug(f"🧩 [System] built {self.name} (rank {self.rank}, finite={self.is_finite})")

    # ------------------------------------------------------------------
    # Description
    # ------------------------------------------------------------------

    @property
    def cartan_name(self) -> str:
        """Product of component type names, e.g. "A2×A1"; "∅" for rank 0."""
        if not self.components:
            return "∅"
        return "×".join(self.component_types)

    @property
    def generators(self) -> range:
        return range(self.rank)

    @property
    def all_generators(self) -> GenSubset:
        return frozenset(range(self.rank))

    @property
    def positive_root_count(self) -> int:
        return self._require_roots().positive_count

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name})"

    def label(self, index: int) -> str:
        return self.labels[index]

    def index_of(self, label: str) -> int:
        """Generator index for a label or an input alias."""
        if label in self._label_index:
            return self._label_index[label]
        if label in self.aliases:
            return self.aliases[label]
        raise ValidationError(f"unknown generator {label!r} in {self.name}", field="generator")

    def input_tokens(self) -> Dict[str, int]:
        """Every accepted spelling of a generator."""
        tokens = dict(self.aliases)
        tokens.update(self._label_index)
        return tokens

    def m(self, s: int, t: int) -> float:
        return self.matrix[s][t]

    # ------------------------------------------------------------------
    # Subsets
    # ------------------------------------------------------------------

    def is_finitary(self, subset: Iterable[int]) -> bool:
        """True iff every component of the induced subdiagram is of finite type."""
        key = frozenset(subset)
        cached = self._finitary.get(key)
        if cached is not None:
            return cached
        verdict = all(
            name != INFINITE_TYPE
            for _, name in classification.classify(self.matrix, sorted(key))
        )
        with self._lock:
            self._finitary[key] = verdict
        return verdict

    def require_finitary(self, subset: GenSubset) -> GenSubset:
        subset = frozenset(subset)
        if not self.is_finitary(subset):
            raise DomainError(
                f"subset {{{','.join(self.labels[i] for i in sorted(subset))}}} is not finitary",
                details={"subset": [self.labels[i] for i in sorted(subset)]},
            )
        return subset

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    def _require_roots(self) -> RootTable:
        if self._roots is None:
            raise CapabilityError(
                f"element arithmetic needs a finite Coxeter group; {self.name} is infinite",
                system=self.name,
            )
        return self._roots

    def identity(self) -> "Element":
        roots = self._require_roots()
        perm = np.arange(roots.size, dtype=np.int64)
        return Element(self, perm)

    def generator(self, s: int) -> "Element":
        roots = self._require_roots()
        return Element(self, roots.generator_perms[s])

    def from_word(self, word: Iterable[int]) -> "Element":
        roots = self._require_roots()
        perm = np.arange(roots.size, dtype=np.int64)
        for s in word:
            perm = perm[roots.generator_perms[s]]
        return Element(self, perm)

    def longest_element(self, subset: Iterable[int]) -> "Element":
        """w_J by greedy ascent inside W_J; J must be finitary."""
        key = self.require_finitary(frozenset(subset))
        cached = self._longest.get(key)
        if cached is not None:
            return cached
        w = self.identity()
        order = sorted(key)
        while True:
            descents = w.left_descents()
            ascent = next((s for s in order if s not in descents), None)
            if ascent is None:
                break
            w = self.generator(ascent) * w
        with self._lock:
            self._longest.setdefault(key, w)
        return self._longest[key]

    def longest_length(self, subset: Iterable[int]) -> int:
        """ℓ(w_J)."""
        return self.longest_element(subset).length

    def conjugate_by_longest(self, subset: Iterable[int], s: int) -> int:
        """The generator u of J with w_J s w_J = u, for s in J."""
        subset = frozenset(subset)
        if s not in subset:
            raise UsageError(f"{self.labels[s]} is not in the subset being conjugated by")
        w = self.longest_element(subset)
        roots = self._require_roots()
        image = int(w.perm[s])
        u = roots.negate(image)
        if u >= self.rank:
            raise InvariantViolation("w_J does not send a simple root of J to a negative simple root")
        return u

    def elements_of_parabolic(self, subset: Iterable[int], limit: int = 1_000_000) -> List["Element"]:
        """All elements of W_J in ShortLex order; raises ResourceBoundError past `limit`."""
        key = frozenset(subset)
        cached = self._parabolic.get(key)
        if cached is None:
            cached = self._enumerate_parabolic(sorted(key), limit)
            with self._lock:
                cached = self._parabolic.setdefault(key, cached)
        if len(cached) > limit:
            raise ResourceBoundError(
                f"parabolic subgroup has more than {limit} elements",
                bound_name="SCOX_ENUMERATION_BOUND",
                limit=limit,
            )
        return cached

    def _enumerate_parabolic(self, subset: List[int], limit: int) -> List["Element"]:
        identity = self.identity()
        seen = {identity}
        queue = deque([identity])
        found = [identity]
        while queue:
            w = queue.popleft()
            for s in subset:
                x = w * self.generator(s)
                if x not in seen:
                    seen.add(x)
                    found.append(x)
                    queue.append(x)
                    if len(found) > limit:
                        raise ResourceBoundError(
                            f"parabolic subgroup has more than {limit} elements",
                            bound_name="SCOX_ENUMERATION_BOUND",
                            limit=limit,
                        )
        return sorted(found, key=Element.sort_key)

    def all_elements(self, limit: int = 1_000_000) -> List["Element"]:
        return self.elements_of_parabolic(self.all_generators, limit=limit)

    def reflections(self, subset: Iterable[int], limit: int = 1_000_000) -> List["Element"]:
        """All reflections x s x⁻¹ of W_J, sorted canonically."""
        subset = frozenset(subset)
        found = set()
        for x in self.elements_of_parabolic(subset, limit=limit):
            for s in subset:
                found.add(x * self.generator(s) * x.inverse())
        return sorted(found, key=Element.sort_key)

    def product(self, other: "CoxeterSystem") -> "CoxeterSystem":
        """S ⊔ S′ with the left factor first."""
        matrix = classification.block_diagonal([self.matrix, other.matrix])
        if set(self.labels) & set(other.labels) or _is_canonical(self) and _is_canonical(other):
            labels = [f"s{i + 1}" for i in range(self.rank + other.rank)]
        else:
            labels = list(self.labels) + list(other.labels)
        return CoxeterSystem(matrix, labels, name=f"{self.name}×{other.name}")

    # ------------------------------------------------------------------

    def _check_root_count(self) -> None:
        expected = 0
        for name in self.component_types:
            expected += classification.positive_root_count(name)
        actual = self._roots.positive_count
        if actual != expected:
            raise InvariantViolation(
                f"{self.name}: {actual} positive roots, expected {expected}",
                details={"system": self.name},
            )
        longest = self.longest_element(self.all_generators).length
        if longest != actual:
            raise InvariantViolation(
                f"{self.name}: ℓ(w_S) = {longest} but there are {actual} positive roots"
            )


def _is_canonical(system: CoxeterSystem) -> bool:
    return system.labels == tuple(f"s{i + 1}" for i in range(system.rank))


class Element:
    """An element of a finite Coxeter group, stored as a root permutation."""

    __slots__ = ("system", "perm", "_key", "_word")

    def __init__(self, system: CoxeterSystem, perm: np.ndarray):
        if perm.flags.writeable:
            perm.setflags(write=False)
        self.system = system
        self.perm = perm
        self._key = perm.tobytes()
        self._word: Optional[Tuple[int, ...]] = None

    def _same_system(self, other: "Element") -> None:
        if self.system is not other.system:
            raise UsageError(
                f"cannot combine elements of {self.system.name} and {other.system.name}"
            )

    def __mul__(self, other: "Element") -> "Element":
        self._same_system(other)
        return Element(self.system, self.perm[other.perm])

    def inverse(self) -> "Element":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm), dtype=self.perm.dtype)
        return Element(self.system, inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.system is other.system and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def length(self) -> int:
        n = self.system.positive_root_count
        return int(np.count_nonzero(self.perm[:n] >= n))

    def is_identity(self) -> bool:
        return self.length == 0

    def has_right_descent(self, s: int) -> bool:
        return bool(self.perm[s] >= self.system.positive_root_count)

    def has_left_descent(self, s: int) -> bool:
        n = self.system.positive_root_count
        # s ∈ λ(w) iff w⁻¹(α_s) < 0, i.e. the index sent to -α_s is positive
        return bool(np.flatnonzero(self.perm == (s + n) % (2 * n))[0] < n)

    def right_descents(self) -> GenSubset:
        n = self.system.positive_root_count
        return frozenset(s for s in range(self.system.rank) if self.perm[s] >= n)

    def left_descents(self) -> GenSubset:
        return self.inverse().right_descents()

    def word(self) -> Tuple[int, ...]:
        """ShortLex-least reduced word in the declared generator order."""
        if self._word is None:
            letters = []
            w = self
            while True:
                descents = w.left_descents()
                if not descents:
                    break
                s = min(descents)
                letters.append(s)
                w = self.system.generator(s) * w
            self._word = tuple(letters)
        return self._word

    def labels(self) -> List[str]:
        return [self.system.labels[s] for s in self.word()]

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.length, self.word())

    def __repr__(self) -> str:
        word = "".join(self.labels()) or "e"
        return f"Element({word})"


# ============================================================================
# CONSTRUCTION
# ============================================================================

SystemSpec = Union[str, Mapping, CoxeterSystem]


@functools.lru_cache(maxsize=64)
def named_system(name: str) -> CoxeterSystem:
    """Cached system for a named type such as "E8" or "A2×A1"."""
    matrix, labels, canonical = classification.named_matrix(name)
    aliases = {}
    if len(labels) <= len(_ALIASES):
        aliases = {letter: i for i, letter in enumerate(_ALIASES[: len(labels)])}
    return CoxeterSystem(matrix, labels, name=canonical, aliases=aliases)


def new_system(spec: SystemSpec) -> CoxeterSystem:
    """
    Build a Coxeter system.

    Args:
        spec: a type name ("A2", "B3", "I2(7)", "A2×A1"), a mapping
            {"type": ...} or {"matrix": [[...]], "labels": [...]}, or an
            existing system (returned unchanged)

    Returns:
        CoxeterSystem: classified, with its root table when finite
    """
    if isinstance(spec, CoxeterSystem):
        return spec
    if isinstance(spec, str):
        return named_system(spec.strip())
    if isinstance(spec, Mapping):
        if spec.get("type"):
            return named_system(str(spec["type"]).strip())
        if "matrix" in spec:
            return CoxeterSystem(spec["matrix"], spec.get("labels"))
    raise ValidationError("system spec needs a type name or a matrix", field="system")


# ============================================================================
# OPERATIONS
# ============================================================================

def classify_components(system: CoxeterSystem) -> List[Tuple[Tuple[int, ...], str]]:
    """Connected components of the diagram with their type names."""
    return list(zip(system.components, system.component_types))


def is_finitary(system: CoxeterSystem, subset: Iterable[int]) -> bool:
    return system.is_finitary(subset)


def longest_element(system: CoxeterSystem, subset: Iterable[int]) -> Element:
    return system.longest_element(subset)


def mul(x: Element, y: Element) -> Element:
    return x * y


def inv(x: Element) -> Element:
    return x.inverse()


def length(x: Element) -> int:
    return x.length


def left_descents(x: Element) -> GenSubset:
    return x.left_descents()


def right_descents(x: Element) -> GenSubset:
    return x.right_descents()


def star(x: Element, y: Element) -> Element:
    """Demazure product x ⋆ y: fold a reduced word of y into x, keeping only ascents."""
    x._same_system(y)
    result = x
    system = x.system
    for s in y.word():
        if not result.has_right_descent(s):
            result = result * system.generator(s)
    return result


def bruhat_leq(x: Element, y: Element) -> bool:
    """
    Subword criterion for x ≤ y.

    Scanning a reduced word of y from the right and stripping each letter
    that is a right descent of the running element leaves e iff x ≤ y.
    """
    x._same_system(y)
    if x.length > y.length:
        return False
    system = x.system
    current = x
    for s in reversed(y.word()):
        if current.has_right_descent(s):
            current = current * system.generator(s)
    return current.is_identity()

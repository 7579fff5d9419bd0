"""
Parabolic Double Cosets

A (J,I)-coset is carried with its pair (J,I) and its minimal element; the
maximum, the redundancies K and L, the lengths and the core are derived on
demand. Composition realizes the singular Coxeter monoid: the composite of
q and p is the coset of q̄ ⋆ p̄.
"""

import logging
from itertools import combinations
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from scox.bounds import DEFAULT_BOUNDS, SearchBounds, check_bound
from scox.core.system import CoxeterSystem, Element, GenSubset, star
from scox.exceptions import DomainError, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CosetLengths:
    """Length data of a coset"""
    plus: int   # ℓ⁺(p) = ℓ(p̄) − ℓ(w_J)
    minus: int  # ℓ⁻(p) = ℓ(p̲) + ℓ(w_J) − ℓ(w_K)

    @property
    def total(self) -> int:
        return self.plus + self.minus


@dataclass(frozen=True)
class DoubleCoset:
    """A (J,I)-coset; equality is equality of (J, I, p̲)."""
    system: CoxeterSystem = field(compare=False, repr=False)
    left: GenSubset
    right: GenSubset
    min: Element

    @cached_property
    def _redundancies(self) -> Tuple[GenSubset, GenSubset]:
        # Kilmoyer: p̲ s p̲⁻¹ lies in J exactly when p̲ sends α_s to a simple root of J
        rank = self.system.rank
        left, right = set(), set()
        for s in self.right:
            image = int(self.min.perm[s])
            if image < rank and image in self.left:
                left.add(image)
                right.add(s)
        return frozenset(left), frozenset(right)

    @property
    def left_redundancy(self) -> GenSubset:
        """K = J ∩ p̲ I p̲⁻¹"""
        return self._redundancies[0]

    @property
    def right_redundancy(self) -> GenSubset:
        """L = I ∩ p̲⁻¹ J p̲"""
        return self._redundancies[1]

    @cached_property
    def max(self) -> Element:
        """p̄ = (w_J w_K⁻¹) · p̲ · w_I"""
        system = self.system
        w_j = system.longest_element(self.left)
        w_k = system.longest_element(self.left_redundancy)
        return w_j * w_k.inverse() * self.min * system.longest_element(self.right)

    @cached_property
    def lengths(self) -> CosetLengths:
        system = self.system
        len_j = system.longest_length(self.left)
        len_k = system.longest_length(self.left_redundancy)
        return CosetLengths(
            plus=self.max.length - len_j,
            minus=self.min.length + len_j - len_k,
        )

    @property
    def length(self) -> int:
        return self.lengths.total

    def is_identity(self) -> bool:
        return self.left == self.right and self.min.is_identity()

    def has_full_redundancy(self) -> bool:
        return self.left_redundancy == self.left and self.right_redundancy == self.right

    def core(self) -> "DoubleCoset":
        """The (K,L)-coset with minimum p̲."""
        return coset_of(self.system, self.left_redundancy, self.min, self.right_redundancy)

    def contains(self, w: Element) -> bool:
        return coset_of(self.system, self.left, w, self.right) == self

    def elements(self, bounds: Optional[SearchBounds] = None) -> FrozenSet[Element]:
        """{x·p̲·y : x ∈ W^K ∩ W_J, y ∈ W_I}, enumerated within the element bound."""
        bounds = bounds or DEFAULT_BOUNDS
        limit = bounds.enumeration.max_elements
        left = self.system.elements_of_parabolic(self.left, limit=limit)
        right = self.system.elements_of_parabolic(self.right, limit=limit)
        check_bound(len(left) * len(right), limit, "SCOX_ENUMERATION_BOUND")
        k = self.left_redundancy
        minimal_left = [x for x in left if not (x.right_descents() & k)]
        return frozenset(x * self.min * y for x in minimal_left for y in right)

    def inverse(self) -> "DoubleCoset":
        """p⁻¹: the (I,J)-coset of p̄⁻¹."""
        return coset_of(self.system, self.right, self.min.inverse(), self.left)

    def __repr__(self) -> str:
        labels = self.system.labels
        left = "".join(labels[i] for i in sorted(self.left)) or "∅"
        right = "".join(labels[i] for i in sorted(self.right)) or "∅"
        word = "".join(self.min.labels()) or "e"
        return f"DoubleCoset({left},{right}; min={word})"


def coset_of(system: CoxeterSystem, left: Iterable[int], w: Element, right: Iterable[int]) -> DoubleCoset:
    """
    The (J,I)-coset containing w.

    The minimum is reached by stripping descents, lowest generator first,
    left descents in J before right descents in I.
    """
    left = system.require_finitary(frozenset(left))
    right = system.require_finitary(frozenset(right))
    left_order, right_order = sorted(left), sorted(right)
    x = w
    while True:
        s = next((s for s in left_order if x.has_left_descent(s)), None)
        if s is not None:
            x = system.generator(s) * x
            continue
        s = next((s for s in right_order if x.has_right_descent(s)), None)
        if s is not None:
            x = x * system.generator(s)
            continue
        break
    return DoubleCoset(system, left, right, x)


def identity_coset(system: CoxeterSystem, subset: Iterable[int]) -> DoubleCoset:
    subset = frozenset(subset)
    return coset_of(system, subset, system.identity(), subset)


def left_redundancy(p: DoubleCoset) -> GenSubset:
    return p.left_redundancy


def right_redundancy(p: DoubleCoset) -> GenSubset:
    return p.right_redundancy


def coset_lengths(p: DoubleCoset) -> CosetLengths:
    return p.lengths


def core(p: DoubleCoset) -> DoubleCoset:
    return p.core()


def elements(p: DoubleCoset, bounds: Optional[SearchBounds] = None) -> FrozenSet[Element]:
    return p.elements(bounds)


def compose(q: DoubleCoset, p: DoubleCoset) -> DoubleCoset:
    """q ∘ p for a (K,J)-coset q and a (J,I)-coset p."""
    if q.system is not p.system:
        raise UsageError("cannot compose cosets of different systems")
    if q.right != p.left:
        raise UsageError(
            "middle objects differ",
            details={
                "left_factor_right": sorted(q.right),
                "right_factor_left": sorted(p.left),
            },
        )
    return coset_of(q.system, q.left, star(q.max, p.max), p.right)


def is_subcoset(p: DoubleCoset, q: DoubleCoset) -> bool:
    """p ⊂ q for a (J,I)-coset p and a (J,I′)-coset q with I ⊆ I′."""
    return (
        p.left == q.left
        and p.right <= q.right
        and coset_of(q.system, q.left, p.min, q.right) == q
    )


def all_cosets(
    system: CoxeterSystem,
    left: Iterable[int],
    right: Iterable[int],
    bounds: Optional[SearchBounds] = None,
) -> List[DoubleCoset]:
    """Every (J,I)-coset, one per minimal representative, in canonical order."""
    bounds = bounds or DEFAULT_BOUNDS
    left = system.require_finitary(frozenset(left))
    right = system.require_finitary(frozenset(right))
    found = []
    for w in system.all_elements(limit=bounds.enumeration.max_elements):
        if w.left_descents() & left or w.right_descents() & right:
            continue
        found.append(DoubleCoset(system, left, right, w))
    return found


def finitary_subsets(system: CoxeterSystem, max_size: Optional[int] = None) -> List[GenSubset]:
    """All finitary subsets, ordered by size then generator order."""
    size_cap = system.rank if max_size is None else min(max_size, system.rank)
    subsets = []
    for size in range(size_cap + 1):
        for combo in combinations(range(system.rank), size):
            if system.is_finitary(combo):
                subsets.append(frozenset(combo))
    return subsets


def plus_j(
    p: DoubleCoset,
    factor: CoxeterSystem,
    subset: Iterable[int],
    product: Optional[CoxeterSystem] = None,
) -> DoubleCoset:
    """
    p^{(+J)}: the coset of p placed in W × W′, with J ⊆ S′ added on both sides.

    The result has minimum p̲ and maximum p̄ · w_J.
    """
    subset = factor.require_finitary(frozenset(subset))
    product = product or p.system.product(factor)
    if product.rank != p.system.rank + factor.rank:
        raise UsageError("product system does not have the combined rank")
    offset = p.system.rank
    shifted = frozenset(s + offset for s in subset)
    minimum = product.from_word(p.min.word())
    return coset_of(product, p.left | shifted, minimum, p.right | shifted)


# ============================================================================
# KAROUBI CHECK
# ============================================================================

@dataclass
class KaroubiReport:
    """Result of checking that cosets are the Karoubi envelope of (W, ⋆)"""
    hom_sets: int = 0          # (J,I) pairs examined
    morphisms: int = 0         # cosets examined
    compositions: int = 0      # composable pairs examined
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "hom_sets": self.hom_sets,
            "morphisms": self.morphisms,
            "compositions": self.compositions,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def karoubi_check(
    system: CoxeterSystem,
    bounds: Optional[SearchBounds] = None,
    check_composition: bool = True,
) -> KaroubiReport:
    """
    Check p ↦ p̄ against {w : J ⊆ λ(w), I ⊆ ρ(w)} on every Hom-set.

    The map must be a bijection onto that set, and the maximum of a
    composite must be the star product of the maxima.
    """
    bounds = bounds or DEFAULT_BOUNDS
    report = KaroubiReport()
    elements = system.all_elements(limit=bounds.enumeration.max_elements)
    subsets = finitary_subsets(system)
    homs: Dict[Tuple[GenSubset, GenSubset], List[DoubleCoset]] = {}

    for left in subsets:
        for right in subsets:
            cosets = all_cosets(system, left, right, bounds)
            homs[(left, right)] = cosets
            report.hom_sets += 1
            report.morphisms += len(cosets)
            maxima = [p.max for p in cosets]
            expected = {w for w in elements if left <= w.left_descents() and right <= w.right_descents()}
            if len(set(maxima)) != len(maxima) or set(maxima) != expected:
                report.failures.append(f"max map not bijective on Hom({sorted(right)},{sorted(left)})")

    if check_composition:
        for (k, j), outer in homs.items():
            for i in subsets:
                for q in outer:
                    for p in homs[(j, i)]:
                        report.compositions += 1
                        composite = compose(q, p)
                        if composite.max != star(q.max, p.max):
                            report.failures.append(f"composition max differs for {q} ∘ {p}")

    logger.info(
        f"🔍 [Karoubi] {system.name}: {report.hom_sets} Hom-sets, "
        f"{report.morphisms} cosets, {len(report.failures)} failure(s)"
    )
    return report

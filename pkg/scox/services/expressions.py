"""
Singular Expressions

An expression is a start subset I₀ and a sequence of signed steps ±t; the
subsets I₀,…,I_d are derived. This module evaluates expressions in the
singular Coxeter monoid, builds forward paths, and decides reducedness by
three independent criteria (lengths adding in the certificate element,
the forward-path criterion, and the multistep length test), besides the
length comparison ℓ(e) = ℓ(p).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from scox.core.system import CoxeterSystem, Element, GenSubset, star
from scox.exceptions import UsageError, ValidationError
from scox.services.cosets import CosetLengths, DoubleCoset, coset_of, identity_coset
from scox.utils import notation

logger = logging.getLogger(__name__)

UP = 1
DOWN = -1

Step = Tuple[int, int]  # (sign, generator)


@dataclass(frozen=True)
class Expression:
    """A single-step singular expression [I₀ ± t₁ ± … ± t_d]."""
    system: CoxeterSystem = field(compare=False, repr=False)
    start: GenSubset
    steps: Tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "start", frozenset(self.start))
        object.__setattr__(self, "steps", tuple((int(sign), int(g)) for sign, g in self.steps))
        current = set(self.start)
        for g in current:
            if not 0 <= g < self.system.rank:
                raise ValidationError(f"generator index {g} out of range", field="expression")
        if not self.system.is_finitary(current):
            raise ValidationError("start subset is not finitary", field="expression")
        for position, (sign, g) in enumerate(self.steps):
            if sign not in (UP, DOWN) or not 0 <= g < self.system.rank:
                raise ValidationError(f"malformed step {sign, g}", field="expression")
            label = self.system.labels[g]
            if sign == UP:
                if g in current:
                    raise ValidationError(f"step {position}: +{label} adds a generator already present", field="expression")
                current.add(g)
            else:
                if g not in current:
                    raise ValidationError(f"step {position}: -{label} removes an absent generator", field="expression")
                current.remove(g)
            if not self.system.is_finitary(current):
                raise ValidationError(f"step {position}: subset after ±{label} is not finitary", field="expression")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_subsets(cls, system: CoxeterSystem, subsets: Sequence[Iterable[int]]) -> "Expression":
        subsets = [frozenset(s) for s in subsets]
        if not subsets:
            raise ValidationError("an expression needs at least one subset", field="expression")
        return cls(system, subsets[0], tuple(notation.steps_from_subsets(system, subsets)))

    @classmethod
    def parse(cls, system: CoxeterSystem, text: str) -> "Expression":
        """Read bracket form "[∅,s,st]" or step form "[st] -s +u"."""
        start, steps = notation.parse_expression_text(system, text)
        return cls(system, start, tuple(steps))

    # ------------------------------------------------------------------
    # Derived data
    # ------------------------------------------------------------------

    @cached_property
    def subsets(self) -> Tuple[GenSubset, ...]:
        result = [self.start]
        for sign, g in self.steps:
            result.append(result[-1] | {g} if sign == UP else result[-1] - {g})
        return tuple(result)

    @property
    def width(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> GenSubset:
        return self.subsets[-1]

    def subword(self, m: int, n: int) -> "Expression":
        """[I_m, …, I_n]"""
        if not 0 <= m <= n <= self.width:
            raise ValidationError(f"subword [{m},{n}] outside width {self.width}", field="expression")
        return Expression(self.system, self.subsets[m], self.steps[m:n])

    def splice(self, m: int, n: int, replacement: "Expression") -> "Expression":
        """Replace [I_m, …, I_n] by an expression with the same endpoints."""
        if replacement.start != self.subsets[m] or replacement.end != self.subsets[n]:
            raise UsageError("replacement endpoints differ from the replaced subword")
        return Expression(self.system, self.start, self.steps[:m] + replacement.steps + self.steps[n:])

    def __str__(self) -> str:
        return notation.format_brackets(self.system, self.subsets)

    def step_form(self) -> str:
        return notation.format_steps(self.system, self.start, self.steps)

    def to_dict(self) -> dict:
        labels = self.system.labels
        return {
            "start": notation.subset_labels(self.system, self.start),
            "steps": [["+" if sign == UP else "-", labels[g]] for sign, g in self.steps],
        }

    @cached_property
    def coset(self) -> DoubleCoset:
        return evaluate(self)

    @cached_property
    def is_reduced(self) -> bool:
        return reducedness_certificate(self).lengths_add

    @property
    def length(self) -> int:
        return expr_lengths(self).total


# ============================================================================
# EVALUATION AND FORWARD PATHS
# ============================================================================

def evaluate(e: Expression) -> DoubleCoset:
    """The (I₀,I_d)-coset whose maximum is w_{I₀} ⋆ w_{I₁} ⋆ … ⋆ w_{I_d}."""
    system = e.system
    top = system.longest_element(e.start)
    for subset in e.subsets[1:]:
        top = star(top, system.longest_element(subset))
    return coset_of(system, e.start, top, e.end)


@dataclass(frozen=True)
class ForwardPath:
    """Forward path p₀ … p_d with its redundancy sequence"""
    cosets: Tuple[DoubleCoset, ...]  # p_i is an (I₀, I_i)-coset
    redundancies: Tuple[GenSubset, ...]  # K_i = left redundancy of p_i

    @property
    def end(self) -> DoubleCoset:
        return self.cosets[-1]


def forward_path(e: Expression) -> ForwardPath:
    """Up-steps take the containing coset, down-steps the sub-coset with the same maximum."""
    system = e.system
    path = [identity_coset(system, e.start)]
    for (sign, _), subset in zip(e.steps, e.subsets[1:]):
        current = path[-1]
        anchor = current.min if sign == UP else current.max
        path.append(coset_of(system, e.start, anchor, subset))
    return ForwardPath(
        cosets=tuple(path),
        redundancies=tuple(p.left_redundancy for p in path),
    )


# ============================================================================
# REDUCEDNESS
# ============================================================================

@dataclass(frozen=True)
class ReducednessCertificate:
    """Factors y_i, z_i and the element a₀ = w_{I₀} z₁ ⋯ z_d"""
    expression: Expression
    ys: Tuple[Element, ...]  # y_i = w_{I_i} w_{I_i ∩ I_{i+1}}⁻¹, i = 0..d-1
    zs: Tuple[Element, ...]  # z_i = w_{I_{i-1} ∩ I_i}⁻¹ w_{I_i}, i = 1..d
    a0: Element
    lengths_add: bool

    def center(self, k: int) -> Element:
        """a_k = y₀ ⋯ y_{k-1} · w_{I_k} · z_{k+1} ⋯ z_d"""
        system = self.expression.system
        result = system.identity()
        for y in self.ys[:k]:
            result = result * y
        result = result * system.longest_element(self.expression.subsets[k])
        for z in self.zs[k:]:
            result = result * z
        return result

    def lengths_add_at(self, k: int) -> bool:
        system = self.expression.system
        expected = (
            sum(y.length for y in self.ys[:k])
            + system.longest_length(self.expression.subsets[k])
            + sum(z.length for z in self.zs[k:])
        )
        return self.center(k).length == expected


def reducedness_certificate(e: Expression) -> ReducednessCertificate:
    system = e.system
    subsets = e.subsets
    longest = system.longest_element
    ys, zs = [], []
    for before, after in zip(subsets, subsets[1:]):
        meet = before & after
        ys.append(longest(before) * longest(meet).inverse())
        zs.append(longest(meet).inverse() * longest(after))
    a0 = longest(e.start)
    for z in zs:
        a0 = a0 * z
    expected = system.longest_length(e.start) + sum(z.length for z in zs)
    return ReducednessCertificate(
        expression=e,
        ys=tuple(ys),
        zs=tuple(zs),
        a0=a0,
        lengths_add=a0.length == expected,
    )


def is_reduced(e: Expression) -> bool:
    """Lengths add in a₀ = w_{I₀} · z₁ ⋯ z_d."""
    return e.is_reduced


def reduced_at(e: Expression, i: int, path: Optional[ForwardPath] = None) -> bool:
    """Whether step i (from I_i to I_{i+1}) of the forward path is reduced."""
    if not 0 <= i < e.width:
        raise ValidationError(f"step index {i} outside width {e.width}", field="index")
    if e.steps[i][0] == DOWN:
        return True
    path = path or forward_path(e)
    before, after = path.cosets[i], path.cosets[i + 1]
    return before.min == after.min and path.redundancies[i] == path.redundancies[i + 1]


def is_reduced_forward(e: Expression) -> bool:
    path = forward_path(e)
    return all(reduced_at(e, i, path) for i in range(e.width))


def expr_lengths(e: Expression) -> CosetLengths:
    """Sums of up-step and down-step length increments."""
    system = e.system
    plus = minus = 0
    for (sign, _), before, after in zip(e.steps, e.subsets, e.subsets[1:]):
        delta = system.longest_length(after) - system.longest_length(before)
        if sign == UP:
            plus += delta
        else:
            minus -= delta
    return CosetLengths(plus=plus, minus=minus)


# ============================================================================
# STRUCTURAL OPERATIONS
# ============================================================================

def reverse(e: Expression) -> Expression:
    return Expression.from_subsets(e.system, list(reversed(e.subsets)))


@dataclass(frozen=True)
class ConcatResult:
    """Concatenation with its reducedness verdict"""
    expression: Expression
    reduced: bool  # lengths add in p̄·w_J⁻¹·q̄ for reduced factors


def concat(a: Expression, b: Expression) -> ConcatResult:
    if a.system is not b.system:
        raise UsageError("cannot concatenate expressions of different systems")
    if a.end != b.start:
        raise UsageError(
            "endpoint mismatch",
            details={
                "left_end": notation.subset_labels(a.system, a.end),
                "right_start": notation.subset_labels(b.system, b.start),
            },
        )
    joined = Expression(a.system, a.start, a.steps + b.steps)
    if not (a.is_reduced and b.is_reduced):
        return ConcatResult(joined, False)
    x = a.coset.max * a.system.longest_element(a.end).inverse()
    q_max = b.coset.max
    return ConcatResult(joined, (x * q_max).length == x.length + q_max.length)


def subexpression_maxima_check(e: Expression, m: int) -> bool:
    """
    For reduced e: p̄_i = p̄_m · (w_{I_m}⁻¹ q̄_i) for every i ≥ m, where q is
    the forward path of the subword starting at I_m.
    """
    system = e.system
    outer = forward_path(e).cosets
    inner = forward_path(e.subword(m, e.width)).cosets
    w_inv = system.longest_element(e.subsets[m]).inverse()
    return all(
        outer[m + k].max == outer[m].max * (w_inv * q.max)
        for k, q in enumerate(inner)
    )


def drop_initial_up_step(e: Expression) -> Expression:
    if not e.steps or e.steps[0][0] != UP:
        raise ValidationError("expression does not begin with an up-step", field="expression")
    return e.subword(1, e.width)


def drop_final_down_step(e: Expression) -> Expression:
    if not e.steps or e.steps[-1][0] != DOWN:
        raise ValidationError("expression does not end with a down-step", field="expression")
    return e.subword(0, e.width - 1)


def drop_initial_down_step(e: Expression) -> Expression:
    if not e.steps or e.steps[0][0] != DOWN:
        raise ValidationError("expression does not begin with a down-step", field="expression")
    return e.subword(1, e.width)


@dataclass(frozen=True)
class AddabilityVerdict:
    """Reducedness of e∘[I,Is], e∘[I,It] and e∘[I,Is,Ist]"""
    with_s: bool
    with_t: bool
    with_both: bool


def is_addable(e: Expression, s: int, t: int) -> AddabilityVerdict:
    end = e.end
    if s in end or t in end or s == t:
        raise UsageError("s and t must be distinct and outside the final subset")
    if not e.system.is_finitary(end | {s, t}):
        raise ValidationError("I ∪ {s,t} is not finitary", field="subset")
    return AddabilityVerdict(
        with_s=Expression(e.system, e.start, e.steps + ((UP, s),)).is_reduced,
        with_t=Expression(e.system, e.start, e.steps + ((UP, t),)).is_reduced,
        with_both=Expression(e.system, e.start, e.steps + ((UP, s), (UP, t))).is_reduced,
    )


def plus_expression(
    e: Expression,
    factor: CoxeterSystem,
    subset: Iterable[int],
    product: Optional[CoxeterSystem] = None,
) -> Expression:
    """e^{(+J)}: every subset of e extended by J ⊆ S′ inside W × W′."""
    subset = factor.require_finitary(frozenset(subset))
    product = product or e.system.product(factor)
    shifted = frozenset(s + e.system.rank for s in subset)
    return Expression(product, e.start | shifted, e.steps)


# ============================================================================
# MULTISTEP EXPRESSIONS
# ============================================================================

@dataclass(frozen=True)
class MultistepExpression:
    """[[I₀ ⊆ K₁ ⊇ I₁ ⊆ … ⊆ K_m ⊇ I_m]]"""
    system: CoxeterSystem = field(compare=False, repr=False)
    chain: Tuple[GenSubset, ...]

    def __post_init__(self):
        chain = tuple(frozenset(c) for c in self.chain)
        object.__setattr__(self, "chain", chain)
        if len(chain) % 2 == 0:
            raise ValidationError("a multistep chain has odd length", field="chain")
        for subset in chain:
            if not self.system.is_finitary(subset):
                raise ValidationError("multistep chain contains a non-finitary subset", field="chain")
        for i in range(1, len(chain), 2):
            if not (chain[i - 1] <= chain[i] >= chain[i + 1]):
                raise ValidationError(f"chain fails I ⊆ K ⊇ I at position {i}", field="chain")

    @property
    def legs(self) -> int:
        return len(self.chain) // 2

    def __str__(self) -> str:
        return "[" + notation.format_brackets(self.system, self.chain) + "]"


def multistep_to_singlestep(m: MultistepExpression) -> Expression:
    """Each leg adds K∖I ascending, then removes K∖I′ descending."""
    steps: List[Step] = []
    chain = m.chain
    for i in range(1, len(chain), 2):
        before, top, after = chain[i - 1], chain[i], chain[i + 1]
        steps += [(UP, g) for g in sorted(top - before)]
        steps += [(DOWN, g) for g in sorted(top - after, reverse=True)]
    return Expression(m.system, chain[0], tuple(steps))


def singlestep_to_multistep(e: Expression) -> MultistepExpression:
    """Group maximal runs of up-steps and down-steps into legs."""
    chain = [e.start]
    i = 0
    subsets = e.subsets
    while i < e.width:
        while i < e.width and e.steps[i][0] == UP:
            i += 1
        chain.append(subsets[i])
        while i < e.width and e.steps[i][0] == DOWN:
            i += 1
        chain.append(subsets[i])
    return MultistepExpression(e.system, tuple(chain))


def is_reduced_multistep(m: MultistepExpression) -> bool:
    """ℓ(w_{K₁} w_{I₁}⁻¹ w_{K₂} ⋯ w_{K_m}) = ℓ(K₁) − ℓ(I₁) + ℓ(K₂) − ⋯ + ℓ(K_m)."""
    system = m.system
    if m.legs == 0:
        return True
    chain = m.chain
    element = system.identity()
    expected = 0
    for i in range(1, len(chain), 2):
        if i > 1:
            element = element * system.longest_element(chain[i - 1]).inverse()
            expected -= system.longest_length(chain[i - 1])
        element = element * system.longest_element(chain[i])
        expected += system.longest_length(chain[i])
    return element.length == expected


def evaluate_multistep(m: MultistepExpression) -> DoubleCoset:
    return evaluate(multistep_to_singlestep(m))

"""
Switchback Tables

For a finite irreducible type with generators s1..sn, every pair (a, b)
with J = S∖s_a, s = s_a, t = s_b and s_a ≠ w₀ s_b w₀ has a switchback
relation; its right-hand side is determined by the letters c = u₁ … u_{δ−1}
of the rotation sequence. Tables are always regenerated from the group.
Types A, B, D and I2(m) also have closed forms, which are used as a
cross-check.
"""

import json
import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from scox.core.system import CoxeterSystem, named_system
from scox.exceptions import DomainError, InvariantViolation, NoRotationError, ValidationError
from scox.monitoring.metrics import time_operation
from scox.services.relations import RelationCalculus, relation_calculus

logger = logging.getLogger(__name__)

_FAMILY = re.compile(r"^([A-H])(\d+)$")
_DIHEDRAL = re.compile(r"^I2\((\d+)\)$")


@dataclass(frozen=True)
class TableRow:
    """One switchback: s = s_a, t = s_b, right-hand side letters c (1-based)"""
    a: int
    b: int
    c: Tuple[int, ...]
    flipped: bool = False  # a > b, derived from the reversal symmetry

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": list(self.c)}


@dataclass(frozen=True)
class SwitchbackTable:
    type_name: str
    rank: int
    rows: Tuple[TableRow, ...]

    def lookup(self, a: int, b: int) -> Optional[TableRow]:
        return next((r for r in self.rows if r.a == a and r.b == b), None)

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.rows], separators=(",", ":"))

    def to_text(self) -> str:
        """Aligned columns a, b, c; letters are concatenated while every index has one digit."""
        joiner = "" if self.rank <= 9 else ","
        cells = [("a", "b", "c")] + [
            (str(r.a), str(r.b), joiner.join(str(x) for x in r.c)) for r in self.rows
        ]
        width_a = max(len(c[0]) for c in cells)
        width_b = max(len(c[1]) for c in cells)
        lines = [f"{a:>{width_a}}  {b:>{width_b}}  {c}".rstrip() for a, b, c in cells]
        return "\n".join(lines) + "\n"


# ============================================================================
# COMPUTED TABLES
# ============================================================================

def _irreducible_system(type_name: str) -> CoxeterSystem:
    system = named_system(type_name)
    if len(system.components) != 1:
        raise DomainError(f"{type_name} is not irreducible", details={"type": type_name})
    if not system.is_finite:
        raise DomainError(f"{type_name} is not a finite type", details={"type": type_name})
    return system


def switchback_letters(
    system: CoxeterSystem,
    a: int,
    b: int,
    calculus: Optional[RelationCalculus] = None,
) -> Tuple[int, ...]:
    """c for J = S∖s_a, s = s_a, t = s_b, as 1-based generator numbers."""
    calculus = calculus or relation_calculus
    for value, name in ((a, "a"), (b, "b")):
        if not 1 <= value <= system.rank:
            raise ValidationError(f"{name}={value} outside 1..{system.rank}", field=name)
    s, t = a - 1, b - 1
    left = system.all_generators - {s}
    rotation = calculus.rotation_sequence(system, left, s, t)
    return tuple(g + 1 for g in rotation.c)


@time_operation("regenerate_table")
def regenerate_table(
    type_name: str,
    include_flips: bool = False,
    calculus: Optional[RelationCalculus] = None,
) -> SwitchbackTable:
    """
    The switchback table of a finite irreducible type.

    Rows (a, b) with a ≤ b are computed from rotation sequences; with
    include_flips the rows a > b are computed too and must equal the
    reversed sequence of (b, a). Types with a closed form are cross-checked.

    Raises:
        DomainError: for reducible or infinite types
        InvariantViolation: when a cross-check fails
    """
    system = _irreducible_system(type_name)
    calculus = calculus or relation_calculus
    n = system.rank
    family = _closed_form_family(system.name)
    rows: List[TableRow] = []

    for a in range(1, n + 1):
        for b in range(a, n + 1):
            try:
                letters = switchback_letters(system, a, b, calculus)
            except NoRotationError:
                continue
            if family is not None:
                expected = closed_form_sequence(system.name, a, b)
                if expected != letters:
                    raise InvariantViolation(
                        f"closed form disagrees at ({a},{b})",
                        details={"computed": list(letters), "closed_form": list(expected)},
                    )
            rows.append(TableRow(a, b, letters))

    if include_flips:
        forward = {(r.a, r.b): r.c for r in rows}
        for (a, b), letters in list(forward.items()):
            if a == b:
                continue
            flipped = switchback_letters(system, b, a, calculus)
            if flipped != tuple(reversed(letters)):
                raise InvariantViolation(
                    f"switchback ({b},{a}) is not the reverse of ({a},{b})",
                    details={"forward": list(letters), "flipped": list(flipped)},
                )
            rows.append(TableRow(b, a, flipped, flipped=True))
        rows.sort(key=lambda r: (r.a, r.b))

    logger.info(f"📋 [Tables] {system.name}: {len(rows)} switchback row(s)")
    return SwitchbackTable(type_name=system.name, rank=n, rows=tuple(rows))


# ============================================================================
# CLOSED FORMS
# ============================================================================

def _closed_form_family(type_name: str) -> Optional[str]:
    if _DIHEDRAL.match(type_name) or type_name in ("A2", "B2", "G2"):
        return "I"
    match = _FAMILY.match(type_name)
    if match and match.group(1) in ("A", "B", "C", "D"):
        return "B" if match.group(1) == "C" else match.group(1)
    return None


def _dihedral_order(type_name: str) -> int:
    match = _DIHEDRAL.match(type_name)
    if match:
        return int(match.group(1))
    return {"A2": 3, "B2": 4, "G2": 6}[type_name]


def closed_form_sequence(type_name: str, a: int, b: int) -> Tuple[int, ...]:
    """
    Closed-form switchback letters for types A, B/C, D and I2(m).

    Raises:
        NoRotationError: when s_a = w₀ s_b w₀
        DomainError: for a type without a closed form
    """
    family = _closed_form_family(type_name)
    if family is None:
        raise DomainError(f"no closed form for type {type_name}", details={"type": type_name})
    if family == "I":
        return _dihedral_form(_dihedral_order(type_name), a, b)
    n = int(_FAMILY.match(type_name).group(2))
    if family == "A":
        return _type_a_form(n, a, b)
    if family == "B":
        return _type_b_form(n, a, b)
    return _type_d_form(n, a, b)


def _no_rotation(a: int, b: int) -> NoRotationError:
    return NoRotationError(
        f"s{a} = w0 s{b} w0: the switchback context has a unique reduced expression",
        context={"a": a, "b": b},
    )


def _dihedral_form(m: int, a: int, b: int) -> Tuple[int, ...]:
    # w₀ swaps the two generators when m is odd and is central when m is even
    if (m % 2 == 1) != (a == b):
        raise _no_rotation(a, b)
    other = 3 - a
    return tuple(other if i % 2 == 0 else a for i in range(m - 2))


def _type_a_form(n: int, a: int, b: int) -> Tuple[int, ...]:
    if a + b == n + 1:
        raise _no_rotation(a, b)
    return (a + b,) if a + b <= n else (a + b - n - 1,)


def _type_b_form(rank: int, a: int, b: int) -> Tuple[int, ...]:
    # generators 0..n counted from the doubled edge, n + 1 = rank
    if a == b:
        raise _no_rotation(a, b)
    if a > b:
        return tuple(reversed(_type_b_form(rank, b, a)))
    n = rank - 1
    pa, pb = a - 1, b - 1
    return (n + 1 - pb + pa + 1, pa + 1)


# D_{n+2}: arm vertices 1..n counted from the branch node, fork ends 0 and 0̄
_FORK, _FORK_BAR = "0", "0bar"


def _d_index(n: int, g: int):
    if g == n + 1:
        return _FORK
    if g == n + 2:
        return _FORK_BAR
    return n + 1 - g


def _d_generator(n: int, index) -> int:
    if index == _FORK:
        return n + 1
    if index == _FORK_BAR:
        return n + 2
    return n + 1 - index


def _bar(index):
    return _FORK_BAR if index == _FORK else _FORK


def _is_fork(index) -> bool:
    return index in (_FORK, _FORK_BAR)


def _type_d_form(rank: int, a: int, b: int) -> Tuple[int, ...]:
    n = rank - 2
    pa, pb = _d_index(n, a), _d_index(n, b)
    fork_a, fork_b = _is_fork(pa), _is_fork(pb)

    if fork_a and fork_b:
        # w₀ is central for n even and swaps the fork ends for n odd
        partner = _bar(pa) if n % 2 == 0 else pa
        if pb != partner:
            raise _no_rotation(a, b)
        return (_d_generator(n, n),)
    if not fork_a and (fork_b or pb < pa):
        return tuple(reversed(_type_d_form(rank, b, a)))
    if pa == pb:
        raise _no_rotation(a, b)

    if fork_a:
        if pb < n:
            k = n - pb
            last = _bar(pa) if k % 2 == 0 else pa
            letters = (k, last)
        else:
            letters = (_bar(pa),)
    else:
        letters = (n + 1 - pb + pa, pa)
    return tuple(_d_generator(n, x) for x in letters)

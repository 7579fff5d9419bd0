"""
Root tables of finite Coxeter systems.

Roots are indexed globally: positive roots take indices 0..N-1 with the
simple root of generator i at index i, and the negative of root k is
k + N (mod 2N). Each generator acts on the 2N indices as a permutation;
elements of W are then compositions of these permutations.

Crystallographic and golden-ratio components are closed from their simple
roots with exact Z[phi] coordinates; other dihedral components use the
angle model, where roots are the 2m unit vectors at multiples of pi/m.
"""
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from scox.core import zphi
from scox.core.classification import Matrix
from scox.exceptions import InvariantViolation

logger = logging.getLogger(__name__)

_ZPHI_LABELS = (2, 3, 4, 5, 6)


@dataclass(frozen=True)
class RootTable:
    """Permutation action of every generator on the root indices."""
    positive_count: int                  # N
    generator_perms: Tuple[np.ndarray, ...]  # one int array of length 2N per generator

    @property
    def size(self) -> int:
        return 2 * self.positive_count

    def negate(self, index: int) -> int:
        return (index + self.positive_count) % self.size


def _cartan_matrix(matrix: Matrix, nodes: Sequence[int]) -> np.ndarray:
    r = len(nodes)
    cartan = np.zeros((r, r, 2), dtype=np.int64)
    for i in range(r):
        cartan[i, i] = zphi.TWO
        for j in range(i + 1, r):
            upper, lower = zphi.cartan_pair(int(matrix[nodes[i]][nodes[j]]))
            cartan[i, j] = upper
            cartan[j, i] = lower
    return cartan


def _close_component(matrix: Matrix, nodes: Sequence[int]) -> Tuple[List[int], List[List[int]]]:
    """
    Positive roots of one component by closure under simple reflections.

    Returns:
        (root order, local action) where local action[i][k] is the local
        index of s_i(root k), or -1 when s_i negates root k.
    """
    r = len(nodes)
    cartan = _cartan_matrix(matrix, nodes)
    simple = np.zeros((r, r, 2), dtype=np.int64)
    for i in range(r):
        simple[i, i] = zphi.ONE

    roots: List[np.ndarray] = [simple[i] for i in range(r)]
    index: Dict[bytes, int] = {root.tobytes(): k for k, root in enumerate(roots)}
    action: List[Dict[int, int]] = [dict() for _ in range(r)]
    queue = deque(range(r))

    while queue:
        k = queue.popleft()
        beta = roots[k]
        for i in range(r):
            if k == i:
                action[i][k] = -1
                continue
            # s_i(beta) = beta - <beta, alpha_i> alpha_i
            pairing = zphi.mul(beta, cartan[i]).sum(axis=0)
            gamma = beta.copy()
            gamma[i] = gamma[i] - pairing
            key = gamma.tobytes()
            if key not in index:
                if any(zphi.sign(tuple(c)) < 0 for c in gamma):
                    raise InvariantViolation(
                        "root closure produced a mixed-sign root",
                        details={"nodes": list(nodes)},
                    )
                index[key] = len(roots)
                roots.append(gamma)
                queue.append(index[key])
            action[i][k] = index[key]

    count = len(roots)
    return list(range(count)), [[action[i][k] for k in range(count)] for i in range(r)]


def _dihedral_component(m: int) -> Tuple[List[int], List[List[int]]]:
    """Angle model of I2(m): root k sits at angle k*pi/m, k < m positive."""
    order = [0, m - 1] + list(range(1, m - 1))
    local = {k: pos for pos, k in enumerate(order)}

    def to_local(k: int) -> int:
        k %= 2 * m
        return -1 if k >= m else local[k]

    s_action = [to_local(m - k) for k in order]
    t_action = [to_local(3 * m - 2 - k) for k in order]
    # -1 marks a positive root sent to a negative one; only the simple root itself
    return order, [s_action, t_action]


def build_root_table(matrix: Matrix, comps: Sequence[Tuple[int, ...]]) -> RootTable:
    """Assemble the global root table of a finite system from its components."""
    rank = len(matrix)
    local_tables = []
    for comp in comps:
        if len(comp) == 2 and matrix[comp[0]][comp[1]] not in _ZPHI_LABELS:
            local_tables.append((comp, _dihedral_component(int(matrix[comp[0]][comp[1]]))))
        else:
            local_tables.append((comp, _close_component(matrix, comp)))

    # simple roots first, then the remaining positive roots component by component
    global_index: Dict[Tuple[int, int], int] = {}
    next_index = rank
    for comp, (order, _) in local_tables:
        for pos in range(len(order)):
            if pos < len(comp):
                global_index[(comp[0], pos)] = comp[pos]
            else:
                global_index[(comp[0], pos)] = next_index
                next_index += 1
    positive = next_index
    size = 2 * positive

    perms = []
    for g in range(rank):
        perms.append(np.arange(size, dtype=np.int64))
    for comp, (order, action) in local_tables:
        for local_gen, g in enumerate(comp):
            perm = perms[g]
            for pos in range(len(order)):
                src = global_index[(comp[0], pos)]
                target_pos = action[local_gen][pos]
                if target_pos < 0:
                    dst = (src + positive) % size
                else:
                    dst = global_index[(comp[0], target_pos)]
                perm[src] = dst
                perm[(src + positive) % size] = (dst + positive) % size

    for perm in perms:
        perm.setflags(write=False)
    logger.debug(f"🌱 [Roots] {positive} positive roots over {len(comps)} component(s)")
    return RootTable(positive_count=positive, generator_perms=tuple(perms))

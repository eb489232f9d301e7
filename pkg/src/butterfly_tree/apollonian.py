"""Descartes quadruples, the Apollonian group, and Ford quadruples.

Four mutually tangent circles have curvatures satisfying the Descartes
identity 2*(k1^2+..+k4^2) = (k1+..+k4)^2.  Swapping the circle inscribed
opposite circle i is the linear involution S_i: k_i -> 2*(sum of the
others) - k_i.  The transposed ("adjoint") matrices also preserve the
identity; together they generate the super-Apollonian group.

Butterflies enter through Ford circles: the two edge fractions and the
center of a butterfly own tangent Ford circles of curvatures q_L^2,
q_R^2, q_c^2, tangent to the base line (curvature 0).  A linear bridge
carries Pythagorean triples onto the same quadruples, and short S-words
reproduce the pair moves h_1, h_2, h_3 and the edge moves u_L, u_R up to
a coordinate permutation; the search below enumerates which words and
permutations work rather than hard-coding one convention.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from . import intmat
from .errors import InvariantViolation
from .pythagoras import PythTriple


def _s_matrix(i: int) -> intmat.Matrix:
    return tuple(
        tuple((-1 if col == i - 1 else 2) if row == i - 1 else (1 if col == row else 0)
              for col in range(4))
        for row in range(4))


S_MATRICES: dict[int, intmat.Matrix] = {i: _s_matrix(i) for i in (1, 2, 3, 4)}


@dataclass(frozen=True)
class DescartesQuadruple:
    """Curvatures of four mutually tangent circles; identity enforced."""

    k1: int
    k2: int
    k3: int
    k4: int

    def __post_init__(self) -> None:
        ks = self.as_tuple()
        if 2 * sum(k * k for k in ks) != sum(ks) ** 2:
            raise InvariantViolation(f"Descartes identity fails for {ks}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)


QuadLike = Union[DescartesQuadruple, Sequence[int]]


def _as_quad(q: QuadLike) -> DescartesQuadruple:
    if isinstance(q, DescartesQuadruple):
        return q
    return DescartesQuadruple(*q)


def apply_S(i: int, q: QuadLike) -> DescartesQuadruple:
    """Replace curvature k_i by 2*(sum of the others) - k_i."""
    if i not in S_MATRICES:
        raise ValueError(f"S index must be 1..4, got {i}")
    return DescartesQuadruple(*intmat.mat_vec(S_MATRICES[i], _as_quad(q).as_tuple()))


def adjoint_S(i: int) -> intmat.Matrix:
    """Transpose of S_i; with the S_i it generates the super-Apollonian group."""
    if i not in S_MATRICES:
        raise ValueError(f"S index must be 1..4, got {i}")
    return intmat.transpose(S_MATRICES[i])


def apply_matrix(matrix: intmat.Matrix, q: QuadLike) -> DescartesQuadruple:
    """Apply any 4x4 integer matrix, re-validating the Descartes identity."""
    return DescartesQuadruple(*intmat.mat_vec(matrix, _as_quad(q).as_tuple()))


def super_orbit(seed: QuadLike, depth: int) -> set[tuple[int, int, int, int]]:
    """Distinct quadruples within `depth` steps of S_1..S_4 and adjoints.

    Every element is revalidated on construction, so merely building the
    orbit proves the identity is preserved along every word.
    """
    start = _as_quad(seed).as_tuple()
    generators = [S_MATRICES[i] for i in (1, 2, 3, 4)]
    generators += [adjoint_S(i) for i in (1, 2, 3, 4)]
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        quad, dist = frontier.popleft()
        if dist >= depth:
            continue
        for gen in generators:
            grown = apply_matrix(gen, quad).as_tuple()
            if grown not in seen:
                seen.add(grown)
                frontier.append((grown, dist + 1))
    return seen


def ford_quadruple(state) -> DescartesQuadruple:
    """Curvatures (q_L^2, q_R^2, q_c^2, 0) of a butterfly's Ford circles.

    The base line is the fourth, zero-curvature member; the identity holds
    automatically because the edges are Farey neighbours.
    """
    return DescartesQuadruple(state.q_l ** 2, state.q_r ** 2, state.q_c ** 2, 0)


def triple_to_quadruple(t: PythTriple) -> DescartesQuadruple:
    """Linear bridge (a, b, c) -> (c-b, c+b, 2(c+a), 0).

    Sends the triple of a same-parity Euclid pair exactly onto the pair's
    Ford quadruple, and a mixed-parity pair's triple onto twice it.
    """
    return DescartesQuadruple(t.c - t.b, t.c + t.b, 2 * (t.c + t.a), 0)


# Pair moves whose quadruple-level realizations the search looks for:
# the three Pythagorean-tree steps plus the two parity-breaking edge
# generators (2x2 blocks of U_L and U_R).
_STEP_MATRICES: dict[str, intmat.Matrix] = {
    "h1": ((1, 2), (0, 1)),
    "h2": ((2, 1), (1, 0)),
    "h3": ((2, -1), (1, 0)),
    "U_L": ((1, 1), (1, 2)),
    "U_R": ((2, 1), (1, 1)),
}


def _pair_ford(m: int, n: int) -> tuple[int, int, int, int]:
    return (n * n, m * m, (m + n) ** 2, 0)


@dataclass(frozen=True)
class CorrespondenceReport:
    """All (word, permutation) conventions realizing one pair move.

    Words are tuples of S indices applied left to right; a permutation
    perm means word(Ford(x)) equals Ford(step(x)) reordered so that slot
    j holds coordinate perm[j] of the target, for every tested pair x.
    """

    step: str
    max_word_length: int
    pairs_tested: int
    matches: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def found(self) -> bool:
        return bool(self.matches)


def correspondence_search(h_index: Union[int, str],
                          max_word_length: int = 3,
                          pair_bound: int = 12) -> CorrespondenceReport:
    """Exhaustive search for S-words intertwining one pair move.

    h_index: 1, 2, 3 (as "h1".."h3") or "U_L"/"U_R".  Tests every word
    over S_1..S_4 up to max_word_length against every output coordinate
    permutation, on all coprime pairs m > n within pair_bound.  An empty
    match list is a finding, not an error.
    """
    step = f"h{h_index}" if isinstance(h_index, int) else h_index
    if step not in _STEP_MATRICES:
        raise ValueError(f"unknown step {h_index!r}")
    move = _STEP_MATRICES[step]
    pairs = [(m, n) for m in range(2, pair_bound + 1)
             for n in range(1, m) if gcd(m, n) == 1]
    sources = [_pair_ford(m, n) for m, n in pairs]
    targets = [_pair_ford(*intmat.mat_vec(move, (m, n))) for m, n in pairs]

    matches = []
    for length in range(1, max_word_length + 1):
        for word in itertools.product((1, 2, 3, 4), repeat=length):
            outputs = []
            for src in sources:
                cur = src
                for i in word:
                    cur = intmat.mat_vec(S_MATRICES[i], cur)
                outputs.append(cur)
            for perm in itertools.permutations(range(4)):
                if all(out == tuple(tgt[p] for p in perm)
                       for out, tgt in zip(outputs, targets)):
                    matches.append((word, perm))
    return CorrespondenceReport(step, max_word_length, len(pairs), tuple(matches))

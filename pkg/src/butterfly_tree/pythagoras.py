"""Primitive Pythagorean triples and their tree, tied to the C-cell branch.

A coprime pair (m, n) of Euclid parameters generates a triple two ways
depending on parity: both odd gives (mn, (m^2-n^2)/2, (m^2+n^2)/2), mixed
parity gives (2mn, m^2-n^2, m^2+n^2).  Three matrices H_1, H_2, H_3 grow
the full tree of primitive triples from (3, 4, 5); the corresponding
moves h_1, h_2, h_3 act on the pairs, and the two pictures commute.

Butterflies plug in through (m, n) = (q_R, q_L): the parity class of the
pair is preserved exactly by the parity-preserving generators, so nodes
on C-cell/chain branches carry well-defined triples.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Optional, Union

from . import intmat
from .errors import InvariantViolation, NotCCell, NotCoprime

H_MATRICES: dict[int, intmat.Matrix] = {
    1: ((1, -2, 2), (2, -1, 2), (2, -2, 3)),
    2: ((1, 2, 2), (2, 1, 2), (2, 2, 3)),
    3: ((-1, 2, 2), (-2, 1, 2), (-2, 2, 3)),
}

h_MATRICES: dict[int, intmat.Matrix] = {
    1: ((1, 2), (0, 1)),
    2: ((2, 1), (1, 0)),
    3: ((2, -1), (1, 0)),
}


@dataclass(frozen=True)
class EuclidPair:
    """Coprime positive parameters (m, n); (q_R, q_L) for butterflies."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise NotCoprime(f"parameters must be positive: ({self.m}, {self.n})")
        if gcd(self.m, self.n) != 1:
            raise NotCoprime(f"({self.m}, {self.n}) is not coprime")

    @property
    def same_parity(self) -> bool:
        return (self.m - self.n) % 2 == 0


@dataclass(frozen=True)
class PythTriple:
    """Pythagorean triple; b (or a) may be negative, c is positive.

    gcd(a, b, c) = 1, so the degenerate (1, 0, 1) of the root pair is
    allowed but imprimitive multiples are not.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise InvariantViolation(f"hypotenuse must be positive: {self}")
        if self.a * self.a + self.b * self.b != self.c * self.c:
            raise InvariantViolation(f"not a Pythagorean triple: {self}")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise InvariantViolation(f"not primitive: {self}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def leg_set(self) -> tuple[int, int, int]:
        """Orientation-free form (smaller |leg|, larger |leg|, c)."""
        x, y = abs(self.a), abs(self.b)
        return (min(x, y), max(x, y), self.c)


PairLike = Union[EuclidPair, tuple]


def _as_pair(pair: PairLike) -> EuclidPair:
    if isinstance(pair, EuclidPair):
        return pair
    return EuclidPair(*pair)


def euclid_to_triple(pair: PairLike) -> PythTriple:
    """Triple of a coprime pair, branch chosen by parity.

    With m < n the middle entry comes out negative, which is how butterfly
    nodes with q_L > q_R (left tails) are distinguished.
    """
    p = _as_pair(pair)
    m, n = p.m, p.n
    if p.same_parity:
        return PythTriple(m * n, (m * m - n * n) // 2, (m * m + n * n) // 2)
    return PythTriple(2 * m * n, m * m - n * n, m * m + n * n)


def apply_H(i: int, t: PythTriple) -> PythTriple:
    """One tree step on a triple; preserves the identity, primitivity,
    and each entry's parity."""
    if i not in H_MATRICES:
        raise ValueError(f"H index must be 1, 2 or 3, got {i}")
    return PythTriple(*intmat.mat_vec(H_MATRICES[i], t.as_tuple()))


def apply_h(i: int, pair: PairLike) -> EuclidPair:
    """One tree step on Euclid parameters; commutes with euclid_to_triple."""
    if i not in h_MATRICES:
        raise ValueError(f"h index must be 1, 2 or 3, got {i}")
    p = _as_pair(pair)
    return EuclidPair(*intmat.mat_vec(h_MATRICES[i], (p.m, p.n)))


def functor_holds(i: int, m: int, n: int) -> bool:
    """Raw-integer check that triple(h_i(m,n)) = H_i(triple(m,n)).

    Works directly on matrix arithmetic so it can probe pairs whose h_i
    image leaves the positive quadrant (where EuclidPair would reject).
    """
    if gcd(m, n) != 1:
        raise NotCoprime(f"({m}, {n}) is not coprime")

    def raw_triple(m_: int, n_: int) -> tuple[int, int, int]:
        if (m_ - n_) % 2 == 0:
            return (m_ * n_, (m_ * m_ - n_ * n_) // 2, (m_ * m_ + n_ * n_) // 2)
        return (2 * m_ * n_, m_ * m_ - n_ * n_, m_ * m_ + n_ * n_)

    stepped = intmat.mat_vec(h_MATRICES[i], (m, n))
    left = raw_triple(*stepped)
    right = intmat.mat_vec(H_MATRICES[i], raw_triple(m, n))
    return left == right


def primitive_triple_oracle(c_max: int) -> set[PythTriple]:
    """Brute-force scan of all primitive triples with positive entries.

    Independent of the tree: tries every leg pair a < b, checks for a
    perfect-square hypotenuse, and orients odd leg first (the orientation
    the same-parity Euclid branch produces).
    """
    if c_max < 5:
        raise ValueError("c_max must be at least 5")
    found = set()
    for a in range(3, c_max):
        aa = a * a
        for b in range(a + 1, c_max):
            cc = aa + b * b
            c = isqrt(cc)
            if c > c_max:
                break
            if c * c != cc or gcd(a, b) != 1:
                continue
            odd, even = (a, b) if a % 2 else (b, a)
            found.add(PythTriple(odd, even, c))
    return found


def triple_tree(c_max: Optional[int] = None,
                max_depth: Optional[int] = None,
                ) -> Iterator[tuple[tuple[int, ...], PythTriple]]:
    """Breadth-first H-tree from (3,4,5), bounded by c and/or word length.

    Yields (word, triple) pairs; words are tuples over {1,2,3}.  Pruning
    at c_max is exhaustive because every H_i strictly increases c.
    """
    if c_max is None and max_depth is None:
        raise ValueError("need c_max or max_depth, the tree is infinite")
    if c_max is not None and c_max < 5:
        return
    queue = deque([((), PythTriple(3, 4, 5))])
    while queue:
        word, triple = queue.popleft()
        yield word, triple
        if max_depth is not None and len(word) >= max_depth:
            continue
        for i in (1, 2, 3):
            grown = apply_H(i, triple)
            if c_max is None or grown.c <= c_max:
                queue.append((word + (i,), grown))


def cbranch_to_triple(node) -> PythTriple:
    """Triple of a parity-preserving tree node via (q_R, q_L) as (m, n).

    E-cell nodes break the parity class, so they are rejected; the root's
    degenerate (1, 0, 1) is produced rather than rejected.
    """
    if node.cell_class == "E-cell":
        raise NotCCell(
            f"{node.word_str} is an E-cell node; only parity-preserving "
            "nodes carry a triple")
    return euclid_to_triple(EuclidPair(node.state.q_r, node.state.q_l))

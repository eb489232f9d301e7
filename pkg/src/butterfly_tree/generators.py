"""The eight generators of the butterfly hierarchy.

A butterfly with a tail is an equivalence class of nested sub-spectra,
pinned down by three integers (q_R, q_L, Delta-sigma): the denominators of
its right and left flux edges and the difference sigma_+ - sigma_- of its
two central gap slopes.  Six generators produce the babies inside a parent
(C_L, C_R preserve the parity of q_c = q_L + q_R; U_L, U_R, D_L, D_R do
not), and two chain generators (C_cL, C_cR) walk the tail attached to the
edge with the larger denominator.

Each generator is realised three ways and the routes must agree:

* an explicit recursion on the full state (flux edges + slope pair),
* a 4x4 integer matrix on (q_R, q_L, sigma_+, sigma_-),
* its projections, 3x3 on (q_R, q_L, Delta-sigma) and 2x2 on (q_R, q_L).

All eight matrices are unimodular (determinant +1 in every size).  The
C-type generators are unipotent; the U/D types have eigenvalues 1 and
(3 +/- sqrt(5))/2 in the 3x3 picture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from . import intmat
from .errors import InvariantViolation, TailDirectionMismatch
from .farey import FareyDifference, FriendlyTriplet, farey_difference, mediant


class GeneratorKind(enum.Enum):
    """The eight generators, in canonical child order."""

    C_L = "C_L"
    C_R = "C_R"
    U_L = "U_L"
    U_R = "U_R"
    D_L = "D_L"
    D_R = "D_R"
    C_CL = "C_cL"
    C_CR = "C_cR"

    @property
    def token(self) -> str:
        """Two-letter command-line token (chains are TL/TR)."""
        return _TOKENS[self]

    @classmethod
    def from_token(cls, text: str) -> "GeneratorKind":
        key = text.strip().upper().replace("_", "")
        for kind, token in _TOKENS.items():
            if key == token or key == kind.value.upper().replace("_", ""):
                return kind
        raise ValueError(f"unknown generator token {text!r}")

    @property
    def is_chain(self) -> bool:
        return self in (GeneratorKind.C_CL, GeneratorKind.C_CR)

    @property
    def is_parity_preserving(self) -> bool:
        """C-type babies keep the parity of q_c; U/D babies do not."""
        return self in (GeneratorKind.C_L, GeneratorKind.C_R)

    @property
    def cell_class(self) -> str:
        if self.is_chain:
            return "chain"
        return "C-cell" if self.is_parity_preserving else "E-cell"


_TOKENS = {
    GeneratorKind.C_L: "CL",
    GeneratorKind.C_R: "CR",
    GeneratorKind.U_L: "UL",
    GeneratorKind.U_R: "UR",
    GeneratorKind.D_L: "DL",
    GeneratorKind.D_R: "DR",
    GeneratorKind.C_CL: "TL",
    GeneratorKind.C_CR: "TR",
}

BABY_KINDS = (
    GeneratorKind.C_L,
    GeneratorKind.C_R,
    GeneratorKind.U_L,
    GeneratorKind.U_R,
    GeneratorKind.D_L,
    GeneratorKind.D_R,
)

# 4x4 action on the column (q_R, q_L, sigma_+, sigma_-).  The upper-left
# 2x2 block acts on the denominators alone and the 3x3 projection onto
# (q_R, q_L, Delta-sigma) follows by subtracting the last two rows.
_FOUR: dict[GeneratorKind, intmat.Matrix] = {
    GeneratorKind.C_L: ((1, 2, 0, 0),
                        (0, 1, 0, 0),
                        (0, 1, 1, 0),
                        (0, 1, 0, 1)),
    GeneratorKind.C_R: ((1, 0, 0, 0),
                        (2, 1, 0, 0),
                        (1, 0, 1, 0),
                        (1, 0, 0, 1)),
    GeneratorKind.U_L: ((1, 1, 0, 0),
                        (1, 2, 0, 0),
                        (0, 1, 1, 0),
                        (1, 1, 0, 1)),
    GeneratorKind.U_R: ((2, 1, 0, 0),
                        (1, 1, 0, 0),
                        (1, 1, 1, 0),
                        (1, 0, 0, 1)),
    GeneratorKind.D_L: ((1, 1, 0, 0),
                        (1, 2, 0, 0),
                        (1, 1, 1, 0),
                        (0, 1, 0, 1)),
    GeneratorKind.D_R: ((2, 1, 0, 0),
                        (1, 1, 0, 0),
                        (1, 0, 1, 0),
                        (1, 1, 0, 1)),
    GeneratorKind.C_CL: ((0, 1, 0, 0),
                         (-1, 2, 0, 0),
                         (-1, 1, 1, 0),
                         (-1, 1, 0, 1)),
    GeneratorKind.C_CR: ((2, -1, 0, 0),
                         (1, 0, 0, 0),
                         (1, -1, 1, 0),
                         (1, -1, 0, 1)),
}


def _project_three(m4: intmat.Matrix) -> intmat.Matrix:
    """3x3 matrix on (q_R, q_L, Delta-sigma) implied by the 4x4 one."""
    top = [m4[0][:2] + (0,), m4[1][:2] + (0,)]
    plus, minus = m4[2], m4[3]
    third = tuple(plus[j] - minus[j] for j in range(2)) + (1,)
    return tuple(top) + (third,)


def _project_two(m4: intmat.Matrix) -> intmat.Matrix:
    return (m4[0][:2], m4[1][:2])


@dataclass(frozen=True)
class GeneratorMatrix:
    """Canonical matrices of one generator in the three representations.

    The 2x2 block on (q_R, q_L) sits in the top-left corner of both larger
    matrices; all three have determinant +1.
    """

    kind: GeneratorKind
    two_by_two: intmat.Matrix
    three_by_three: intmat.Matrix
    four_by_four: intmat.Matrix


def canonical_matrices(kind: GeneratorKind) -> GeneratorMatrix:
    four = _FOUR[kind]
    return GeneratorMatrix(kind, _project_two(four), _project_three(four), four)


@dataclass(frozen=True)
class ButterflyLabel:
    """Unique integer label (q_R, q_L, Delta-sigma) of a butterfly with tail."""

    q_r: int
    q_l: int
    delta_sigma: int

    def __post_init__(self) -> None:
        if self.q_r < 1 or self.q_l < 1:
            raise InvariantViolation(f"denominators must be positive: {self}")
        if gcd(self.q_r, self.q_l) != 1:
            raise InvariantViolation(f"edge denominators share a factor: {self}")
        q_c = self.q_r + self.q_l
        if abs(self.delta_sigma) >= q_c or (self.delta_sigma - q_c) % 2:
            raise InvariantViolation(
                f"Delta-sigma {self.delta_sigma} incompatible with q_c {q_c}")

    @property
    def q_c(self) -> int:
        return self.q_r + self.q_l

    @property
    def sigma_plus(self) -> int:
        return (self.q_c + self.delta_sigma) // 2

    @property
    def sigma_minus(self) -> int:
        return (self.q_c - self.delta_sigma) // 2

    @property
    def tail_direction(self) -> str:
        if self.q_r > self.q_l:
            return "right"
        if self.q_l > self.q_r:
            return "left"
        return "none"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.q_r, self.q_l, self.delta_sigma)


@dataclass(frozen=True)
class ButterflyState:
    """Flux edges and central slope pair of one butterfly.

    left < right are the friendly flux edges; the center is their mediant.
    sigma_plus and sigma_minus are the magnitudes of the two slopes of the
    density lines crossing at the central gap (the actual slopes are
    +sigma_plus and -sigma_minus), with sigma_plus + sigma_minus = q_c.

    Construction does not validate, so tests can tamper; `check` reports
    violations and the generator routes raise if one ever appears.
    """

    left: Fraction
    right: Fraction
    sigma_plus: int
    sigma_minus: int

    @property
    def center(self) -> Fraction:
        return mediant(self.left, self.right)

    @property
    def q_r(self) -> int:
        return self.right.denominator

    @property
    def q_l(self) -> int:
        return self.left.denominator

    @property
    def q_c(self) -> int:
        return self.q_r + self.q_l

    @property
    def delta_sigma(self) -> int:
        return self.sigma_plus - self.sigma_minus

    @property
    def width(self) -> Fraction:
        return self.right - self.left

    @property
    def label(self) -> ButterflyLabel:
        return ButterflyLabel(self.q_r, self.q_l, self.delta_sigma)

    @property
    def triplet(self) -> FriendlyTriplet:
        return FriendlyTriplet.from_pair(self.left, self.right)

    @property
    def tail_direction(self) -> str:
        if self.q_r > self.q_l:
            return "right"
        if self.q_l > self.q_r:
            return "left"
        return "none"

    @property
    def tail_generator(self) -> Optional[GeneratorKind]:
        side = self.tail_direction
        if side == "right":
            return GeneratorKind.C_CR
        if side == "left":
            return GeneratorKind.C_CL
        return None

    @property
    def accumulation(self) -> FareyDifference:
        """Where the tail converges: the Farey difference of the edges."""
        return farey_difference(self.left, self.right)

    def check(self) -> list[str]:
        """Invariant failures, empty when the state is consistent."""
        problems = []
        if not (0 <= self.left < self.right <= 1):
            problems.append(f"edges out of order: {self.left}, {self.right}")
        d = (self.left.numerator * self.right.denominator
             - self.right.numerator * self.left.denominator)
        if d != -1:
            problems.append(f"edges not friendly: determinant {d}")
        if self.sigma_plus < 1 or self.sigma_minus < 1:
            problems.append(
                f"slopes must be positive: ({self.sigma_plus}, {self.sigma_minus})")
        if self.sigma_plus + self.sigma_minus != self.q_c:
            problems.append(
                f"slope sum {self.sigma_plus + self.sigma_minus} != q_c {self.q_c}")
        return problems


ROOT_STATE = ButterflyState(Fraction(0), Fraction(1), 1, 1)
ROOT_LABEL = ButterflyLabel(1, 1, 0)


def _combo(a: int, u: Fraction, b: int, v: Fraction) -> Fraction:
    """Integer combination a*u (+) b*v taken on numerator and denominator.

    The generator actions keep every output in lowest terms (friendliness
    forces gcd 1), so the Fraction constructor never actually reduces.
    """
    return Fraction(a * u.numerator + b * v.numerator,
                    a * u.denominator + b * v.denominator)


def _check_tail(kind: GeneratorKind, state: ButterflyState) -> None:
    if kind is GeneratorKind.C_CR and state.q_r <= state.q_l:
        raise TailDirectionMismatch(
            f"C_cR needs q_R > q_L, state has ({state.q_r}, {state.q_l})")
    if kind is GeneratorKind.C_CL and state.q_l <= state.q_r:
        raise TailDirectionMismatch(
            f"C_cL needs q_L > q_R, state has ({state.q_r}, {state.q_l})")


def apply_state(kind: GeneratorKind, state: ButterflyState) -> ButterflyState:
    """One generator step on the full state, by the explicit recursion.

    This route is independent of the canonical matrices; tests compare the
    two.  Raises TailDirectionMismatch for a chain step against the tail
    and InvariantViolation if the result fails its checks (never expected).
    """
    _check_tail(kind, state)
    v_l, v_r = state.left, state.right
    s_p, s_m = state.sigma_plus, state.sigma_minus
    q_l, q_r, q_c = state.q_l, state.q_r, state.q_c
    if kind is GeneratorKind.C_L:
        new = ButterflyState(v_l, _combo(1, v_r, 2, v_l), s_p + q_l, s_m + q_l)
    elif kind is GeneratorKind.C_R:
        new = ButterflyState(_combo(1, v_l, 2, v_r), v_r, s_p + q_r, s_m + q_r)
    elif kind is GeneratorKind.U_L:
        new = ButterflyState(_combo(2, v_l, 1, v_r), _combo(1, v_l, 1, v_r),
                             s_p + q_l, s_m + q_c)
    elif kind is GeneratorKind.U_R:
        new = ButterflyState(_combo(1, v_l, 1, v_r), _combo(1, v_l, 2, v_r),
                             s_p + q_c, s_m + q_r)
    elif kind is GeneratorKind.D_L:
        new = ButterflyState(_combo(2, v_l, 1, v_r), _combo(1, v_l, 1, v_r),
                             s_p + q_c, s_m + q_l)
    elif kind is GeneratorKind.D_R:
        new = ButterflyState(_combo(1, v_l, 1, v_r), _combo(1, v_l, 2, v_r),
                             s_p + q_r, s_m + q_c)
    elif kind is GeneratorKind.C_CL:
        step = q_l - q_r
        new = ButterflyState(_combo(2, v_l, -1, v_r), v_l, s_p + step, s_m + step)
    else:
        step = q_r - q_l
        new = ButterflyState(v_r, _combo(2, v_r, -1, v_l), s_p + step, s_m + step)
    problems = new.check()
    if problems:
        raise InvariantViolation(
            f"{kind.value} on {state} produced a bad state: " + "; ".join(problems))
    return new


def apply_label(kind: GeneratorKind, label: ButterflyLabel) -> ButterflyLabel:
    """One generator step on the integer label, via the 3x3 matrix."""
    if kind is GeneratorKind.C_CR and label.q_r <= label.q_l:
        raise TailDirectionMismatch(
            f"C_cR needs q_R > q_L, label has ({label.q_r}, {label.q_l})")
    if kind is GeneratorKind.C_CL and label.q_l <= label.q_r:
        raise TailDirectionMismatch(
            f"C_cL needs q_L > q_R, label has ({label.q_r}, {label.q_l})")
    three = canonical_matrices(kind).three_by_three
    q_r, q_l, d_s = intmat.mat_vec(three, label.as_tuple())
    return ButterflyLabel(q_r, q_l, d_s)


@dataclass(frozen=True)
class ConsistencyReport:
    """Agreement of the state recursion with the three matrix routes."""

    kind: GeneratorKind
    from_state: tuple[int, int, int, int]
    from_four: tuple[int, ...]
    from_three: tuple[int, ...]
    from_two: tuple[int, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def representation_consistency(kind: GeneratorKind,
                               state: ButterflyState) -> ConsistencyReport:
    """Apply one generator along all routes and compare the results.

    The state route uses the explicit recursion; the matrix routes act on
    (q_R, q_L, sigma_+, sigma_-), (q_R, q_L, Delta-sigma) and (q_R, q_L).
    """
    mats = canonical_matrices(kind)
    new = apply_state(kind, state)
    from_state = (new.q_r, new.q_l, new.sigma_plus, new.sigma_minus)
    four = intmat.mat_vec(mats.four_by_four, (state.q_r, state.q_l,
                                              state.sigma_plus, state.sigma_minus))
    three = intmat.mat_vec(mats.three_by_three,
                           (state.q_r, state.q_l, state.delta_sigma))
    two = intmat.mat_vec(mats.two_by_two, (state.q_r, state.q_l))
    failures = []
    if four != from_state:
        failures.append(f"4x4 route {four} != state route {from_state}")
    if three != (new.q_r, new.q_l, new.delta_sigma):
        failures.append(f"3x3 route {three} != state route "
                        f"{(new.q_r, new.q_l, new.delta_sigma)}")
    if two != (new.q_r, new.q_l):
        failures.append(f"2x2 route {two} != state route {(new.q_r, new.q_l)}")
    return ConsistencyReport(kind, from_state, four, three, two, tuple(failures))

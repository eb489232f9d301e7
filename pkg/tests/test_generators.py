"""The eight generators: frozen matrices, label/state recursions, consistency."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from butterfly_tree import intmat
from butterfly_tree.errors import InvariantViolation, TailDirectionMismatch
from butterfly_tree.farey import mediant
from butterfly_tree.generators import (
    BABY_KINDS,
    ROOT_LABEL,
    ROOT_STATE,
    ButterflyLabel,
    ButterflyState,
    GeneratorKind,
    apply_label,
    apply_state,
    canonical_matrices,
    representation_consistency,
)

K = GeneratorKind

# Frozen reference matrices.  The 2x2 acts on (q_R, q_L), the 3x3 on
# (q_R, q_L, delta_sigma), the 4x4 on (q_R, q_L, sigma_plus, sigma_minus).
TWO = {
    K.C_L: ((1, 2), (0, 1)),
    K.C_R: ((1, 0), (2, 1)),
    K.U_L: ((1, 1), (1, 2)),
    K.U_R: ((2, 1), (1, 1)),
    K.D_L: ((1, 1), (1, 2)),
    K.D_R: ((2, 1), (1, 1)),
    K.C_CL: ((0, 1), (-1, 2)),
    K.C_CR: ((2, -1), (1, 0)),
}

THIRD_ROW = {
    K.C_L: (0, 0, 1),
    K.C_R: (0, 0, 1),
    K.U_L: (-1, 0, 1),
    K.U_R: (0, 1, 1),
    K.D_L: (1, 0, 1),
    K.D_R: (0, -1, 1),
    K.C_CL: (0, 0, 1),
    K.C_CR: (0, 0, 1),
}

FOUR = {
    K.C_L: ((1, 2, 0, 0), (0, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1)),
    K.C_R: ((1, 0, 0, 0), (2, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)),
    K.U_L: ((1, 1, 0, 0), (1, 2, 0, 0), (0, 1, 1, 0), (1, 1, 0, 1)),
    K.U_R: ((2, 1, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 0, 0, 1)),
    K.D_L: ((1, 1, 0, 0), (1, 2, 0, 0), (1, 1, 1, 0), (0, 1, 0, 1)),
    K.D_R: ((2, 1, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 1, 0, 1)),
    K.C_CL: ((0, 1, 0, 0), (-1, 2, 0, 0), (-1, 1, 1, 0), (-1, 1, 0, 1)),
    K.C_CR: ((2, -1, 0, 0), (1, 0, 0, 0), (1, -1, 1, 0), (1, -1, 0, 1)),
}

# Every single-generator application on the two standard example labels,
# plus the four chain steps on the first-generation C-babies.  Worked by
# hand from the label recursion.
APPLICATIONS = (
    (K.U_L, (1, 1, 0), (2, 3, -1)),
    (K.U_L, (2, 3, -1), (5, 8, -3)),
    (K.U_R, (1, 1, 0), (3, 2, 1)),
    (K.U_R, (2, 3, -1), (7, 5, 2)),
    (K.D_L, (1, 1, 0), (2, 3, 1)),
    (K.D_L, (2, 3, -1), (5, 8, 1)),
    (K.D_R, (1, 1, 0), (3, 2, -1)),
    (K.D_R, (2, 3, -1), (7, 5, -4)),
    (K.C_L, (1, 1, 0), (3, 1, 0)),
    (K.C_L, (2, 3, -1), (8, 3, -1)),
    (K.C_R, (1, 1, 0), (1, 3, 0)),
    (K.C_R, (2, 3, -1), (2, 7, -1)),
    (K.C_CR, (3, 1, 0), (5, 3, 0)),
    (K.C_CL, (1, 3, 0), (3, 5, 0)),
    (K.C_CL, (2, 7, -1), (7, 12, -1)),
    (K.C_CR, (8, 3, -1), (13, 8, -1)),
)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def test_frozen_two_by_two():
    for kind, expected in TWO.items():
        assert canonical_matrices(kind).two_by_two == expected


def test_frozen_three_by_three():
    for kind in K:
        m = canonical_matrices(kind).three_by_three
        two = TWO[kind]
        assert m == (two[0] + (0,), two[1] + (0,), THIRD_ROW[kind])


def test_frozen_four_by_four():
    for kind, expected in FOUR.items():
        assert canonical_matrices(kind).four_by_four == expected


def test_all_representations_unimodular():
    for kind in K:
        g = canonical_matrices(kind)
        assert intmat.det(g.two_by_two) == 1
        assert intmat.det(g.three_by_three) == 1
        assert intmat.det(g.four_by_four) == 1


def test_two_by_two_is_upper_block_of_larger():
    for kind in K:
        g = canonical_matrices(kind)
        for m in (g.three_by_three, g.four_by_four):
            assert tuple(row[:2] for row in m[:2]) == g.two_by_two


def test_parity_preserving_kinds_are_unipotent():
    """C-type and chain 3x3 matrices have all eigenvalues equal to one."""
    eye = intmat.identity(3)
    for kind in (K.C_L, K.C_R, K.C_CL, K.C_CR):
        m = canonical_matrices(kind).three_by_three
        n = mat_sub(m, eye)
        assert is_zero(intmat.mat_mul(intmat.mat_mul(n, n), n))


def test_ud_kinds_satisfy_characteristic_polynomial():
    """U/D 3x3 eigenvalues are 1 and (3 +- sqrt(5))/2: trace 4, and
    (M - I)(M^2 - 3M + I) annihilates."""
    eye = intmat.identity(3)
    for kind in (K.U_L, K.U_R, K.D_L, K.D_R):
        m = canonical_matrices(kind).three_by_three
        assert sum(m[i][i] for i in range(3)) == 4
        quad = mat_sub(mat_sub(intmat.mat_mul(m, m), mat_scale(3, m)),
                       mat_scale(-1, eye))
        assert is_zero(intmat.mat_mul(mat_sub(m, eye), quad))


def test_chain_generators_are_mutually_inverse():
    for size in ("two_by_two", "three_by_three", "four_by_four"):
        a = getattr(canonical_matrices(K.C_CL), size)
        b = getattr(canonical_matrices(K.C_CR), size)
        eye = intmat.identity(len(a))
        assert intmat.mat_mul(a, b) == eye
        assert intmat.mat_mul(b, a) == eye


def test_label_applications_table():
    for kind, source, expected in APPLICATIONS:
        out = apply_label(kind, ButterflyLabel(*source))
        assert out.as_tuple() == expected, (kind, source)


def test_state_recursion_worked_examples():
    infant = apply_state(K.U_L, ROOT_STATE)
    assert (infant.left, infant.center, infant.right) == (
        Fraction(1, 3), Fraction(2, 5), Fraction(1, 2))
    assert (infant.sigma_plus, infant.sigma_minus) == (2, 3)

    lower = apply_state(K.C_L, ROOT_STATE)
    assert (lower.left, lower.center, lower.right) == (
        Fraction(0), Fraction(1, 4), Fraction(1, 3))
    assert (lower.sigma_plus, lower.sigma_minus) == (2, 2)

    step = apply_state(K.C_CR, lower)
    assert (step.left, step.center, step.right) == (
        Fraction(1, 3), Fraction(3, 8), Fraction(2, 5))
    assert (step.sigma_plus, step.sigma_minus) == (4, 4)


def test_chain_preconditions_enforced():
    with pytest.raises(TailDirectionMismatch):
        apply_state(K.C_CL, ROOT_STATE)
    with pytest.raises(TailDirectionMismatch):
        apply_state(K.C_CR, ROOT_STATE)
    left_heavy = apply_state(K.C_R, ROOT_STATE)  # q_L = 3 > q_R = 1
    with pytest.raises(TailDirectionMismatch):
        apply_state(K.C_CR, left_heavy)
    with pytest.raises(TailDirectionMismatch):
        apply_label(K.C_CR, left_heavy.label)


def test_label_validation():
    assert ROOT_LABEL.as_tuple() == (1, 1, 0)
    lab = ButterflyLabel(5, 8, -3)
    assert (lab.sigma_plus, lab.sigma_minus) == (5, 8)
    assert lab.q_c == 13 and lab.tail_direction == "left"
    assert ButterflyLabel(3, 1, 0).tail_direction == "right"
    with pytest.raises(InvariantViolation):
        ButterflyLabel(2, 2, 0)  # shared factor
    with pytest.raises(InvariantViolation):
        ButterflyLabel(1, 2, 0)  # parity: delta must be odd when q_c is
    with pytest.raises(InvariantViolation):
        ButterflyLabel(1, 2, 5)  # magnitude: |delta| < q_c
    with pytest.raises(InvariantViolation):
        ButterflyLabel(0, 1, 1)


def test_state_check_flags_tampering():
    assert ROOT_STATE.check() == []
    assert ButterflyState(Fraction(0), Fraction(1), 2, 1).check()
    assert ButterflyState(Fraction(1, 3), Fraction(3, 5), 4, 4).check()
    assert ButterflyState(Fraction(1, 2), Fraction(1, 3), 2, 3).check()


def test_generator_kind_tokens():
    assert K.from_token("UL") is K.U_L
    assert K.from_token("tl") is K.C_CL
    assert K.from_token("TR") is K.C_CR
    assert K.from_token("C_cL") is K.C_CL
    assert {k.token for k in K} == {"CL", "CR", "UL", "UR", "DL", "DR",
                                    "TL", "TR"}
    with pytest.raises(ValueError):
        K.from_token("XX")


def test_cell_classes():
    assert K.C_L.cell_class == "C-cell"
    assert K.U_R.cell_class == "E-cell"
    assert K.C_CL.cell_class == "chain"
    assert BABY_KINDS == (K.C_L, K.C_R, K.U_L, K.U_R, K.D_L, K.D_R)


@st.composite
def valid_states(draw):
    """Arbitrary valid butterfly state: random Stern-Brocot interval plus
    a random positive split of q_c into the two slopes."""
    lo, hi = Fraction(0), Fraction(1)
    for step in draw(st.lists(st.booleans(), max_size=10)):
        mid = mediant(lo, hi)
        if step:
            lo = mid
        else:
            hi = mid
    q_c = lo.denominator + hi.denominator
    sigma_plus = draw(st.integers(1, q_c - 1))
    return ButterflyState(lo, hi, sigma_plus, q_c - sigma_plus)


@given(valid_states(), st.sampled_from(list(K)))
def test_representation_consistency_everywhere(state, kind):
    if kind is K.C_CL and state.q_l <= state.q_r:
        return
    if kind is K.C_CR and state.q_r <= state.q_l:
        return
    report = representation_consistency(kind, state)
    assert report.ok, report.failures
    assert bool(report)
    assert report.from_four == report.from_state


@given(valid_states())
def test_sibling_asymmetry_relations(state):
    """The up/down sibling pairs differ in delta-sigma by exactly q_c."""
    label = state.label
    q_c = state.q_c
    assert (apply_label(K.U_R, label).delta_sigma
            - apply_label(K.U_L, label).delta_sigma) == q_c
    assert (apply_label(K.D_L, label).delta_sigma
            - apply_label(K.D_R, label).delta_sigma) == q_c


@given(valid_states(), st.sampled_from(list(K)))
def test_state_recursion_preserves_invariants(state, kind):
    if kind.is_chain and kind is not state.tail_generator:
        return
    out = apply_state(kind, state)
    assert out.check() == []
    assert out.q_c == state.q_c + {
        K.C_L: 2 * state.q_l,
        K.C_R: 2 * state.q_r,
        K.U_L: state.q_c + state.q_l,
        K.D_L: state.q_c + state.q_l,
        K.U_R: state.q_c + state.q_r,
        K.D_R: state.q_c + state.q_r,
        K.C_CL: 2 * abs(state.q_l - state.q_r),
        K.C_CR: 2 * abs(state.q_l - state.q_r),
    }[kind]
    if not kind.is_chain:
        assert state.left <= out.left < out.right <= state.right

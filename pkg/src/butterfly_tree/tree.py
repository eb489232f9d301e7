"""The octonary tree of butterflies with tails.

Nodes are immutable: each carries its integer label, full state, and the
generator word that produced it from the root [0/1, 1/2, 1/1].  A node has
six babies (C_L, C_R, U_L, U_R, D_L, D_R) and, whenever its two edge
denominators differ, one chain successor along the tail side, eight
generators but at most seven children.  Words therefore address nodes
uniquely; the converse (which labels are reached) is not claimed here.

Expansion is breadth-first and fully deterministic; limits cap the depth,
optionally the center denominator, and the number of consecutive chain
letters at the end of a word (a chain cap of 0 disables chain successors).
"""

from __future__ import annotations

import csv
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator, Optional, Sequence, Union

from .diophantine import center_gap_index, recover_edges
from .errors import InvariantViolation, NoTail, TailDirectionMismatch
from .generators import (
    BABY_KINDS,
    ButterflyLabel,
    ButterflyState,
    GeneratorKind,
    ROOT_LABEL,
    ROOT_STATE,
    apply_label,
    apply_state,
)

Word = tuple[GeneratorKind, ...]

_JSON_SAFE = 2 ** 53 - 1

RECORD_FIELDS = ("word", "qR", "qL", "dSigma", "pL", "pR", "pc", "qc",
                 "sigmaPlus", "sigmaMinus", "cellClass", "tailDirection", "depth")


def parse_word(text: str) -> Word:
    """Parse a dot-separated generator word such as 'UL.CR.TR'."""
    parts = [p for p in text.replace(",", ".").replace(" ", ".").split(".") if p]
    return tuple(GeneratorKind.from_token(p) for p in parts)


def word_string(word: Sequence[GeneratorKind]) -> str:
    return ".".join(kind.token for kind in word)


@dataclass(frozen=True)
class TreeNode:
    """One butterfly of the hierarchy, addressed by its generator word."""

    label: ButterflyLabel
    state: ButterflyState
    word: Word
    depth: int
    cell_class: str
    tail_direction: str

    @property
    def word_str(self) -> str:
        return word_string(self.word)

    @property
    def chain_run(self) -> int:
        """Number of consecutive chain letters ending the word."""
        run = 0
        for kind in reversed(self.word):
            if not kind.is_chain:
                break
            run += 1
        return run


def root() -> TreeNode:
    return TreeNode(ROOT_LABEL, ROOT_STATE, (), 0, "root", "none")


def child(node: TreeNode, kind: GeneratorKind) -> TreeNode:
    """Apply one generator, cross-checking the label and state routes."""
    state = apply_state(kind, node.state)
    label = apply_label(kind, node.label)
    if label != state.label:
        raise InvariantViolation(
            f"label route {label} disagrees with state route {state.label} "
            f"for {kind.value} on {node.word_str or 'root'}")
    return TreeNode(label, state, node.word + (kind,), node.depth + 1,
                    kind.cell_class, state.tail_direction)


def children(node: TreeNode) -> list[TreeNode]:
    """The six babies plus the chain successor when a tail exists."""
    out = [child(node, kind) for kind in BABY_KINDS]
    tail = node.state.tail_generator
    if tail is not None:
        out.append(child(node, tail))
    return out


def chain(node: TreeNode, steps: int) -> list[TreeNode]:
    """The first `steps` members of the chain hanging off the node's tail."""
    if node.state.tail_generator is None:
        raise NoTail(f"{node.word_str or 'root'} has no tail")
    side = node.tail_direction
    out = []
    current = node
    for _ in range(steps):
        current = child(current, current.state.tail_generator)
        if current.tail_direction != side:
            raise InvariantViolation(
                f"tail flipped from {side} along the chain of {node.word_str}")
        out.append(current)
    return out


def node_at(word: Union[str, Sequence[Union[GeneratorKind, str]]]) -> TreeNode:
    """Replay a word from the root.

    A chain letter applied against the tail raises TailDirectionMismatch
    naming the prefix that failed.
    """
    if isinstance(word, str):
        word = parse_word(word)
    node = root()
    for i, step in enumerate(word):
        kind = step if isinstance(step, GeneratorKind) else GeneratorKind.from_token(step)
        try:
            node = child(node, kind)
        except TailDirectionMismatch as exc:
            prefix = word_string([
                s if isinstance(s, GeneratorKind) else GeneratorKind.from_token(s)
                for s in word[:i + 1]])
            raise TailDirectionMismatch(f"word fails at prefix {prefix}: {exc}") from exc
    return node


@dataclass(frozen=True)
class ExpansionLimits:
    """Bounds for breadth-first expansion.

    max_depth: word length ceiling (root is depth 0).
    chain_cap: longest allowed run of consecutive trailing chain letters.
    max_qc: optional ceiling on the center denominator.
    """

    max_depth: int
    chain_cap: int = 0
    max_qc: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_depth < 0 or self.chain_cap < 0:
            raise ValueError("limits must be non-negative")
        if self.max_qc is not None and self.max_qc < 2:
            raise ValueError("max_qc must be at least 2")


def expand(limits: ExpansionLimits) -> Iterator[TreeNode]:
    """Breadth-first expansion from the root, deterministic order."""
    start = root()
    queue = deque([start])
    while queue:
        node = queue.popleft()
        yield node
        if node.depth >= limits.max_depth:
            continue
        run = node.chain_run
        for kid in children(node):
            if kid.cell_class == "chain" and run >= limits.chain_cap:
                continue
            if limits.max_qc is not None and kid.state.q_c > limits.max_qc:
                continue
            queue.append(kid)


@dataclass(frozen=True)
class NodeVerification:
    """Outcome of the per-node invariant battery."""

    word: str
    checks: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


_EXPECTED_QC_STEP = {
    GeneratorKind.C_L: lambda q_r, q_l: q_r + 3 * q_l,
    GeneratorKind.C_R: lambda q_r, q_l: 3 * q_r + q_l,
    GeneratorKind.U_L: lambda q_r, q_l: 2 * (q_r + q_l) + q_l,
    GeneratorKind.U_R: lambda q_r, q_l: 2 * (q_r + q_l) + q_r,
    GeneratorKind.D_L: lambda q_r, q_l: 2 * (q_r + q_l) + q_l,
    GeneratorKind.D_R: lambda q_r, q_l: 2 * (q_r + q_l) + q_r,
    GeneratorKind.C_CL: lambda q_r, q_l: q_r + q_l + 2 * (q_l - q_r),
    GeneratorKind.C_CR: lambda q_r, q_l: q_r + q_l + 2 * (q_r - q_l),
}

_EXPECTED_DSIGMA_STEP = {
    GeneratorKind.C_L: lambda q_r, q_l: 0,
    GeneratorKind.C_R: lambda q_r, q_l: 0,
    GeneratorKind.U_L: lambda q_r, q_l: -q_r,
    GeneratorKind.U_R: lambda q_r, q_l: q_l,
    GeneratorKind.D_L: lambda q_r, q_l: q_r,
    GeneratorKind.D_R: lambda q_r, q_l: -q_l,
    GeneratorKind.C_CL: lambda q_r, q_l: 0,
    GeneratorKind.C_CR: lambda q_r, q_l: 0,
}


def verify_node(node: TreeNode, parent: Optional[TreeNode] = None) -> NodeVerification:
    """Run every node invariant; optionally also the parent relations.

    When `parent` is omitted it is recovered by replaying word[:-1]; pass
    it explicitly in sweeps to avoid the replay cost.
    """
    failures = list(node.state.check())
    checks = 4
    state = node.state

    checks += 1
    state_tuple = (state.q_r, state.q_l, state.delta_sigma)
    if node.label.as_tuple() != state_tuple:
        failures.append(f"label {node.label} does not match state {state_tuple}")

    checks += 1
    try:
        p_l, p_r = recover_edges(state.q_r, state.q_l)
        if (p_l, p_r) != (state.left.numerator, state.right.numerator):
            failures.append(
                f"numerators {(state.left.numerator, state.right.numerator)} "
                f"differ from recovered {(p_l, p_r)}")
    except Exception as exc:
        failures.append(f"edge recovery failed: {exc}")

    checks += 1
    if state.width != Fraction(1, state.q_l * state.q_r):
        failures.append(f"width {state.width} != 1/(q_L q_R)")

    checks += 1
    expected_class = "root" if not node.word else node.word[-1].cell_class
    if node.cell_class != expected_class:
        failures.append(f"cell class {node.cell_class} != {expected_class}")

    checks += 1
    if node.tail_direction != state.tail_direction:
        failures.append(
            f"tail direction {node.tail_direction} != {state.tail_direction}")

    checks += 1
    try:
        r_c, _ = center_gap_index(state)
        if not 0 < r_c < state.q_c:
            failures.append(f"central gap index {r_c} out of range")
    except Exception as exc:
        failures.append(f"central gap congruence failed: {exc}")

    checks += 1
    try:
        replay = node_at(node.word)
        if replay.state != state or replay.label != node.label:
            failures.append("word replay disagrees with stored node")
    except Exception as exc:
        failures.append(f"word replay failed: {exc}")

    if node.word:
        if parent is None:
            parent = node_at(node.word[:-1])
        elif parent.word != node.word[:-1]:
            raise ValueError("given parent does not match word prefix")
        last = node.word[-1]
        p_state = parent.state

        checks += 1
        expected_qc = _EXPECTED_QC_STEP[last](p_state.q_r, p_state.q_l)
        if state.q_c != expected_qc:
            failures.append(f"q_c {state.q_c} != expected {expected_qc}")

        checks += 1
        expected_ds = p_state.delta_sigma + _EXPECTED_DSIGMA_STEP[last](
            p_state.q_r, p_state.q_l)
        if state.delta_sigma != expected_ds:
            failures.append(
                f"Delta-sigma {state.delta_sigma} != expected {expected_ds}")

        checks += 1
        if last.is_chain:
            acc = p_state.accumulation.value
            if parent.tail_direction == "right":
                if state.left != p_state.right or not state.right < acc:
                    failures.append("chain member not between parent edge "
                                    "and accumulation point")
            else:
                if state.right != p_state.left or not state.left > acc:
                    failures.append("chain member not between accumulation "
                                    "point and parent edge")
        else:
            if not (p_state.left <= state.left and state.right <= p_state.right):
                failures.append("baby interval escapes the parent interval")

        checks += 1
        parity_preserved = (state.q_c - p_state.q_c) % 2 == 0
        if last.cell_class in ("C-cell", "chain"):
            if not parity_preserved:
                failures.append("parity-preserving step changed q_c parity")
        else:
            left_kind = last in (GeneratorKind.U_L, GeneratorKind.D_L)
            side = p_state.q_l if left_kind else p_state.q_r
            if state.q_c != 2 * p_state.q_c + side:
                failures.append("E-cell step is not q_c' = 2 q_c + q_edge")

    return NodeVerification(node.word_str, checks, tuple(failures))


def _json_int(n: int) -> Union[int, str]:
    return n if -_JSON_SAFE <= n <= _JSON_SAFE else str(n)


def _parse_int(v: Union[int, str]) -> int:
    return int(v)


def node_record(node: TreeNode) -> dict:
    """Flat export record; oversized integers become decimal strings."""
    state = node.state
    return {
        "word": node.word_str,
        "qR": _json_int(state.q_r),
        "qL": _json_int(state.q_l),
        "dSigma": _json_int(state.delta_sigma),
        "pL": _json_int(state.left.numerator),
        "pR": _json_int(state.right.numerator),
        "pc": _json_int(state.center.numerator),
        "qc": _json_int(state.q_c),
        "sigmaPlus": _json_int(state.sigma_plus),
        "sigmaMinus": _json_int(state.sigma_minus),
        "cellClass": node.cell_class,
        "tailDirection": node.tail_direction,
        "depth": node.depth,
    }


def node_from_record(record: dict) -> TreeNode:
    """Rebuild a node from a record by replaying its word, then cross-check.

    Every numeric field of the record must match the replayed node, so a
    parsed export is verified against the generators, not trusted.
    """
    node = node_at(record["word"])
    expected = node_record(node)
    for key in RECORD_FIELDS:
        got = record[key]
        want = expected[key]
        if key in ("word", "cellClass", "tailDirection"):
            if got != want:
                raise InvariantViolation(f"record field {key}: {got!r} != {want!r}")
        elif _parse_int(got) != _parse_int(want):
            raise InvariantViolation(f"record field {key}: {got!r} != {want!r}")
    return node


def write_jsonl(nodes: Iterable[TreeNode], fp: IO[str]) -> int:
    count = 0
    for node in nodes:
        fp.write(json.dumps(node_record(node), separators=(",", ":")) + "\n")
        count += 1
    return count


def read_jsonl(fp: IO[str]) -> list[TreeNode]:
    out = []
    for line in fp:
        line = line.strip()
        if line:
            out.append(node_from_record(json.loads(line)))
    return out


def write_csv(nodes: Iterable[TreeNode], fp: IO[str]) -> int:
    writer = csv.DictWriter(fp, fieldnames=RECORD_FIELDS, lineterminator="\n")
    writer.writeheader()
    count = 0
    for node in nodes:
        writer.writerow(node_record(node))
        count += 1
    return count


def read_csv(fp: IO[str]) -> list[TreeNode]:
    return [node_from_record(row) for row in csv.DictReader(fp)]

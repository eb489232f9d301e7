"""Skeleton geometry in the (flux, density) plane, and deterministic SVG.

Each butterfly is drawn as the trapezoid between its two vertical flux
edges, crossed by two diagonals of integer slopes +sigma_plus and
-sigma_minus meeting at the center point (phi_c, r_c/q_c).  Every tail
adds a triangle from the shared vertical edge to the chain's accumulation
point; chains beyond the rendered set are previewed as dots at their
exact center points.  All geometry is computed in exact rationals and
only converted to fixed 9-digit decimals while writing, so rendering the
same input twice produces identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import tree as tree_mod
from .diophantine import center_gap_index, gap_labels
from .errors import EmptyInput
from .generators import GeneratorKind
from .tree import TreeNode

DEFAULT_PALETTE = ("#80be8e", "#d9cb97", "#e6a37d", "#d37a7d",
                   "#a195c6", "#e3a8d2", "#7995c4", "#8bc8da")

_KIND_ORDER = tuple(GeneratorKind)


@dataclass(frozen=True)
class SkeletonCell:
    """Exact drawing data of one butterfly cell.

    slope_minus is the signed slope -sigma_minus.  The four corner
    densities are the two diagonals evaluated at the two edge fluxes;
    color_index picks the creating generator's palette entry (None for
    the root, which is drawn unfilled).
    """

    phi_left: Fraction
    phi_right: Fraction
    center: tuple[Fraction, Fraction]
    slope_plus: int
    slope_minus: int
    plus_at_left: Fraction
    plus_at_right: Fraction
    minus_at_left: Fraction
    minus_at_right: Fraction
    color_index: Optional[int]

    def corners(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Corners in draw order: bottom-left, top-left, top-right, bottom-right.

        The plus diagonal is lowest at the left edge and highest at the
        right edge; the minus diagonal is the opposite.
        """
        return ((self.phi_left, self.plus_at_left),
                (self.phi_left, self.minus_at_left),
                (self.phi_right, self.plus_at_right),
                (self.phi_right, self.minus_at_right))


@dataclass(frozen=True)
class WannierLine:
    """Density line rho = sigma*phi + tau through the gap point (p/q, r/q)."""

    sigma: int
    tau: int
    flux: Fraction
    r: int


def cell_geometry(node: TreeNode) -> SkeletonCell:
    """Exact cell geometry of a node; propagates InconsistentChernPair."""
    state = node.state
    r_c, rho_c = center_gap_index(state)
    phi_c = state.center
    s_p, s_m = state.sigma_plus, state.sigma_minus
    color = None if not node.word else _KIND_ORDER.index(node.word[-1])
    return SkeletonCell(
        phi_left=state.left,
        phi_right=state.right,
        center=(phi_c, rho_c),
        slope_plus=s_p,
        slope_minus=-s_m,
        plus_at_left=rho_c + s_p * (state.left - phi_c),
        plus_at_right=rho_c + s_p * (state.right - phi_c),
        minus_at_left=rho_c - s_m * (state.left - phi_c),
        minus_at_right=rho_c - s_m * (state.right - phi_c),
        color_index=color,
    )


def tail_triangle(node: TreeNode) -> tuple[tuple[Fraction, Fraction], ...]:
    """Triangle from the tail edge to the chain's accumulation point.

    The two base corners are the cell corners on the tailed edge; the apex
    sits at the accumulation flux, at the density obtained by extending
    the line through the chain members' centers (they are collinear, so
    this is the limit of the chain centers).
    """
    cell = cell_geometry(node)
    state = node.state
    first, second = tree_mod.chain(node, 2)
    acc = state.accumulation.value
    phi1, rho1 = cell_geometry(first).center
    phi2, rho2 = cell_geometry(second).center
    apex_rho = rho1 + (rho2 - rho1) * (acc - phi1) / (phi2 - phi1)
    if node.tail_direction == "right":
        base = ((cell.phi_right, cell.plus_at_right),
                (cell.phi_right, cell.minus_at_right))
    else:
        base = ((cell.phi_left, cell.plus_at_left),
                (cell.phi_left, cell.minus_at_left))
    return base + ((acc, apex_rho),)


def wannier_lines(q_max: int) -> list[WannierLine]:
    """Canonical (sigma, tau) for every gap of every reduced flux q <= q_max."""
    if q_max < 2:
        raise ValueError("q_max must be at least 2")
    lines = []
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            flux = Fraction(p, q)
            for label in gap_labels(p, q):
                lines.append(WannierLine(label.sigma, label.tau, flux, label.r))
    return lines


@dataclass(frozen=True)
class RenderOptions:
    """Canvas and style knobs; all defaults deterministic."""

    width: int = 800
    height: int = 800
    margin: int = 40
    palette: Sequence[str] = DEFAULT_PALETTE
    chain_preview: int = 4

    def __post_init__(self) -> None:
        if len(self.palette) != 8:
            raise ValueError("palette must have exactly 8 colors")
        if self.width <= 2 * self.margin or self.height <= 2 * self.margin:
            raise ValueError("canvas too small for the margin")
        if self.chain_preview < 0:
            raise ValueError("chain_preview must be >= 0")


def _decimal9(x: Fraction) -> str:
    """Fixed 9-decimal string from an exact rational (half away rounding)."""
    sign = "-" if x < 0 else ""
    y = -x if x < 0 else x
    units, rem = divmod(y.numerator * 10 ** 9, y.denominator)
    if 2 * rem >= y.denominator:
        units += 1
    whole, frac = divmod(units, 10 ** 9)
    return f"{sign}{whole}.{frac:09d}"


def render_svg(nodes: Iterable[TreeNode], options: Optional[RenderOptions] = None) -> str:
    """Deterministic SVG of the given cells (typically an expand() stream)."""
    cells = list(nodes)
    if not cells:
        raise EmptyInput("no nodes to render")
    opt = options or RenderOptions()
    accent = opt.palette[_KIND_ORDER.index(GeneratorKind.C_CL)]
    span_x = opt.width - 2 * opt.margin
    span_y = opt.height - 2 * opt.margin

    def px(phi: Fraction) -> str:
        return _decimal9(opt.margin + phi * span_x)

    def py(rho: Fraction) -> str:
        return _decimal9(opt.height - opt.margin - rho * span_y)

    def point(p: tuple[Fraction, Fraction]) -> str:
        return f"{px(p[0])},{py(p[1])}"

    rendered = {node.word: node for node in cells}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{opt.width}" height="{opt.height}" '
        f'viewBox="0 0 {opt.width} {opt.height}" '
        f'data-x-transform="x = {opt.margin} + phi * {span_x}" '
        f'data-y-transform="y = {opt.height - opt.margin} - rho * {span_y}">',
        f'<desc>butterfly skeleton, {len(cells)} cells; flux and density '
        f'mapped affinely from the unit square per the data transforms</desc>',
        f'<rect x="{opt.margin}" y="{opt.margin}" width="{span_x}" '
        f'height="{span_y}" fill="#ffffff" stroke="#1a1a1a" stroke-width="1"/>',
    ]
    for node in cells:
        cell = cell_geometry(node)
        bl, tl, tr, br = cell.corners()
        if cell.color_index is None:
            fill = 'fill="none"'
        else:
            fill = f'fill="{opt.palette[cell.color_index]}" fill-opacity="0.5"'
        name = node.word_str or "root"
        out.append(f'<g data-word="{name}">')
        out.append(f'<polygon points="{point(bl)} {point(tl)} {point(tr)} '
                   f'{point(br)}" {fill} stroke="#1a1a1a" stroke-width="1"/>')
        out.append(f'<line x1="{px(bl[0])}" y1="{py(bl[1])}" x2="{px(tr[0])}" '
                   f'y2="{py(tr[1])}" stroke="#1a1a1a" stroke-width="0.75"/>')
        out.append(f'<line x1="{px(tl[0])}" y1="{py(tl[1])}" x2="{px(br[0])}" '
                   f'y2="{py(br[1])}" stroke="#1a1a1a" stroke-width="0.75"/>')
        out.append('</g>')
    for node in cells:
        if node.state.tail_generator is None:
            continue
        corners = tail_triangle(node)
        points = " ".join(point(p) for p in corners)
        out.append(f'<polygon points="{points}" fill="none" stroke="{accent}" '
                   f'stroke-width="1" stroke-dasharray="4 3" '
                   f'data-tail-of="{node.word_str or "root"}"/>')
        if opt.chain_preview:
            last = node
            nxt = last.word + (last.state.tail_generator,)
            while nxt in rendered:
                last = rendered[nxt]
                nxt = last.word + (last.state.tail_generator,)
            for member in tree_mod.chain(last, opt.chain_preview):
                phi, rho = cell_geometry(member).center
                out.append(f'<circle cx="{px(phi)}" cy="{py(rho)}" r="2.2" '
                           f'fill="{accent}"/>')
    out.append('</svg>')
    return "\n".join(out) + "\n"

"""Two-qubit Pauli operators with exact integer matrices.

Operators follow the X^a Z^b convention per qubit, which keeps every matrix
entry a plain integer in {0, +1, -1}; the combined operator X*Z is written
"W" in mnemonics.  All products and sign claims below are computed with exact
integer arithmetic, never floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf2 import GF2Vector, symplectic_form
from .geometry import Hyperplane, PointLineGeometry, points_of

_X = np.array([[0, 1], [1, 0]], dtype=np.int64)
_Z = np.array([[1, 0], [0, -1]], dtype=np.int64)
_I2 = np.eye(2, dtype=np.int64)
_I4 = np.eye(4, dtype=np.int64)

_MNEMONIC = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "W"}


class CorrespondenceError(RuntimeError):
    """Operator algebra and quadrangle geometry failed to agree."""


class SquareStructureError(RuntimeError):
    """A grid hyperplane did not split into two parallel line classes."""


def _single_qubit(a: int, b: int) -> np.ndarray:
    m = _I2
    if a:
        m = m @ _X
    if b:
        m = m @ _Z
    return m


class PauliOperator:
    """The operator (X^a1 Z^b1) tensor (X^a2 Z^b2) for a label (a1,b1,a2,b2).

    The zero label is the 4x4 identity; the fifteen nonzero labels give the
    two-qubit operator set.
    """

    __slots__ = ("label", "matrix")

    def __init__(self, label: GF2Vector):
        if label.width != 4:
            raise ValueError(f"two-qubit labels have width 4, got {label.width}")
        a1, b1, a2, b2 = label.bits
        matrix = np.kron(_single_qubit(a1, b1), _single_qubit(a2, b2))
        matrix.setflags(write=False)
        self.label = label
        self.matrix = matrix

    @property
    def mnemonic(self) -> str:
        a1, b1, a2, b2 = self.label.bits
        return _MNEMONIC[(a1, b1)] + _MNEMONIC[(a2, b2)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.label == other.label

    def __hash__(self) -> int:
        return hash(self.label)

    def __repr__(self) -> str:
        return f"PauliOperator({self.mnemonic})"


def pauli_from_label(label: GF2Vector) -> PauliOperator:
    """Operator with the given width-4 label."""
    return PauliOperator(label)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """Exact matrix test: do the two operators commute?"""
    return np.array_equal(p.matrix @ q.matrix, q.matrix @ p.matrix)


def _sign_of_identity_multiple(m: np.ndarray) -> int:
    if np.array_equal(m, _I4):
        return 1
    if np.array_equal(m, -_I4):
        return -1
    raise SquareStructureError("product is not plus or minus the identity")


@dataclass(frozen=True)
class PauliCorrespondence:
    """Point-indexed operators certified against the quadrangle's geometry."""

    geometry: PointLineGeometry
    operators: tuple[PauliOperator, ...]


def build_bijection(w: PointLineGeometry) -> PauliCorrespondence:
    """Attach to each point the operator with its own vector label and certify
    the correspondence: commutation must equal collinearity (and the
    symplectic-form verdict) on every pair, and every line must be a mutually
    commuting triple with labels summing to zero and product +-identity."""
    if w.labels is None or any(lab.width != 4 for lab in w.labels):
        raise ValueError("the symplectic model (width-4 labels) is required")
    ops = tuple(PauliOperator(lab) for lab in w.labels)
    for i, j in itertools.combinations(range(w.num_points), 2):
        by_matrix = commutes(ops[i], ops[j])
        if by_matrix != w.collinear(i, j):
            raise CorrespondenceError(
                f"points {i} and {j}: matrix commutation disagrees with collinearity"
            )
        if by_matrix != (symplectic_form(w.labels[i], w.labels[j]) == 0):
            raise CorrespondenceError(
                f"points {i} and {j}: matrix commutation disagrees with the form"
            )
    for m in w.lines:
        pts = points_of(m)
        label_sum = 0
        product = _I4
        for p in pts:
            label_sum ^= w.labels[p].mask
            product = product @ ops[p].matrix
        if label_sum:
            raise CorrespondenceError(f"labels on line {m:#x} do not sum to zero")
        try:
            _sign_of_identity_multiple(product)
        except SquareStructureError:
            raise CorrespondenceError(
                f"product over line {m:#x} is not plus or minus the identity"
            ) from None
    return PauliCorrespondence(w, ops)


@dataclass(frozen=True)
class HyperplaneInterpretation:
    """Operator reading of a hyperplane kind."""

    kind: str  # "noncommuting-pentad" | "commuting-with-reference" | "mermin-square"
    operators: tuple[PauliOperator, ...]
    reference: PauliOperator | None = None


def interpret_hyperplane(
    h: Hyperplane, corr: PauliCorrespondence
) -> HyperplaneInterpretation:
    """Read a hyperplane as an operator subset.

    An ovoid is five mutually non-commuting operators; a perp-set minus its
    center is six operators commuting with the center's operator; a grid is
    the nine operators of a Mermin square.
    """
    ops = corr.operators
    pts = points_of(h.mask)
    if h.kind == "ovoid":
        selected = tuple(ops[p] for p in pts)
        for p, q in itertools.combinations(selected, 2):
            if commutes(p, q):
                raise CorrespondenceError(f"ovoid {h.mask:#x} has a commuting pair")
        return HyperplaneInterpretation("noncommuting-pentad", selected)
    if h.kind == "perp":
        reference = ops[h.center]
        rest = tuple(ops[p] for p in pts if p != h.center)
        for q in rest:
            if not commutes(reference, q):
                raise CorrespondenceError(
                    f"perp-set {h.mask:#x} has a non-commuting member"
                )
        return HyperplaneInterpretation("commuting-with-reference", rest, reference)
    if h.kind == "grid":
        return HyperplaneInterpretation(
            "mermin-square", tuple(ops[p] for p in pts)
        )
    raise ValueError(f"no operator reading for hyperplane kind {h.kind!r}")


@dataclass(frozen=True)
class MerminSquare:
    """3x3 operator array whose rows and columns are lines of a grid."""

    cells: tuple[tuple[PauliOperator, ...], ...]
    row_signs: tuple[int, int, int]
    col_signs: tuple[int, int, int]

    @property
    def sign_product(self) -> int:
        out = 1
        for s in self.row_signs + self.col_signs:
            out *= s
        return out

    def mnemonic_rows(self) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(c.mnemonic for c in row) for row in self.cells)


def mermin_square(h: Hyperplane, corr: PauliCorrespondence) -> MerminSquare:
    """Arrange a grid hyperplane's nine operators into a Mermin square.

    The grid's six lines split into two parallel classes of three pairwise
    disjoint lines; the class containing the lexicographically smallest line
    becomes the rows.  Cell (i, j) is the intersection of row line i and
    column line j, and each of the six signs s satisfies product = s * identity
    exactly.
    """
    if h.kind != "grid":
        raise ValueError(f"a Mermin square needs a grid hyperplane, got {h.kind!r}")
    g = corr.geometry
    contained = [m for m in g.lines if m & h.mask == m]
    if len(contained) != 6:
        raise SquareStructureError(
            f"grid {h.mask:#x} contains {len(contained)} lines, expected 6"
        )
    first = contained[0]
    rows = sorted(m for m in contained if m == first or not m & first)
    cols = sorted(m for m in contained if m != first and m & first)
    if len(rows) != 3 or len(cols) != 3:
        raise SquareStructureError(f"grid {h.mask:#x} has no parallel-class split")
    for cls in (rows, cols):
        for a, b in itertools.combinations(cls, 2):
            if a & b:
                raise SquareStructureError(
                    f"lines {a:#x} and {b:#x} in one parallel class intersect"
                )
    cells = []
    for r in rows:
        row_ops = []
        for c in cols:
            inter = r & c
            if inter.bit_count() != 1:
                raise SquareStructureError(
                    f"row {r:#x} and column {c:#x} do not meet in one point"
                )
            row_ops.append(corr.operators[inter.bit_length() - 1])
        cells.append(tuple(row_ops))
    row_signs = tuple(
        _sign_of_identity_multiple(
            cells[i][0].matrix @ cells[i][1].matrix @ cells[i][2].matrix
        )
        for i in range(3)
    )
    col_signs = tuple(
        _sign_of_identity_multiple(
            cells[0][j].matrix @ cells[1][j].matrix @ cells[2][j].matrix
        )
        for j in range(3)
    )
    return MerminSquare(tuple(cells), row_signs, col_signs)

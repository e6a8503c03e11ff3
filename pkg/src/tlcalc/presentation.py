"""Modules over TL_n given by their generator matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .linalg import Echelon, Matrix
from .scalar import ArithmeticMode, FieldElement, beta

SparseCols = list  # list[list[tuple[int, FieldElement]]], one list per column


class RelationError(ValueError):
    """Generator matrices that violate the Temperley-Lieb relations."""


def sparse_columns(mat: Matrix) -> SparseCols:
    cols: SparseCols = [[] for _ in range(len(mat[0]) if mat else 0)]
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if x:
                cols[j].append((i, x))
    return cols


def apply_sparse(cols: SparseCols, v: dict[int, FieldElement]) -> dict[int, FieldElement]:
    out: dict[int, FieldElement] = {}
    for j, c in v.items():
        for i, x in cols[j]:
            val = x * c
            out[i] = out[i] + val if i in out else val
    return {i: x for i, x in out.items() if x}


@dataclass
class ModulePresentation:
    """A TL_n-module: ``mats[i-1]`` is the matrix of ``u_i`` (columns are images)."""

    n: int
    mode: ArithmeticMode
    mats: list
    labels: list = field(default_factory=list)
    check: bool = True

    def __post_init__(self):
        if len(self.mats) != max(self.n - 1, 0):
            raise ValueError(f"TL_{self.n} needs {self.n - 1} generator matrices")
        dim = self.dim
        for m in self.mats:
            if len(m) != dim or any(len(r) != dim for r in m):
                raise ValueError("generator matrices must be square of the module dimension")
        if not self.labels:
            self.labels = [str(i) for i in range(dim)]
        self._cols = [sparse_columns(m) for m in self.mats]
        if self.check:
            self.verify_relations()

    @property
    def dim(self) -> int:
        if self.mats:
            return len(self.mats[0])
        return len(self.labels)

    def cols(self, i: int) -> SparseCols:
        return self._cols[i - 1]

    def act(self, i: int, v: dict[int, FieldElement]) -> dict[int, FieldElement]:
        return apply_sparse(self._cols[i - 1], v)

    def act_word(self, letters: Sequence[int], v: dict[int, FieldElement]) -> dict[int, FieldElement]:
        for i in reversed(letters):
            v = self.act(i, v)
        return v

    def verify_relations(self) -> None:
        b = beta(self.mode)
        one = self.mode.one()
        n = self.n
        for j in range(self.dim):
            e = {j: one}
            img = [None] + [self.act(i, e) for i in range(1, n)]
            for i in range(1, n):
                lhs = self.act(i, img[i])
                rhs = {k: x * b for k, x in img[i].items() if x * b}
                if not _vec_eq(lhs, rhs):
                    raise RelationError(f"u{i}^2 != beta u{i}")
                for k in (i - 1, i + 1):
                    if 1 <= k < n and not _vec_eq(self.act(i, self.act(k, img[i])), img[i]):
                        raise RelationError(f"u{i} u{k} u{i} != u{i}")
                for k in range(i + 2, n):
                    if not _vec_eq(self.act(i, img[k]), self.act(k, img[i])):
                        raise RelationError(f"u{i} and u{k} do not commute")

    def dense(self, i: int) -> Matrix:
        return self.mats[i - 1]

    def matrix_of_action(self, action) -> Matrix:
        """Dense matrix of a linear map given on basis vectors as sparse dicts."""
        one = self.mode.one()
        cols = [action({j: one}) for j in range(self.dim)]
        out = linalg.zeros(self.mode, self.dim, self.dim)
        for j, c in enumerate(cols):
            for i, x in c.items():
                out[i][j] = x
        return out


def _vec_eq(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        x, y = a.get(k), b.get(k)
        if x is None:
            if y:
                return False
        elif y is None:
            if x:
                return False
        elif x != y:
            return False
    return True


def subspace_presentation(pres: ModulePresentation, basis: Matrix, labels=None, check: bool = True) -> ModulePresentation:
    """Restrict to an invariant subspace spanned by RREF rows ``basis``."""
    mode = pres.mode
    ech = Echelon(mode)
    for row in basis:
        ech.add(linalg.to_sparse(row))
    rows = ech.reduced_rows()
    pivots = ech.pivots()
    k = len(rows)
    mats = []
    for i in range(1, pres.n):
        m = linalg.zeros(mode, k, k)
        for j, row in enumerate(rows):
            img = pres.act(i, row)
            if ech.reduce(img):
                raise ValueError("subspace is not invariant")
            for a, c in enumerate(pivots):
                x = img.get(c)
                if x:
                    m[a][j] = x
        mats.append(m)
    return ModulePresentation(pres.n, mode, mats, labels or [f"v{j}" for j in range(k)], check=check)


def quotient_presentation(pres: ModulePresentation, sub: Matrix, check: bool = True) -> ModulePresentation:
    """The quotient by an invariant subspace spanned by the rows of ``sub``."""
    mode = pres.mode
    ech = Echelon(mode)
    for row in sub:
        ech.add(linalg.to_sparse(row))
    pivots = set(ech.pivots())
    keep = [j for j in range(pres.dim) if j not in pivots]
    pos = {j: a for a, j in enumerate(keep)}
    one = mode.one()
    mats = []
    for i in range(1, pres.n):
        m = linalg.zeros(mode, len(keep), len(keep))
        for a, j in enumerate(keep):
            img = ech.reduce(pres.act(i, {j: one}))
            for c, x in img.items():
                m[pos[c]][a] = x
        mats.append(m)
    return ModulePresentation(pres.n, mode, mats, [pres.labels[j] for j in keep], check=check)

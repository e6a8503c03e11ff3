"""Module-theoretic computations: morphisms, radicals, composition factors and
principal indecomposables, all by exact linear algebra on presentations."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from . import linalg
from .central import fn_element
from .diagram import AlgebraElement, diagram_to_word, generator
from .linalg import Echelon, Matrix
from .numerology import (
    dimL,
    dimP_expected,
    dimR,
    dimV,
    in_range,
    kr,
    left_partner,
    right_partner,
)
from .presentation import (
    ModulePresentation,
    RelationError,
    quotient_presentation,
    subspace_presentation,
)
from .scalar import ArithmeticMode, FieldElement, beta, f_eigen
from .stdmod import action_matrix, enumerate_links, gram, radical_basis
from .tower import induced_basis, induced_matrices, render_elem


class NoSymmetricPartner(ValueError):
    """The reflected label falls outside 0 <= p <= n/2."""


class ExcludedCase(ValueError):
    """A label for which no construction is offered."""


# ---------------------------------------------------------------------------
# building presentations


def standard_presentation(n: int, p: int, mode: ArithmeticMode) -> ModulePresentation:
    if not in_range(n, p):
        raise ValueError(f"({n},{p}) out of range")
    mats = [action_matrix(generator(n, i), n, p, mode) for i in range(1, n)]
    return ModulePresentation(n, mode, mats, list(enumerate_links(n, p)), check=False)


def induced_presentation(n: int, p: int, mode: ArithmeticMode) -> ModulePresentation:
    """Ind V_{n,p} as a TL_{n+1}-module in the admissible basis."""
    labels = [render_elem(e, n) for e in induced_basis(n, p, mode)]
    return ModulePresentation(n + 1, mode, induced_matrices(n, p, mode), labels, check=False)


def restricted_presentation(N: int, P: int, n: int, mode: ArithmeticMode) -> ModulePresentation:
    """V_{N,P} seen as a TL_n-module through the first n points (n <= N)."""
    if not 1 <= n <= N:
        raise ValueError("restriction needs 1 <= n <= N")
    mats = [action_matrix(generator(n, i), N, P, mode) for i in range(1, n)]
    return ModulePresentation(n, mode, mats, list(enumerate_links(N, P)), check=False)


def iterated_induction(m: int, p: int, steps: int, mode: ArithmeticMode) -> ModulePresentation:
    """Ind^steps V_{m,p}, realized as Res^steps V_{m+2 steps, p+steps}.

    The two agree when V_{m,p} is projective (for instance on a critical
    line); use :func:`induce_presentation` for the honest construction.
    """
    return restricted_presentation(m + 2 * steps, p + steps, m + steps, mode)


def induce_presentation(pres: ModulePresentation, check: bool = True) -> ModulePresentation:
    """TL_{m+1} (x)_{TL_m} M for an arbitrary TL_m-module M.

    TL_{m+1} is spanned, as a right TL_m-module, by the words
    ``u_r u_{r+1} ... u_m`` (r = 1..m) and 1.  Slot r holds a copy of M; the
    relations ``(u_r..u_m) u_t = (u_{t+2}..u_m)(u_r..u_t)`` identify slots.
    """
    m, k, mode = pres.n, pres.dim, pres.mode
    one = mode.one()
    b = beta(mode)
    bare = m + 1

    def col(r: int, j: int) -> int:
        return (r - 1) * k + j

    def lift(r: int, v: dict[int, FieldElement], out: dict[int, FieldElement], sign: FieldElement):
        for j, x in v.items():
            c = col(r, j)
            val = x * sign
            out[c] = out[c] + val if c in out else val

    rel = Echelon(mode)
    for r in range(1, m + 1):
        for t in range(r, m):
            for j in range(k):
                e = {j: one}
                vec: dict[int, FieldElement] = {}
                lift(r, pres.act(t, e), vec, one)
                lift(t + 2, pres.act_word(list(range(r, t + 1)), e), vec, -one)
                rel.add({c: x for c, x in vec.items() if x})
    pivots = set(rel.pivots())
    keep = [c for c in range(bare * k) if c not in pivots]
    pos = {c: a for a, c in enumerate(keep)}

    def image(i: int, r: int, x: dict[int, FieldElement]) -> tuple[int, dict[int, FieldElement]]:
        if r == bare:
            return (bare, pres.act(i, x)) if i < m else (m, x)
        if i < r - 1:
            return r, pres.act(i, x)
        if i == r - 1:
            return r - 1, x
        if i == r:
            return r, {j: c * b for j, c in x.items() if c * b}
        return i, pres.act_word(list(range(r, i - 1)), x)

    size = len(keep)
    mats = []
    for i in range(1, m + 1):
        mat = linalg.zeros(mode, size, size)
        for a, c in enumerate(keep):
            r, j = divmod(c, k)
            slot, v = image(i, r + 1, {j: one})
            vec: dict[int, FieldElement] = {}
            lift(slot, v, vec, one)
            for cc, x in rel.reduce(vec).items():
                mat[pos[cc]][a] = x
        mats.append(mat)
    labels = []
    for c in keep:
        r, j = divmod(c, k)
        head = "1" if r + 1 == bare else " ".join(f"u{t}" for t in range(r + 1, m + 1))
        labels.append(f"{head} ⊗ {pres.labels[j]}")
    return ModulePresentation(m + 1, mode, mats, labels, check=check)


def element_matrix(pres: ModulePresentation, x: AlgebraElement) -> Matrix:
    """Matrix of an algebra element acting on a presentation, through reduced words."""
    if x.n != pres.n:
        raise ValueError("element and module live over different algebras")
    mode = pres.mode
    size = pres.dim
    one = mode.one()
    out = linalg.zeros(mode, size, size)
    for d, c in x.terms.items():
        letters = diagram_to_word(d).letters
        for j in range(size):
            for i, v in pres.act_word(letters, {j: one}).items():
                out[i][j] = out[i][j] + c * v
    return out


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class HomBasis:
    """A basis of Hom(src, tgt); each map is a ``tgt.dim x src.dim`` matrix."""

    src: ModulePresentation
    tgt: ModulePresentation
    maps: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.maps)

    def combination(self, coeffs) -> Matrix:
        mode = self.src.mode
        out = linalg.zeros(mode, self.tgt.dim, self.src.dim)
        for c, mat in zip(coeffs, self.maps):
            c = mode.coerce(c)
            if not c:
                continue
            out = [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(out, mat)]
        return out


def is_module_map(src: ModulePresentation, tgt: ModulePresentation, t: Matrix) -> bool:
    mode = src.mode
    for i in range(1, src.n):
        lhs = linalg.matmul(t, src.dense(i), mode)
        rhs = linalg.matmul(tgt.dense(i), t, mode)
        if not linalg.equal(lhs, rhs):
            return False
    return True


def _spin_span(pres: ModulePresentation, start: int) -> int:
    ech = Echelon(pres.mode)
    v = {start: pres.mode.one()}
    ech.add(v)
    queue = deque([v])
    while queue:
        b = queue.popleft()
        for i in range(1, pres.n):
            w = pres.act(i, b)
            if w and ech.add(w):
                queue.append(w)
    return len(ech)


def _apply_forms(tgt: ModulePresentation, i: int, forms: list) -> list:
    """Apply u_i of the target to a vector of linear forms."""
    out: list[dict[int, FieldElement]] = [{} for _ in range(tgt.dim)]
    for j, f in enumerate(forms):
        if not f:
            continue
        for row, x in tgt.cols(i)[j]:
            acc = out[row]
            for u, c in f.items():
                val = x * c
                acc[u] = acc[u] + val if u in acc else val
    return [{u: c for u, c in f.items() if c} for f in out]


def hom_space(src: ModulePresentation, tgt: ModulePresentation, verify: bool = False) -> HomBasis:
    """All module maps src -> tgt.

    The source is spun from as few cyclic generators as possible; the
    unknowns are the images of those generators, and every relation among
    the spun vectors gives linear conditions on them.
    """
    if src.n != tgt.n:
        raise ValueError("modules over different algebras")
    mode = src.mode
    ds, dt = src.dim, tgt.dim
    if ds == 0 or dt == 0:
        return HomBasis(src, tgt, [])
    one = mode.one()

    ech = Echelon(mode)  # rows (b_k | e_{ds+k})
    spin: list[dict[int, FieldElement]] = []
    forms: list[list] = []
    made: set[tuple[int, int]] = set()
    ngens = 0

    def in_span(v):
        return all(c >= ds for c in ech.reduce(v))

    def push(v, f):
        idx = len(spin)
        aug = dict(v)
        aug[ds + idx] = one
        ech.add(aug)
        spin.append(v)
        forms.append(f)
        return idx

    while len(spin) < ds:
        # greedily pick the basis vector with the largest cyclic span
        best, best_size = None, -1
        for j in range(ds):
            e = {j: one}
            if not in_span(e):
                size = _spin_span(src, j)
                if size > best_size:
                    best, best_size = j, size
                if size == ds:
                    break
        g = ngens
        ngens += 1
        queue = deque([push({best: one}, [{g * dt + t: one} for t in range(dt)])])
        while queue:
            k = queue.popleft()
            for i in range(1, src.n):
                w = src.act(i, spin[k])
                if w and not in_span(w):
                    made.add((k, i))
                    queue.append(push(w, _apply_forms(tgt, i, forms[k])))

    def coords(v):
        return {c - ds: -x for c, x in ech.reduce(v).items()}

    nvars = ngens * dt
    cons = Echelon(mode)
    full = False
    for k in range(len(spin)):
        for i in range(1, src.n):
            if (k, i) in made:
                continue
            lhs = _apply_forms(tgt, i, forms[k])
            for m, c in coords(src.act(i, spin[k])).items():
                for t, f in enumerate(forms[m]):
                    acc = lhs[t]
                    for u, x in f.items():
                        val = x * c
                        acc[u] = acc[u] - val if u in acc else -val
            for f in lhs:
                f = {u: x for u, x in f.items() if x}
                if f:
                    cons.add(f)
            if len(cons) == nvars:
                full = True
                break
        if full:
            break
    sols = [] if full else linalg.nullspace_sparse(cons.reduced_rows(), nvars, mode)

    basis_coords = [coords({j: one}) for j in range(ds)]
    maps = []
    for w in sols:
        evals = []
        for f in forms:
            col = []
            for form in f:
                acc = mode.zero()
                for u, x in form.items():
                    y = w.get(u)
                    if y:
                        acc = acc + x * y
                col.append(acc)
            evals.append(col)
        mat = linalg.zeros(mode, dt, ds)
        for j, cj in enumerate(basis_coords):
            for m, c in cj.items():
                for t in range(dt):
                    if evals[m][t]:
                        mat[t][j] = mat[t][j] + c * evals[m][t]
        maps.append(mat)
    if maps:
        # a tidy basis: RREF of the flattened maps
        flat = [[x for row in mat for x in row] for mat in maps]
        rows, _ = linalg.rref(flat, mode)
        maps = [[r[t * ds:(t + 1) * ds] for t in range(dt)] for r in rows]
    out = HomBasis(src, tgt, maps)
    if verify:
        for mat in maps:
            if not is_module_map(src, tgt, mat):
                raise ArithmeticError("hom solver returned a non-equivariant map")
    return out


def hom_dim(src: ModulePresentation, tgt: ModulePresentation) -> int:
    return hom_space(src, tgt).dim


def find_isomorphism(a: ModulePresentation, b: ModulePresentation, seed: int = 0, tries: int = 8) -> Matrix | None:
    """An invertible module map a -> b, or None."""
    if a.dim != b.dim or a.n != b.n:
        return None
    if a.dim == 0:
        return []
    homs = hom_space(a, b)
    if not homs.maps:
        return None
    mode = a.mode
    rng = random.Random(seed)
    candidates = [homs.combination([rng.randint(-9, 9) for _ in homs.maps]) for _ in range(tries)]
    candidates += homs.maps
    for t in candidates:
        if linalg.rank(t, mode) == a.dim:
            return t
    return None


def is_isomorphic(a: ModulePresentation, b: ModulePresentation) -> bool:
    return find_isomorphism(a, b) is not None


def kernel_rows(t: Matrix, mode: ArithmeticMode, ncols: int) -> Matrix:
    return linalg.nullspace(t, mode, ncols) if t else [linalg.identity(mode, ncols)[i] for i in range(ncols)]


def image_rows(t: Matrix, mode: ArithmeticMode) -> Matrix:
    return linalg.column_space(t, mode) if t and t[0] else []


# ---------------------------------------------------------------------------
# radicals and composition factors


@dataclass
class SymmetricHom:
    n: int
    p: int  # source label
    p2: int  # target label, p2 = p + r(n, p)
    map: Matrix
    kernel_dim: int
    image_dim: int
    kernel_is_radical: bool
    image_is_radical: bool


def symmetric_hom(n: int, p: int, mode: ArithmeticMode) -> SymmetricHom:
    """The nonzero map V_{n,p} -> V_{n,p+r} and how it meets the radicals."""
    p2 = left_partner(n, p, mode.ell)
    if p2 is None:
        raise NoSymmetricPartner(f"({n},{p}) has no partner of larger p in range")
    src = standard_presentation(n, p, mode)
    tgt = standard_presentation(n, p2, mode)
    homs = hom_space(src, tgt)
    if homs.dim != 1:
        raise ArithmeticError(f"expected a one-dimensional Hom, found {homs.dim}")
    t = homs.maps[0]
    ker = kernel_rows(t, mode, src.dim)
    img = image_rows(t, mode)
    rad_src = [v.coeffs for v in radical_basis(n, p, mode)]
    rad_tgt = [v.coeffs for v in radical_basis(n, p2, mode)]
    return SymmetricHom(
        n, p, p2, t, len(ker), len(img),
        linalg.span_equal(ker, rad_src, mode),
        linalg.span_equal(img, rad_tgt, mode),
    )


@dataclass
class RadicalReport:
    n: int
    p: int
    dim: int
    dim_expected: int
    partner: int | None  # R_{n,p} is isomorphic to L_{n,partner}
    verified: bool

    def describe(self) -> str:
        if self.dim == 0:
            return f"R({self.n},{self.p}) = 0"
        return f"R({self.n},{self.p}) ~ L({self.n},{self.partner})"


def radical_structure(n: int, p: int, mode: ArithmeticMode) -> RadicalReport:
    dim = len(radical_basis(n, p, mode))
    expected = dimR(n, p, mode.ell) if not mode.beta_is_zero or n != 2 * p else dimV(n, p)
    if dim == 0:
        return RadicalReport(n, p, 0, expected, None, expected == 0)
    low = right_partner(n, p, mode.ell)
    if low is None:
        raise NoSymmetricPartner(f"R({n},{p}) is nonzero but ({n},{p}) has no lower partner")
    sh = symmetric_hom(n, low, mode)
    ok = (
        sh.image_is_radical
        and sh.kernel_is_radical
        and dim == expected
        and sh.image_dim == dimL(n, low, mode.ell)
    )
    return RadicalReport(n, p, dim, expected, low, ok)


def composition_series(n: int, p: int, mode: ArithmeticMode) -> list[tuple[int, int]]:
    """Composition factors of V_{n,p}, radical first, as labels (n, p')."""
    if not in_range(n, p):
        raise ValueError(f"({n},{p}) out of range")
    out = []
    if len(radical_basis(n, p, mode)):
        low = right_partner(n, p, mode.ell)
        if low is None:
            raise NoSymmetricPartner(f"({n},{p}) has a radical but no partner")
        out.append((n, low))
    if any(any(x for x in row) for row in gram(n, p, mode)):
        out.append((n, p))
    return out


def irreducible_presentation(n: int, p: int, mode: ArithmeticMode) -> ModulePresentation:
    """L_{n,p} = V_{n,p} / R_{n,p}."""
    rad = [v.coeffs for v in radical_basis(n, p, mode)]
    return quotient_presentation(standard_presentation(n, p, mode), rad, check=False)


# ---------------------------------------------------------------------------
# principal indecomposables


def projective_kind(n: int, p: int, mode: ArithmeticMode) -> str:
    """'standard' when P_{n,p} = V_{n,p}, otherwise 'eigenspace'."""
    if not in_range(n, p):
        raise ValueError(f"({n},{p}) out of range")
    ell = mode.ell
    if ell is None:
        return "standard"
    k, r = kr(n, p, ell)
    if r == ell or (k == 0 and not mode.beta_is_zero):
        return "standard"
    if k == 0:
        raise ExcludedCase(f"P({n},{p}) at beta = 0 is not covered")
    return "eigenspace"


def projective(n: int, p: int, mode: ArithmeticMode, method: str = "restriction") -> ModulePresentation:
    """The principal indecomposable P_{n,p} with top L_{n,p}.

    Off the critical lines it is the generalized f_{n,p}-eigenspace of F_n
    in Ind^r V_{n-r,p}.  ``method`` picks how that induced module is built:
    'restriction' uses Res^r V_{n+r,p+r}, 'induction' iterates
    :func:`induce_presentation`.
    """
    if projective_kind(n, p, mode) == "standard":
        return standard_presentation(n, p, mode)
    _, r = kr(n, p, mode.ell)
    if method == "restriction":
        big = iterated_induction(n - r, p, r, mode)
        fmat = action_matrix(fn_element(n, mode), n + r, p + r, mode)
    elif method == "induction":
        big = standard_presentation(n - r, p, mode)
        for _ in range(r):
            big = induce_presentation(big, check=False)
        fmat = element_matrix(big, fn_element(n, mode))
    else:
        raise ValueError(f"unknown method {method!r}")
    lam = f_eigen(mode, n, p)
    space = linalg.generalized_kernel(linalg.minus_scalar(fmat, lam), mode)
    return subspace_presentation(big, space, check=True)


@dataclass
class ProjectiveReport:
    n: int
    p: int
    kind: str
    dim: int
    dim_expected: int
    top: int  # partner label whose standard module embeds, or p itself
    hom_dim: int
    injective: bool

    @property
    def ok(self) -> bool:
        return self.dim == self.dim_expected and self.hom_dim >= 1 and self.injective


def projective_verify(n: int, p: int, mode: ArithmeticMode) -> ProjectiveReport:
    """Check dimension and the submodule V_{n,p+r} of P_{n,p}."""
    kind = projective_kind(n, p, mode)
    pres = projective(n, p, mode)
    expected = dimP_expected(n, p, mode.ell)
    if kind == "standard":
        return ProjectiveReport(n, p, kind, pres.dim, expected, p, 1, True)
    _, r = kr(n, p, mode.ell)
    sub = standard_presentation(n, p + r, mode)
    homs = hom_space(sub, pres)
    injective = any(linalg.rank(t, mode) == sub.dim for t in homs.maps)
    if not injective and homs.maps:
        injective = find_isomorphism_into(sub, pres, homs) is not None
    return ProjectiveReport(n, p, kind, pres.dim, expected, p + r, homs.dim, injective)


def find_isomorphism_into(sub, pres, homs: HomBasis, seed: int = 0) -> Matrix | None:
    rng = random.Random(seed)
    for _ in range(8):
        t = homs.combination([rng.randint(-9, 9) for _ in homs.maps])
        if linalg.rank(t, sub.mode) == sub.dim:
            return t
    return None


def projective_dims(n: int, mode: ArithmeticMode) -> dict[int, int]:
    """Computed dim P_{n,p} for every p with L_{n,p} nonzero."""
    out = {}
    for p in range(n // 2 + 1):
        if dimL(n, p, mode.ell) == 0:
            continue
        out[p] = projective(n, p, mode).dim
    return out


__all__ = [
    "ExcludedCase",
    "HomBasis",
    "ModulePresentation",
    "NoSymmetricPartner",
    "ProjectiveReport",
    "RadicalReport",
    "RelationError",
    "SymmetricHom",
    "composition_series",
    "element_matrix",
    "find_isomorphism",
    "hom_dim",
    "hom_space",
    "induce_presentation",
    "induced_presentation",
    "irreducible_presentation",
    "is_isomorphic",
    "is_module_map",
    "iterated_induction",
    "projective",
    "projective_dims",
    "projective_kind",
    "projective_verify",
    "radical_structure",
    "restricted_presentation",
    "standard_presentation",
    "symmetric_hom",
]

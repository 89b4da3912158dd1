"""Representations of Lambda(m, n) as explicit matrix triples.

A representation is a triple ``(A, B, C)`` with ``A`` a ``d1 x d1`` loop at
vertex 1, ``B`` a ``d2 x d2`` loop at vertex 2 and ``C: k^d1 -> k^d2``,
subject to ``A^m = B^n = CA - BC = B^2 C = 0``.

The module also houses the radical-square-zero local algebras with ``n``
loops, used to exhibit a two-dimensional component without a dense orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactla import (
    QQ,
    Field,
    Matrix,
    generic_invertible_in_span,
    rank,
    sparse_kernel,
    subalgebra_radical_dim,
)


class ShapeMismatch(ValueError):
    pass


class RelationViolation(ValueError):
    pass


@dataclass(frozen=True)
class RepTriple:
    m: int
    n: int
    A: Matrix
    B: Matrix
    C: Matrix

    def __post_init__(self):
        d1, d2 = self.A.nrows, self.B.nrows
        if self.A.shape != (d1, d1) or self.B.shape != (d2, d2) or self.C.shape != (d2, d1):
            raise ShapeMismatch(
                f"incompatible shapes A{self.A.shape} B{self.B.shape} C{self.C.shape}")
        if not (self.A.field == self.B.field == self.C.field):
            raise ShapeMismatch("matrices live over different fields")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def dim_vector(self) -> tuple[int, int]:
        return self.A.nrows, self.B.nrows

    def act(self, g1: Matrix, g2: Matrix, g1_inv: Matrix | None = None,
            g2_inv: Matrix | None = None) -> "RepTriple":
        """Base change ``(g1, g2) . (A, B, C) = (g1 A g1^-1, g2 B g2^-1, g2 C g1^-1)``."""
        from .exactla import inverse
        g1_inv = inverse(g1) if g1_inv is None else g1_inv
        g2_inv = inverse(g2) if g2_inv is None else g2_inv
        return RepTriple(self.m, self.n, g1 @ self.A @ g1_inv, g2 @ self.B @ g2_inv,
                         g2 @ self.C @ g1_inv)

    def direct_sum(self, other: "RepTriple") -> "RepTriple":
        B = Matrix.block_diag(self.B, other.B)
        A = Matrix.block_diag(self.A, other.A)
        C = Matrix.block_diag(self.C, other.C)
        return RepTriple(max(self.m, other.m), max(self.n, other.n), A, B, C)

    def dual(self) -> "RepTriple":
        """Vector space dual: a representation of Lambda(n, m) with dimension ``(d2, d1)``."""
        return RepTriple(self.n, self.m, self.B.T, self.A.T, self.C.T)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "A": self.A.to_json(), "B": self.B.to_json(),
                "C": self.C.to_json(), "field": self.field.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "RepTriple":
        F = Field.from_json(obj.get("field"))
        A = Matrix(F, obj["A"])
        B = Matrix(F, obj["B"])
        C = Matrix(F, obj["C"], ncols=A.nrows)
        return cls(int(obj["m"]), int(obj["n"]), A, B, C)


def check_relations(R: RepTriple) -> bool:
    A, B, C = R.A, R.B, R.C
    return ((A ** R.m).is_zero() and (B ** R.n).is_zero()
            and (C @ A - B @ C).is_zero() and (B @ B @ C).is_zero())


def _require_relations(R: RepTriple):
    if not check_relations(R):
        raise RelationViolation("triple does not satisfy the Lambda(m,n) relations")


# ---------------------------------------------------------------------------
# morphism spaces of quiver representations


def _sparse(M: Matrix) -> dict[int, list]:
    return {i: [(j, x) for j, x in enumerate(r) if x] for i, r in enumerate(M.rows)}


def _hom_space(dims_src: Sequence[int], dims_dst: Sequence[int],
               arrows: Sequence[tuple[int, int, Matrix, Matrix]], F: Field) -> list[list[Matrix]]:
    """Basis of the space of morphisms between two quiver representations.

    ``arrows`` lists ``(tail, head, M_src, M_dst)``.  A morphism is a family
    of maps ``phi_z`` with ``phi_head M_src = M_dst phi_tail``.  Loops are
    solved per vertex first, which keeps the final system small.
    """
    nv = len(dims_src)
    # stage 1: per-vertex parametrisations, each a list of sparse matrices {(i,j): x}
    params: list[list[dict]] = []
    for z in range(nv):
        r, s = dims_src[z], dims_dst[z]
        loops = [(Ms, Md) for t, h, Ms, Md in arrows if t == h == z]
        if not loops:
            params.append([{(i, j): F.one} for i in range(s) for j in range(r)])
            continue
        eqs = []
        for Ms, Md in loops:
            Ms_cols = _sparse(Ms.T)
            Md_rows = _sparse(Md)
            for i in range(s):
                for j in range(r):
                    row: dict = {}
                    for k, x in Ms_cols[j]:      # phi[i,k] Ms[k,j]
                        row[i * r + k] = row.get(i * r + k, 0) + x
                    for k, x in Md_rows[i]:      # - Md[i,k] phi[k,j]
                        row[k * r + j] = row.get(k * r + j, 0) - x
                    eqs.append(row)
        ker = sparse_kernel(eqs, r * s, F)
        params.append([{divmod(idx, r): x for idx, x in v.items()} for v in ker])

    offsets = []
    total = 0
    for z in range(nv):
        offsets.append(total)
        total += len(params[z])

    # stage 2: non-loop arrows impose phi_h M_src - M_dst phi_t = 0
    cross = [(t, h, Ms, Md) for t, h, Ms, Md in arrows if t != h]
    if cross:
        eqs_by_key: dict = {}
        for a_idx, (t, h, Ms, Md) in enumerate(cross):
            Ms_rows = _sparse(Ms)
            Md_cols = _sparse(Md.T)
            for b, Phi in enumerate(params[h]):
                var = offsets[h] + b
                for (i, k), x in Phi.items():         # (Phi Ms)[i, j]
                    for j, y in Ms_rows[k]:
                        key = (a_idx, i, j)
                        row = eqs_by_key.setdefault(key, {})
                        row[var] = row.get(var, 0) + x * y
            for b, Phi in enumerate(params[t]):
                var = offsets[t] + b
                for (k, j), x in Phi.items():         # (Md Phi)[i, j]
                    for i, y in Md_cols[k]:
                        key = (a_idx, i, j)
                        row = eqs_by_key.setdefault(key, {})
                        row[var] = row.get(var, 0) - y * x
        coeffs = sparse_kernel(eqs_by_key.values(), total, F)
    else:
        coeffs = [{b: F.one} for b in range(total)]

    basis = []
    for v in coeffs:
        maps = []
        for z in range(nv):
            acc: dict = {}
            for b, Phi in enumerate(params[z]):
                c = v.get(offsets[z] + b)
                if not c:
                    continue
                for key, x in Phi.items():
                    acc[key] = acc.get(key, 0) + c * x
            M = Matrix.zeros(F, dims_dst[z], dims_src[z])
            for (i, j), x in acc.items():
                M.rows[i][j] = F(x)
            maps.append(M)
        basis.append(maps)
    return basis


def _triple_arrows(R: RepTriple, S: RepTriple):
    return [(0, 0, R.A, S.A), (1, 1, R.B, S.B), (0, 1, R.C, S.C)]


def hom_space(R: RepTriple, S: RepTriple) -> list[tuple[Matrix, Matrix]]:
    """Basis of Hom(R, S) as pairs ``(P, Q)`` with ``P A_R = A_S P`` etc."""
    if R.field != S.field:
        raise ShapeMismatch("field mismatch")
    basis = _hom_space(R.dim_vector, S.dim_vector, _triple_arrows(R, S), R.field)
    return [(P, Q) for P, Q in basis]


# ---------------------------------------------------------------------------
# endomorphisms, orbits, isomorphism


@dataclass
class EndoSpace:
    basis: list[tuple[Matrix, Matrix]]
    dim: int
    dim_top: int | None = None
    is_local: bool | None = None

    @property
    def dim_radical(self) -> int | None:
        return None if self.dim_top is None else self.dim - self.dim_top

    def to_json(self) -> dict:
        return {"dim": self.dim, "dim_top": self.dim_top, "dim_radical": self.dim_radical,
                "is_local": self.is_local}


def endo_space(R: RepTriple, locality: bool = True) -> EndoSpace:
    """Endomorphism algebra of ``R``.

    Locality is decided only over Q, where the radical is computed from the
    trace form; over a prime field ``is_local`` stays ``None``.
    """
    _require_relations(R)
    basis = hom_space(R, R)
    E = EndoSpace(basis=basis, dim=len(basis))
    if locality and R.field.p is None:
        dim, rad = subalgebra_radical_dim([Matrix.block_diag(P, Q) for P, Q in basis])
        E.dim_top = dim - rad
        E.is_local = E.dim_top == 1
    return E


def orbit_dim(R: RepTriple) -> int:
    d1, d2 = R.dim_vector
    return d1 * d1 + d2 * d2 - endo_space(R, locality=False).dim


def is_isomorphic(R: RepTriple, S: RepTriple, trials: int = 8, seed: int = 0) -> bool:
    """Probabilistic isomorphism test.

    ``True`` is certified by an explicit invertible intertwiner; ``False``
    means ``trials`` random intertwiners were all singular.
    """
    if R.dim_vector != S.dim_vector:
        raise ShapeMismatch(f"dimension vectors {R.dim_vector} and {S.dim_vector} differ")
    if R.field != S.field:
        raise ShapeMismatch("field mismatch")
    if rank(R.C) != rank(S.C):
        return False
    basis = hom_space(R, S)
    if not basis:
        return False
    return generic_invertible_in_span([Matrix.block_diag(P, Q) for P, Q in basis],
                                      trials=trials, seed=seed)


# ---------------------------------------------------------------------------
# tangent spaces


def _sandwich(eqs: dict, key, L: Matrix | None, Rm: Matrix | None,
              var_offset: int, var_shape: tuple[int, int], out_shape: tuple[int, int], sign=1):
    """Add ``sign * L V R`` to equation block ``key`` (``None`` means identity)."""
    vr, vc = var_shape
    orows, ocols = out_shape
    Lrows = None if L is None else _sparse(L)
    Rcols = None if Rm is None else _sparse(Rm.T)
    for r in range(orows):
        left = [(r, 1)] if L is None else Lrows[r]
        for c in range(ocols):
            right = [(c, 1)] if Rm is None else Rcols[c]
            if not left or not right:
                continue
            row = eqs.setdefault((key, r, c), {})
            for s, x in left:
                for t, y in right:
                    var = var_offset + s * vc + t
                    row[var] = row.get(var, 0) + sign * x * y


def tangent_dim(R: RepTriple) -> int:
    """Dimension of the Zariski tangent space of the defining equations at ``R``.

    Unknowns are directions ``(X, Y, Z)``; the linearised relations are

    * ``sum_{i<m} A^i X A^{m-1-i} = 0`` and the same for ``B``, ``Y``, ``n``,
    * ``Z A + C X - Y C - B Z = 0``,
    * ``Y B C + B Y C + B^2 Z = 0``.
    """
    _require_relations(R)
    A, B, C = R.A, R.B, R.C
    d1, d2 = R.dim_vector
    F = R.field
    oX, oY, oZ = 0, d1 * d1, d1 * d1 + d2 * d2
    nvars = oZ + d2 * d1
    eqs: dict = {}
    powA = [Matrix.identity(F, d1)]
    for _ in range(R.m - 1):
        powA.append(powA[-1] @ A)
    for i in range(R.m):
        _sandwich(eqs, "a", powA[i], powA[R.m - 1 - i], oX, (d1, d1), (d1, d1))
    powB = [Matrix.identity(F, d2)]
    for _ in range(max(R.n - 1, 2)):
        powB.append(powB[-1] @ B)
    for i in range(R.n):
        _sandwich(eqs, "b", powB[i], powB[R.n - 1 - i], oY, (d2, d2), (d2, d2))
    _sandwich(eqs, "c", None, A, oZ, (d2, d1), (d2, d1))
    _sandwich(eqs, "c", C, None, oX, (d1, d1), (d2, d1))
    _sandwich(eqs, "c", None, C, oY, (d2, d2), (d2, d1), sign=-1)
    _sandwich(eqs, "c", B, None, oZ, (d2, d1), (d2, d1), sign=-1)
    BC = B @ C
    _sandwich(eqs, "bbc", None, BC, oY, (d2, d2), (d2, d1))
    _sandwich(eqs, "bbc", B, C, oY, (d2, d2), (d2, d1))
    _sandwich(eqs, "bbc", powB[2], None, oZ, (d2, d1), (d2, d1))
    return len(sparse_kernel(eqs.values(), nvars, F))


# ---------------------------------------------------------------------------
# degenerations


def _words(max_len: int):
    """Composable words in ``a: 1->1``, ``b: 2->2``, ``c: 1->2``, first letter applied first."""
    ends = {"a": (0, 0), "b": (1, 1), "c": (0, 1)}
    out = []
    frontier = [(w,) for w in ends]
    for _ in range(max_len):
        out.extend(frontier)
        nxt = []
        for w in frontier:
            head = ends[w[-1]][1]
            for a, (t, _h) in ends.items():
                if t == head:
                    nxt.append(w + (a,))
        frontier = nxt
    return out


def _evaluate(R: RepTriple, word) -> Matrix:
    mats = {"a": R.A, "b": R.B, "c": R.C}
    M = mats[word[0]]
    for a in word[1:]:
        M = mats[a] @ M
    return M


@dataclass
class DegenerationReport:
    """Necessary conditions for ``N`` to lie in the orbit closure of ``M``.

    Passing every check is evidence, not a proof, of degeneration.
    """

    endo_dim_from: int
    endo_dim_to: int
    isomorphic: bool
    endo_condition: bool
    words_checked: int
    rank_failures: list[dict] = dc_field(default_factory=list)

    @property
    def rank_condition(self) -> bool:
        return not self.rank_failures

    @property
    def passes(self) -> bool:
        return self.endo_condition and self.rank_condition

    def to_json(self) -> dict:
        return {
            "endo_dim_from": self.endo_dim_from,
            "endo_dim_to": self.endo_dim_to,
            "isomorphic": self.isomorphic,
            "conditions": {"endo_dim": self.endo_condition, "word_ranks": self.rank_condition},
            "words_checked": self.words_checked,
            "rank_failures": self.rank_failures,
            "passes": self.passes,
        }


def degeneration_necessary(M: RepTriple, N: RepTriple, max_word_len: int = 4,
                           seed: int = 0) -> DegenerationReport:
    if M.dim_vector != N.dim_vector:
        raise ShapeMismatch("degenerations preserve the dimension vector")
    eM = endo_space(M, locality=False).dim
    eN = endo_space(N, locality=False).dim
    iso = is_isomorphic(M, N, seed=seed)
    endo_ok = eN == eM if iso else eN > eM
    words = _words(max_word_len)
    failures = []
    for w in words:
        rM, rN = rank(_evaluate(M, w)), rank(_evaluate(N, w))
        if rN > rM:
            failures.append({"word": "".join(reversed(w)), "rank_from": rM, "rank_to": rN})
    return DegenerationReport(eM, eN, iso, endo_ok, len(words), failures)


# ---------------------------------------------------------------------------
# the local radical-square-zero family


@dataclass(frozen=True)
class LocalFamilyPoint:
    loops: int
    lam: tuple
    matrices: tuple[Matrix, ...]


def local_family(n: int, lam: Sequence | None = None, field: Field = QQ) -> LocalFamilyPoint:
    """The 2-dimensional representation ``(E12, lam_1 E12, ..., lam_{n-1} E12)``."""
    if n < 2:
        raise ValueError("need at least two loops")
    if lam is None:
        lam = list(range(1, n))
    lam = tuple(field(x) for x in lam)
    if len(lam) != n - 1:
        raise ValueError(f"expected {n - 1} parameters, got {len(lam)}")
    mats = [Matrix(field, [[0, 1], [0, 0]])] + [Matrix(field, [[0, x], [0, 0]]) for x in lam]
    return LocalFamilyPoint(n, lam, tuple(mats))


@dataclass(frozen=True)
class LocalTangent:
    loops: int
    tangent: int
    orbit: int
    endo_dim: int

    @property
    def quotient(self) -> int:
        return self.tangent - self.orbit

    @property
    def family_dim(self) -> int:
        return self.loops - 1

    @property
    def component_dim(self) -> int:
        return self.family_dim + self.orbit

    @property
    def max_orbit_dim(self) -> int:
        return self.orbit

    @property
    def dense_orbit(self) -> bool:
        return self.component_dim <= self.max_orbit_dim

    def to_json(self) -> dict:
        return {"loops": self.loops, "tangent": self.tangent, "orbit": self.orbit,
                "quotient": self.quotient, "componentDim": self.component_dim,
                "maxOrbitDim": self.max_orbit_dim, "denseOrbit": self.dense_orbit,
                "endoDim": self.endo_dim}


def local_hom_space(pt: LocalFamilyPoint, other: LocalFamilyPoint) -> list[Matrix]:
    arrows = [(0, 0, X, Y) for X, Y in zip(pt.matrices, other.matrices)]
    F = pt.matrices[0].field
    return [maps[0] for maps in _hom_space((2,), (2,), arrows, F)]


def local_tangent(pt: LocalFamilyPoint) -> LocalTangent:
    """Tangent and orbit dimensions at ``pt`` in the variety of 2-dimensional modules.

    The tangent space is that of the equations ``X_i X_j = 0`` for all ordered
    pairs, i.e. ``M_i Z_j + Z_i M_j = 0``.
    """
    n = pt.loops
    F = pt.matrices[0].field
    eqs: dict = {}
    for i in range(n):
        for j in range(n):
            _sandwich(eqs, (i, j), pt.matrices[i], None, 4 * j, (2, 2), (2, 2))
            _sandwich(eqs, (i, j), None, pt.matrices[j], 4 * i, (2, 2), (2, 2))
    tangent = len(sparse_kernel(eqs.values(), 4 * n, F))
    endo = len(local_hom_space(pt, pt))
    return LocalTangent(n, tangent, 4 - endo, endo)


def local_is_isomorphic(pt: LocalFamilyPoint, other: LocalFamilyPoint, trials: int = 8,
                        seed: int = 0) -> bool:
    basis = local_hom_space(pt, other)
    if not basis:
        return False
    return generic_invertible_in_span(basis, trials=trials, seed=seed)

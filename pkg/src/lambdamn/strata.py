"""Strata of rep(Lambda(m, n)) indexed by pairs of Jordan types.

A stratum ``(p, q)`` collects the representations whose loops have Jordan
types ``p`` (at vertex 1) and ``q`` (at vertex 2).  It is a vector bundle
over a product of nilpotent orbits with fibre the ``soc^2`` Hom space, so

    dim = dim N^p + dim N^q + h(p, q),   h(p, q) = sum min(2, p_j, q_i).

The general indecomposables come in five staircase shapes together with
their transposes.  Canonical orientation means ``min(p) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exactla import QQ, Field
from .ktmod import LabeledMatrix, TruncPoly, dual_labeled
from .partitions import Partition, UnequalWeight, dominance_leq, nilpotent_orbit_dim


class NotCandidate(ValueError):
    """The pair of Jordan types is not one of the classified shapes."""


def _part(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        return Partition.parse(x)
    if isinstance(x, int):
        return Partition((x,))
    return Partition(sorted(x, reverse=True))


def h_of(p, q) -> int:
    p, q = _part(p), _part(q)
    return sum(min(2, a, b) for a in p for b in q)


def stratum_dim(p, q) -> int:
    p, q = _part(p), _part(q)
    return nilpotent_orbit_dim(p) + nilpotent_orbit_dim(q) + h_of(p, q)


def containment_hint(p_sub, q_sub, p, q) -> bool:
    """Sufficient condition for the ``(p_sub, q_sub)`` stratum to lie in the closure of ``(p, q)``.

    A ``False`` answer says nothing about non-containment.
    """
    p_sub, q_sub, p, q = map(_part, (p_sub, q_sub, p, q))
    if p_sub.weight != p.weight or q_sub.weight != q.weight:
        raise UnequalWeight("containment compares strata of one dimension vector")
    return dominance_leq(p_sub, p) and dominance_leq(q_sub, q) and h_of(p_sub, q_sub) == h_of(p, q)


# ---------------------------------------------------------------------------
# the five shapes


SHAPES = ("1x1", "1x2", "2x2", "2x3", "3x3")


def classification_shape(m: int, n: int, p, q) -> tuple[str, dict] | None:
    """Shape and parameters of ``(p, q)`` in canonical orientation, or ``None``."""
    p, q = _part(p), _part(q)
    lp, lq = len(p), len(q)
    if lp == 1 and lq == 1:
        if p[0] <= m and q[0] <= n:
            return "1x1", {"u": p[0], "z": q[0]}
        return None
    if not p or p[-1] != 1 or not q:
        return None
    if lp == 2 and lq == 1:
        t, z = p[0], q[0]
        if 3 <= t <= m and 2 <= z <= n:
            return "1x2", {"t": t, "u": 1, "z": z}
        return None
    if lp == 2 and lq == 2:
        t, (y, z) = p[0], q
        if 3 <= t <= m and z == 2 and 3 <= y <= n:
            return "2x2", {"t": t, "u": 1, "y": y, "z": 2}
        return None
    if lp == 3 and lq == 2:
        (s, t, _), (y, z) = p, q
        if s == m and 3 <= t <= m - 1 and z == 2 and 3 <= y <= n:
            return "2x3", {"s": s, "t": t, "u": 1, "y": y, "z": 2}
        return None
    if lp == 3 and lq == 3:
        (s, t, _), (x, y, z) = p, q
        if s == m and 3 <= t <= m - 1 and x == n and z == 2 and 3 <= y <= n - 1:
            return "3x3", {"s": s, "t": t, "u": 1, "x": x, "y": y, "z": 2}
        return None
    return None


def candidate_orientation(m: int, n: int, p, q) -> tuple[str, dict, bool] | None:
    """``(shape, params, transposed)`` if ``(p, q)`` is classified, else ``None``."""
    hit = classification_shape(m, n, p, q)
    if hit:
        return hit[0], hit[1], False
    hit = classification_shape(n, m, q, p)
    if hit and hit[0] != "1x1":
        return hit[0], hit[1], True
    return None


def candidate_filter(m: int, n: int, p, q) -> bool:
    return candidate_orientation(m, n, p, q) is not None


# ---------------------------------------------------------------------------
# normal forms


def t_star(row_part: int, col_part: int) -> int:
    """Exponent of ``T^*`` in a ``J_row`` row and ``J_col`` column."""
    return row_part - min(2, row_part, col_part)


def staircase(p, q, field: Field = QQ) -> LabeledMatrix:
    """Staircase matrix with ``T^*`` on treads and risers.

    With ``delta = len(p) - len(q)`` the tread of row ``r`` sits in column
    ``r + delta`` and its riser in column ``r + delta - 1`` (1-based).
    """
    p, q = _part(p), _part(q)
    M = LabeledMatrix.zeros(q, p, field)
    delta = len(p) - len(q)
    for r in range(1, len(q) + 1):
        for c in (r + delta, r + delta - 1):
            if 1 <= c <= len(p):
                qi, pj = q[r - 1], p[c - 1]
                M.entries[r - 1][c - 1] = TruncPoly.monomial(field, qi, t_star(qi, pj))
    return M


def normal_form(m: int, n: int, p, q, field: Field = QQ) -> LabeledMatrix:
    """The normal form ``M_{p,q}`` of a classified stratum.

    In the transposed orientation this is the dual of the canonical normal
    form of ``(q, p)`` for ``Lambda(n, m)``.
    """
    hit = candidate_orientation(m, n, p, q)
    if hit is None:
        raise NotCandidate(f"(p, q) = ({_part(p)}), ({_part(q)}) is not a classified stratum "
                           f"for Lambda({m},{n})")
    if hit[2]:
        return dual_labeled(staircase(q, p, field))
    return staircase(p, q, field)


@dataclass(frozen=True)
class Stratum:
    m: int
    n: int
    p: Partition
    q: Partition

    def __post_init__(self):
        object.__setattr__(self, "p", _part(self.p))
        object.__setattr__(self, "q", _part(self.q))
        if not self.p.fits(self.m) or not self.q.fits(self.n):
            raise ValueError(f"parts exceed the bounds ({self.m},{self.n})")

    @property
    def dim_vector(self) -> tuple[int, int]:
        return self.p.weight, self.q.weight

    @property
    def h(self) -> int:
        return h_of(self.p, self.q)

    @property
    def dim(self) -> int:
        return stratum_dim(self.p, self.q)

    @property
    def candidate(self) -> bool:
        return candidate_filter(self.m, self.n, self.p, self.q)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "p": list(self.p), "q": list(self.q),
                "h": self.h, "dim": self.dim, "candidate": self.candidate}


@dataclass(frozen=True)
class GeneralIndecomposable:
    """One member of the classification, for ``Lambda(m, n)``.

    ``shape`` and ``params`` describe the untransposed family member; when
    ``transposed`` is set, that member lives over ``Lambda(n, m)`` and this
    entry is its dual.
    """

    shape: str
    transposed: bool
    params: tuple
    m: int
    n: int
    p: Partition
    q: Partition

    @property
    def label(self) -> str:
        if self.transposed:
            a, b = self.shape.split("x")
            return f"{b}x{a}"
        return self.shape

    @property
    def parameters(self) -> dict:
        return dict(self.params)

    @property
    def stratum(self) -> Stratum:
        return Stratum(self.m, self.n, self.p, self.q)

    @cached_property
    def normal_form(self) -> LabeledMatrix:
        return normal_form(self.m, self.n, self.p, self.q)

    @property
    def dim_vector(self) -> tuple[int, int]:
        return self.p.weight, self.q.weight

    def to_json(self) -> dict:
        return {"shape": self.label, "family": self.shape, "transposed": self.transposed,
                "parameters": self.parameters, "p": list(self.p), "q": list(self.q),
                "dim_vector": list(self.dim_vector)}


def general_indecomposable(m: int, n: int, p, q) -> GeneralIndecomposable:
    hit = candidate_orientation(m, n, p, q)
    if hit is None:
        raise NotCandidate(f"({_part(p)}), ({_part(q)}) is not classified for Lambda({m},{n})")
    shape, params, tr = hit
    return GeneralIndecomposable(shape, tr, tuple(sorted(params.items())), m, n, _part(p), _part(q))


def transpose_dual(g: GeneralIndecomposable) -> GeneralIndecomposable:
    """The dual entry for ``Lambda(n, m)``; an involution."""
    return general_indecomposable(g.n, g.m, g.q, g.p)

"""Reduction of general labeled matrices by legal row and column operations.

Every routine returns a :class:`ReductionTrace` listing the operations used,
so a run can be replayed and each step re-checked for legality.  Inputs that
are not general enough for a routine give a :class:`NotGeneral` value
instead of an exception.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactla import Field
from .ktmod import (
    LabeledMatrix,
    RowColOp,
    TruncPoly,
    add_col,
    add_row,
    apply_op,
    dual_labeled,
    dual_op,
    entry_floor,
    scale_col,
    scale_row,
)
from .strata import NotCandidate, candidate_orientation, normal_form, staircase, t_star


class NoRepeatedPart(ValueError):
    pass


@dataclass(frozen=True)
class NotGeneral:
    """A pivot needed by the reduction had a vanishing leading coefficient."""

    reason: str
    position: tuple | None = None

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"not_general": True, "reason": self.reason,
                "position": None if self.position is None else list(self.position)}


@dataclass
class ReductionTrace:
    """Operations taking ``input`` to ``final``.

    ``final`` is block diagonal up to a permutation of rows and columns:
    ``result_block`` picks out ``result`` and ``summand_blocks[k]`` picks out
    ``summands[k]``.
    """

    input: LabeledMatrix
    steps: list[RowColOp]
    final: LabeledMatrix
    result: LabeledMatrix
    result_block: tuple[tuple[int, ...], tuple[int, ...]]
    summands: list[LabeledMatrix] = dc_field(default_factory=list)
    summand_blocks: list[tuple[tuple[int, ...], tuple[int, ...]]] = dc_field(default_factory=list)

    def __bool__(self):
        return True

    @property
    def split_summands(self) -> list[tuple[LabeledMatrix, tuple[int, int]]]:
        return [(S, S.dim_vector) for S in self.summands]

    def replay(self) -> bool:
        """Re-apply every step (re-validating legality) and check the block structure."""
        M = self.input
        for op in self.steps:
            M = apply_op(M, op)
        if M != self.final:
            return False
        blocks = [self.result_block] + list(self.summand_blocks)
        mats = [self.result] + list(self.summands)
        for (rows, cols), S in zip(blocks, mats):
            if M.submatrix(rows, cols) != S:
                return False
        owner_r, owner_c = {}, {}
        for k, (rows, cols) in enumerate(blocks):
            owner_r.update({i: k for i in rows})
            owner_c.update({j: k for j in cols})
        nr, nc = M.shape
        if sorted(owner_r) != list(range(nr)) or sorted(owner_c) != list(range(nc)):
            return False
        return all(not M.entries[i][j] for i in range(nr) for j in range(nc)
                   if owner_r[i] != owner_c[j])

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "steps": [op.to_json() for op in self.steps],
            "final": self.final.to_json(),
            "result": self.result.to_json(),
            "result_block": [list(x) for x in self.result_block],
            "summands": [{"matrix": S.to_json(), "dim_vector": list(S.dim_vector),
                          "block": [list(x) for x in b]}
                         for S, b in zip(self.summands, self.summand_blocks)],
        }


class _Runner:
    """Applies operations to a working matrix while recording them."""

    def __init__(self, M: LabeledMatrix):
        self.start = M
        self.M = M
        self.steps: list[RowColOp] = []

    def do(self, op: RowColOp):
        self.M = apply_op(self.M, op)
        self.steps.append(op)

    @property
    def F(self) -> Field:
        return self.M.field

    def entry(self, i: int, j: int) -> TruncPoly:
        return self.M.entries[i][j]

    def swap_rows(self, i: int, j: int):
        # legal for rows with equal labels: r_i += r_j, r_j -= r_i, r_i += r_j, r_j *= -1
        if i == j:
            return
        q = self.M.row_labels
        e = q[i]
        one, mone = TruncPoly.monomial(self.F, e, 0), TruncPoly.monomial(self.F, e, 0, -1)
        self.do(add_row(i, j, one))
        self.do(add_row(j, i, mone))
        self.do(add_row(i, j, one))
        self.do(scale_row(j, mone))

    def swap_cols(self, i: int, j: int):
        if i == j:
            return
        e = self.M.col_labels[i]
        one, mone = TruncPoly.monomial(self.F, e, 0), TruncPoly.monomial(self.F, e, 0, -1)
        self.do(add_col(i, j, one))
        self.do(add_col(j, i, mone))
        self.do(add_col(i, j, one))
        self.do(scale_col(j, mone))

    def normalize_pivot(self, i: int, j: int, by_row: bool) -> bool:
        """Scale line ``i`` (row) or ``j`` (column) so entry ``(i, j)`` becomes ``T^*``."""
        q, p = self.M.row_labels[i], self.M.col_labels[j]
        tau = t_star(q, p)
        e = self.entry(i, j)
        if not e[tau]:
            return False
        w = e.shift(-tau, q - tau) if e.divisible_by(tau) else None
        if w is None:
            return False
        modulus = q if by_row else p
        u = w.truncate(max(modulus, q - tau)).inverse().truncate(modulus)
        if u.coeffs == (self.F.one,) + (self.F.zero,) * (modulus - 1):
            return True
        self.do(scale_row(i, u) if by_row else scale_col(j, u))
        return True

    def clear_column(self, i: int, j: int, rows: Sequence[int]):
        """Kill entries ``(r, j)`` for ``r`` in ``rows`` using row ``i``, whose pivot is ``T^*``."""
        tau = t_star(self.M.row_labels[i], self.M.col_labels[j])
        for r in rows:
            e = self.entry(r, j)
            if e:
                f = (-e).shift(-tau, self.M.row_labels[r])
                self.do(add_row(r, i, f))

    def clear_row(self, i: int, j: int, cols: Sequence[int]):
        """Kill entries ``(i, c)`` for ``c`` in ``cols`` using column ``j`` (pivot ``T^*``)."""
        tau = t_star(self.M.row_labels[i], self.M.col_labels[j])
        for c in cols:
            e = self.entry(i, c)
            if e:
                f = (-e).shift(-tau, self.M.col_labels[j])
                self.do(add_col(c, j, f))

    def trace(self, result_block, summand_blocks) -> ReductionTrace:
        rows, cols = result_block
        return ReductionTrace(
            input=self.start, steps=self.steps, final=self.M,
            result=self.M.submatrix(rows, cols), result_block=(tuple(rows), tuple(cols)),
            summands=[self.M.submatrix(r, c) for r, c in summand_blocks],
            summand_blocks=[(tuple(r), tuple(c)) for r, c in summand_blocks])


# ---------------------------------------------------------------------------
# splitting a single summand


def _last_index(labels, value) -> int:
    return max(i for i, x in enumerate(labels) if x == value)


def _split_at_labels(M: LabeledMatrix, row_label: int, col_label: int):
    """Split off a one-entry summand whose pivot lies in a ``J_row`` row and ``J_col`` column."""
    q, p = M.row_labels, M.col_labels
    tau = t_star(row_label, col_label)
    rows = [i for i, x in enumerate(q) if x == row_label]
    cols = [j for j, x in enumerate(p) if x == col_label]
    pivot = next(((i, j) for i in reversed(rows) for j in reversed(cols)
                  if M.entries[i][j][tau]), None)
    if pivot is None:
        return NotGeneral(f"no entry in a J{row_label} row and J{col_label} column has a "
                          f"nonzero T^{tau} coefficient")
    run = _Runner(M)
    i, j = rows[-1], cols[-1]
    run.swap_rows(pivot[0], i)
    run.swap_cols(pivot[1], j)
    run.normalize_pivot(i, j, by_row=False)
    run.clear_row(i, j, [c for c in range(len(p)) if c != j])
    run.clear_column(i, j, [r for r in range(len(q)) if r != i])
    keep_r = [r for r in range(len(q)) if r != i]
    keep_c = [c for c in range(len(p)) if c != j]
    return run.trace((keep_r, keep_c), [([i], [j])])


def split_one_one(M: LabeledMatrix):
    """Split off a summand ``[1]`` with labels ``J_1 / J_1``."""
    if not M.row_labels or not M.col_labels or M.row_labels.min != 1 or M.col_labels.min != 1:
        raise ValueError("needs a part 1 among both the row and the column labels")
    return _split_at_labels(M, 1, 1)


def split_min_parts(M: LabeledMatrix):
    """Split off ``[T^{l-2}]`` (labels ``J_l / J_k``) or ``[T^{r-2}]`` (labels ``J_r / J_2``).

    The first case needs ``min(p) = k > 1`` and ``min(q) = l > 1``; the
    second needs ``min(p) = 1``, a part 2 in ``p`` and ``min(q) = r > 1``.
    """
    p, q = M.col_labels, M.row_labels
    if not p or not q:
        raise ValueError("empty labels")
    if p.min > 1 and q.min > 1:
        return _split_at_labels(M, q.min, p.min)
    if p.min == 1 and 2 in p and q.min > 1:
        return _split_at_labels(M, q.min, 2)
    raise ValueError(f"labels p={tuple(p)}, q={tuple(q)} meet neither splitting hypothesis")


# ---------------------------------------------------------------------------
# the staircase walk


def _walk(nrows: int, ncols: int):
    """Staircase positions from the bottom right: tread, riser, tread, ... (0-based)."""
    delta = ncols - nrows
    for r in range(nrows, 0, -1):
        for kind, c in (("tread", r + delta), ("riser", r + delta - 1)):
            if c < 1:
                return
            if c <= ncols:
                yield kind, r - 1, c - 1


def _reduce_canonical(M: LabeledMatrix):
    run = _Runner(M)
    nr, nc = M.shape
    for kind, i, j in _walk(nr, nc):
        if kind == "tread":
            if not run.normalize_pivot(i, j, by_row=True):
                return NotGeneral(f"tread ({i},{j}) has a vanishing leading coefficient", (i, j))
            run.clear_column(i, j, range(i))
        else:
            if not run.normalize_pivot(i, j, by_row=False):
                return NotGeneral(f"riser ({i},{j}) has a vanishing leading coefficient", (i, j))
            run.clear_row(i, j, range(j))
    return run.trace((range(nr), range(nc)), [])


def reduce_to_normal_form(M: LabeledMatrix, m: int | None = None, n: int | None = None):
    """Reduce a general matrix of a classified stratum to its normal form.

    Treads scale their row and clear their column upward; risers scale their
    column and clear their row leftward.  For the transposed orientation the
    dual matrix is reduced and each operation is carried back.  ``m`` and
    ``n`` default to the largest labels.
    """
    p, q = M.col_labels, M.row_labels
    m = (p[0] if p else 1) if m is None else m
    n = (q[0] if q else 1) if n is None else n
    hit = candidate_orientation(m, n, p, q)
    if hit is None:
        raise NotCandidate(f"p={tuple(p)}, q={tuple(q)} is not classified for Lambda({m},{n})")
    target = normal_form(m, n, p, q, M.field)
    if not hit[2]:
        tr = _reduce_canonical(M)
    else:
        D = dual_labeled(M)
        dtr = _reduce_canonical(D)
        if not dtr:
            return dtr
        run = _Runner(M)
        cur = D
        for op in dtr.steps:
            run.do(dual_op(op, cur))
            cur = apply_op(cur, op)
        nr, nc = M.shape
        tr = run.trace((range(nr), range(nc)), [])
    if tr and tr.result != target:
        raise AssertionError("reduction finished away from the normal form")
    return tr


def normalize_staircase(M: LabeledMatrix) -> ReductionTrace:
    """Rescale treads (by rows) and risers (by columns) of a staircase to exactly ``T^*``."""
    run = _Runner(M)
    nr, nc = M.shape
    for kind, i, j in _walk(nr, nc):
        if run.entry(i, j):
            run.normalize_pivot(i, j, by_row=(kind == "tread"))
    return run.trace((range(nr), range(nc)), [])


def split_repeated_parts(M: LabeledMatrix) -> ReductionTrace:
    """Split ``M_{p,q}`` with a repeated part into ``M_{p~,q~}`` plus a one-entry summand.

    A repeated part in ``p`` is handled at its last occurrence, one in ``q``
    likewise; ``p`` is tried first.
    """
    p, q = M.col_labels, M.row_labels
    if M != staircase(p, q, M.field):
        raise ValueError("input is not a staircase normal form")
    L, P = len(q), len(p)
    delta = P - L
    rep_p = [r for r in range(P - 1) if p[r] == p[r + 1]]
    rep_q = [s for s in range(L - 1) if q[s] == q[s + 1]]
    run = _Runner(M)
    F = M.field
    if rep_p:
        r = rep_p[-1]                   # columns r, r+1 (0-based)
        s = r - delta + 1               # row whose riser is in column r
        if not 0 <= s < L:
            raise NoRepeatedPart(f"repeated column part {p[r]} does not meet the staircase")
        run.do(add_col(r + 1, r, TruncPoly.monomial(F, p[r], 0, -1)))
        if s >= 1:
            run.clear_column(s, r, [s - 1])
        i, j = s, r
    elif rep_q:
        s = rep_q[-1]                   # rows s, s+1
        r = s + delta                   # column of the tread of row s
        if not 0 <= r < P:
            raise NoRepeatedPart(f"repeated row part {q[s]} does not meet the staircase")
        run.do(add_row(s + 1, s, TruncPoly.monomial(F, q[s + 1], 0, -1)))
        if r >= 1:
            run.clear_row(s, r, [r - 1])
        i, j = s, r
    else:
        raise NoRepeatedPart(f"p={tuple(p)} and q={tuple(q)} are multiplicity free")
    keep_r = [x for x in range(L) if x != i]
    keep_c = [x for x in range(P) if x != j]
    # restore signs on the remaining staircase
    rest = run.M.submatrix(keep_r, keep_c)
    norm = normalize_staircase(rest)
    for op in norm.steps:
        t = keep_r[op.target] if op.kind.endswith("row") else keep_c[op.target]
        src = None if op.source is None else (
            keep_r[op.source] if op.kind.endswith("row") else keep_c[op.source])
        run.do(RowColOp(op.kind, t, op.coeff, src))
    return run.trace((keep_r, keep_c), [([i], [j])])


# ---------------------------------------------------------------------------
# sampling


def random_entry(src: int, dst: int, field: Field, rng: random.Random,
                 bound: int = 100, soc2: bool = True) -> TruncPoly:
    lo = entry_floor(src, dst, soc2)
    coeffs = [0] * dst
    for d in range(lo, dst):
        coeffs[d] = rng.randrange(field.p) if field.p else rng.randint(-bound, bound)
    return TruncPoly.make(field, dst, coeffs)


def random_labeled(p, q, field: Field, rng: random.Random | int = 0,
                   bound: int = 100) -> LabeledMatrix:
    """Random element of the ``soc^2`` Hom space between Jordan types ``p`` and ``q``.

    Over a prime field coefficients are uniform; over Q they are integers in
    ``[-bound, bound]``.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    M = LabeledMatrix.zeros(q, p, field)
    for i, qi in enumerate(M.row_labels):
        for j, pj in enumerate(M.col_labels):
            M.entries[i][j] = random_entry(pj, qi, field, rng, bound)
    return M


def random_legal_op(M: LabeledMatrix, rng: random.Random) -> RowColOp:
    """A random operation that is legal for the labels of ``M``."""
    F = M.field
    q, p = M.row_labels, M.col_labels

    def coeff(modulus, low):
        cs = [0] * modulus
        for d in range(low, modulus):
            cs[d] = rng.randrange(F.p) if F.p else rng.randint(-5, 5)
        return TruncPoly.make(F, modulus, cs)

    kinds = ["scale_row", "scale_col"]
    if len(q) > 1:
        kinds.append("add_row")
    if len(p) > 1:
        kinds.append("add_col")
    kind = rng.choice(kinds)
    if kind == "scale_row" or kind == "scale_col":
        t = rng.randrange(len(q) if kind == "scale_row" else len(p))
        e = q[t] if kind == "scale_row" else p[t]
        u = coeff(e, 0)
        c0 = rng.randrange(1, F.p) if F.p else rng.choice([1, -1, 2, -2, 3])
        u = TruncPoly(F, e, (F(c0),) + u.coeffs[1:])
        return RowColOp(kind, t, u)
    labels = q if kind == "add_row" else p
    t, s = rng.sample(range(len(labels)), 2)
    if kind == "add_row":
        return add_row(t, s, coeff(q[t], max(0, q[t] - q[s])))
    return add_col(t, s, coeff(p[s], max(0, p[s] - p[t])))

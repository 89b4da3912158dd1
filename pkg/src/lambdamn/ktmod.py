"""Modules over k[T]/(T^e) written as sums of Jordan blocks ``J_k = k[T]/(T^k)``.

A homomorphism ``X = ⊕ J_{p_j} -> Y = ⊕ J_{q_i}`` is stored as a labeled
matrix whose entry ``(i, j)`` is a polynomial modulo ``T^{q_i}``.  The legal
row and column operations are exactly the ones induced by ``Aut(X) x Aut(Y)``.

The basis of ``J_k`` is ``1, T, ..., T^{k-1}`` and ``T`` acts as the lower
shift, so a Jordan block sends basis vector ``i`` to ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactla import (
    QQ,
    Field,
    IncrementalSpan,
    Matrix,
    inverse,
    sparse_kernel,
)
from .modrep import RepTriple
from .partitions import Partition


class IllegalOperation(ValueError):
    """The operation does not come from an automorphism of the source or target."""


class PartExceedsBound(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


def _norm(F: Field, x):
    return x if F.p is None else x % F.p


# ---------------------------------------------------------------------------
# truncated polynomials


@dataclass(frozen=True)
class TruncPoly:
    """Element of ``k[T]/(T^modulus)`` stored as its full coefficient tuple."""

    field: Field
    modulus: int
    coeffs: tuple

    @classmethod
    def make(cls, field: Field, modulus: int, coeffs: Sequence = ()) -> "TruncPoly":
        cs = [field(c) for c in coeffs[:modulus]]
        cs += [field.zero] * (modulus - len(cs))
        return cls(field, modulus, tuple(cs))

    @classmethod
    def zero(cls, field: Field, modulus: int) -> "TruncPoly":
        return cls(field, modulus, (field.zero,) * modulus)

    @classmethod
    def monomial(cls, field: Field, modulus: int, degree: int, c=1) -> "TruncPoly":
        cs = [field.zero] * modulus
        if 0 <= degree < modulus:
            cs[degree] = field(c)
        return cls(field, modulus, tuple(cs))

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < self.modulus else self.field.zero

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    @property
    def valuation(self) -> int | None:
        """Lowest degree with a nonzero coefficient; ``None`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def divisible_by(self, k: int) -> bool:
        """Whether ``T^k`` divides the element (always true for zero)."""
        v = self.valuation
        return v is None or v >= k

    def is_unit(self) -> bool:
        return self.modulus > 0 and bool(self.coeffs[0])

    def truncate(self, modulus: int) -> "TruncPoly":
        """Reduce into ``k[T]/(T^modulus)``, padding with zeros if the modulus grows."""
        cs = self.coeffs[:modulus] + (self.field.zero,) * max(0, modulus - self.modulus)
        return TruncPoly(self.field, modulus, cs)

    def shift(self, s: int, modulus: int | None = None) -> "TruncPoly":
        """Multiply by ``T^s``; negative ``s`` divides and must be exact."""
        modulus = self.modulus if modulus is None else modulus
        if s < 0 and not self.divisible_by(-s):
            raise ValueError(f"T^{-s} does not divide {self}")
        z = self.field.zero
        cs = [z] * modulus
        for i, c in enumerate(self.coeffs):
            if c and 0 <= i + s < modulus:
                cs[i + s] = c
        return TruncPoly(self.field, modulus, tuple(cs))

    def _check(self, other: "TruncPoly"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def add(self, other: "TruncPoly", modulus: int | None = None) -> "TruncPoly":
        self._check(other)
        e = self.modulus if modulus is None else modulus
        F = self.field
        return TruncPoly(F, e, tuple(_norm(F, self[i] + other[i]) for i in range(e)))

    def __add__(self, other):
        return self.add(other)

    def __neg__(self):
        F = self.field
        return TruncPoly(F, self.modulus, tuple(_norm(F, -c) for c in self.coeffs))

    def __sub__(self, other):
        return self.add(-other)

    def mul(self, other: "TruncPoly", modulus: int | None = None) -> "TruncPoly":
        self._check(other)
        e = self.modulus if modulus is None else modulus
        F = self.field
        z = F.zero
        out = [z] * e
        for i, a in enumerate(self.coeffs):
            if not a or i >= e:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= e:
                    break
                if b:
                    out[i + j] += a * b
        return TruncPoly(F, e, tuple(_norm(F, c) for c in out))

    def __mul__(self, other):
        return self.mul(other)

    def scale(self, c) -> "TruncPoly":
        F = self.field
        c = F(c)
        return TruncPoly(F, self.modulus, tuple(_norm(F, c * x) for x in self.coeffs))

    def inverse(self) -> "TruncPoly":
        """Inverse of a unit by the usual power-series recursion."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        F = self.field
        inv0 = F.inv(self.coeffs[0])
        out = [inv0]
        for k in range(1, self.modulus):
            s = sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1))
            out.append(_norm(F, -s * inv0))
        return TruncPoly(F, self.modulus, tuple(out))

    def to_json(self) -> dict:
        return {"coeffs": [self.field.encode(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, field: Field, modulus: int | None = None) -> "TruncPoly":
        coeffs = obj["coeffs"] if isinstance(obj, dict) else obj
        return cls.make(field, len(coeffs) if modulus is None else modulus, coeffs)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# labeled matrices


def soc2_hom_dim(k: int, l: int) -> int:
    """Dimension of ``{f in Hom(J_k, J_l) : T^2 f = 0}``."""
    if k < 1 or l < 1:
        raise ValueError("block sizes must be positive")
    return min(2, k, l)


def entry_floor(src: int, dst: int, soc2: bool = True) -> int:
    """Smallest degree allowed in an entry from ``J_src`` to ``J_dst``."""
    lo = max(0, dst - src)
    return max(lo, dst - 2) if soc2 else lo


class LabeledMatrix:
    """Hom matrix between sums of Jordan blocks with polynomial entries.

    ``row_labels`` is the Jordan type of the target, ``col_labels`` that of
    the source.  Entries are validated against the hom condition and, unless
    ``soc2=False``, against ``T^2 f = 0``.
    """

    __slots__ = ("field", "row_labels", "col_labels", "entries", "soc2")

    def __init__(self, row_labels: Sequence[int], col_labels: Sequence[int], entries,
                 field: Field = QQ, soc2: bool = True, validate: bool = True):
        self.field = field
        self.row_labels = Partition(row_labels)
        self.col_labels = Partition(col_labels)
        self.soc2 = soc2
        if len(entries) != len(self.row_labels) or any(
                len(r) != len(self.col_labels) for r in entries):
            raise ValueError("entry grid does not match the labels")
        rows = []
        for i, q in enumerate(self.row_labels):
            row = []
            for j in range(len(self.col_labels)):
                e = entries[i][j]
                if not isinstance(e, TruncPoly):
                    e = TruncPoly.from_json(e, field, q)
                elif e.modulus != q:
                    e = e.truncate(q)
                row.append(e)
            rows.append(row)
        self.entries = rows
        if validate:
            self.validate()

    @classmethod
    def _raw(cls, row_labels, col_labels, entries, field, soc2=True) -> "LabeledMatrix":
        M = object.__new__(cls)
        M.field, M.row_labels, M.col_labels = field, row_labels, col_labels
        M.entries, M.soc2 = entries, soc2
        return M

    @classmethod
    def zeros(cls, row_labels, col_labels, field: Field = QQ) -> "LabeledMatrix":
        q, p = Partition(row_labels), Partition(col_labels)
        ents = [[TruncPoly.zero(field, qi) for _ in p] for qi in q]
        return cls._raw(q, p, ents, field)

    def validate(self):
        for i, q in enumerate(self.row_labels):
            for j, p in enumerate(self.col_labels):
                e = self.entries[i][j]
                lo = entry_floor(p, q, self.soc2)
                if not e.divisible_by(lo):
                    what = "soc^2" if self.soc2 and lo > max(0, q - p) else "hom"
                    raise ValueError(
                        f"entry ({i},{j}) = {e} violates the {what} condition for J_{p} -> J_{q}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @property
    def dim_vector(self) -> tuple[int, int]:
        return self.col_labels.weight, self.row_labels.weight

    def __getitem__(self, ij) -> TruncPoly:
        i, j = ij
        return self.entries[i][j]

    def copy(self) -> "LabeledMatrix":
        return LabeledMatrix._raw(self.row_labels, self.col_labels,
                                  [list(r) for r in self.entries], self.field, self.soc2)

    def key(self):
        return (self.field, tuple(self.row_labels), tuple(self.col_labels),
                tuple(tuple(e.coeffs for e in r) for r in self.entries))

    def __eq__(self, other):
        return isinstance(other, LabeledMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LabeledMatrix":
        q = Partition([self.row_labels[i] for i in rows])
        p = Partition([self.col_labels[j] for j in cols])
        ents = [[self.entries[i][j] for j in cols] for i in rows]
        return LabeledMatrix._raw(q, p, ents, self.field, self.soc2)

    def block_sum(self, other: "LabeledMatrix") -> "LabeledMatrix":
        """Block diagonal sum; labels must stay weakly decreasing."""
        q = Partition(tuple(self.row_labels) + tuple(other.row_labels))
        p = Partition(tuple(self.col_labels) + tuple(other.col_labels))
        F = self.field
        ents = [list(r) + [TruncPoly.zero(F, qi) for _ in other.col_labels]
                for r, qi in zip(self.entries, self.row_labels)]
        ents += [[TruncPoly.zero(F, qi) for _ in self.col_labels] + list(r)
                 for r, qi in zip(other.entries, other.row_labels)]
        return LabeledMatrix._raw(q, p, ents, F, self.soc2 and other.soc2)

    def to_json(self) -> dict:
        return {"row_labels": list(self.row_labels), "col_labels": list(self.col_labels),
                "entries": [[e.to_json() for e in r] for r in self.entries],
                "field": self.field.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "LabeledMatrix":
        F = Field.from_json(obj.get("field"))
        return cls(obj["row_labels"], obj["col_labels"], obj["entries"], F)

    def pretty(self) -> str:
        cells = [[str(e) for e in r] for r in self.entries]
        heads = [f"J{p}" for p in self.col_labels]
        width = max([len(c) for r in cells for c in r] + [len(h) for h in heads] + [1])
        rl = max([len(f"J{q}") for q in self.row_labels] + [1])
        lines = [" " * rl + " | " + "  ".join(h.rjust(width) for h in heads)]
        for q, r in zip(self.row_labels, cells):
            lines.append(f"J{q}".rjust(rl) + " | " + "  ".join(c.rjust(width) for c in r))
        return "\n".join(lines)

    def __repr__(self):
        head = f"LabeledMatrix(q={tuple(self.row_labels)}, p={tuple(self.col_labels)})"
        return head + "\n" + self.pretty()


# ---------------------------------------------------------------------------
# row and column operations


_KINDS = ("scale_row", "scale_col", "add_row", "add_col")


@dataclass(frozen=True)
class RowColOp:
    """One elementary operation.

    ``add_row``: row ``target`` += ``coeff`` * row ``source``.
    ``add_col``: column ``target`` += column ``source`` * ``coeff``.
    ``scale_*``: multiply line ``target`` by the unit ``coeff``.
    """

    kind: str
    target: int
    coeff: TruncPoly
    source: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown operation kind {self.kind!r}")
        if self.kind.startswith("add") and (self.source is None or self.source == self.target):
            raise ValueError("add operations need a distinct source line")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "target": self.target}
        if self.source is not None:
            out["source"] = self.source
        out["coeff"] = [self.coeff.field.encode(c) for c in self.coeff.coeffs]
        return out

    @classmethod
    def from_json(cls, obj: dict, field: Field) -> "RowColOp":
        coeff = TruncPoly.make(field, len(obj["coeff"]), obj["coeff"])
        return cls(obj["kind"], int(obj["target"]), coeff, obj.get("source"))


def scale_row(i: int, u: TruncPoly) -> RowColOp:
    return RowColOp("scale_row", i, u)


def scale_col(j: int, u: TruncPoly) -> RowColOp:
    return RowColOp("scale_col", j, u)


def add_row(target: int, source: int, f: TruncPoly) -> RowColOp:
    return RowColOp("add_row", target, f, source)


def add_col(target: int, source: int, f: TruncPoly) -> RowColOp:
    return RowColOp("add_col", target, f, source)


def op_modulus(M: LabeledMatrix, op: RowColOp) -> int:
    """Modulus in which the coefficient of ``op`` is meaningful."""
    if op.kind == "scale_row":
        return M.row_labels[op.target]
    if op.kind == "scale_col":
        return M.col_labels[op.target]
    if op.kind == "add_row":
        return M.row_labels[op.target]
    return M.col_labels[op.source]


def check_op(M: LabeledMatrix, op: RowColOp) -> TruncPoly:
    """Validate ``op`` against the labels of ``M``; returns the reduced coefficient."""
    nr, nc = M.shape
    lines = nr if op.kind.endswith("row") else nc
    for idx in (op.target, op.source):
        if idx is not None and not 0 <= idx < lines:
            raise IllegalOperation(f"index {idx} out of range for {op.kind}")
    f = op.coeff.truncate(op_modulus(M, op))
    if op.kind.startswith("scale"):
        if not f.is_unit():
            raise IllegalOperation(f"{op.kind} by non-unit {f}")
        return f
    if op.kind == "add_row":
        need = M.row_labels[op.target] - M.row_labels[op.source]
    else:
        need = M.col_labels[op.source] - M.col_labels[op.target]
    if need > 0 and not f.divisible_by(need):
        raise IllegalOperation(f"{op.kind} coefficient {f} is not in (T^{need})")
    return f


def apply_op(M: LabeledMatrix, op: RowColOp) -> LabeledMatrix:
    """Apply a legal operation, returning a new matrix."""
    f = check_op(M, op)
    out = M.copy()
    E = out.entries
    q = M.row_labels
    t, s = op.target, op.source
    if op.kind == "scale_row":
        E[t] = [e.mul(f, q[t]) for e in E[t]]
    elif op.kind == "scale_col":
        for r in range(len(q)):
            E[r][t] = E[r][t].mul(f, q[r])
    elif op.kind == "add_row":
        E[t] = [a.add(f.mul(b, q[t]), q[t]) for a, b in zip(E[t], E[s])]
    else:
        for r in range(len(q)):
            E[r][t] = E[r][t].add(E[r][s].mul(f, q[r]), q[r])
    return out


def apply_ops(M: LabeledMatrix, ops: Sequence[RowColOp]) -> LabeledMatrix:
    for op in ops:
        M = apply_op(M, op)
    return M


# ---------------------------------------------------------------------------
# conversion to and from matrix triples


def jordan_matrix(parts: Sequence[int], field: Field = QQ) -> Matrix:
    """Block diagonal nilpotent matrix with lower-shift Jordan blocks."""
    d = sum(parts)
    N = Matrix.zeros(field, d, d)
    off = 0
    for k in parts:
        for a in range(k - 1):
            N.rows[off + a + 1][off + a] = field.one
        off += k
    return N


def _offsets(parts: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for k in parts:
        out.append(acc)
        acc += k
    return out


def labeled_to_triple(M: LabeledMatrix, m: int, n: int) -> RepTriple:
    p, q = M.col_labels, M.row_labels
    if not p.fits(m) or not q.fits(n):
        raise PartExceedsBound(f"labels p={tuple(p)}, q={tuple(q)} exceed bounds ({m},{n})")
    F = M.field
    A, B = jordan_matrix(p, F), jordan_matrix(q, F)
    C = Matrix.zeros(F, q.weight, p.weight)
    ro, co = _offsets(q), _offsets(p)
    for i, qi in enumerate(q):
        for j, pj in enumerate(p):
            for e, c in enumerate(M.entries[i][j].coeffs):
                if not c:
                    continue
                for a in range(min(pj, qi - e)):
                    r, s = ro[i] + a + e, co[j] + a
                    C.rows[r][s] = _norm(F, C.rows[r][s] + c)
    return RepTriple(m, n, A, B, C)


def jordan_basis(N: Matrix) -> tuple[Partition, Matrix]:
    """Jordan type of a nilpotent ``N`` and a basis change ``P`` putting it in Jordan form.

    ``P^-1 N P`` is the lower-shift Jordan matrix of the returned type.

    Chains are found top-down through the kernel filtration; at each height
    the lowest-index kernel vectors are tried first, so the output is
    deterministic.
    """
    F = N.field
    d = N.nrows
    if d == 0:
        return Partition(), Matrix.zeros(F, 0, 0)
    if not (N ** d).is_zero():
        raise NotNilpotent("matrix is not nilpotent")
    Nrows = N.sparse_rows()

    def apply(v: dict) -> dict:
        out: dict = {}
        for i, row in enumerate(Nrows):
            s = sum(x * v[j] for j, x in row.items() if j in v)
            s = _norm(F, s)
            if s:
                out[i] = s
        return out

    kernels = [[]]  # kernels[k] = basis of ker N^k
    power = Matrix.identity(F, d)
    while len(kernels[-1]) < d:
        power = power @ N
        kernels.append(sparse_kernel(power.sparse_rows(), d, F))
    height = len(kernels) - 1

    chains: list[list[dict]] = []  # each top-down: v, Nv, ...
    for k in range(height, 0, -1):
        span = IncrementalSpan(F)
        for v in kernels[k - 1]:
            span.add(v)
        for ch in chains:
            # level-k vector of a longer chain sits at position len - k
            span.add(ch[len(ch) - k])
        for v in kernels[k]:
            if span.add(v):
                ch = [v]
                for _ in range(k - 1):
                    ch.append(apply(ch[-1]))
                chains.append(ch)
    chains.sort(key=len, reverse=True)  # stable: keeps discovery order within a size
    cols = [v for ch in chains for v in ch]
    P = Matrix.zeros(F, d, d)
    for j, v in enumerate(cols):
        for i, x in v.items():
            P.rows[i][j] = F(x) if F.p is None else x % F.p
    return Partition(len(ch) for ch in chains), P


def jordan_type(N: Matrix) -> Partition:
    return jordan_basis(N)[0]


def triple_to_labeled(R: RepTriple, return_bases: bool = False):
    """Labeled matrix of ``C`` in Jordan bases of ``A`` and ``B``.

    With ``return_bases`` also returns the base changes ``(P, Q)``; the
    labeled matrix expands to ``(P^-1 A P, Q^-1 B Q, Q^-1 C P)``.
    """
    p, P = jordan_basis(R.A)
    q, Q = jordan_basis(R.B)
    F = R.field
    C2 = inverse(Q) @ R.C @ P if q and p else Matrix.zeros(F, q.weight, p.weight)
    ro, co = _offsets(q), _offsets(p)
    ents = []
    for i, qi in enumerate(q):
        row = []
        for j, _pj in enumerate(p):
            row.append(TruncPoly(F, qi, tuple(C2.rows[ro[i] + e][co[j]] for e in range(qi))))
        ents.append(row)
    M = LabeledMatrix(q, p, ents, F, soc2=False)
    M.soc2 = all(M.entries[i][j].divisible_by(entry_floor(pj, qi))
                 for i, qi in enumerate(q) for j, pj in enumerate(p))
    return (M, P, Q) if return_bases else M


# ---------------------------------------------------------------------------
# duality


def dual_labeled(M: LabeledMatrix) -> LabeledMatrix:
    """Labeled matrix of the dual representation of Lambda(n, m).

    Rows become columns; entry ``(c, r)`` is ``T^{p_c - q_r}`` times entry
    ``(r, c)``.  This matches ``RepTriple.dual`` after reversing the basis
    inside every Jordan block (see :func:`block_reversal`).
    """
    p, q = M.col_labels, M.row_labels
    ents = [[M.entries[r][c].shift(p[c] - q[r], p[c]) for r in range(len(q))]
            for c in range(len(p))]
    return LabeledMatrix._raw(p, q, ents, M.field, M.soc2)


def dual_op(op: RowColOp, M: LabeledMatrix) -> RowColOp:
    """The operation on ``dual_labeled(M)`` matching ``op`` applied to ``M``.

    ``dual_labeled(apply_op(M, op)) == apply_op(dual_labeled(M), dual_op(op, M))``.
    """
    p, q = M.col_labels, M.row_labels
    f = check_op(M, op)
    t, s = op.target, op.source
    if op.kind == "scale_row":
        return scale_col(t, f)
    if op.kind == "scale_col":
        return scale_row(t, f)
    if op.kind == "add_row":
        # dual column op: source column J_{q_s}, so modulus q_s
        return add_col(t, s, f.shift(q[s] - q[t], q[s]))
    return add_row(t, s, f.shift(p[t] - p[s], p[t]))


def block_reversal(parts: Sequence[int], field: Field = QQ) -> Matrix:
    """Permutation reversing the basis of each Jordan block; an involution."""
    d = sum(parts)
    Pm = Matrix.zeros(field, d, d)
    off = 0
    for k in parts:
        for a in range(k):
            Pm.rows[off + a][off + k - 1 - a] = field.one
        off += k
    return Pm


def soc2_hom_brute_dim(p: Sequence[int], q: Sequence[int], field: Field = QQ) -> int:
    """Dimension of ``{C : C A = B C, B^2 C = 0}`` for Jordan matrices of types ``p`` and ``q``.

    Solved directly as a linear system; used as an oracle for the entrywise count.
    """
    A, B = jordan_matrix(p, field), jordan_matrix(q, field)
    d1, d2 = A.nrows, B.nrows
    B2 = B @ B
    eqs = []
    # (C A - B C)[i, j] and (B^2 C)[i, j]
    for i in range(d2):
        for j in range(d1):
            row: dict = {}
            for k in range(d1):
                if A.rows[k][j]:
                    row[i * d1 + k] = row.get(i * d1 + k, 0) + A.rows[k][j]
            for k in range(d2):
                if B.rows[i][k]:
                    row[k * d1 + j] = row.get(k * d1 + j, 0) - B.rows[i][k]
            eqs.append(row)
            row2 = {k * d1 + j: B2.rows[i][k] for k in range(d2) if B2.rows[i][k]}
            eqs.append(row2)
    return len(sparse_kernel(eqs, d1 * d2, field))

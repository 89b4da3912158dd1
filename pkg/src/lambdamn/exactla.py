"""Exact dense linear algebra over the rationals and prime fields.

Everything here is exact: rationals are :class:`fractions.Fraction`, prime
field elements are Python ints in ``[0, p)``.  Elimination runs on sparse
row dictionaries internally, which keeps the large but very sparse systems
arising from intertwiner and tangent computations cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class NotUnital(ValueError):
    """The identity matrix is not in the span of the given basis."""


class CharPositive(ValueError):
    """A characteristic-zero algorithm was called over a prime field."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or ``"num/den"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        return (x.numerator * pow(x.denominator, -1, self.p)) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.p is None else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict | None) -> "Field":
        if not obj or obj.get("kind", "Q") == "Q":
            return cls()
        return cls(int(obj["p"]))

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse the CLI syntax ``q`` or ``fp:P``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls()
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:P'")

    def encode(self, x):
        return str(x) if self.p is None else int(x)

    def decode(self, x):
        return self(x)

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


class Matrix:
    """Dense matrix with entries in a :class:`Field`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, field, rows, ncols):
        # rows are already canonical field elements
        M = object.__new__(cls)
        M.field, M.rows, M.nrows, M.ncols = field, rows, len(rows), ncols
        return M

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        M = cls.zeros(field, n, n)
        for i in range(n):
            M.rows[i][i] = field.one
        return M

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        field = blocks[0].field
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        M = cls.zeros(field, n, m)
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                M.rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return M

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.ncols, tuple(map(tuple, self.rows))))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, [{body}])"

    def copy(self) -> "Matrix":
        return Matrix._raw(self.field, [list(r) for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)] if self.nrows
                           else [[] for _ in range(self.ncols)], self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        add = self.field.add
        return Matrix._raw(self.field, [[add(a, b) for a, b in zip(r, s)]
                                        for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._raw(self.field, [[neg(a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        mul = self.field.mul
        return Matrix._raw(self.field, [[mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        p = F.p
        sparse_other = [[(j, x) for j, x in enumerate(r) if x] for r in other.rows]
        out = []
        for r in self.rows:
            acc = [0] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in sparse_other[k]:
                        acc[j] += a * b
            if p is None:
                out.append([Fraction(x) for x in acc])
            else:
                out.append([x % p for x in acc])
        return Matrix._raw(F, out, other.ncols)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        R = Matrix.identity(self.field, self.nrows)
        for _ in range(k):
            R = R @ self
        return R

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def to_json(self) -> list:
        enc = self.field.encode
        return [[enc(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, data: list, ncols: int | None = None) -> "Matrix":
        return cls(field, data, ncols)

    def sparse_rows(self) -> list[dict]:
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]


# ---------------------------------------------------------------------------
# elimination on sparse rows


def _integer_row(row: dict) -> dict:
    den = 1
    for x in row.values():
        den = lcm(den, x.denominator)
    out = {j: int(x * den) for j, x in row.items()}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {j: x // g for j, x in row.items()}
    return row


def _echelon_q(rows: Iterable[dict], pivots: dict | None = None) -> dict[int, dict]:
    """Fraction-free echelon form over Q: pivot column -> primitive integer row."""
    pivots = {} if pivots is None else pivots
    for row in rows:
        r = _integer_row({j: x for j, x in row.items() if x})
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                if r[c] < 0:
                    r = {j: -x for j, x in r.items()}
                pivots[c] = r
                break
            a, b = prow[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {j: a * x for j, x in r.items()}
            for j, x in prow.items():
                v = new.get(j, 0) - b * x
                if v:
                    new[j] = v
                else:
                    new.pop(j, None)
            r = _primitive(new)
    return pivots


def _echelon_p(rows: Iterable[dict], p: int, pivots: dict | None = None) -> dict[int, dict]:
    """Echelon form over F_p with monic pivot rows."""
    pivots = {} if pivots is None else pivots
    for row in rows:
        r = {j: x % p for j, x in row.items() if x % p}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {j: x * inv % p for j, x in r.items()}
                break
            b = r[c]
            for j, x in prow.items():
                v = (r.get(j, 0) - b * x) % p
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
    return pivots


def echelon(rows: Iterable[dict], field: Field) -> dict[int, dict]:
    if field.p is None:
        return _echelon_q(rows)
    return _echelon_p(rows, field.p)


class IncrementalSpan:
    """Span of vectors added one at a time; ``add`` reports whether the span grew."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, dict] = {}

    def add(self, vec) -> bool:
        if not isinstance(vec, dict):
            vec = {j: x for j, x in enumerate(vec) if x}
        before = len(self.pivots)
        if self.field.p is None:
            merged = _echelon_q([vec], self.pivots)
        else:
            merged = _echelon_p([vec], self.field.p, self.pivots)
        self.pivots = merged
        return len(merged) > before

    def __contains__(self, vec) -> bool:
        probe = IncrementalSpan(self.field)
        probe.pivots = dict(self.pivots)
        return not probe.add(vec)

    @property
    def dim(self) -> int:
        return len(self.pivots)


def reduced_echelon(rows: Iterable[dict], field: Field) -> dict[int, dict]:
    """Reduced row echelon form: pivot column -> row with a 1 at the pivot.

    Returned rows have canonical field entries.
    """
    piv = echelon(rows, field)
    cols = sorted(piv, reverse=True)
    if field.p is None:
        # normalise to Fractions, then back-substitute from the bottom
        red: dict[int, dict] = {}
        for c in cols:
            r = piv[c]
            lead = r[c]
            r = {j: Fraction(x, lead) for j, x in r.items()}
            for c2 in list(r):
                if c2 != c and c2 in red:
                    coef = r[c2]
                    for j, x in red[c2].items():
                        v = r.get(j, 0) - coef * x
                        if v:
                            r[j] = v
                        else:
                            r.pop(j, None)
            red[c] = r
        return red
    p = field.p
    red = {}
    for c in cols:
        r = dict(piv[c])
        for c2 in list(r):
            if c2 != c and c2 in red:
                coef = r[c2]
                for j, x in red[c2].items():
                    v = (r.get(j, 0) - coef * x) % p
                    if v:
                        r[j] = v
                    else:
                        r.pop(j, None)
        red[c] = r
    return red


def sparse_rank(rows: Iterable[dict], field: Field) -> int:
    return len(echelon(rows, field))


def sparse_kernel(rows: Iterable[dict], ncols: int, field: Field) -> list[dict]:
    """Right null space basis as sparse vectors, one per free column (ascending)."""
    red = reduced_echelon(rows, field)
    free = [j for j in range(ncols) if j not in red]
    free_set = set(free)
    # column j -> list of (pivot col, coefficient) for pivot rows touching j
    touching: dict[int, list] = {j: [] for j in free}
    for c, r in red.items():
        for j, x in r.items():
            if j in free_set:
                touching[j].append((c, x))
    one = field.one
    basis = []
    for j in free:
        v = {j: one}
        for c, x in touching[j]:
            v[c] = field.neg(x)
        basis.append(v)
    return basis


def _dense(vec: dict, n: int, field: Field) -> list:
    z = field.zero
    out = [z] * n
    for j, x in vec.items():
        out[j] = field(x) if field.p is None else x
    return out


# ---------------------------------------------------------------------------
# public operations


def rank(M: Matrix) -> int:
    """Rank of ``M`` over its field."""
    return sparse_rank(M.sparse_rows(), M.field)


def kernel_basis(M: Matrix) -> list[list]:
    """Basis of the right null space of ``M``.

    One vector per non-pivot column, with a 1 in that column and 0 in the
    other free columns, so the output is unique for a given ``M``.

    >>> kernel_basis(Matrix(QQ, [[1, 1]]))
    [[Fraction(-1, 1), Fraction(1, 1)]]
    """
    return [_dense(v, M.ncols, M.field) for v in sparse_kernel(M.sparse_rows(), M.ncols, M.field)]


def solve(M: Matrix, b: Sequence) -> list | None:
    """One solution of ``M x = b``, or ``None`` if the system is inconsistent."""
    F = M.field
    n = M.ncols
    rows = []
    for r, bi in zip(M.sparse_rows(), b):
        r = dict(r)
        bi = F(bi)
        if bi:
            r[n] = bi
        rows.append(r)
    red = reduced_echelon(rows, F)
    if n in red:
        return None
    x = [F.zero] * n
    for c, r in red.items():
        x[c] = F(r.get(n, 0)) if F.p is None else r.get(n, 0)
    return x


def inverse(M: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ``ZeroDivisionError`` if singular."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    F = M.field
    rows = []
    for i, r in enumerate(M.sparse_rows()):
        r = dict(r)
        r[n + i] = F.one
        rows.append(r)
    red = reduced_echelon(rows, F)
    if any(c not in red for c in range(n)):
        raise ZeroDivisionError("matrix is singular")
    out = []
    for c in range(n):
        r = red[c]
        out.append([F(r.get(n + j, 0)) if F.p is None else r.get(n + j, 0) for j in range(n)])
    return Matrix._raw(F, out, n)


def span_basis(mats: Sequence[Matrix]) -> tuple[list[dict], list[tuple[int, int]]]:
    """Reduced basis of the span of ``mats`` as flattened sparse vectors.

    Returns the basis vectors together with their pivot positions ``(i, j)``;
    the coordinates of any element of the span are its entries at the pivots.
    """
    F = mats[0].field
    n = mats[0].ncols
    flat = []
    for X in mats:
        flat.append({i * n + j: x for i, r in enumerate(X.rows) for j, x in enumerate(r) if x})
    red = reduced_echelon(flat, F)
    order = sorted(red)
    return [red[c] for c in order], [divmod(c, n) for c in order]


def subalgebra_radical_dim(basis: Sequence[Matrix]) -> tuple[int, int]:
    """Dimension of the algebra spanned by ``basis`` and of its Jacobson radical.

    In characteristic zero the radical of a finite-dimensional algebra is the
    radical of the trace form ``(x, y) -> tr(L_x L_y)`` of its left regular
    representation.  Using ``tr(L_x L_y) = tr(L_{xy})`` only the structure
    constants are needed.
    """
    if not basis:
        raise ValueError("empty basis")
    F = basis[0].field
    if F.p is not None:
        raise CharPositive("radical via the trace form needs characteristic 0")
    n = basis[0].nrows
    if any(X.shape != (n, n) for X in basis):
        raise ValueError("basis matrices must be square of equal size")
    vecs, pivots = span_basis(basis)
    N = len(vecs)
    ident = {i * n + i: Fraction(1) for i in range(n)}
    # identity must equal sum of its pivot coordinates times the basis
    recon: dict = {}
    for k, (i, j) in enumerate(pivots):
        c = ident.get(i * n + j, 0)
        if c:
            for key, x in vecs[k].items():
                recon[key] = recon.get(key, 0) + c * x
    recon = {k: x for k, x in recon.items() if x}
    if recon != ident:
        raise NotUnital("identity is not in the span")

    # sparse row/col views of each basis matrix
    rows_of = []
    cols_of = []
    for v in vecs:
        rr: dict[int, dict] = {}
        cc: dict[int, dict] = {}
        for key, x in v.items():
            i, j = divmod(key, n)
            rr.setdefault(i, {})[j] = x
            cc.setdefault(j, {})[i] = x
        rows_of.append(rr)
        cols_of.append(cc)

    def product_at(a: int, b: int, i: int, j: int):
        ra = rows_of[a].get(i)
        cb = cols_of[b].get(j)
        if not ra or not cb:
            return 0
        if len(ra) > len(cb):
            return sum(x * ra[t] for t, x in cb.items() if t in ra)
        return sum(x * cb[t] for t, x in ra.items() if t in cb)

    # struct[a][b][k] = coefficient of basis k in x_a x_b
    struct = [[[product_at(a, b, i, j) for (i, j) in pivots] for b in range(N)] for a in range(N)]
    # tr(L_{x_k}) = sum_b coefficient of x_b in x_k x_b
    tr = [sum(struct[k][b][b] for b in range(N)) for k in range(N)]
    gram = []
    for a in range(N):
        gram.append({b: s for b in range(N)
                     if (s := sum(c * t for c, t in zip(struct[a][b], tr) if c))})
    rad = N - sparse_rank(gram, F)
    return N, rad


def generic_invertible_in_span(basis: Sequence[Matrix], trials: int = 8, seed: int = 0) -> bool:
    """Look for an invertible matrix in the span of ``basis`` by random sampling.

    A ``True`` answer is a certificate.  ``False`` means every sampled
    combination was singular, which by Schwartz-Zippel is wrong with
    probability at most ``(n / (2R+1))`` per trial for coefficient range R.
    """
    if not basis:
        raise ValueError("empty basis")
    F = basis[0].field
    n = basis[0].nrows
    rng = random.Random(seed)
    sparse = [[(i, j, x) for i, r in enumerate(X.rows) for j, x in enumerate(r) if x]
              for X in basis]
    bound = 8
    for _ in range(trials):
        acc = [dict() for _ in range(n)]
        for entries in sparse:
            c = rng.randint(-bound, bound)
            if c == 0:
                continue
            for i, j, x in entries:
                acc[i][j] = acc[i].get(j, 0) + c * x
        rows = [{j: x for j, x in r.items() if (x if F.p is None else x % F.p)} for r in acc]
        if sparse_rank(rows, F) == n:
            return True
        bound *= 2
    return False

"""The finite list of general indecomposables of Lambda(m, n) and its certificates."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .ktmod import labeled_to_triple
from .modrep import endo_space, is_isomorphic
from .strata import GeneralIndecomposable, general_indecomposable, stratum_dim, transpose_dual


class CertificateFailure(RuntimeError):
    def __init__(self, entry: GeneralIndecomposable, reason: str):
        super().__init__(f"{entry.label} p={tuple(entry.p)} q={tuple(entry.q)}: {reason}")
        self.entry = entry
        self.reason = reason


def _families(m: int, n: int):
    """Untransposed family members as ``(p, q)`` pairs, family by family."""
    for u in range(1, m + 1):
        for z in range(1, n + 1):
            yield (u,), (z,)
    for t in range(3, m + 1):
        for z in range(2, n + 1):
            yield (t, 1), (z,)
    for t in range(3, m + 1):
        for y in range(3, n + 1):
            yield (t, 1), (y, 2)
    for t in range(3, m):
        for y in range(3, n + 1):
            yield (m, t, 1), (y, 2)
    for t in range(3, m):
        for y in range(3, n):
            yield (m, t, 1), (n, y, 2)


def list_general_indecomposables(m: int, n: int) -> list[GeneralIndecomposable]:
    """All general indecomposables, transposes of the non-1x1 families included."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    out = [general_indecomposable(m, n, p, q) for p, q in _families(m, n)]
    for q, p in _families(n, m):
        g = general_indecomposable(n, m, q, p)
        if g.shape != "1x1":
            out.append(transpose_dual(g))
    return out


def count_formula(m: int, n: int) -> int:
    """``9mn - 18(m + n) + 42``, valid for ``m, n >= 3``."""
    if m < 3 or n < 3:
        raise ValueError("the closed count holds for m, n >= 3 only")
    return 9 * m * n - 18 * (m + n) + 42


def is_wild(m: int, n: int) -> bool:
    """Wildness of Lambda(m, n) as recorded in the literature (not verified here)."""
    tame = (m <= 4 and n <= 4) or (m <= 6 and n <= 3) or (m <= 3 and n <= 6)
    return not tame


@dataclass(frozen=True)
class CertifiedEntry:
    entry: GeneralIndecomposable
    endo_dim: int
    dim_top: int | None
    is_local: bool | None
    orbit_dim: int
    stratum_dim: int

    @property
    def dense_orbit(self) -> bool:
        return self.orbit_dim == self.stratum_dim

    @property
    def certified(self) -> bool:
        return bool(self.is_local) and self.dense_orbit

    def to_json(self) -> dict:
        out = self.entry.to_json()
        out.update({"endoDim": self.endo_dim, "dimTop": self.dim_top, "isLocal": self.is_local,
                    "orbitDim": self.orbit_dim, "stratumDim": self.stratum_dim,
                    "denseOrbit": self.dense_orbit, "certified": self.certified})
        return out


_ENDO_CACHE: dict = {}


def _endo(g: GeneralIndecomposable):
    # End depends only on the labeled matrix, not on the bounds (m, n)
    M = g.normal_form
    key = M.key()
    hit = _ENDO_CACHE.get(key)
    if hit is None:
        E = endo_space(labeled_to_triple(M, g.m, g.n))
        hit = (E.dim, E.dim_top, E.is_local)
        _ENDO_CACHE[key] = hit
    return hit


def certify_entry(g: GeneralIndecomposable) -> CertifiedEntry:
    dim, top, local = _endo(g)
    d1, d2 = g.dim_vector
    return CertifiedEntry(g, dim, top, local, d1 * d1 + d2 * d2 - dim, stratum_dim(g.p, g.q))


@dataclass
class ClassificationReport:
    m: int
    n: int
    entries: list[GeneralIndecomposable]
    certificates: list[CertifiedEntry] | None = None
    dedup_count: int | None = None

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def formula_value(self) -> int | None:
        return count_formula(self.m, self.n) if self.m >= 3 and self.n >= 3 else None

    @property
    def count_matches(self) -> bool | None:
        fv = self.formula_value
        return None if fv is None else fv == self.total

    @property
    def wild(self) -> bool:
        return is_wild(self.m, self.n)

    def to_json(self) -> dict:
        rows = ([c.to_json() for c in self.certificates] if self.certificates is not None
                else [g.to_json() for g in self.entries])
        return {"m": self.m, "n": self.n, "wild": self.wild,
                "totalWithOrientation": self.total, "formulaValue": self.formula_value,
                "countMatches": self.count_matches, "dedupCount": self.dedup_count,
                "certified": None if self.certificates is None
                else all(c.certified for c in self.certificates),
                "entries": rows}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["shape", "parameters", "p", "q", "d1", "d2", "endoDim", "stratumDim",
                    "certified"])
        certs = self.certificates or [None] * len(self.entries)
        for g, c in zip(self.entries, certs):
            params = ";".join(f"{k}={v}" for k, v in g.params)
            d1, d2 = g.dim_vector
            w.writerow([g.label, params, ",".join(map(str, g.p)), ",".join(map(str, g.q)), d1, d2,
                        "" if c is None else c.endo_dim, stratum_dim(g.p, g.q),
                        "" if c is None else str(c.certified).lower()])
        return buf.getvalue()

    def to_tex(self) -> str:
        lines = [r"\begin{tabular}{llllrrr}", r"\hline",
                 r"shape & $\mathbf{p}$ & $\mathbf{q}$ & normal form & $d_1$ & $d_2$ & "
                 r"$\dim$ \\", r"\hline"]
        for g in self.entries:
            M = g.normal_form
            body = r" \\ ".join(" & ".join(_tex_poly(e) for e in row) for row in M.entries)
            nf = r"$\begin{smallmatrix}" + body + r"\end{smallmatrix}$"
            d1, d2 = g.dim_vector
            lines.append(f"{g.label} & $({','.join(map(str, g.p))})$ & "
                         f"$({','.join(map(str, g.q))})$ & {nf} & {d1} & {d2} & "
                         f"{stratum_dim(g.p, g.q)} \\\\")
        lines += [r"\hline", r"\end{tabular}"]
        return "\n".join(lines) + "\n"


def _tex_poly(e) -> str:
    terms = []
    for i, c in enumerate(e.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("T" if i == 1 else f"T^{{{i}}}")
        terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
    return "+".join(terms) if terms else "0"


def dedup_count(entries: list[GeneralIndecomposable], trials: int = 8) -> int:
    """Number of isomorphism classes among ``entries`` (all of one algebra)."""
    groups: dict = {}
    for g in entries:
        groups.setdefault((g.p, g.q), []).append(g)
    total = 0
    for group in groups.values():
        reps: list = []
        for g in group:
            R = labeled_to_triple(g.normal_form, g.m, g.n)
            if not any(is_isomorphic(R, S, trials=trials) for S in reps):
                reps.append(R)
        total += len(reps)
    return total


def certify(entries: list[GeneralIndecomposable], m: int | None = None, n: int | None = None,
            strict: bool = True) -> ClassificationReport:
    """Check local End and ``orbit dim = stratum dim`` for every entry.

    With ``strict`` the first failure raises :class:`CertificateFailure`.
    """
    if m is None or n is None:
        m, n = entries[0].m, entries[0].n
    certs = []
    for g in entries:
        c = certify_entry(g)
        if strict and not c.is_local:
            raise CertificateFailure(g, f"End has top dimension {c.dim_top}")
        if strict and not c.dense_orbit:
            raise CertificateFailure(g, f"orbit dim {c.orbit_dim} != stratum dim {c.stratum_dim}")
        certs.append(c)
    return ClassificationReport(m, n, list(entries), certs)


def classify(m: int, n: int, certified: bool = False, dedup: bool = False,
             strict: bool = True) -> ClassificationReport:
    entries = list_general_indecomposables(m, n)
    rep = certify(entries, m, n, strict) if certified else ClassificationReport(m, n, entries)
    if dedup:
        rep.dedup_count = dedup_count(entries)
    return rep

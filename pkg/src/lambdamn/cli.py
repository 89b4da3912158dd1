"""Command line interface: ``lambdamn <command> ...``.

Exit status is 0 on success, 1 for invalid input and 2 when a requested
check or certificate fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .classify import CertificateFailure, classify
from .exactla import QQ, Field
from .ktmod import LabeledMatrix, labeled_to_triple, triple_to_labeled
from .modrep import (
    RelationViolation,
    RepTriple,
    ShapeMismatch,
    degeneration_necessary,
    endo_space,
    is_isomorphic,
    local_family,
    local_tangent,
)
from .partitions import Partition
from .reduce import random_labeled, reduce_to_normal_form
from .strata import NotCandidate, Stratum, normal_form


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _scalars(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}")


def _as_triple(obj: dict, field: Field | None = None) -> RepTriple:
    """A RepTriple from either triple or labeled-matrix JSON."""
    if field is not None and "field" not in obj:
        obj = dict(obj, field=field.to_json())
    if "A" in obj:
        return RepTriple.from_json(obj)
    M = LabeledMatrix.from_json(obj)
    m = int(obj.get("m", M.col_labels[0] if M.col_labels else 1))
    n = int(obj.get("n", M.row_labels[0] if M.row_labels else 1))
    return labeled_to_triple(M, m, n)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lambdamn", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="list the general indecomposables", parents=[common])
    c.add_argument("M", type=int)
    c.add_argument("N", type=int)
    c.add_argument("--format", choices=["json", "csv", "tex"], default="json")
    c.add_argument("--certify", action="store_true")
    c.add_argument("--dedup", action="store_true")

    for name, text in (("normal-form", "the staircase normal form M_{p,q}"),
                       ("stratum", "h, dimension and candidacy of a stratum")):
        s = sub.add_parser(name, help=text, parents=[common])
        s.add_argument("--m", type=int, required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--p", type=_partition, required=True)
        s.add_argument("--q", type=_partition, required=True)

    r = sub.add_parser("reduce", help="reduce a labeled matrix or triple to normal form",
                       parents=[common])
    r.add_argument("--input", required=True)
    r.add_argument("--field", type=_field, default=None)
    r.add_argument("--seed", type=int, default=0)

    for name, text in (("endo", "endomorphism algebra of a triple"),
                       ("indec", "indecomposability test over Q")):
        e = sub.add_parser(name, help=text, parents=[common])
        e.add_argument("--input", required=True)

    lo = sub.add_parser("local", help="the local radical-square-zero family", parents=[common])
    lo.add_argument("--loops", type=int, required=True)
    lo.add_argument("--lambda", dest="lam", type=_scalars, default=None)

    d = sub.add_parser("degen", help="necessary conditions for a degeneration", parents=[common])
    d.add_argument("--from", dest="src", required=True)
    d.add_argument("--to", dest="dst", required=True)
    d.add_argument("--max-word-len", type=int, default=4)

    sa = sub.add_parser("sample", help="random points of a stratum", parents=[common])
    sa.add_argument("--m", type=int, required=True)
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--p", type=_partition, required=True)
    sa.add_argument("--q", type=_partition, required=True)
    sa.add_argument("--field", type=_field, required=True)
    sa.add_argument("--seed", type=int, required=True)
    sa.add_argument("--count", type=int, required=True)
    return ap


def _cmd_classify(a):
    try:
        rep = classify(a.M, a.N, certified=a.certify, dedup=a.dedup, strict=False)
    except ValueError as e:
        raise UsageError(str(e))
    text = {"json": lambda: json.dumps(rep.to_json(), indent=2) + "\n",
            "csv": rep.to_csv, "tex": rep.to_tex}[a.format]()
    if a.certify and not all(c.certified for c in rep.certificates):
        raise CheckFailed(text)
    return text


def _cmd_normal_form(a):
    M = normal_form(a.m, a.n, a.p, a.q)
    return dict(M.to_json(), m=a.m, n=a.n)


def _cmd_stratum(a):
    s = Stratum(a.m, a.n, a.p, a.q)
    return s.to_json()


def _cmd_reduce(a):
    obj = _load(a.input)
    field = a.field
    if "A" in obj:
        R = _as_triple(obj, field)
        M = triple_to_labeled(R)
        m, n = R.m, R.n
    else:
        if field is not None and "field" not in obj:
            obj = dict(obj, field=field.to_json())
        M = LabeledMatrix.from_json(obj)
        m = obj.get("m")
        n = obj.get("n")
    tr = reduce_to_normal_form(M, m, n)
    if not tr:
        raise CheckFailed(dict(tr.to_json(), seed=a.seed))
    m = tr.result.col_labels[0] if m is None else m
    n = tr.result.row_labels[0] if n is None else n
    iso = is_isomorphic(labeled_to_triple(M, m, n), labeled_to_triple(tr.result, m, n), seed=a.seed)
    out = tr.to_json()
    out.update(seed=a.seed, replayed=tr.replay(), isomorphic=iso, trials=8)
    return out


def _cmd_endo(a):
    R = _as_triple(_load(a.input))
    E = endo_space(R)
    out = E.to_json()
    out["basis"] = [{"P": P.to_json(), "Q": Q.to_json()} for P, Q in E.basis]
    return out


def _cmd_indec(a):
    R = _as_triple(_load(a.input))
    if R.field.p is not None:
        raise UsageError("indecomposability is decided over Q only")
    E = endo_space(R)
    return {"indecomposable": E.is_local, "dim": E.dim, "dim_top": E.dim_top,
            "dim_radical": E.dim_radical}


def _cmd_local(a):
    pt = local_family(a.loops, a.lam)
    out = local_tangent(pt).to_json()
    out["lambda"] = [QQ.encode(x) for x in pt.lam]
    return out


def _cmd_degen(a):
    M, N = _as_triple(_load(a.src)), _as_triple(_load(a.dst))
    rep = degeneration_necessary(M, N, a.max_word_len)
    out = rep.to_json()
    if not rep.passes:
        raise CheckFailed(out)
    return out


def _cmd_sample(a):
    if a.count < 0:
        raise UsageError("--count must be non-negative")
    s = Stratum(a.m, a.n, a.p, a.q)
    rng = random.Random(a.seed)
    samples = []
    for _ in range(a.count):
        M = random_labeled(s.p, s.q, a.field, rng)
        samples.append(dict(M.to_json(), m=a.m, n=a.n))
    return {"seed": a.seed, "stratum": s.to_json(), "samples": samples}


_COMMANDS = {
    "classify": _cmd_classify, "normal-form": _cmd_normal_form, "stratum": _cmd_stratum,
    "reduce": _cmd_reduce, "endo": _cmd_endo, "indec": _cmd_indec, "local": _cmd_local,
    "degen": _cmd_degen, "sample": _cmd_sample,
}


def _render(result) -> str:
    return result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = _render(_COMMANDS[args.command](args))
    except CheckFailed as e:
        _emit(_render(e.payload), getattr(args, "out", None))
        return 2
    except CertificateFailure as e:
        print(f"lambdamn: certificate failure: {e}", file=sys.stderr)
        return 2
    except (UsageError, NotCandidate, RelationViolation, ShapeMismatch, ValueError,
            KeyError, TypeError) as e:
        print(f"lambdamn: error: {e}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line driver: ``jacring VERB [options]``.

Exit status is 0 on success, 2 for domain failures (non-divisibility, forms
outside a ring, NOT-INTEGRAL verdicts) and 1 for malformed input.  Errors
are reported on stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import borcherds as B
from . import forms as FM
from . import relations as R
from . import siegel as S
from . import structure as ST
from .errors import JacringError
from .forms import JacobiForm
from .polynomial import GeneratorPolynomial, to_base4

RINGS = {"weak0": ST.decompose_weak0, "weak-even": ST.decompose_weak_even, "wh0": ST.decompose_wh0}


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _default_prec() -> int:
    raw = os.environ.get("JACRING_PREC", "16")
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"JACRING_PREC={raw!r} is not an integer") from None


# -- formatting -------------------------------------------------------------------------------


def _exp(num: int, den: int) -> str:
    f = Fraction(num, den)
    return str(f) if f.denominator == 1 else f"({f})"


def _term(c: Fraction, l2: int) -> str:
    if l2 == 0:
        return str(c)
    z = "ζ" if l2 == 2 else f"ζ^{_exp(l2, 2)}"
    if c == 1:
        return z
    if c == -1:
        return "-" + z
    return f"{c}{z}"


def pretty_series(series) -> str:
    """One line per q-power: ``q^n: c_{-L}ζ^-L + ... + c_L ζ^L``."""
    lines = []
    for n24 in series.row_keys():
        row = series.row(n24)
        body = " + ".join(_term(row[l2], l2) for l2 in sorted(row)).replace("+ -", "- ")
        lines.append(f"q^{_exp(n24, 24)}: {body}")
    lines.append(f"O(q^{_exp(series.prec24, 24)})")
    return "\n".join(lines)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# -- payloads ---------------------------------------------------------------------------------


def _read_json(path: str | None):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON payload: {exc}") from None


def _parsed(loader, data):
    try:
        return loader(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed payload: {exc}") from None


def _named(name: str, prec24: int) -> JacobiForm:
    if name in FM.GENERATORS or name in FM.PHI_DATA:
        return FM.generator(name, prec24)
    if name == "E6_3":
        return FM.e63(prec24)
    if name in ("psi_0_1", "psi_0_2", "psi_0_3"):
        return B.psi_named(name, prec24)
    raise ParseError(f"unknown generator {name!r}")


# -- verbs ------------------------------------------------------------------------------------


def cmd_expand(a):
    if a.poly:
        p = _parsed(GeneratorPolynomial.from_json, _read_json(a.poly))
        f = p.expand_form(24 * a.prec)
    elif a.name:
        f = _named(a.name, 24 * a.prec)
    else:
        raise ParseError("expand needs a generator name or --poly FILE")
    if a.mod:
        f = f.with_series(f.series.reduce_mod(a.mod), f.label)
    if a.format == "json":
        return _dump(f.to_json()), 0
    head = f"{f.label or 'form'}: weight {f.weight}, index {f.index}"
    return head + "\n" + pretty_series(f.series), 0


def cmd_decompose(a):
    f = _parsed(JacobiForm.from_json, _read_json(a.file))
    p = RINGS[a.ring](f)
    if a.format == "json":
        return _dump(p.to_json()), 0
    return str(p), 0


def cmd_certify(a):
    p = _parsed(GeneratorPolynomial.from_json, _read_json(a.file))
    if p.ring != "WEAK_EVEN_14":
        raise ParseError("certify expects a WEAK_EVEN_14 polynomial")
    cert = ST.certify_integral(to_base4(p))
    return _certificate(cert, a.format)


def cmd_certify_siegel(a):
    F = _parsed(S.FourierJacobiExpansion.from_json, _read_json(a.file))
    return _certificate(S.siegel_certify_integral(F), a.format)


def _certificate(cert, fmt):
    code = 0 if cert.integral else 2
    if fmt == "json":
        return _dump(cert.to_json()), code
    text = f"{cert.verdict} (weight {cert.weight}, {len(cert.checked)} coefficients checked)"
    if cert.witness is not None:
        text += "\nwitness: " + ", ".join(str(x) for x in cert.witness)
    return text, code


def cmd_verify_relations(a):
    results = R.verify_relations(24 * a.prec, workers=a.workers)
    ok = R.report_ok(results)
    if a.format == "json":
        return _dump({"prec": a.prec, "passed": ok, "relations": [r.to_json() for r in results]}), 0 if ok else 2
    lines = []
    for r in results:
        line = f"{'ok  ' if r.passed else 'FAIL'} {r.name} [{r.source}]"
        if r.first_difference is not None:
            line += f" first difference at {r.first_difference[:2]}"
        lines.append(line)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} relations hold to q^{a.prec}")
    return "\n".join(lines), 0 if ok else 2


def cmd_psi_basis(a):
    pb = ST.psi_basis(a.index)
    if a.format == "json":
        return _dump({
            "index": pb.index,
            "basis": [
                {"polynomial": p.to_json(), "q0": list(row)} for p, row in zip(pb.polys, pb.q0_matrix)
            ],
        }), 0
    lines = []
    for i, (p, row) in enumerate(zip(pb.polys, pb.q0_matrix), 1):
        lines.append(f"psi^({i}) = {p}")
        lines.append(f"  q^0 coefficients at zeta^0..zeta^{pb.index}: {list(row)}")
    return "\n".join(lines), 0


def cmd_singular(a):
    data = _read_json(a.file)
    if a.realize:
        sd = _parsed(B.SingularData.from_json, data)
        p = B.realize_singular(sd)
        return (_dump(p.to_json()) if a.format == "json" else str(p)), 0
    f = _parsed(JacobiForm.from_json, data)
    sd = B.singular_part(f)
    out = {
        "singular": sd.to_json(),
        "q0_identity_residual": str(B.q0_identity_residual(sd)),
        "borcherds_weight": str(B.borcherds_weight(sd)),
    }
    if a.format == "json":
        return _dump(out), 0
    lines = [f"index {sd.index}"]
    lines += [f"f({n},{l}) = {c}" for (n, l), c in sorted(sd.entries.items())]
    lines.append(f"q0 identity residual: {out['q0_identity_residual']}")
    lines.append(f"Borcherds weight: {out['borcherds_weight']}")
    return "\n".join(lines), 0


def cmd_lift(a):
    f = _parsed(JacobiForm.from_json, _read_json(a.file))
    F = S.gritsenko_lift(f, a.M)
    if a.format == "json":
        return _dump(F.to_json()), 0
    parts = []
    for m, fm in enumerate(F.fj):
        parts.append(f"f_{m}:\n" + pretty_series(fm.series))
    return "\n".join(parts), 0


# -- driver -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec", type=int, default=None, help="integer q-orders (default 16 or $JACRING_PREC)")
    common.add_argument("--format", choices=("json", "pretty"), default="pretty")
    common.add_argument("--out", help="write the result here instead of stdout")

    ap = _Parser(prog="jacring", description="Exact Jacobi forms with integral Fourier coefficients.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="q-expansion of a named generator or a polynomial")
    p.add_argument("name", nargs="?")
    p.add_argument("--poly", metavar="FILE", help="polynomial JSON ('-' for stdin)")
    p.add_argument("--mod", type=int, default=0, help="reduce coefficients modulo N")
    p.set_defaults(run=cmd_expand)

    p = sub.add_parser("decompose", parents=[common], help="write a form as a polynomial in generators")
    p.add_argument("file", nargs="?")
    p.add_argument("--ring", choices=tuple(RINGS), required=True)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("certify", parents=[common], help="integrality certificate for a polynomial")
    p.add_argument("file", nargs="?")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("certify-siegel", parents=[common], help="integrality of a Fourier-Jacobi expansion")
    p.add_argument("file", nargs="?")
    p.set_defaults(run=cmd_certify_siegel)

    p = sub.add_parser("verify-relations", parents=[common], help="check the generator relations")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_verify_relations)

    p = sub.add_parser("psi-basis", parents=[common], help="Z-basis of weight-0 weak forms of index m")
    p.add_argument("index", type=int)
    p.set_defaults(run=cmd_psi_basis)

    p = sub.add_parser("singular", parents=[common], help="singular coefficients and Borcherds weight")
    p.add_argument("file", nargs="?")
    p.add_argument("--realize", action="store_true", help="input is singular data; solve for a form")
    p.set_defaults(run=cmd_singular)

    p = sub.add_parser("lift", parents=[common], help="Fourier-Jacobi expansion of the arithmetic lift")
    p.add_argument("file", nargs="?")
    p.add_argument("-M", type=int, default=4, help="highest Fourier-Jacobi index")
    p.set_defaults(run=cmd_lift)
    return ap


def _error(kind: str, exc: BaseException, code: int) -> int:
    obj = {"error": kind, "message": str(exc)}
    obstruction = getattr(exc, "obstruction", None)
    if obstruction is not None:
        obj["obstruction"] = [str(x) for x in obstruction] if isinstance(obstruction, (list, tuple)) else str(obstruction)
    print(_dump(obj), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.prec is None:
            args.prec = _default_prec()
        if args.prec < 1:
            raise ParseError("--prec must be at least 1")
        text, code = args.run(args)
    except ParseError as exc:
        return _error("ParseError", exc, 1)
    except JacringError as exc:
        return _error(type(exc).__name__, exc, 2)
    except (ValueError, KeyError) as exc:
        return _error(type(exc).__name__, exc, 2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

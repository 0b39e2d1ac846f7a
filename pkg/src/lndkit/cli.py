"""Command-line front end: load a dossier file, verify, classify, report.

Exit codes: 0 success/verified, 1 semantic failure (failed verification,
non-membership), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classify import (
    VarietyDossier,
    classify,
    combined_image_ideal,
    conjectured_hdstar_member,
)
from .derivations import Derivation, PresentedAlgebra, cylinder
from .errors import LndkitError, NotASlice, NotVerifiedLND
from .grading import decompose
from .groebner import GREVLEX, LEX
from .poly import parse_poly
from .toric import Cone, detect_line_factor, enumerate_roots
from .trinomial import TrinomialData

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


class Dossier:
    """Parsed dossier file: algebra, named derivations, gradings, tags."""

    def __init__(self, doc: dict, order=GREVLEX):
        gradings = {
            name: [int(x) for x in w]
            for name, w in doc.get("gradings", {}).items()
        }
        self.algebra = None
        self.tags: dict = {}
        if "trinomial" in doc:
            self.tags["trinomial"] = _parse_trinomial(doc["trinomial"])
        if "toric" in doc:
            self.tags["toric"] = Cone.of(doc["toric"]["rays"])
        assertions = doc.get("assertions", {})
        if assertions.get("rigid"):
            self.tags["rigid_asserted"] = True
        if "invariant_line" in assertions:
            self.tags["invariant_line"] = [
                Fraction(x) for x in assertions["invariant_line"]
            ]
        if "vars" in doc:
            vars = list(doc["vars"])
            relations = [
                parse_poly(text, vars) for text in doc.get("relations", [])
            ]
            self.algebra = PresentedAlgebra(vars, relations, gradings, order)
        self.gradings = gradings
        self.derivations: dict[str, Derivation] = {}
        if doc.get("derivations"):
            if self.algebra is None:
                raise ValueError("derivations require vars/relations")
            for name, images in doc["derivations"].items():
                self.derivations[name] = Derivation.from_strings(
                    self.algebra, images
                )

    def derivation(self, name: str) -> Derivation:
        if name not in self.derivations:
            raise KeyError(f"no derivation named {name!r} in the dossier")
        return self.derivations[name]


def _parse_trinomial(doc: dict) -> TrinomialData:
    variant = int(doc["type"])
    m = int(doc.get("m", 0))
    l = doc["l"]
    if variant == 1:
        return TrinomialData.type1(l, [Fraction(x) for x in doc["a"]], m)
    return TrinomialData.type2(
        l, [[Fraction(x) for x in row] for row in doc["A"]], m
    )


def _load(path: str, order) -> Dossier:
    with open(path) as fh:
        return Dossier(json.load(fh), order)


def _emit(payload: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_check_lnd(args) -> int:
    dossier = _load(args.file, _order(args))
    D = dossier.derivation(args.name)
    ok, cert = D.is_well_defined()
    cert_rows = [
        {
            "relation": D.algebra.format(rel),
            "image": D.algebra.format(img),
        }
        for rel, img in cert
    ]
    lines = ["well-defined: " + ("yes" if ok else "NO")]
    for row in cert_rows:
        lines.append(f"  D({row['relation']}) -> {row['image']}")
    verdict = None
    if ok:
        verdict = D.nilpotency_check(args.bound)
        lines.append(verdict.describe())
    payload = {
        "command": "check-lnd",
        "name": args.name,
        "well_defined": ok,
        "certificate": cert_rows,
        "verdict": None
        if verdict is None
        else {
            "status": verdict.status,
            "max_order": verdict.max_order,
            "witness_var": verdict.witness_var,
            "witness_order": verdict.witness_order,
            "bound": verdict.bound,
        },
    }
    _emit(payload, args.json, lines)
    return EXIT_OK if ok and verdict.verified else EXIT_FAILED


def cmd_classify(args) -> int:
    dossier = _load(args.file, _order(args))
    V = VarietyDossier.create(
        dossier.algebra,
        list(dossier.derivations.values()),
        dossier.tags,
        bound=args.bound,
    )
    report = classify(V, box=args.box)
    lines = [f"verdict: {report.verdict}"]
    for ev in report.evidence:
        lines.append(f"  - {ev.criterion}" + (f" {ev.data}" if ev.data else ""))
    _emit({"command": "classify", **report.to_dict()}, args.json, lines)
    return EXIT_OK


def cmd_exp(args) -> int:
    dossier = _load(args.file, _order(args))
    D = dossier.derivation(args.name)
    f = D.algebra.parse(args.poly)
    if args.parameter == "formal":
        result, ext = D.exp_action(f, None)
        text = result.format(ext.vars)
    else:
        result = D.exp_action(f, Fraction(args.parameter))
        text = D.algebra.format(result)
    _emit({"command": "exp", "result": text}, args.json, [text])
    return EXIT_OK


def cmd_decompose(args) -> int:
    dossier = _load(args.file, _order(args))
    D = dossier.derivation(args.name)
    if args.grading not in dossier.gradings:
        raise KeyError(f"no grading named {args.grading!r} in the dossier")
    parts = decompose(D, dossier.gradings[args.grading])
    rows = []
    lines = []
    for part in parts:
        images = {
            v: D.algebra.format(img)
            for v, img in zip(D.algebra.vars, part.part.images)
        }
        rows.append({"degree": part.degree, "images": images})
        lines.append(f"degree {part.degree}:")
        for v in D.algebra.vars:
            lines.append(f"  {v} -> {images[v]}")
    _emit({"command": "decompose", "parts": rows}, args.json, lines)
    return EXIT_OK


def cmd_roots(args) -> int:
    dossier = _load(args.file, _order(args))
    if "toric" not in dossier.tags:
        raise ValueError("dossier has no toric cone data")
    cone = dossier.tags["toric"]
    roots = enumerate_roots(cone, args.box)
    line = detect_line_factor(cone)
    rows = [
        {"vector": list(r.vector), "distinguished_ray": r.distinguished}
        for r in roots
    ]
    lines = [f"{len(rows)} roots within box {args.box}"]
    lines += [f"  {row['vector']} (ray {row['distinguished_ray']})" for row in rows]
    lines.append(
        "line factor: "
        + ("none" if line is None else str(list(line.vector)))
    )
    _emit(
        {
            "command": "roots",
            "box": args.box,
            "roots": rows,
            "line_factor": None if line is None else list(line.vector),
        },
        args.json,
        lines,
    )
    return EXIT_OK


def cmd_hdstar_member(args) -> int:
    dossier = _load(args.file, _order(args))
    if dossier.algebra is None or not dossier.derivations:
        raise ValueError("hdstar-member needs vars, relations, and derivations")
    V = VarietyDossier.create(
        dossier.algebra,
        list(dossier.derivations.values()),
        dossier.tags,
        bound=args.bound,
    )
    ideal = combined_image_ideal(V)
    cyl = cylinder(dossier.algebra)
    f = parse_poly(args.poly, cyl.vars)
    member = conjectured_hdstar_member(dossier.algebra, f, ideal)
    _emit(
        {"command": "hdstar-member", "member": member},
        args.json,
        ["member" if member else "not a member"],
    )
    return EXIT_OK if member else EXIT_FAILED


def _order(args):
    return LEX if getattr(args, "order", "grevlex") == "lex" else GREVLEX


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lndkit",
        description="Verify locally nilpotent derivations and classify cylinders",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="dossier JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
        p.add_argument("--bound", type=int, default=64)
        p.add_argument("--box", type=int, default=10)

    p = sub.add_parser("check-lnd", help="verify a named derivation")
    common(p)
    p.add_argument("name")
    p.set_defaults(fn=cmd_check_lnd)

    p = sub.add_parser("classify", help="type A/B/C classification")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("exp", help="exponential of an LND applied to a polynomial")
    common(p)
    p.add_argument("name")
    p.add_argument("poly")
    p.add_argument("parameter", help="rational value or 'formal'")
    p.set_defaults(fn=cmd_exp)

    p = sub.add_parser("decompose", help="graded decomposition of a derivation")
    common(p)
    p.add_argument("name")
    p.add_argument("grading")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("roots", help="Demazure roots of the dossier's cone")
    common(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser(
        "hdstar-member",
        help="membership in the conjectured invariant subalgebra",
    )
    common(p)
    p.add_argument("poly")
    p.set_defaults(fn=cmd_hdstar_member)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (NotVerifiedLND, NotASlice) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (
        LndkitError,
        OSError,
        KeyError,
        ValueError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

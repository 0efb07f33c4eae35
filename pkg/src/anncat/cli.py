"""Command-line interface: ``anncat <command> ...``.

Exit codes: 0 success, 1 mathematical failure, 2 malformed input,
3 refusal because a budget or size limit would be exceeded.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from .algebra import (Bimodule, FiniteRing, cyclic_quotient_bimodule, make_cyclic_ring, make_product_ring,
                      regular_bimodule, trivial_bimodule, validate_bimodule, validate_ring)
from .cochains import AnnStructure, MacLaneQuadruple, load_cochain
from .cohomology import (classify, compute_h3, enumerate_structures, find_witness, find_witness_bruteforce,
                         quadruple_of, sigma_of)
from .errors import (AmbientMismatchError, BudgetExceededError, FormatError, InvalidOrderError,
                     InvalidStructureError, SizeRefusalError)
from .relations import apply_structure_coboundary, check_cocycle, check_structure
from .skeleton import interchange_mismatches, verify_axioms

EXIT_OK, EXIT_MATH, EXIT_FORMAT, EXIT_REFUSED = 0, 1, 2, 3


class Outcome:
    """What a command produced: a JSON document, its text rendering and an exit code."""

    def __init__(self, doc: dict, text: str, code: int = EXIT_OK):
        self.doc = doc
        self.text = text
        self.code = code


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror}", path) from e
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", path) from e


_CYCLIC = re.compile(r"^Z/(\d+)$")


def load_ring(arg: str) -> FiniteRing:
    """A ring file, or shorthand ``Z/n`` or ``Z/mxZ/n``."""
    parts = arg.split("x")
    if all(_CYCLIC.match(p) for p in parts):
        rings = [make_cyclic_ring(int(_CYCLIC.match(p).group(1))) for p in parts]
        out = rings[0]
        for r in rings[1:]:
            out = make_product_ring(out, r)
        return out
    data = _read_json(arg)
    try:
        return FiniteRing.from_json(data)
    except FormatError as e:
        raise FormatError(str(e), arg) from e


def load_module(arg: str | None, ring: FiniteRing) -> Bimodule:
    """A bimodule file, or ``regular``, ``trivial`` or ``Z/m`` (quotient of a cyclic ring)."""
    if arg is None or arg == "regular":
        return regular_bimodule(ring)
    if arg == "trivial":
        return trivial_bimodule(ring)
    m = _CYCLIC.match(arg)
    if m:
        return cyclic_quotient_bimodule(ring, int(m.group(1)))
    data = _read_json(arg)
    try:
        return Bimodule.from_json(ring, data)
    except FormatError as e:
        raise FormatError(str(e), arg) from e


def load_family(path: str, cls, ring=None, module=None):
    data = _read_json(path)
    if not isinstance(data, dict) or data.get("type") != cls.TYPE:
        raise FormatError(f"expected a {cls.TYPE} file", path)
    return cls.from_json(data, ring, module)


def _ambient(args):
    ring = load_ring(args.ring) if getattr(args, "ring", None) else None
    module = load_module(args.module, ring) if ring is not None else None
    return ring, module


# commands


def _validate_one(path: str, args, ring, module) -> tuple[dict, str, bool]:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object", path)
    kind = data.get("type")
    if kind is None and "kind" in data:
        kind = "cochain"
    if kind == "ring":
        rep = validate_ring(data)
        return {"file": path, "type": "ring", "report": rep.to_json()}, rep.to_text(), rep.ok
    if kind == "bimodule":
        r = FiniteRing.from_json(data["ring"]) if "ring" in data else ring
        if r is None:
            raise FormatError("a bimodule needs --ring or an embedded ring", path)
        rep = validate_bimodule(r, data)
        return {"file": path, "type": "bimodule", "report": rep.to_json()}, rep.to_text(), rep.ok
    if kind in ("structure", "quadruple"):
        cls = AnnStructure if kind == "structure" else MacLaneQuadruple
        try:
            fam = cls.from_json(data, ring, module)
        except InvalidStructureError as e:
            # normalization violations are mathematical failures with a witness
            doc = {"file": path, "type": kind, "ok": False, "error": str(e),
                   "witnesses": [list(w) for w in getattr(e, "witnesses", [])[:args.cap]]}
            return doc, f"{path}: {e}", False
        if kind == "structure":
            rep = check_structure(fam, regular=args.regular, cap=args.cap)
            doc = {"file": path, "type": kind, "relations": rep.to_json()}
            text = rep.to_text()
            ok = rep.ok
            if args.cross_check:
                drep = verify_axioms(fam, cap=args.cap)
                doc["diagrams"] = drep.to_json()
                doc["agree"] = drep.ok == rep.ok
                text += "\n  diagrams: " + ("all commute" if drep.ok else ", ".join(drep.failed()))
                ok = ok and drep.ok
            return doc, text, ok
        rep = check_cocycle(fam, cap=args.cap)
        return {"file": path, "type": kind, "relations": rep.to_json()}, rep.to_text(), rep.ok
    if kind == "cochain":
        if ring is None:
            raise FormatError("a cochain needs --ring", path)
        try:
            c = load_cochain(data, ring, module)
        except InvalidStructureError as e:
            doc = {"file": path, "type": "cochain", "ok": False, "error": str(e),
                   "witnesses": [list(w) for w in getattr(e, "witnesses", [])[:args.cap]]}
            return doc, f"{path}: {e}", False
        return {"file": path, "type": "cochain", "ok": True, "kind": c.kind}, f"{path}: {c.kind} cochain ok", True
    raise FormatError(f"unknown document type {kind!r}", path)


def cmd_validate(args) -> Outcome:
    ring, module = _ambient(args)
    docs, texts, ok = [], [], True
    for p in args.paths:
        d, t, good = _validate_one(p, args, ring, module)
        docs.append(d)
        texts.append(t)
        ok = ok and good
    return Outcome({"command": "validate", "ok": ok, "results": docs}, "\n".join(texts),
                   EXIT_OK if ok else EXIT_MATH)


def cmd_classify(args) -> Outcome:
    ring = load_ring(args.ring)
    module = load_module(args.module, ring)
    rep = classify(ring, module, budget=args.budget, sigma_method=args.method, regular=args.regular)
    doc = rep.to_json()
    ok = rep.audit["same_class_witnessed"] == rep.audit["same_class_pairs"]
    return Outcome(dict(doc, command="classify"), rep.to_text(), EXIT_OK if ok else EXIT_MATH)


def cmd_h3(args) -> Outcome:
    ring = load_ring(args.ring)
    module = load_module(args.module, ring)
    data = compute_h3(ring, module, cross_check=args.cross_check)
    ok = all(v.get("agrees", True) for v in data.cross_check.values())
    return Outcome(dict(data.to_json(), command="h3"), data.to_text(), EXIT_OK if ok else EXIT_MATH)


def cmd_sigma(args) -> Outcome:
    f = load_family(args.structure, AnnStructure)
    rep = check_structure(f, cap=args.cap)
    if not rep.ok:
        return Outcome({"command": "sigma", "ok": False, "relations": rep.to_json()},
                       "input is not a valid structure\n" + rep.to_text(), EXIT_MATH)
    sigma = sigma_of(f, args.method)
    q = quadruple_of(f, args.method)
    crep = check_cocycle(q, cap=args.cap)
    doc = {"command": "sigma", "method": args.method, "sigma": sigma.to_json(), "cocycle": crep.to_json()}
    lines = [f"sigma ({args.method}): {int(np.count_nonzero(sigma.values))} nonzero entries",
             crep.to_text()]
    ok = crep.ok
    if args.cross_check:
        other = "printed" if args.method == "diagram" else "diagram"
        diff = np.flatnonzero(sigma_of(f, other).values != sigma.values)
        mism = interchange_mismatches(f, cap=args.cap)
        doc["comparison"] = {"other": other, "differences": int(diff.size),
                             "factorization_mismatches": [list(t) for t in mism]}
        lines.append(f"  {other} formula differs at {diff.size} tuples; "
                     f"interchange factorizations disagree at {len(mism)} tuples")
        ok = ok and diff.size == 0 and not mism
    return Outcome(doc, "\n".join(lines), EXIT_OK if ok else EXIT_MATH)


def cmd_witness(args) -> Outcome:
    f = load_family(args.first, AnnStructure)
    g = load_family(args.second, AnnStructure)
    if f.ring != g.ring or f.module != g.module:
        raise AmbientMismatchError("the two structures live over different (R, M)")
    for name, s in (("first", f), ("second", g)):
        rep = check_structure(s, cap=args.cap)
        if not rep.ok:
            return Outcome({"command": "witness", "ok": False, "invalid": name, "relations": rep.to_json()},
                           f"{name} structure is not valid\n" + rep.to_text(), EXIT_MATH)
    w = find_witness(f, g)
    doc = {"command": "witness", "cohomologous": w is not None}
    if w is not None:
        doc["witness"] = w.to_json()
        doc["verified"] = apply_structure_coboundary(f, w) == g
    text = "cohomologous, witness found" if w is not None else "not cohomologous"
    ok = w is not None and doc["verified"]
    if args.cross_check:
        b = find_witness_bruteforce(f, g, budget=args.budget)
        doc["bruteforce_cohomologous"] = b is not None
        text += f"\n  brute force agrees: {(b is not None) == (w is not None)}"
        ok = ok and b is not None
    return Outcome(doc, text, EXIT_OK if ok else EXIT_MATH)


def cmd_enumerate(args) -> Outcome:
    ring = load_ring(args.ring)
    module = load_module(args.module, ring)
    structs = list(enumerate_structures(ring, module, budget=args.budget, regular=args.regular))
    doc = {"command": "enumerate", "ring_order": ring.n, "module_order": module.m, "regular": args.regular,
           "count": len(structs), "structures": [f.to_json() for f in structs]}
    text = f"{len(structs)} valid {'regular ' if args.regular else ''}structures over {ring.name}, {module.name}"
    return Outcome(doc, text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anncat", description="Skeletal Ann-categories and their H^3.")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", metavar="PATH", help="also write the JSON report here")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, method=False, budget=False, cross=False, regular=False):
        sp.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        sp.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
        sp.add_argument("--cap", type=int, default=10, help="witnesses kept per failure")
        if method:
            sp.add_argument("--method", choices=["diagram", "printed"], default="diagram")
        if budget:
            sp.add_argument("--budget", type=int, default=1 << 20)
        if cross:
            sp.add_argument("--cross-check", action="store_true")
        if regular:
            sp.add_argument("--regular", action="store_true")

    sp = sub.add_parser("validate", help="check rings, bimodules, structures, quadruples or cochains")
    sp.add_argument("paths", nargs="+")
    sp.add_argument("--ring", help="ambient ring for files that do not embed one")
    sp.add_argument("--module", help="ambient bimodule (default: regular)")
    common(sp, cross=True, regular=True)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="enumerate structures and group them by class")
    sp.add_argument("ring")
    sp.add_argument("module", nargs="?")
    common(sp, method=True, budget=True, regular=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("h3", help="compute H^3(R, M)")
    sp.add_argument("ring")
    sp.add_argument("module", nargs="?")
    common(sp, cross=True)
    sp.set_defaults(func=cmd_h3)

    sp = sub.add_parser("sigma", help="the interchange cochain of a structure")
    sp.add_argument("structure")
    common(sp, method=True, cross=True)
    sp.set_defaults(func=cmd_sigma)

    sp = sub.add_parser("witness", help="find (mu, nu) carrying one structure to another")
    sp.add_argument("first")
    sp.add_argument("second")
    common(sp, budget=True, cross=True)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("enumerate", help="list every valid structure")
    sp.add_argument("ring")
    sp.add_argument("module", nargs="?")
    common(sp, budget=True, regular=True)
    sp.set_defaults(func=cmd_enumerate)
    return p


def _error_doc(e: Exception, code: int) -> Outcome:
    doc = {"error": type(e).__name__, "message": str(e)}
    if isinstance(e, FormatError) and e.location:
        doc["location"] = e.location
    if isinstance(e, BudgetExceededError):
        doc.update(size=e.size, budget=e.budget)
    if isinstance(e, SizeRefusalError):
        doc["sizes"] = e.sizes
    return Outcome(doc, f"error: {e}", code)


def run(argv: list[str] | None = None) -> Outcome:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, InvalidOrderError, AmbientMismatchError) as e:
        return _error_doc(e, EXIT_FORMAT)
    except (BudgetExceededError, SizeRefusalError) as e:
        return _error_doc(e, EXIT_REFUSED)
    except InvalidStructureError as e:
        return _error_doc(e, EXIT_MATH)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_FORMAT if e.code else EXIT_OK
    out = run(argv)
    if args.out:
        Path(args.out).write_text(dumps(out.doc), encoding="utf-8")
    stream = sys.stdout if out.code in (EXIT_OK, EXIT_MATH) else sys.stderr
    stream.write(dumps(out.doc) if args.format == "json" else out.text + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front door: ``princlab <verb> ...``.

Exit status: 0 success, 1 parse or I/O error, 2 invalid input, 3 an
expectation failed, 4 a search bound was insufficient.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .errors import InvalidInput, NoGadgetFound, PrincLabError

EXIT_IO, EXIT_INVALID, EXIT_EXPECTATION, EXIT_BOUND = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _emit(args, obj, text: str):
    """JSON to --out (or stdout with --json); the text summary to stdout otherwise."""
    doc = io.dumps(obj)
    if getattr(args, "out", None):
        Path(args.out).write_text(doc, encoding="utf-8")
    if args.json:
        sys.stdout.write(doc)
    else:
        sys.stdout.write(text)


def _dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def shape_name(L) -> str:
    """C_n for chains, B_k for Boolean lattices, otherwise a canonical-form hash."""
    from .birkhoff import is_distributive
    from .enumerate import form_hash

    if L.is_chain():
        return f"C{L.n}"
    k = L.n.bit_length() - 1
    atoms = L.upper_covers[L.bottom]
    ji = [x for x in range(L.n) if len(L.lower_covers[x]) == 1]
    if L.n == 1 << k and is_distributive(L) and sorted(ji) == sorted(atoms):
        return f"B{k}"
    return "#" + form_hash(L)


# verbs


def cmd_analyze(args) -> int:
    from .birkhoff import is_distributive
    from .congruence import check_sandwich, congruence_lattice
    from .order import is_sectionally_complemented, jplus

    L = io.load_lattice(args.file)
    C = congruence_lattice(L)
    CL = C.lattice
    report = {
        "name": L.name,
        "size": L.n,
        "lattice": L.to_dict(),
        "con": C.to_dict(),
        "con_size": len(C),
        "con_shape": shape_name(CL),
        "principal": C.principal_names,
        "princ_size": len(C.principal),
        "principal_generators": {CL.elements[k]: list(v) for k, v in sorted(C.generators.items())},
        "jplus_of_con": [x for x in CL.elements if x in jplus(CL)],
        "distributive": is_distributive(L),
        "sectionally_complemented": is_sectionally_complemented(L),
        "sandwich": check_sandwich(L),
    }
    text = (
        f"lattice {L.name}: {L.n} elements\n"
        f"Con L: {len(C)} congruences, shape {report['con_shape']}\n"
        f"Princ L: {len(C.principal)} ({', '.join(C.principal_names)})\n"
        f"J+(Con L): {', '.join(report['jplus_of_con'])}\n"
        f"distributive: {report['distributive']}\n"
        f"sectionally complemented: {report['sectionally_complemented']}\n"
        f"sandwich J+(Con L) <= Princ L <= Con L: {report['sandwich']}\n"
    )
    _emit(args, report, text)
    stem = L.name or "lattice"
    if args.dot:
        d = _dir(args.dot)
        (d / f"{stem}.dot").write_text(io.to_dot(L, title=stem), encoding="utf-8")
        (d / f"{stem}.con.dot").write_text(
            io.to_dot(CL, highlight=C.principal_names, title=f"Con({stem})"), encoding="utf-8")
    if args.figures:
        from .figures import save_pair

        save_pair(L, CL, C.principal_names, _dir(args.figures) / f"{stem}.png", title=stem)
    return 0 if report["sandwich"] else EXIT_EXPECTATION


def cmd_construct(args) -> int:
    from .construct import GadgetTemplate, build_principal_lattice, verify_crucial_observations, verify_theorem_new2

    P = io.load_poset(args.poset)
    gadget = GadgetTemplate.from_dict(io.read_json(args.gadget)) if args.gadget else None
    built = build_principal_lattice(P, gadget, verify=False)
    rep = verify_theorem_new2(built)
    crucial = verify_crucial_observations(built.lattice, built.roles)
    doc = built.lattice.to_dict()
    doc["roles"] = built.roles.to_dict()
    doc["theorem"] = rep.to_dict()
    doc["crucial_observations"] = crucial
    lines = [f"constructed {built.lattice.name}: {built.lattice.n} elements, |Princ| = {rep.princ_size}"]
    lines += [f"  {k}: {'pass' if v else 'FAIL'}" for k, v in rep.clauses.items()]
    lines.append(f"  crucial_observations: {'pass' if crucial else 'FAIL'}")
    _emit(args, doc, "\n".join(lines) + "\n")
    stem = built.lattice.name or "construction"
    if args.dot:
        (_dir(args.dot) / f"{stem}.dot").write_text(io.to_dot(built.lattice, title=stem), encoding="utf-8")
    if args.figures:
        from .figures import save_hasse

        save_hasse(built.lattice, _dir(args.figures) / f"{stem}.png", title=stem)
    return 0 if rep.ok and crucial else EXIT_EXPECTATION


def cmd_enumerate(args) -> int:
    from . import enumerate as enum

    stream = enum.enumerate_distributive(args.size) if args.distributive else enum.enumerate_lattices(args.size)
    count = 0
    out = _dir(args.out) if args.out else None
    names = []
    for L in stream:
        count += 1
        names.append(L.name)
        if out is not None:
            io.write_json(out / f"{enum.form_hash(L)}.json", L.to_dict())
    kind = "distributive lattices" if args.distributive else "lattices"
    text = f"{count} {kind} with {args.size} elements\n"
    obj = {"size": args.size, "distributive": args.distributive, "count": count, "names": names}
    if args.json:
        sys.stdout.write(io.dumps(obj))
    else:
        sys.stdout.write(text)
    return 0


def _load_candidate(spec: str, D):
    from .birkhoff import Candidate, full_candidate, jplus_candidate

    if spec == "full":
        return full_candidate(D)
    if spec == "jplus":
        return jplus_candidate(D)
    obj = io.read_json(spec)
    if isinstance(obj, list):
        obj = {"q": obj}
    if not isinstance(obj, dict) or "q" not in obj:
        raise InvalidInput('candidate file needs a "q" list')
    return Candidate(D, frozenset(str(x) for x in obj["q"]))


def cmd_search(args) -> int:
    from .represent import search_witness

    D = io.load_lattice(args.d)
    Q = _load_candidate(args.q, D)
    rep = search_witness(D, Q, args.max_size, workers=args.workers)
    doc = rep.to_dict(timing=args.timing)
    text = f"{D.name} omit {Q.omitted}: {rep.outcome}\n"
    if rep.found:
        text += f"  witness {rep.witness.name}: covers {rep.witness.cover_names()}\n"
    _emit(args, doc, text)
    if rep.found and args.witness_out:
        io.write_json(args.witness_out, rep.witness.to_dict())
    return 0 if rep.found else EXIT_BOUND


def cmd_atlas(args) -> int:
    from .represent import atlas

    rep = atlas(args.max_d_size, args.max_l_size, workers=args.workers, min_d_size=args.min_d_size)
    _emit(args, rep.to_dict(timing=args.timing), rep.table())
    if args.table:
        Path(args.table).write_text(rep.table(), encoding="utf-8")
    if args.figures:
        from .figures import save_atlas_summary

        save_atlas_summary(rep, _dir(args.figures) / f"atlas_{args.max_d_size}_{args.max_l_size}.png")
    return rep.status


def cmd_gadget(args) -> int:
    from .construct import default_gadget, synthesize_gadget

    if args.synthesize:
        found = synthesize_gadget(args.extras, args.reading)
    else:
        found = [default_gadget()]
    doc = [g.to_dict() for g in found]
    lines = [f"{len(found)} gadget template(s)"]
    for g in found:
        lines.append(f"  roles {g.roles}; extras {g.extras}")
    _emit(args, doc if args.synthesize else doc[0], "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="princlab", description="Finite-lattice congruence laboratory.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(p, out=True):
        p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
        if out:
            p.add_argument("--out", help="write the JSON report to this file")

    p = sub.add_parser("analyze", help="congruences of a lattice file")
    p.add_argument("file")
    p.add_argument("--dot", metavar="DIR", help="write Hasse diagrams of L and Con L as DOT")
    p.add_argument("--figures", metavar="DIR", help="render L beside Con L as PNG")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="lattice whose principal congruences form a given bounded poset")
    p.add_argument("--poset", required=True)
    p.add_argument("--gadget", help="gadget template file overriding the default")
    p.add_argument("--dot", metavar="DIR")
    p.add_argument("--figures", metavar="DIR")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="lattices up to isomorphism")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--distributive", action="store_true")
    p.add_argument("--out", metavar="DIR", help="write one lattice file per class, named by form hash")
    common(p, out=False)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", help="bounded witness search for a candidate Q of D")
    p.add_argument("--d", required=True, help="distributive lattice file")
    p.add_argument("--q", required=True, help='candidate file ({"q": [...]}), or "full" / "jplus"')
    p.add_argument("--max-size", type=int, default=10)
    p.add_argument("--witness-out", help="write the witness lattice file here")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("atlas", help="all candidates of all small distributive lattices")
    p.add_argument("--max-d-size", type=int, required=True)
    p.add_argument("--max-l-size", type=int, required=True)
    p.add_argument("--min-d-size", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--table", help="also write the text table here")
    p.add_argument("--figures", metavar="DIR")
    p.add_argument("--timing", action="store_true")
    common(p)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("gadget", help="show the default gadget or synthesize all templates")
    p.add_argument("--synthesize", action="store_true")
    p.add_argument("--extras", type=int, default=5)
    p.add_argument("--reading", choices=("base", "strict"), default="base")
    common(p)
    p.set_defaults(func=cmd_gadget)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NoGadgetFound as exc:
        print(f"no gadget: {exc}", file=sys.stderr)
        return EXIT_EXPECTATION
    except PrincLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXPECTATION
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

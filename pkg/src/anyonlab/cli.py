"""Command-line surface: JSON in/out, exact evaluation, numerics, diagrams.

Exit codes: 0 success, 1 domain error (a precondition was violated),
2 parse error (arguments or input documents).  Identical invocations
produce byte-identical output.  The environment variable ANYONLAB_FRAME
may point to a frame JSON file overriding the built-in default frame.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import braiding, double, jsonio, render, spectral
from .braiding import BraidTrace, ConeFrame, default_frame
from .jsonio import ParseError
from .lattice import box_bonds
from .pauli import PauliOperator, as_quasi_local
from .sectors import (
    LoopCharge,
    SectorLabel,
    excitation_expectation,
    sector_distinguisher,
    syndrome,
)
from .strings import StringType, deform, string_operator
from .vacuum import vacuum_expectation

LATTICE_VIEW_MARGIN = 1


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return jsonio.loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _resolve_frame(args) -> ConeFrame:
    path = getattr(args, "frame", None) or os.environ.get("ANYONLAB_FRAME")
    if path:
        return jsonio.frame_from_json(_read_json(path))
    return default_frame()


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in text.split(","))
        return (x, y)
    except ValueError as exc:
        raise ParseError(f"expected 'x,y', got {text!r}") from exc


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(t) for t in text.lower().split("x"))
        return (w, h)
    except ValueError as exc:
        raise ParseError(f"expected 'WxH', got {text!r}") from exc


def _parse_viewport(text: str) -> render.Viewport:
    try:
        lo, hi = text.split(":")
        x0, y0 = _parse_pair(lo)
        x1, y1 = _parse_pair(hi)
        return render.Viewport(x0, y0, x1, y1)
    except (ValueError, ParseError) as exc:
        raise ParseError(f"expected viewport 'x0,y0:x1,y1', got {text!r}") from exc


def _string_type(text: str) -> StringType:
    try:
        return StringType(text.upper())
    except ValueError as exc:
        raise ParseError(f"string type must be X, Y, or Z, got {text!r}") from exc


def _emit(args, text_form: str, json_doc) -> None:
    if args.format == "json":
        print(jsonio.dumps(json_doc))
    else:
        print(text_form)


def _exclusion_bonds(doc: dict):
    if "box" in doc:
        box = doc["box"]
        if not (isinstance(box, list) and len(box) == 4 and all(isinstance(v, int) for v in box)):
            raise ParseError("exclusion box must be [x0, y0, x1, y1]")
        return box_bonds(box[0], box[1], box[2], box[3])
    if "bonds" in doc:
        return frozenset(jsonio.bond_from_json(b) for b in doc["bonds"])
    raise ParseError("exclusion document needs 'box' or 'bonds'")


# -- subcommand handlers -----------------------------------------------------

def cmd_eval(args) -> None:
    op = jsonio.operator_from_json(_read_json(args.op))
    value = vacuum_expectation(op)
    _emit(args, str(value), {"value": jsonio.gaussian_to_json(value)})


def cmd_string(args) -> None:
    path = jsonio.path_from_json(_read_json(args.path))
    op = string_operator(path, _string_type(args.type))
    print(jsonio.dumps(jsonio.pauli_to_json(op)))


def cmd_deform(args) -> None:
    path = jsonio.path_from_json(_read_json(args.path))
    if (args.plaq is None) == (args.vertex is None):
        raise ParseError("deform needs exactly one of --plaq or --vertex")
    if args.plaq is not None:
        moved = deform(path, plaquette=_parse_pair(args.plaq))
    else:
        moved = deform(path, vertex=_parse_pair(args.vertex))
    print(jsonio.dumps(jsonio.path_to_json(moved)))


def cmd_sector(args) -> None:
    if args.action != "eval":
        raise ParseError(f"unknown sector action {args.action!r}")
    spec = jsonio.sector_from_json(_read_json(args.spec))
    op = jsonio.operator_from_json(_read_json(args.op))
    value = excitation_expectation(spec, op)
    _emit(args, str(value), {"value": jsonio.gaussian_to_json(value)})


def cmd_syndrome(args) -> None:
    op_doc = _read_json(args.op)
    op = jsonio.pauli_from_json(op_doc) if "letters" in op_doc else None
    if op is None:
        raise ParseError("syndrome needs a single monomial document")
    stars, cells = syndrome(op)
    doc = {"stars": sorted([list(v) for v in stars]),
           "plaquettes": sorted([list(p) for p in cells])}
    _emit(args, f"stars={doc['stars']} plaquettes={doc['plaquettes']}", doc)


def cmd_distinguish(args) -> None:
    spec = jsonio.sector_from_json(_read_json(args.spec))
    excluded = _exclusion_bonds(_read_json(args.exclude)) if args.exclude else frozenset()
    charge = LoopCharge(args.charge) if args.charge else None
    loop = sector_distinguisher(spec, excluded, charge)
    vac = vacuum_expectation(loop)
    exc = excitation_expectation(spec, loop)
    doc = {"operator": jsonio.pauli_to_json(loop),
           "vacuum_value": jsonio.gaussian_to_json(vac),
           "sector_value": jsonio.gaussian_to_json(exc)}
    _emit(args, f"vacuum {vac}, sector {exc}, gap 2 on a loop of {len(loop.support)} bonds",
          doc)


def cmd_braid(args) -> None:
    frame = _resolve_frame(args)
    s1 = jsonio.sector_from_json(_read_json(args.s1))
    s2 = jsonio.sector_from_json(_read_json(args.s2))
    trace = BraidTrace(phase=0, n_used=0)
    sign = braiding.braiding_phase(s1, s2, frame, trace)
    crossings = [{
        "first_type": c.first_type,
        "second_type": c.second_type,
        "crossings": len(c.shared_bonds),
        "shared_bonds": [jsonio.bond_to_json(b) for b in c.shared_bonds],
        "sign": c.sign,
    } for c in trace.crossings]
    doc = {"phase": sign, "cone_order": trace.cone_order,
           "frame": jsonio.frame_to_json(frame), "crossings": crossings}
    if args.figure:
        string1, loop = _braid_figure_operators(s1, s2, frame)
        view = render.Viewport.around(string1.support | loop.support)
        render.figure_braid(view, string1, loop, args.figure)
        doc["figure"] = args.figure
    lines = [f"{sign:+d}", f"cone order: {trace.cone_order}"]
    for c in crossings:
        lines.append(f"  {c['first_type']} string vs transported {c['second_type']}: "
                     f"{c['crossings']} crossing(s), sign {c['sign']:+d}")
    _emit(args, "\n".join(lines), doc)


def _braid_figure_operators(s1, s2, frame):
    """First sector's truncated string and one transport loop, for drawing."""
    from .braiding import _phase_at, _reference_extent, _transport_loop, _west_component

    reach = _reference_extent([s1, s2])
    n = reach + 6
    comp2 = s2.components()[0]
    target = _west_component(comp2, reach + n + 4)
    loop = _transport_loop(comp2, target, n, frame, reach + n + 4)
    comp1 = s1.components()[0]
    m = comp1.path.disjoint_index(loop.support)
    return comp1.truncated_operator(m), loop


def cmd_twist(args) -> None:
    frame = _resolve_frame(args)
    try:
        label = SectorLabel(args.label)
    except ValueError as exc:
        raise ParseError(f"unknown label {args.label!r}") from exc
    value = braiding.twist(label, frame)
    _emit(args, f"{value:+d}", {"label": label.value, "twist": value})


def cmd_category(args) -> None:
    frame = _resolve_frame(args)
    if args.action == "tables":
        data = double.skeletal_sector_category(frame, args.swap_xz)
        fusion = {f"{a.value},{b.value}": data.fusion[(a, b)].value
                  for a in data.labels for b in data.labels}
        braid_t = {f"{a.value},{b.value}": data.braiding[(a, b)]
                   for a in data.labels for b in data.labels}
        twists = {a.value: data.twists[a] for a in data.labels}
        doc = {"fusion": fusion, "braiding": braid_t, "twists": twists}
        if args.format == "json":
            print(jsonio.dumps(doc))
            return
        labels = [l.value for l in data.labels]
        lines = ["fusion:"]
        for a in data.labels:
            lines.append("  " + "  ".join(f"{a.value}x{b.value}={data.fusion[(a,b)].value}"
                                          for b in data.labels))
        lines.append("braiding:")
        for a in data.labels:
            lines.append("  " + "  ".join(f"{data.braiding[(a,b)]:+d}" for b in data.labels))
        lines.append("twists: " + "  ".join(f"{l}:{twists[l]:+d}" for l in labels))
        print("\n".join(lines))
        return
    if args.action == "verify":
        report = double.verify_equivalence(frame, args.swap_xz)
        print(jsonio.dumps(report.to_dict()))
        return
    raise ParseError(f"unknown category action {args.action!r}")


def cmd_gap(args) -> None:
    w, h = _parse_size(args.torus)
    lattice = spectral.FiniteLattice.torus(w, h)
    e0, gap, degeneracy = spectral.spectral_gap(lattice)
    expected = -float(lattice.n_bonds)  # one star and one plaquette per site
    doc = {
        "torus": [w, h],
        "ground_energy": e0,
        "gap": gap,
        "degeneracy": degeneracy,
        "residual": abs(e0 - spectral.build_hamiltonian(lattice).ground_energy_bound),
    }
    _emit(args, f"E0={e0:.12g} gap={gap:.12g} degeneracy={degeneracy}", doc)


def cmd_oracle(args) -> None:
    w, h = _parse_size(args.patch)
    lattice = spectral.FiniteLattice.open_patch(w, h)
    psi = spectral.projector_state(lattice)
    if args.op:
        op = jsonio.operator_from_json(_read_json(args.op))
        num = spectral.oracle_expectation(lattice, psi, op)
        sym = complex(vacuum_expectation(op))
        doc = {"numeric": [num.real, num.imag], "symbolic": [sym.real, sym.imag],
               "residual": abs(num - sym)}
        _emit(args, f"numeric={num:.12g} symbolic={sym:.12g} residual={abs(num-sym):.3g}",
              doc)
        return
    rng = random.Random(args.seed)
    interior = lattice.interior_bonds(1)
    if not interior:
        raise ValueError("patch has no interior bonds at margin 1")
    worst = 0.0
    mismatches = 0
    for _ in range(args.selftest):
        k = rng.randint(1, min(8, len(interior)))
        letters = {b: rng.choice("XYZ") for b in rng.sample(interior, k)}
        op = PauliOperator.from_map(letters, rng.randrange(4))
        num = spectral.oracle_expectation(lattice, psi, op)
        sym = complex(vacuum_expectation(op))
        worst = max(worst, abs(num - sym))
        if (abs(sym) > 0) != (abs(num) > spectral.TOLERANCE):
            mismatches += 1
    doc = {"samples": args.selftest, "seed": args.seed,
           "max_residual": worst, "classification_mismatches": mismatches}
    _emit(args, f"{args.selftest} samples, max residual {worst:.3g}, "
          f"{mismatches} classification mismatches", doc)


def cmd_string_energy(args) -> None:
    w, h = _parse_size(args.patch)
    lattice = spectral.FiniteLattice.open_patch(w, h)
    path = jsonio.path_from_json(_read_json(args.path))
    t = _string_type(args.type)
    energy = spectral.string_energy(lattice, path, t)
    stars, cells = syndrome(string_operator(path, t))
    expected = 2.0 * (len(stars) + len(cells))
    doc = {"energy": energy, "syndrome_size": len(stars) + len(cells),
           "residual": abs(energy - expected)}
    _emit(args, f"energy={energy:.12g} syndrome={len(stars)+len(cells)} "
          f"residual={abs(energy-expected):.3g}", doc)


def cmd_render(args) -> None:
    doc: dict = {"kind": args.kind}
    if args.kind == "lattice":
        stars = [_parse_pair(s) for s in args.star or []]
        plaqs = [_parse_pair(p) for p in args.plaq or []]
        bonds = set()
        for v in stars:
            from .lattice import star as star_bonds
            bonds |= star_bonds(v)
        for p in plaqs:
            from .lattice import plaq as plaq_bonds
            bonds |= plaq_bonds(p)
        view = _parse_viewport(args.viewport) if args.viewport else render.Viewport.around(bonds)
        text = render.ascii_lattice(view, stars, plaqs)
        if args.out:
            doc["written"] = render.figure_lattice(view, args.out, stars, plaqs)
    elif args.kind in ("operator", "syndrome"):
        if not args.op:
            raise ParseError(f"render {args.kind} needs --op")
        op = jsonio.pauli_from_json(_read_json(args.op))
        view = _parse_viewport(args.viewport) if args.viewport else render.Viewport.around(op.support)
        mark = args.kind == "syndrome"
        text = render.ascii_operator(view, op, mark_syndrome=mark)
        if args.out:
            doc["written"] = render.figure_operator(view, op, args.out, mark_syndrome=mark)
    elif args.kind == "path":
        if not args.path:
            raise ParseError("render path needs --path")
        path = jsonio.path_from_json(_read_json(args.path))
        view = _parse_viewport(args.viewport) if args.viewport else render.Viewport.around(path.support())
        text = render.ascii_path(view, path)
        if args.out:
            doc["written"] = render.figure_path(view, path, args.out)
    elif args.kind == "braid":
        if not (args.s1 and args.s2):
            raise ParseError("render braid needs --s1 and --s2")
        frame = _resolve_frame(args)
        s1 = jsonio.sector_from_json(_read_json(args.s1))
        s2 = jsonio.sector_from_json(_read_json(args.s2))
        string1, loop = _braid_figure_operators(s1, s2, frame)
        view = (_parse_viewport(args.viewport) if args.viewport
                else render.Viewport.around(string1.support | loop.support))
        text = render.ascii_braid(view, string1, loop)
        if args.out:
            doc["written"] = render.figure_braid(view, string1, loop, args.out)
    else:
        raise ParseError(f"unknown render kind {args.kind!r}")
    if args.format == "json":
        doc["ascii"] = text
        print(jsonio.dumps(doc))
    else:
        print(text)
        if "written" in doc:
            print(f"wrote {doc['written']}")


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyonlab",
        description="Exact toric-code laboratory: vacuum, sectors, braiding, numerics.")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (figures are chosen by --out extension)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="vacuum expectation of an operator file")
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("string", help="string operator of a path")
    p.add_argument("--path", required=True)
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_string)

    p = sub.add_parser("deform", help="slide a path across a plaquette or star")
    p.add_argument("--path", required=True)
    p.add_argument("--plaq")
    p.add_argument("--vertex")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("sector", help="sector-state operations")
    p.add_argument("action", choices=("eval",))
    p.add_argument("--spec", required=True)
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_sector)

    p = sub.add_parser("syndrome", help="defects of a monomial")
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_syndrome)

    p = sub.add_parser("distinguish", help="loop witness separating a sector from the vacuum")
    p.add_argument("--spec", required=True)
    p.add_argument("--exclude")
    p.add_argument("--charge", choices=("star", "plaquette"))
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("braid", help="braiding phase of two sectors")
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)
    p.add_argument("--frame")
    p.add_argument("--figure", help="also write a crossing-trace figure to this file")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("twist", help="twist of a sector label")
    p.add_argument("--label", required=True)
    p.add_argument("--frame")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("category", help="sector-category tables and the equivalence certificate")
    p.add_argument("action", choices=("tables", "verify"))
    p.add_argument("--frame")
    p.add_argument("--swap-xz", action="store_true",
                   help="use the representative placement with mixed braiding +1")
    p.set_defaults(func=cmd_category)

    p = sub.add_parser("gap", help="torus spectrum: ground energy, gap, degeneracy")
    p.add_argument("--torus", required=True, metavar="WxH")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("oracle", help="numeric patch expectation vs the exact rule")
    p.add_argument("--patch", required=True, metavar="WxH")
    p.add_argument("--op")
    p.add_argument("--selftest", type=int, default=0,
                   help="compare N seeded random interior monomials")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("string-energy", help="energy of a string excitation on a patch")
    p.add_argument("--patch", required=True, metavar="WxH")
    p.add_argument("--path", required=True)
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_string_energy)

    p = sub.add_parser("render", help="ASCII diagram to stdout, figure file via --out")
    p.add_argument("--kind", required=True,
                   choices=("lattice", "operator", "path", "syndrome", "braid"))
    p.add_argument("--op")
    p.add_argument("--path")
    p.add_argument("--s1")
    p.add_argument("--s2")
    p.add_argument("--frame")
    p.add_argument("--star", action="append", metavar="X,Y")
    p.add_argument("--plaq", action="append", metavar="X,Y")
    p.add_argument("--viewport", metavar="x0,y0:x1,y1")
    p.add_argument("--out", help="figure file (.svg/.png/.pdf)")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
        return 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

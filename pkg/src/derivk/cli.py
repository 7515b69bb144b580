"""Command-line front end.

Exit codes: 0 on success or when every checked property holds, 1 when a
property fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bimodules as bm
from . import io as dio
from . import kan, quivers, samples, stable
from .chains import ChainError, is_quasi_iso, shift
from .config import RunConfig
from .linalg import Field
from .posets import MonotoneMap, PosetError, chain_poset, opposite, product, span_inclusion, square
from .reps import Representation, RepresentationError, homology_table, random_morphism, random_rep

USAGE_ERRORS = (dio.SchemaError, bm.BimoduleError, quivers.QuiverError, kan.KanError, stable.StableError,
                PosetError, RepresentationError, ChainError, KeyError, ValueError)


class UsageError(Exception):
    pass


def _table_json(x: Representation) -> dict:
    h = homology_table(x)
    return {repr(e): {str(n): k for n, k in sorted(h.at(e).items())} for e in x.shape.elements}


def _barcode_json(bars) -> dict:
    return {f"H{d}[{i},{j}]": m for (d, i, j), m in sorted(bars.items())}


def _complex_json(c) -> dict:
    return {str(n): k for n, k in sorted(c.homology_dims().items()) if k}


class Report:
    def __init__(self, title: str):
        self.title = title
        self.items: dict = {}
        self.ok = True
        self.dot: str | None = None

    def add(self, key, value):
        self.items[key] = value

    def check(self, key, passed: bool):
        self.items[key] = "pass" if passed else "FAIL"
        self.ok = self.ok and bool(passed)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"command": self.title, "ok": self.ok, **self.items}, indent=1, sort_keys=True,
                              ensure_ascii=False)
        if fmt == "dot":
            if self.dot is None:
                raise UsageError(f"{self.title} has no DOT output")
            return self.dot.rstrip("\n")
        lines = [f"# {self.title}"]
        for k, v in self.items.items():
            if isinstance(v, dict):
                lines.append(f"{k}:")
                lines.extend(f"  {a}: {b}" for a, b in v.items())
            else:
                lines.append(f"{k}: {v}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


# inputs


def _config(args) -> RunConfig:
    return RunConfig(field=Field.parse(args.field), seed=args.seed, width=args.width, format=args.format)


def _load(args):
    if not getattr(args, "input", None):
        return None
    ws = dio.load(args.input)
    if not args.name:
        if len(ws.entries) != 1:
            raise UsageError("--name is required when the workspace has several entries")
        return next(iter(ws.entries.values()))
    return ws[args.name]


def _morphism(args, cfg: RunConfig):
    obj = _load(args)
    if obj is None:
        return random_morphism(cfg.field, cfg.seed, cfg.max_dim, cfg.amplitude)
    if not isinstance(obj, Representation) or obj.shape != chain_poset(1):
        raise UsageError("expected a representation of [1]")
    return obj.maps[(0, 1)]


def _rep_on(args, cfg: RunConfig, shape) -> Representation:
    obj = _load(args)
    if obj is None:
        return random_rep(shape, cfg.max_dim, cfg.amplitude, seed=cfg.seed, field=cfg.field)
    if not isinstance(obj, Representation) or obj.shape != shape:
        raise UsageError(f"expected a representation on {shape!r}")
    return obj


def _weight(name: str, cfg: RunConfig, args) -> bm.Bimodule:
    if getattr(args, "input", None):
        ws = dio.load(args.input)
        if name in ws.entries:
            obj = ws[name]
            if not isinstance(obj, bm.Bimodule):
                raise UsageError(f"{name!r} is not a bimodule")
            return obj
    return bm.named_bimodule(name, cfg.field)


# subcommands


def cmd_kan(args, cfg: RunConfig) -> Report:
    r = Report("kan")
    if args.input:
        ws = dio.load(args.input)
        x = ws[args.name]
        target = ws[args.target]
        pairs = json.loads(args.map) if args.map else [[e, e] for e in map(dio.encode_element, x.shape.elements)]
        u = MonotoneMap(x.shape, target, {dio.decode_element(a): dio.decode_element(b) for a, b in pairs})
    else:
        u = span_inclusion()
        x = random_rep(u.source, cfg.max_dim, cfg.amplitude, seed=cfg.seed, field=cfg.field)
    y = kan.rkan(u, x) if args.right else kan.lkan(u, x)
    r.add("direction", "right" if args.right else "left")
    r.add("table", _table_json(y))
    if u.is_embedding():
        unit = kan.rkan_counit(u, x) if args.right else kan.kan_unit(u, x)
        r.check("restriction recovers the input", unit.is_pointwise_quasi_iso())
    r.dot = dio.export_dot(y, "kan")
    return r


def cmd_check_square(args, cfg: RunConfig) -> Report:
    r = Report("check-square")
    obj = _load(args)
    if obj is None:
        gen = {"lkan": samples.lkan_square, "rkan": samples.rkan_square}.get(args.kind)
        x = gen(cfg.seed, cfg.field) if gen else random_rep(square(), cfg.max_dim, cfg.amplitude, seed=cfg.seed,
                                                             field=cfg.field)
    else:
        x = obj
    co, ca = kan.is_cocartesian(x), kan.is_cartesian(x)
    r.add("cocartesian", co)
    r.add("cartesian", ca)
    r.check("stability (cocartesian iff cartesian)", co == ca)
    r.dot = dio.export_dot(x, "square")
    return r


def cmd_check_cube(args, cfg: RunConfig) -> Report:
    r = Report("check-cube")
    obj = _load(args)
    if obj is None:
        x = (samples.star_cube if args.kind == "star" else samples.perturbed_cube)(cfg.seed, 3, cfg.field)
    else:
        x = obj
    a = kan.is_strongly_bicartesian(x)
    b = kan.is_strongly_cocartesian_by_counit(x)
    r.add("all subsquares bicartesian", a)
    r.add("counit from the source star is a quasi-iso", b)
    r.check("criteria agree", a == b)
    r.dot = dio.export_dot(x, "cube")
    return r


def cmd_bp(args, cfg: RunConfig) -> Report:
    r = Report("bp")
    f = _morphism(args, cfg)
    w = stable.barratt_puppe(f, cfg.width)
    rep = stable.window_report(w)
    r.add("elements", len(w.shape))
    r.check("boundary acyclic", not rep["bad_boundary"])
    r.check(f"{rep['squares']} unit squares bicartesian", not rep["bad_squares"])
    r.check("flip symmetry with suspension shift", stable.flip_symmetry_holds(w))
    r.add("table", _table_json(w))
    r.dot = dio.export_dot(w, "barratt_puppe")
    return r


def cmd_octa(args, cfg: RunConfig) -> Report:
    r = Report("octa")
    x = _rep_on(args, cfg, chain_poset(2))
    w = stable.octahedron(x, cfg.width)
    r.check("window exact", stable.window_is_exact(w))
    for name, t in stable.octahedron_triangles(w).items():
        r.check(f"triangle {name} exact", stable.triangle_is_exact(t))
    for name, t in stable.octahedron_mayer_vietoris(w).items():
        r.check(f"Mayer-Vietoris triangle of square {name} exact", stable.triangle_is_exact(t))
    r.dot = dio.export_dot(w, "octahedron")
    return r


def cmd_triangle(args, cfg: RunConfig) -> Report:
    r = Report("triangle")
    f = _morphism(args, cfg)
    for route in ("kan", "compact"):
        t = stable.triangle_of(f, route)
        r.add(f"{route}: cone homology", _complex_json(t.z))
        r.check(f"{route} triangle exact", stable.triangle_is_exact(t))
    return r


def cmd_mv(args, cfg: RunConfig) -> Report:
    r = Report("mv")
    obj = _load(args)
    x = obj if obj is not None else samples.lkan_square(cfg.seed, cfg.field)
    t = stable.mayer_vietoris(x)
    r.add("third term homology", _complex_json(t.z))
    r.check("Mayer-Vietoris triangle exact", stable.triangle_is_exact(t))
    return r


def cmd_sign_check(args, cfg: RunConfig) -> Report:
    r = Report("sign-check")
    f = _morphism(args, cfg)
    s = stable.rotation_sign_check(f, max(cfg.width, 2))
    r.add("ratio", "−identity" if s.is_minus_identity else "not −identity")
    r.check("H(psi2)^-1 H(psi1) = -id", s.is_minus_identity)
    r.check("naturality of the suspension comparison", s.naturality)
    return r


def _orientation(args) -> quivers.AnOrientation:
    return quivers.AnOrientation.parse(args.orientation) if args.orientation != "." else quivers.AnOrientation(())


def cmd_reflect(args, cfg: RunConfig) -> Report:
    r = Report("reflect")
    q = _orientation(args)
    x = _rep_on(args, cfg, q.poset())
    fn = quivers.reflect_minus if args.direction == "minus" else quivers.reflect_plus
    y = fn(q, args.vertex, x, model=args.model)
    back = quivers.reflect_plus if args.direction == "minus" else quivers.reflect_minus
    q2 = quivers.reflect_quiver(q, args.vertex)
    r.add("reflected orientation", str(q2))
    r.add("barcode", _barcode_json(quivers.barcode(q2, y)))
    r.check("reflecting back recovers the input", quivers.same_quiver_tables(q, back(q2, args.vertex, y, args.model), x))
    return r


def cmd_coxeter(args, cfg: RunConfig) -> Report:
    r = Report("coxeter")
    q = _orientation(args)
    x = _rep_on(args, cfg, q.poset())
    seqs = quivers.all_admissible_sink_sequences(q)
    outs = [quivers.coxeter_plus(q, x, s, args.model) for s in seqs]
    r.add("sequences", [list(s) for s in seqs])
    r.add("barcode", _barcode_json(quivers.barcode(q, outs[0])))
    r.check("independent of the sink sequence", all(quivers.same_quiver_tables(q, outs[0], y) for y in outs[1:]))
    r.check("Φ⁻Φ⁺ recovers the input",
            quivers.same_quiver_tables(q, quivers.coxeter_minus(q, outs[0], model=args.model), x))
    return r


def cmd_serre(args, cfg: RunConfig) -> Report:
    r = Report("serre")
    q = _orientation(args)
    x = _rep_on(args, cfg, q.poset())
    s = quivers.serre(q, x, args.model)
    r.add("barcode", _barcode_json(quivers.barcode(q, s)))
    r.check("agrees with the Nakayama functor", quivers.same_quiver_tables(q, s, bm.nakayama(q, x)))
    return r


def cmd_nakayama(args, cfg: RunConfig) -> Report:
    r = Report("nakayama")
    q = _orientation(args)
    x = _rep_on(args, cfg, q.poset())
    y = bm.nakayama(q, x)
    r.add("table", _table_json(y))
    r.add("barcode", _barcode_json(quivers.barcode(q, y)))
    r.dot = dio.export_dot(y, "nakayama")
    return r


def cmd_tensor(args, cfg: RunConfig) -> Report:
    r = Report("tensor")
    m = _weight(args.weight, cfg, args)
    if args.rep:
        x = dio.load(args.input)[args.rep]
    else:
        x = random_rep(m.right, cfg.max_dim, cfg.amplitude, seed=cfg.seed, field=cfg.field)
    y = bm.cancel_tensor(m, x)
    r.add("input", _table_json(x))
    r.add("result", _table_json(y))
    r.dot = dio.export_dot(y, "tensor")
    return r


def cmd_coend(args, cfg: RunConfig) -> Report:
    r = Report("coend")
    m = _weight(args.weight, cfg, args)
    if m.left != m.right:
        raise UsageError("coend needs a bimodule over (A, A)")
    a = m.left
    shape = product(opposite(a), a)
    body = m.body
    objs = {(q1, q2): body.objects[(q2, q1)] for q1, q2 in shape.elements}
    maps = {((p1, p2), (q1, q2)): body.structure_map((p2, p1), (q2, q1)) for (p1, p2), (q1, q2) in shape.covers}
    z = Representation(shape, objs, maps, field=m.field)
    c = bm.coend(z, a)
    r.add("homology", _complex_json(c))
    return r


def cmd_verify_tilting(args, cfg: RunConfig) -> Report:
    r = Report("verify-tilting")
    m, n = _weight(args.first, cfg, args), _weight(args.second, cfg, args)
    rep = bm.verify_invertible(m, n, samples=args.samples, seed=cfg.seed)
    r.check("first ∘ second has the Yoneda table", rep.left_composite_ok)
    r.check("second ∘ first has the Yoneda table", rep.right_composite_ok)
    r.check(f"{len(rep.roundtrips)} random roundtrips", all(ok for _, ok in rep.roundtrips))
    r.add("note", rep.note)
    return r


def cmd_demo(args, cfg: RunConfig) -> Report:
    r = Report("demo")
    f = random_morphism(cfg.field, cfg.seed, 2, 2)
    res = stable.cofiber(f)
    r.check("cofiber comparison is a quasi-iso", is_quasi_iso(res.comparison))
    sq = samples.lkan_square(cfg.seed, cfg.field, 2, 2)
    r.check("lkan square is cartesian", kan.is_cartesian(sq))
    r.check("Barratt-Puppe window exact", stable.window_is_exact(stable.barratt_puppe(f, 2)))
    r.check("rotation sign is -1", stable.rotation_sign_check(f).is_minus_identity)
    cube3 = stable.compact_cof_power(f, 3)
    sx = shift(f.source, 1)
    r.check("cof^3 has the homology of Σx", cube3.source.homology_dims() == sx.homology_dims())
    q = quivers.AnOrientation.parse("<>")
    x = random_rep(q.poset(), 2, 2, seed=cfg.seed, field=cfg.field)
    r.check("Serre ≅ Nakayama on 1 <- 2 -> 3", quivers.same_quiver_tables(q, quivers.serre(q, x), bm.nakayama(q, x)))
    r.check("T_Q_A3 and T_A3_Q are inverse",
            bm.verify_invertible(bm.builtin_weight("T_Q_A3", cfg.field), bm.builtin_weight("T_A3_Q", cfg.field),
                                 samples=2, seed=cfg.seed).passed)
    return r


COMMANDS = {
    "kan": cmd_kan, "check-square": cmd_check_square, "check-cube": cmd_check_cube, "bp": cmd_bp, "octa": cmd_octa,
    "triangle": cmd_triangle, "mv": cmd_mv, "sign-check": cmd_sign_check, "reflect": cmd_reflect,
    "coxeter": cmd_coxeter, "serre": cmd_serre, "nakayama": cmd_nakayama, "tensor": cmd_tensor, "coend": cmd_coend,
    "verify-tilting": cmd_verify_tilting, "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Fp:32003", help="Q or Fp:<p> (default Fp:32003)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--width", type=int, default=2, help="mesh window width")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--input", help="workspace JSON file")
    common.add_argument("--name", help="entry in the workspace")

    p = argparse.ArgumentParser(prog="derivk", description="Exact checks for derived representations of posets.")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kan", parents=[common], help="homotopy Kan extension along a poset map")
    k.add_argument("--target", help="target poset entry (with --input)")
    k.add_argument("--map", help="JSON list of [source, target] element pairs; identity by default")
    k.add_argument("--right", action="store_true", help="right instead of left Kan extension")

    s = sub.add_parser("check-square", parents=[common], help="cocartesian and cartesian tests of a square")
    s.add_argument("--kind", choices=("lkan", "rkan", "random"), default="lkan")
    c = sub.add_parser("check-cube", parents=[common], help="strongly bicartesian 3-cube criteria")
    c.add_argument("--kind", choices=("star", "perturbed"), default="star")
    for name, text in (("bp", "Barratt-Puppe window of a morphism"), ("octa", "refined octahedron of x -> y -> z"),
                       ("triangle", "distinguished triangle of a morphism, both routes"),
                       ("mv", "Mayer-Vietoris triangle of a bicartesian square"),
                       ("sign-check", "rotation sign of the suspension identifications")):
        sub.add_parser(name, parents=[common], help=text)

    quiver = argparse.ArgumentParser(add_help=False)
    quiver.add_argument("--orientation", default=">>", help="string of '>' and '<', e.g. '<>' for 1 <- 2 -> 3")
    quiver.add_argument("--model", choices=("kan", "cone"), default="kan")
    r = sub.add_parser("reflect", parents=[common, quiver], help="reflection functor at a sink or source")
    r.add_argument("--vertex", type=int, required=True)
    r.add_argument("--direction", choices=("minus", "plus"), default="minus",
                   help="minus reflects at a source, plus at a sink")
    sub.add_parser("coxeter", parents=[common, quiver], help="Coxeter functor and sequence independence")
    sub.add_parser("serre", parents=[common, quiver], help="Serre functor against the Nakayama functor")
    sub.add_parser("nakayama", parents=[common, quiver], help="Nakayama functor")

    t = sub.add_parser("tensor", parents=[common], help="canceling tensor product with a weight")
    t.add_argument("weight", help=f"built-in weight ({', '.join(bm.WEIGHT_NAMES)}) or workspace bimodule")
    t.add_argument("--rep", help="workspace representation (random when omitted)")
    e = sub.add_parser("coend", parents=[common], help="coend of a bimodule over (A, A)")
    e.add_argument("weight")
    v = sub.add_parser("verify-tilting", parents=[common], help="check that two bimodules are mutually inverse")
    v.add_argument("first")
    v.add_argument("second")
    v.add_argument("--samples", type=int, default=5)
    sub.add_parser("demo", parents=[common], help="a quick battery of checks")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        report = COMMANDS[args.command](args, cfg)
        print(report.render(cfg.format))
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"derivk {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())

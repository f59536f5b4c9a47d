"""Command-line front end.

Every subcommand prints a short human-readable summary, or with ``--json``
a JSON document with sorted keys and exact rational strings. Domain errors
exit with status 2 and write ``{"error": <name>, "message": ...}`` to stderr.

Models and curves are JSON files (or inline JSON text)::

    model: {"vertices": [{"center": "0", "r": "0"}, {"center": "0", "r": "1"}],
            "edges": [[0, 1, "1"]], "n_lattice": 1}
    curve: {"a": ["0", "1", "0", "0", "(t)"]}

Curve coefficients are factored strings such as ``"-64*(t)*(t + 4/27)"`` or
lists of them, which are summed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import galois, reduction
from .errors import ParseError, TropecError
from .functions import FactoredFunction
from .laplacian import GraphDivisor, SubgraphSelection, edge_slope, laplacian_apply, solve_laplacian
from .skeleton import SkeletonTree, regularize, specialize_divisor, valuation_profile
from .valued import ResidueConfig, fmt_q, to_fraction
from .weierstrass import WeierstrassEquation, construct_s_minimal_twist, minimality_report, parse_function, transform, vertical_profile


def _load_json(arg: str):
    text = arg if arg.lstrip().startswith("{") else Path(arg).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_model(arg: str) -> SkeletonTree:
    try:
        return SkeletonTree.from_json(_load_json(arg))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed model: {exc!r}") from exc


def load_curve(arg: str) -> WeierstrassEquation:
    try:
        return WeierstrassEquation.from_json(_load_json(arg))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed curve: {exc!r}") from exc


def parse_edge(tree: SkeletonTree, text: str) -> int:
    """An edge given by index (``"0"``) or by its endpoints (``"0-1"``)."""
    text = text.strip()
    try:
        if "-" in text:
            a, b = (int(x) for x in text.split("-"))
            return tree.find_edge(a, b)
        k = int(text)
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad edge {text!r}: {exc}") from exc
    if not 0 <= k < len(tree.edges):
        raise ParseError(f"edge index {k} out of range")
    return k


def parse_subgraph(tree: SkeletonTree, text: str) -> SubgraphSelection:
    """Parse ``"vertices=0,1;edges=0-1"`` (either part may be omitted)."""
    verts, edges = set(), set()
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, _, val = part.partition("=")
        items = [x for x in (s.strip() for s in val.split(",")) if x]
        if key.strip() == "vertices":
            try:
                verts.update(int(x) for x in items)
            except ValueError as exc:
                raise ParseError(f"bad vertex list {val!r}") from exc
        elif key.strip() == "edges":
            edges.update(parse_edge(tree, x) for x in items)
        else:
            raise ParseError(f"unknown subgraph key {key!r}")
    for v in verts:
        if not 0 <= v < len(tree.vertices):
            raise ParseError(f"vertex {v} out of range")
    return SubgraphSelection(frozenset(verts), frozenset(edges))


def parse_function_arg(text: str):
    """A factored function; ``;`` separates summands."""
    parts = [p for p in text.split(";") if p.strip()]
    try:
        if len(parts) == 1:
            return FactoredFunction.parse(parts[0]) if parts[0].strip() not in ("0",) else parse_function("0")
        return parse_function(parts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_matrices(text: str, n: int):
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        vals = [int(x) for x in chunk.split(",")]
        if len(vals) != 4:
            raise ParseError(f"matrix {chunk!r} needs four entries a,b,c,d")
        out.append(galois.Sl2Matrix(*vals, n))
    return out


# commands ------------------------------------------------------------------


def cmd_laplacian(args):
    tree = load_model(args.model)
    f = parse_function_arg(args.function)
    div = specialize_divisor(tree, f)
    phi = valuation_profile(tree, f)
    g = tree.graph()
    assert laplacian_apply(g, phi) == div
    slopes = [fmt_q(edge_slope(g, phi, k)) for k in range(len(g.edges))]
    data = {"phi": phi.to_json(), "divisor": div.to_json(), "slopes": slopes}
    text = f"phi = {data['phi']}\ndivisor = {data['divisor']}\nslopes = {slopes}"
    return data, text


def cmd_divisor(args):
    tree = load_model(args.model)
    g = tree.graph()
    if args.function:
        div = specialize_divisor(tree, parse_function_arg(args.function))
        data = {"divisor": div.to_json()}
        return data, f"divisor = {data['divisor']}"
    if args.divisor is None:
        raise ParseError("give --function or --divisor")
    d = GraphDivisor(to_fraction(x) for x in args.divisor.split(","))
    lat = args.lattice or tree.n_lattice
    phi = solve_laplacian(g, d, anchor=args.anchor, lattice=lat)
    data = {"divisor": d.to_json(), "principal": True, "phi": phi.to_json()}
    return data, f"principal; phi = {data['phi']}"


def _maybe_refine(tree, sel, lattice):
    if not lattice or lattice == 1:
        return tree, sel
    ref = regularize(tree, lattice)
    return ref, reduction.refine_selection(tree, ref, sel)


def cmd_reduction_type(args):
    tree = load_model(args.model)
    w = load_curve(args.curve)
    sel = parse_subgraph(tree, args.subgraph)
    tree, sel = _maybe_refine(tree, sel, args.lattice)
    res = reduction.classify(w, tree, sel, ResidueConfig(args.residue_char))
    data = res.to_json()
    return data, f"{data['verdict']} (phi_Delta = {data['evidence']['phi_disc']}, phi_c4 = {data['evidence']['phi_c4']})"


def cmd_minimal_twist(args):
    tree = load_model(args.model)
    w = load_curve(args.curve)
    S = parse_subgraph(tree, args.subgraph).support(tree.graph()) if args.subgraph else None
    res = ResidueConfig(args.residue_char)
    tr = construct_s_minimal_twist(w, tree, S, res)
    wm = transform(w, tr)
    before, after = minimality_report(w, tree, res), minimality_report(wm, tree, res)
    data = {
        "transform": tr.to_json(),
        "curve": wm.to_json(),
        "kappa_before": [fmt_q(k) for k in before.kappa],
        "kappa_after": [fmt_q(k) for k in after.kappa],
        "d": [fmt_q(x) for x in after.d],
    }
    return data, f"u = {data['transform']['u']}\ncurve a = {data['curve']['a']}\nkappa after = {data['kappa_after']}"


def cmd_subdivide(args):
    tree = load_model(args.model)
    n = args.lattice or 1
    ref = regularize(tree, n)
    data = {"model": ref.to_json(), "chains": [list(c) for c in ref.chains]}
    if args.curve:
        w = load_curve(args.curve)
        sel = parse_subgraph(tree, args.subgraph) if args.subgraph else SubgraphSelection(frozenset(range(len(tree.vertices))), frozenset(range(len(tree.edges))))
        types = reduction.classify_on_subdivision(w, tree, sel, n, ResidueConfig(args.residue_char))
        data["types"] = {str(k): v.value for k, v in types.items()}
        prof = vertical_profile(w, ref)
        data["v_disc"] = prof.disc.to_json()
    return data, f"{len(ref.vertices)} vertices, {len(ref.edges)} edges of length 1/{n}"


def cmd_inertia_chain(args):
    ch = galois.inertia_chain(args.length, args.order)
    return ch.to_json(), " ".join(str(x) for x in ch.orders)


def cmd_transvection(args):
    tree = load_model(args.model)
    w = load_curve(args.curve)
    e = parse_edge(tree, args.edge)
    cert = galois.transvection_check(w, tree, e, args.ell, args.group_order, ResidueConfig(args.residue_char), args.image_order)
    data = cert.to_json()
    return data, f"verdict = {cert.verdict}, delta_j = {data['delta_j']}, fiber = {data['predicted_fiber']}"


def cmd_fiber(args):
    count, length = galois.predict_edge_fiber(
        args.reduction, args.group_order, args.ell, args.delta, to_fraction(args.length),
        ResidueConfig(args.residue_char), args.torsion_level, args.image_order,
    )
    return {"count": count, "length": fmt_q(length)}, f"{count} edges of length {fmt_q(length)}"


def cmd_sl2(args):
    n = args.modulus
    if args.action == "order":
        o = galois.sl2_order(n)
        return {"modulus": n, "order": o}, str(o)
    if not args.gens:
        raise ParseError("--gens is required")
    gens = parse_matrices(args.gens, n)
    if args.action == "generate":
        group = galois.generate_subgroup(gens, args.cap)
        return {"modulus": n, "size": len(group), "full": len(group) == galois.sl2_order(n)}, str(len(group))
    ok = galois.check_surjectivity(gens, args.cap)
    lines = [list(galois.fixed_line(g)) for g in gens]
    return {"modulus": n, "surjective": ok, "fixed_lines": lines}, f"surjective = {ok}"


def cmd_tate_q(args):
    if args.phi_j is not None:
        vq = galois.tate_parameter_valuation([to_fraction(args.phi_j)], 0)
    else:
        tree = load_model(args.model)
        w = load_curve(args.curve)
        prof = vertical_profile(w, tree)
        vq = galois.tate_parameter_valuation(prof.j, args.vertex)
    return {"v_q": fmt_q(vq)}, f"v(q) = {fmt_q(vq)}"


def cmd_hasse(args):
    w = load_curve(args.curve)
    h = galois.hasse_invariant(w)
    data = {"hasse": str(h)}
    if args.model:
        data["parity"] = list(galois.hasse_valuation_parity(w, load_model(args.model)))
    return data, f"-c4/c6 = {h}"


def cmd_division_poly(args):
    w = load_curve(args.curve)
    coeffs = galois.division_polynomial(w, args.n, ResidueConfig(args.residue_char))
    text = galois.format_x_polynomial(coeffs)
    return {"n": args.n, "coefficients": [str(c) for c in coeffs], "polynomial": text}, text


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--residue-char", type=int, default=0, help="residue characteristic (0 or a prime >= 5)")

    p = argparse.ArgumentParser(prog="tropec", description="Reduction types of elliptic curves on skeleta of the projective line.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("laplacian", cmd_laplacian, "valuation profile, divisor and slopes of a function")
    sp.add_argument("--model", required=True)
    sp.add_argument("--function", required=True)

    sp = add("divisor", cmd_divisor, "specialized divisor of a function, or solve a Laplacian equation")
    sp.add_argument("--model", required=True)
    sp.add_argument("--function")
    sp.add_argument("--divisor", help="comma-separated coefficients")
    sp.add_argument("--anchor", type=int, default=0)
    sp.add_argument("--lattice", type=int)

    sp = add("reduction-type", cmd_reduction_type, "classify the reduction type on a subgraph")
    sp.add_argument("--model", required=True)
    sp.add_argument("--curve", required=True)
    sp.add_argument("--subgraph", required=True)
    sp.add_argument("--lattice", type=int, help="base change of this ramification degree first")

    sp = add("minimal-twist", cmd_minimal_twist, "S-minimal equation")
    sp.add_argument("--model", required=True)
    sp.add_argument("--curve", required=True)
    sp.add_argument("--subgraph", help="S = vertices of its closure (default: all)")

    sp = add("subdivide", cmd_subdivide, "regular subdivision with per-vertex reduction types")
    sp.add_argument("--model", required=True)
    sp.add_argument("--lattice", "--n", type=int, required=True)
    sp.add_argument("--curve")
    sp.add_argument("--subgraph")

    sp = add("inertia-chain", cmd_inertia_chain, "inertia orders along a subdivided edge")
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--order", type=int, required=True)

    sp = add("transvection", cmd_transvection, "transvection certificate for an edge")
    sp.add_argument("--model", required=True)
    sp.add_argument("--curve", required=True)
    sp.add_argument("--edge", required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--group-order", type=int, required=True)
    sp.add_argument("--image-order", type=int)

    sp = add("fiber", cmd_fiber, "edges above an edge in a torsion cover")
    sp.add_argument("--reduction", required=True, choices=[t.value for t in reduction.ReductionType])
    sp.add_argument("--group-order", type=int, required=True)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--delta", type=int)
    sp.add_argument("--length", default="1")
    sp.add_argument("--torsion-level", type=int)
    sp.add_argument("--image-order", type=int)

    sp = add("sl2", cmd_sl2, "SL2(Z/N) order, subgroup closure, surjectivity check")
    sp.add_argument("action", choices=["order", "generate", "check"])
    sp.add_argument("--modulus", "--ell", type=int, required=True)
    sp.add_argument("--gens", help='matrices "a,b,c,d;a,b,c,d"')
    sp.add_argument("--cap", type=int, default=100_000)

    sp = add("tate-q", cmd_tate_q, "valuation of the Tate parameter")
    sp.add_argument("--model")
    sp.add_argument("--curve")
    sp.add_argument("--vertex", type=int, default=0)
    sp.add_argument("--phi-j", help="use this value of phi_j directly")

    sp = add("hasse", cmd_hasse, "Hasse invariant -c4/c6")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--model")

    sp = add("division-poly", cmd_division_poly, "2- or 3-division polynomial")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--n", type=int, choices=[2, 3], required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data, text = args.func(args)
    except TropecError as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "message": str(exc)}, sort_keys=True) + "\n")
        return 2
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "IOError", "message": str(exc)}, sort_keys=True) + "\n")
        return 2
    if args.json:
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())

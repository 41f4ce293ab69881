"""Command-line interface: consistency checks, twisting, cohomology,
equivalence search, and extension enumeration with machine-readable output.

Exit codes: 0 success, 1 check failed / not equivalent, 2 inconclusive,
64 usage error, 65 malformed input, 70 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import category, compose, consistency, constructions, equivalence, torsor
from .errors import (
    BudgetExceeded,
    GxError,
    InvalidInput,
    MatchFailure,
    NotACocycle,
)
from .groups import (
    AbelianModule,
    Cochain,
    FiniteGroup,
    U1Module,
    cochain_from_json,
    cochain_to_json,
    cohomology,
    phase_to_json,
)

EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _load_theory(path):
    return category.theory_from_json(_load_json(path))


def _parse_group(spec):
    name = spec.strip()
    upper = name.upper()
    if not upper.startswith("Z"):
        raise InvalidInput(f"unknown group spec {spec!r}; use Z2, Z3, Z2x2, ...")
    try:
        factors = [int(part.lstrip("zZ") or "1") for part in upper.split("X")]
    except ValueError as exc:
        raise InvalidInput(f"unknown group spec {spec!r}") from exc
    return FiniteGroup.from_cyclic_factors(factors)


def _load_twist(path, theory):
    module = category.abelian_subgroup(theory)
    blob = _load_json(path)
    return cochain_from_json(blob, theory.group, module)


def _load_coefficients(path, theory, root_order):
    blob = _load_json(path)
    module = U1Module(root_order)
    return cochain_from_json(blob, theory.group, module)


def _root_order(args, theory):
    if getattr(args, "root_order", None):
        return args.root_order
    return torsor.default_root_order(theory)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args):
    theory = _load_theory(args.theory)
    reports = {}
    wanted = args.eq
    if wanted in ("pentagon", "all"):
        reports["pentagon"] = consistency.check_pentagon(
            theory, args.max_defects, args.tol)
    if wanted in ("heptagon", "all"):
        plus, minus = consistency.check_heptagons(theory, args.tol)
        reports["heptagon+"] = plus
        reports["heptagon-"] = minus
    if wanted == "all":
        reports["hexagon"] = consistency.check_hexagon(theory, args.tol)
        reports["eta-assoc"] = consistency.check_eta_associativity(theory, args.tol)
        reports["kappa-sliding"] = consistency.check_kappa_sliding(theory, args.tol)
        reports["structure"] = category.validate(theory, args.tol)
    payload = {
        "theory": args.theory,
        "tolerance": args.tol,
        "reports": {k: (v.to_json() if hasattr(v, "to_json") else v)
                    for k, v in reports.items()},
    }
    worst = max((v.worst_residual for v in reports.values()
                 if hasattr(v, "worst_residual")), default=0.0)
    structure = reports.get("structure", [])
    payload["passed"] = worst < args.tol and not structure
    _emit(payload, args.output)
    return 0 if payload["passed"] else 1


def _cmd_torsor(args):
    theory = _load_theory(args.theory)
    t = _load_twist(args.t, theory)
    order = _root_order(args, theory)
    if args.x:
        x = _load_coefficients(args.x, theory, order)
    elif args.solve_x:
        x = None
    else:
        x = torsor.trivial_coefficients(theory, order)
    out = torsor.apply_torsor(theory, t, x, tol=args.tol, root_order=order)
    _emit(category.theory_to_json(out), args.output)
    return 0


def _cmd_obstruction(args):
    theory = _load_theory(args.theory)
    t = _load_twist(args.t, theory)
    order = _root_order(args, theory)
    orr = torsor.relative_obstruction(theory, t, order, args.tol)
    x = torsor.solve_coefficients_for(orr)
    payload = {
        "obstruction": cochain_to_json(orr),
        "trivial_class": x is not None,
        "coefficients": cochain_to_json(x) if x is not None else None,
    }
    _emit(payload, args.output)
    return 0


def _cmd_compose(args):
    theory = _load_theory(args.theory)
    order = _root_order(args, theory)
    first = torsor.TorsorInput(
        _load_twist(args.t1, theory),
        _load_coefficients(args.x1, theory, order) if args.x1
        else torsor.trivial_coefficients(theory, order))
    second = torsor.TorsorInput(
        _load_twist(args.t2, theory),
        _load_coefficients(args.x2, theory, order) if args.x2
        else torsor.trivial_coefficients(theory, order))
    composite, gauge = compose.compose_torsors(theory, first, second,
                                               args.tol, order)
    payload = {
        "t": cochain_to_json(composite.t),
        "x": cochain_to_json(composite.x),
        "gauge": _gauge_to_json(gauge),
    }
    _emit(payload, args.output)
    return 0


def _gauge_to_json(gauge):
    return {
        "vertex": [{"charges": list(k), "value": phase_to_json(v)}
                   for k, v in sorted(gauge.vertex.items())],
        "sheet": [{"charge": k[0], "element": k[1], "value": phase_to_json(v)}
                  for k, v in sorted(gauge.sheet.items())],
    }


def _cmd_equiv(args):
    first = _load_theory(args.first)
    second = _load_theory(args.second)
    try:
        witness = equivalence.theories_equivalent(first, second, args.budget,
                                                  args.tol)
    except BudgetExceeded as exc:
        _emit({"equivalent": None, "reason": str(exc)}, args.output)
        return 2
    if witness is None:
        _emit({"equivalent": False}, args.output)
        return 1
    relabeling, gauge = witness
    _emit({"equivalent": True,
           "relabeling": list(relabeling.perm),
           "gauge": _gauge_to_json(gauge)}, args.output)
    return 0


def _cmd_cohomology(args):
    group = _parse_group(args.group)
    if args.coeff.lower() == "u1":
        order = args.root_order or math.lcm(group.order, 8)
        module = U1Module(order)
    else:
        factors = [int(x) for x in args.coeff.lower().lstrip("z").split("x")]
        module = AbelianModule(factors, group)
    result = cohomology(group, args.degree, module)
    payload = {
        "group": group.name,
        "degree": args.degree,
        "orders": result.orders,
        "size": result.size,
        "pretty": " x ".join(f"Z{d}" for d in result.orders) or "trivial",
        "representatives": [cochain_to_json(rep) for rep in result.representatives],
    }
    _emit(payload, args.output)
    return 0


def _cmd_build(args):
    if args.kind == "spt":
        group = _parse_group(args.group)
        order = args.root_order or math.lcm(group.order, 8)
        if args.alpha:
            alpha = cochain_from_json(_load_json(args.alpha), group,
                                      U1Module(order))
        else:
            alpha = Cochain.identity(group, 3, U1Module(order))
        theory = constructions.build_spt(group, alpha, args.tol)
    elif args.kind == "trivial-ext":
        group = _parse_group(args.group)
        c0 = _load_theory(args.c0)
        theory = constructions.trivial_extension(c0, group)
    else:
        name = args.kind.replace("-", "_")
        builders = {"toric_code": constructions.toric_code,
                    "semion": constructions.semion,
                    "double_semion": constructions.double_semion,
                    "z4_anyons": constructions.z4_anyons,
                    "fibonacci": constructions.fibonacci}
        if name not in builders:
            raise InvalidInput(f"unknown build target {args.kind!r}")
        theory = builders[name]()
    _emit(category.theory_to_json(theory), args.output)
    return 0


def _cmd_enumerate(args):
    c0 = _load_theory(args.c0)
    group = _parse_group(args.group)
    base = constructions.trivial_extension(c0, group)
    module = category.abelian_subgroup(base)
    order = args.root_order or torsor.default_root_order(base)
    h2 = cohomology(group, 2, module)
    h3 = cohomology(group, 3, U1Module(order))
    entries = []
    theories = []
    for it, tw in enumerate(h2.all_classes()):
        orr = torsor.relative_obstruction(base, tw, order, args.tol)
        base_x = torsor.solve_coefficients_for(orr)
        for ia, alpha in enumerate(h3.all_classes()):
            entry = {"fractionalization_class": it, "defectification_class": ia,
                     "twist": cochain_to_json(tw)}
            if base_x is None:
                entry["obstructed"] = True
                entries.append(entry)
                continue
            entry["obstructed"] = False
            out = torsor.apply_torsor(base, tw, base_x.combine(alpha),
                                      tol=args.tol, root_order=order)
            entry["theory_index"] = len(theories)
            theories.append((entry, out))
            entries.append(entry)
    # collapse by 1-cochain relabelings: compare each pair through the
    # relabel-then-gauge search restricted to abelian translations
    collapse = _collapse_classes(base, module, theories, args.tol)
    payload = {
        "base": c0.metadata.get("name", args.c0),
        "group": group.name,
        "fractionalization_classes": h2.orders,
        "defectification_classes": h3.orders,
        "entries": entries,
        "equivalence_collapse": collapse,
    }
    _emit(payload, args.output)
    return 0


def _collapse_classes(base, module, theories, tol):
    """Group unobstructed outputs under 1-cochain relabel equivalence."""
    zs = []
    grp = base.group
    for values in _cochain_value_grid(module, grp):
        zs.append(Cochain(grp, 1, module, values))
    results = []
    labels = {}
    for idx, (entry, theory) in enumerate(theories):
        if idx in labels:
            continue
        labels[idx] = idx
        group_members = [idx]
        for jdx in range(idx + 1, len(theories)):
            if jdx in labels:
                continue
            other = theories[jdx][1]
            verdict = _one_cochain_equivalent(base, theory, other, zs, tol)
            if verdict is True:
                labels[jdx] = idx
                group_members.append(jdx)
            elif verdict is None:
                results.append({"pair": [idx, jdx], "verdict": "inconclusive"})
        results.append({"class_representative": idx, "members": group_members,
                        "verdict": "collapsed" if len(group_members) > 1
                        else "distinct"})
    return results


def _cochain_value_grid(module, grp):
    import itertools as it

    slots = grp.nonidentity()
    for combo in it.product(module.charges, repeat=len(slots)):
        yield dict(zip([(s,) for s in slots], combo))


def _one_cochain_equivalent(base, first, second, zs, tol):
    from .equivalence import _NonRootRatio, relabel_by_1cochain, solve_gauge_matching

    inconclusive = False
    for z in zs:
        try:
            moved = relabel_by_1cochain(first, z)
        except GxError:
            continue
        if set(moved.fusion_triples()) != set(second.fusion_triples()):
            continue
        if moved.action != second.action:
            continue
        try:
            gauge = solve_gauge_matching(moved, second, tol)
        except _NonRootRatio:
            inconclusive = True
            continue
        if gauge is not None:
            return True
    return None if inconclusive else False


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = _Parser(prog="gxbtc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--root-order", type=int, default=None)
        p.add_argument("--seed", type=int, default=0,
                       help="reserved; every algorithm here is deterministic")
        p.add_argument("--json", action="store_true",
                       help="accepted for compatibility; output is always JSON")
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("check", help="run consistency equations on a theory")
    p.add_argument("theory")
    p.add_argument("--eq", choices=["pentagon", "heptagon", "all"], default="all")
    p.add_argument("--max-defects", type=int, choices=[3, 4], default=4)
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("torsor", help="apply a twist functor to a theory")
    p.add_argument("theory")
    p.add_argument("--t", required=True)
    p.add_argument("--x", default=None)
    p.add_argument("--solve-x", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_torsor)

    p = sub.add_parser("obstruction", help="relative obstruction of a twist")
    p.add_argument("theory")
    p.add_argument("--t", required=True)
    common(p)
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("compose", help="compose two twist functors")
    p.add_argument("theory")
    p.add_argument("--t1", required=True)
    p.add_argument("--x1", default=None)
    p.add_argument("--t2", required=True)
    p.add_argument("--x2", default=None)
    common(p)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("equiv", help="search for a relabel+gauge equivalence")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--budget", type=int, default=10000)
    common(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("cohomology", help="group cohomology via Smith form")
    p.add_argument("--group", required=True)
    p.add_argument("--coeff", required=True,
                   help="'u1' or cyclic factors like 'z2' or 'z2x4'")
    p.add_argument("--degree", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("build", help="build canonical theories")
    p.add_argument("kind", help="spt | trivial-ext | toric-code | semion | "
                   "double-semion | z4-anyons | fibonacci")
    p.add_argument("--group", default="Z2")
    p.add_argument("--alpha", default=None)
    p.add_argument("--c0", default=None)
    common(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("enumerate-extensions",
                       help="twist a trivial extension through all classes")
    p.add_argument("--c0", required=True)
    p.add_argument("--group", required=True)
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args)
    except (InvalidInput, NotACocycle) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except MatchFailure as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    except GxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())

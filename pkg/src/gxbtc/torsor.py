"""Generation of new G-crossed data from a 2-cocycle and a 3-cochain.

The central entry point is :func:`apply_torsor`, which rebuilds every
symbol table of a theory from a fusion-twisting 2-cocycle ``t`` valued in
the abelian identity-sector charges and phase coefficients ``x`` on group
triples.  The relative obstruction measures whether coefficients exist
making the four-defect pentagon close; when its class is trivial,
:func:`solve_cocycleator` produces canonical coefficients.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import consistency
from .category import GxTheory, abelian_subgroup, monodromy
from .errors import (
    InvalidInput,
    NotACocycle,
    RestrictionMismatch,
)
from .groups import (
    DEFAULT_TOL,
    Cochain,
    U1Module,
    cohomologous,
    is_cocycle,
    phase_to_json,
)


def default_root_order(theory):
    module = abelian_subgroup(theory)
    return math.lcm(theory.group.order, max(module.order, 1), 8)


@dataclass
class TorsorInput:
    """Pairing of the fusion-twisting 2-cocycle and phase coefficients."""

    t: Cochain
    x: Cochain

    def validate_for(self, theory, tol=DEFAULT_TOL):
        validate_two_cocycle(theory, self.t, tol)
        if self.x.degree != 3 or self.x.module.kind != "u1":
            raise InvalidInput("phase coefficients must be a U(1) 3-cochain")
        if self.x.group.mult != theory.group.mult:
            raise InvalidInput("coefficient cochain lives on the wrong group")
        return self


def validate_two_cocycle(theory, t, tol=DEFAULT_TOL):
    """Check t is a normalized 2-cochain in A with twisted coboundary 1."""
    if t.degree != 2 or t.module.kind != "charges":
        raise InvalidInput("fusion twist must be a 2-cochain valued in abelian charges")
    if t.group.mult != theory.group.mult:
        raise InvalidInput("fusion twist lives on the wrong group")
    for args in t.support():
        t.module.validate_element(t(*args))
    if not is_cocycle(t):
        raise NotACocycle("fusion twist is not a twisted 2-cocycle")
    return t


def trivial_twist(theory):
    """The identity 2-cochain in the abelian charge module of ``theory``."""
    return Cochain.identity(theory.group, 2, abelian_subgroup(theory))


def trivial_coefficients(theory, root_order=None):
    order = root_order or default_root_order(theory)
    return Cochain.identity(theory.group, 3, U1Module(order))


# ---------------------------------------------------------------------------
# scalar symbol helpers on lines with unique fusion channels


def _f3(theory, a, b, c, d=None):
    """Scalar F symbol with all labels forced by fusion uniqueness."""
    e = theory.translate(a, b)
    f = theory.translate(b, c)
    if d is None:
        d = theory.translate(e, c)
    return theory.f_symbol(a, b, c, d, e, f)


def _r2(theory, a, b):
    return theory.r_symbol(a, b, theory.translate(a, b))


def _u2(theory, k, a, b):
    return theory.u_symbol(k, a, b, theory.translate(a, b))


def charge_transfer(theory, t, g, h):
    """Abelian charge moved through a braid of the twist line."""
    grp = theory.group
    hgh = grp.prod(grp.inverse(h), g, h)
    return theory.translate(theory.dual(t(g, h)), t(h, hgh))


def _transfer_table(theory, t):
    grp = theory.group
    return {(g, h): charge_transfer(theory, t, g, h)
            for g in grp.elements() for h in grp.elements()}


# ---------------------------------------------------------------------------
# twisted tables


def torsored_fusion(theory, t):
    """Fusion triples of the twisted theory; associativity is re-verified."""
    validate_two_cocycle(theory, t)
    triples = set()
    for a, b, c0 in theory.fusion_triples():
        g, h = theory.grade(a), theory.grade(b)
        triples.add((a, b, theory.translate(t(g, h), c0)))
    outcomes = {}
    for a, b, c in triples:
        outcomes.setdefault((a, b), set()).add(c)

    def n(a, b, c):
        return 1 if (a, b, c) in triples else 0

    for a, b, c, d in itertools.product(theory.charges(), repeat=4):
        lhs = sum(n(a, b, e) * n(e, c, d) for e in theory.charges())
        rhs = sum(n(b, c, f) * n(a, f, d) for f in theory.charges())
        if lhs != rhs:
            raise NotACocycle(
                f"twisted fusion is not associative at ({a},{b},{c};{d})")
    return sorted(triples)


def torsored_action(theory, t):
    """Symmetry action on the twisted theory.

    The identity-graded restriction is untouched; defect charges are moved
    by the transported inverse charge transfer.  Compatibility with twisted
    fusion, the homomorphism property, and crossed commutativity are all
    verified before returning.
    """
    grp = theory.group
    q = _transfer_table(theory, t)
    action = {}
    for k in grp.elements():
        kbar = grp.inverse(k)
        perm = []
        for a in theory.charges():
            g = theory.grade(a)
            shift = theory.act(k, theory.dual(q[(g, kbar)]))
            moved = theory.translate(shift, theory.act(k, a))
            # equivalent closed form via the conjugated transfer
            alt = theory.translate(q[(grp.conj(g, k), k)], theory.act(k, a))
            if moved != alt:
                raise InvalidInput(
                    "the two closed forms of the twisted action disagree; "
                    "the twist is not a valid cocycle for this action")
            perm.append(moved)
        action[k] = tuple(perm)
    triples = set(torsored_fusion(theory, t))
    ident = grp.identity
    for a in theory.charges():
        if theory.grade(a) == ident:
            for k in grp.elements():
                if action[k][a] != theory.act(k, a):
                    raise InvalidInput("twisted action moved an untwisted charge")
    for k in grp.elements():
        for a, b, c in triples:
            if (action[k][a], action[k][b], action[k][c]) not in triples:
                raise InvalidInput("twisted action breaks twisted fusion")
        for h in grp.elements():
            combo = tuple(action[h][action[k][a]] for a in theory.charges())
            if combo != action[grp.op(h, k)]:
                raise InvalidInput("twisted action is not a homomorphism")
    for a, b, c in triples:
        g = theory.grade(a)
        if (action[g][b], a, c) not in triples:
            raise InvalidInput("twisted action breaks crossed commutativity")
    return action


def _torsored_f_value(theory, t, x, a, b, c, d, e, f):
    grp = theory.group
    g, h, k = theory.grade(a), theory.grade(b), theory.grade(c)
    t_gh = t(g, h)
    t_hk = t(h, k)
    t_gh_k = t(grp.op(g, h), k)
    t_g_hk = t(g, grp.op(h, k))
    gt_hk = theory.act(g, t_hk)
    dual = theory.dual
    tr = theory.translate
    e1 = tr(dual(t_gh), e)
    f1 = tr(dual(t_hk), f)
    a1 = tr(gt_hk, a)
    d1 = tr(dual(t_gh_k), d)
    d2 = tr(dual(t_gh), d1)
    d3 = tr(dual(t_g_hk), d)
    value = theory.f_symbol(t_gh, e1, c, d1, e, d2)
    value = value * theory.f_symbol(a, b, c, d2, e1, f1)
    value = value * theory.f_symbol(
        t_gh_k, t_gh, d2, d, theory.fuse_abelian(t_gh_k, t_gh), d1).conjugate()
    value = value * theory.f_symbol(
        t_g_hk, gt_hk, d2, d, theory.fuse_abelian(t_g_hk, gt_hk), tr(gt_hk, d2))
    value = value * theory.f_symbol(gt_hk, a, f1, d3, a1, d2).conjugate()
    value = value * theory.r_symbol(gt_hk, a, a1).conjugate()
    value = value * theory.f_symbol(a, t_hk, f1, d3, a1, f)
    return value * x(g, h, k)


def torsored_f(theory, t, x, triples=None):
    """F table of the twisted theory, keyed on twisted fusion tuples."""
    if triples is None:
        triples = torsored_fusion(theory, t)
    triple_set = set(triples)
    outcomes = {}
    for a, b, c in triples:
        outcomes.setdefault((a, b), []).append(c)
    table = {}
    for a, b, e in triples:
        for c in theory.charges():
            for d in outcomes.get((e, c), ()):
                for f in outcomes.get((b, c), ()):
                    if (a, f, d) in triple_set:
                        table[(a, b, c, d, e, f)] = _torsored_f_value(
                            theory, t, x, a, b, c, d, e, f)
    return table


def torsored_r(theory, t, triples=None):
    """R table of the twisted theory."""
    if triples is None:
        triples = torsored_fusion(theory, t)
    grp = theory.group
    q = _transfer_table(theory, t)
    dual = theory.dual
    tr = theory.translate
    table = {}
    for a, b, c in triples:
        g, h = theory.grade(a), theory.grade(b)
        hgh = grp.prod(grp.inverse(h), g, h)
        q_gh = q[(g, h)]
        t_gh = t(g, h)
        a1 = tr(dual(q_gh), a)
        c1 = tr(dual(t(h, hgh)), c)
        c2 = tr(dual(t_gh), c)
        value = theory.r_symbol(a1, b, c1)
        value = value * theory.f_symbol(
            t_gh, q_gh, c1, c, theory.fuse_abelian(t_gh, q_gh), tr(q_gh, c1))
        value = value * theory.f_symbol(q_gh, a1, b, c2, a, c1).conjugate()
        table[(a, b, c)] = value
    return table


def _torsored_u_value(theory, t, x, q, k, a, b, c):
    grp = theory.group
    g, h = theory.grade(a), theory.grade(b)
    kbar = grp.inverse(k)
    kgk = grp.prod(kbar, g, k)
    khk = grp.prod(kbar, h, k)
    gh = grp.op(g, h)
    gk = grp.op(g, k)
    dual = theory.dual
    tr = theory.translate
    t_gh = t(g, h)
    kt = theory.act(k, t(kgk, khk))
    gt_hk = theory.act(g, t(h, k))
    gq_hk = theory.act(g, q[(h, k)])
    a1 = tr(dual(q[(g, k)]), a)
    b1 = tr(dual(q[(h, k)]), b)
    c1 = tr(dual(q[(gh, k)]), c)
    c2 = tr(dual(t_gh), c)
    c3 = tr(dual(kt), c1)
    c4 = tr(theory.act(g, dual(q[(h, k)])), c2)
    qa = tr(gq_hk, a)
    value = theory.u_symbol(k, a1, b1, c3)
    value = value * theory.u_symbol(k, kt, c3, c1)
    value = value * _u2(theory, g, gt_hk, gq_hk)
    value = value * _r2(theory, gq_hk, a).conjugate()
    value = value * theory.f_symbol(q[(g, k)], a1, b1, c4, a, c3).conjugate()
    value = value * theory.f_symbol(gq_hk, a, b1, c2, qa, c4).conjugate()
    value = value * theory.f_symbol(a, q[(h, k)], b1, c2, qa, b)
    num = (_f3(theory, theory.fuse_abelian(t(gk, khk), t(g, k)), q[(g, k)], c3)
           * _f3(theory, t(g, grp.op(h, k)), gt_hk, gq_hk)
           * _f3(theory, theory.fuse_abelian(gt_hk, t(g, grp.op(h, k))), gq_hk, c4)
           * _f3(theory, t(gh, k), t_gh, c2))
    den = (_f3(theory, t(k, grp.prod(kbar, gh, k)), kt, c3)
           * _f3(theory, t(gk, khk), t(g, k), q[(g, k)])
           * _f3(theory, t(gh, k), q[(gh, k)], c1))
    value = value * (num / den)
    return value * (x(g, k, khk) / (x(g, h, k) * x(k, kgk, khk)))


def torsored_u(theory, t, x, triples=None):
    """Sheet-over-vertex table of the twisted theory."""
    if triples is None:
        triples = torsored_fusion(theory, t)
    q = _transfer_table(theory, t)
    return {(k, a, b, c): _torsored_u_value(theory, t, x, q, k, a, b, c)
            for k in theory.group.elements() for a, b, c in triples}


def _torsored_eta_value(theory, t, x, q, xc, g, h):
    grp = theory.group
    k = theory.grade(xc)
    gh = grp.op(g, h)
    gkg = grp.prod(grp.inverse(g), k, g)
    hgkgh = grp.prod(grp.inverse(h), gkg, h)
    dual = theory.dual
    tr = theory.translate
    t_gh = t(g, h)
    x1 = tr(dual(q[(k, gh)]), xc)
    x2 = tr(dual(q[(k, g)]), xc)
    x3 = tr(t_gh, x1)
    gt = theory.act(g, t(gkg, h))
    gq = theory.act(g, q[(gkg, h)])
    value = theory.eta_symbol(x1, g, h)
    value = value * theory.u_symbol(g, gq, x1, tr(gq, x1))
    value = value / _u2(theory, g, gt, gq)
    value = value * _r2(theory, theory.act(k, t_gh), xc)
    value = value * _r2(theory, x1, t_gh)
    num = (_f3(theory, t(grp.op(k, g), h), t(k, g), q[(k, g)])
           * _f3(theory, t(g, grp.op(gkg, h)), gt, gq)
           * _f3(theory, t(gh, hgkgh), t_gh, x1)
           * _f3(theory, t(k, gh), q[(k, gh)], x3))
    den = (_f3(theory, t(k, gh), theory.act(k, t_gh), xc)
           * _f3(theory, theory.fuse_abelian(t(grp.op(k, g), h), t(k, g)),
                 q[(k, g)], x2)
           * _f3(theory, theory.fuse_abelian(t(g, grp.op(gkg, h)), gt), gq, x1)
           * _f3(theory, q[(k, gh)], x1, t_gh))
    value = value * (num / den)
    return value * (x(g, gkg, h) / (x(g, h, hgkgh) * x(k, g, h)))


def torsored_eta(theory, t, x, tol=DEFAULT_TOL):
    """Local projective phases of the twisted theory.

    Identity-graded charges take the closed form eta * monodromy with the
    twist value; the general contraction is still evaluated there and must
    agree within ``tol``.
    """
    grp = theory.group
    q = _transfer_table(theory, t)
    ident = grp.identity
    table = {}
    for xc in theory.charges():
        trivially_graded = theory.grade(xc) == ident
        for g in grp.elements():
            for h in grp.elements():
                general = _torsored_eta_value(theory, t, x, q, xc, g, h)
                if trivially_graded:
                    closed = theory.eta_symbol(xc, g, h) * monodromy(
                        theory, xc, t(g, h))
                    if abs(general - closed) > tol:
                        raise RestrictionMismatch(
                            f"eta restriction failed at ({xc},{g},{h}): "
                            f"{general} vs {closed}")
                    table[(xc, g, h)] = closed
                else:
                    table[(xc, g, h)] = general
    return table


# ---------------------------------------------------------------------------
# obstruction


def relative_obstruction(theory, t, root_order=None, tol=DEFAULT_TOL,
                         check_preconditions=True):
    """Failure phase of the four-defect pentagon induced by the twist.

    Returns a normalized U(1) 4-cochain, verified to be closed.
    """
    validate_two_cocycle(theory, t)
    if check_preconditions:
        worst = consistency.base_theory_torsorable(theory, tol)
        if worst > tol:
            raise InvalidInput(
                f"theory is not consistent enough to twist (residual {worst})")
    grp = theory.group
    order = root_order or default_root_order(theory)
    q = _transfer_table(theory, t)

    def value(g, h, k, l):
        gh = grp.op(g, h)
        hk = grp.op(h, k)
        kl = grp.op(k, l)
        hkl = grp.op(h, kl)
        ghk = grp.op(g, hk)
        t_gh = t(g, h)
        ght_kl = theory.act(gh, t(k, l))
        val = theory.eta_symbol(ght_kl, g, h)
        val = val * _u2(theory, g, theory.act(g, t(h, kl)), ght_kl)
        val = val / _u2(theory, g, theory.act(g, t(hk, l)), theory.act(g, t(h, k)))
        val = val * _r2(theory, ght_kl, t_gh)
        val = val * (_f3(theory, t(gh, kl), t_gh, ght_kl)
                     / _f3(theory, t(gh, kl), ght_kl, t_gh))
        val = val * (_f3(theory, t(g, hkl), theory.act(g, t(hk, l)),
                         theory.act(g, t(h, k)))
                     / _f3(theory, t(g, hkl), theory.act(g, t(h, kl)), ght_kl))
        val = val * (_f3(theory, t(ghk, l), t(gh, k), t_gh)
                     / _f3(theory, t(ghk, l), t(g, hk), theory.act(g, t(h, k))))
        return val

    entries = {}
    for args in itertools.product(grp.elements(), repeat=4):
        entries[args] = value(*args)
    cochain = Cochain(grp, 4, U1Module(order), entries)
    if not is_cocycle(cochain, max(tol, 1e-7)):
        raise NotACocycle("relative obstruction came out non-closed; "
                          "the input theory is inconsistent")
    return cochain


def solve_cocycleator(theory, t, root_order=None, tol=DEFAULT_TOL):
    """Canonical coefficients with coboundary inverse to the obstruction.

    Returns None when the obstruction class is nontrivial.  The canonical
    choice pins all free Smith-basis coordinates to zero, so identical
    inputs give identical coefficients.
    """
    orr = relative_obstruction(theory, t, root_order, tol)
    return solve_coefficients_for(orr)


def solve_coefficients_for(obstruction):
    """Solve d(x) = obstruction^{-1} for a U(1) 4-cochain, if possible."""
    target = obstruction.inverse()
    ident = Cochain.identity(obstruction.group, 4, obstruction.module)
    return cohomologous(target, ident)


# ---------------------------------------------------------------------------
# assembly


def apply_torsor(theory, t, x=None, tol=DEFAULT_TOL, root_order=None,
                 check_preconditions=True):
    """Assemble the fully twisted theory.

    ``x`` defaults to the canonical solution of the four-defect pentagon
    condition; pass explicit coefficients (for example a 3-cocycle times a
    known solution) to land elsewhere on the coefficient torsor.  The
    resulting obstruction data is recorded in the metadata.
    """
    validate_two_cocycle(theory, t)
    if check_preconditions:
        worst = consistency.base_theory_torsorable(theory, tol)
        if worst > tol:
            raise InvalidInput(
                f"theory is not consistent enough to twist (residual {worst})")
    order = root_order or default_root_order(theory)
    orr = relative_obstruction(theory, t, order, tol, check_preconditions=False)
    if x is None:
        x = solve_coefficients_for(orr)
        if x is None:
            raise NotACocycle(
                "the relative obstruction class is nontrivial; "
                "no coefficients make the twisted theory consistent")
    triples = torsored_fusion(theory, t)
    action = torsored_action(theory, t)
    new_f = torsored_f(theory, t, x, triples)
    new_r = torsored_r(theory, t, triples)
    new_u = torsored_u(theory, t, x, triples)
    new_eta = torsored_eta(theory, t, x, tol)
    base_obstruction = consistency.defectification_obstruction(
        theory, tol, root_order=order)
    hatted = x.coboundary().combine(orr).combine(base_obstruction)
    metadata = dict(theory.metadata)
    metadata["name"] = metadata.get("name", "theory") + "~twisted"
    metadata["obstruction"] = {
        "entries": [{"args": list(args), "value": phase_to_json(hatted(*args))}
                    for args in sorted(hatted.entries)],
        "trivial_class": _is_trivial_class(hatted),
    }
    return GxTheory(theory.group, theory.grades, theory.vacuum, triples,
                    new_f, new_r, new_u, new_eta, action, metadata=metadata)


def _is_trivial_class(cochain):
    ident = Cochain.identity(cochain.group, cochain.degree, cochain.module)
    try:
        return cohomologous(cochain, ident) is not None
    except Exception:
        return None

"""Composition of two twist functors into one, up to an explicit gauge.

Applying two twists in sequence equals applying their pointwise product
with corrected phase coefficients, conjugated by a computable gauge.  The
correction and gauge are closed-form contractions of base-theory symbols
on the twist lines.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .category import abelian_subgroup, monodromy
from .equivalence import GaugeTransform
from .errors import InvalidInput, NotAbelianMonodromy
from .groups import DEFAULT_TOL, Cochain, U1Module
from .torsor import (
    TorsorInput,
    _f3,
    _r2,
    _u2,
    charge_transfer,
    torsored_action,
    torsored_fusion,
    validate_two_cocycle,
)


def _twist_product(theory, t1, t2):
    module = t1.module
    return Cochain.from_function(
        theory.group, 2, module,
        lambda g, h: theory.translate(t1(g, h), t2(g, h)))


def correction_coefficients(theory, t1, t2, root_order=None):
    """Phase correction for composing the ``t1`` twist followed by ``t2``.

    Multiplies the naive product of the two coefficient cochains in the
    composite functor.
    """
    grp = theory.group
    act = theory.act
    tr = theory.translate

    def value(g, h, k):
        gh = grp.op(g, h)
        hk = grp.op(h, k)
        t2_hk_g = act(g, t2(h, k))
        t1_hk_g = act(g, t1(h, k))
        val = 1.0 / _u2(theory, g, t2_hk_g, t1_hk_g)
        # the phantom reordering braids clockwise: inverse braid symbols
        val = val * (_r2(theory, t2(g, h), t1(gh, k))
                     / _r2(theory, t2_hk_g, t1(g, hk))).conjugate()
        num1 = _f3(theory, t2(gh, k), t1(gh, k), t2(g, h))
        den1 = _f3(theory, tr(t2(gh, k), t1(gh, k)), t2(g, h), t1(g, h))
        num2 = (_f3(theory, tr(t2(g, h), t2(gh, k)), t1(gh, k), t1(g, h))
                * _f3(theory, t2(g, hk), t2_hk_g, t1(g, hk))
                * _f3(theory, tr(t2(g, hk), t1(g, hk)), t2_hk_g, t1_hk_g))
        den2 = (_f3(theory, t2(gh, k), t2(g, h), t1(gh, k))
                * _f3(theory, tr(t2(g, h), t2(gh, k)), t1(g, hk), t1_hk_g)
                * _f3(theory, t2(g, hk), t1(g, hk), t2_hk_g))
        return val * (num1 / den1) * (num2 / den2)

    entries = {}
    for args in itertools.product(grp.elements(), repeat=3):
        entries[args] = value(*args)
    order = root_order or math.lcm(grp.order, max(abelian_subgroup(theory).order, 1), 8)
    return Cochain(grp, 3, U1Module(order), entries)


def composition_gauge(theory, t1, t2):
    """Gauge conjugating the single composite twist into the sequence."""
    grp = theory.group
    tr = theory.translate
    dual = theory.dual
    t = _twist_product(theory, t1, t2)
    q = {(g, h): charge_transfer(theory, t, g, h)
         for g in grp.elements() for h in grp.elements()}
    q1 = {(g, h): charge_transfer(theory, t1, g, h)
          for g in grp.elements() for h in grp.elements()}
    q2 = {(g, h): charge_transfer(theory, t2, g, h)
          for g in grp.elements() for h in grp.elements()}
    vertex = {}
    for a, b, e in torsored_fusion(theory, t):
        g, h = theory.grade(a), theory.grade(b)
        shifted = tr(dual(t(g, h)), e)
        ee = tr(t2(g, h), tr(t1(g, h), shifted))
        val = _f3(theory, t2(g, h), t1(g, h), shifted, d=ee)
        vertex[(a, b, e)] = val.conjugate()
    sheet = {}
    for a in theory.charges():
        g = theory.grade(a)
        for h in grp.elements():
            hgh = grp.prod(grp.inverse(h), g, h)
            # same clockwise phantom braid chirality as in the correction
            val = 1.0 / _r2(theory, q2[(g, h)], t1(g, h)).conjugate()
            num = (_f3(theory, t2(g, h), q2[(g, h)], t1(g, h))
                   * _f3(theory, t(g, h), q2[(g, h)], q1[(g, h)]))
            den = (_f3(theory, t2(h, hgh), t1(g, h), q1[(g, h)])
                   * _f3(theory, t2(g, h), t1(g, h), q2[(g, h)]))
            shifted = tr(dual(q[(g, h)]), a)
            e_lab = tr(q2[(g, h)], q1[(g, h)])
            f_lab = tr(q1[(g, h)], shifted)
            last = theory.f_symbol(q2[(g, h)], q1[(g, h)], shifted, a,
                                   e_lab, f_lab)
            sheet[(a, h)] = val * (num / den) * last
    return GaugeTransform(vertex, sheet)


def compose_torsors(theory, first, second, tol=DEFAULT_TOL, root_order=None):
    """Composite input and gauge for two twist functors applied in order.

    ``first`` is applied to ``theory``; ``second`` to the result.  The
    second twist acts on the intermediate theory, but its cocycle condition
    only sees the action restricted to the abelian identity sector, which
    twisting never changes; checking against the base action is therefore
    exact, not an approximation.  The restriction is asserted anyway.
    """
    validate_two_cocycle(theory, first.t, tol)
    validate_two_cocycle(theory, second.t, tol)
    mid_action = torsored_action(theory, first.t)
    for a in second.t.module.charges:
        for g in theory.group.elements():
            if mid_action[g][a] != theory.act(g, a):
                raise InvalidInput(
                    "intermediate action moved an abelian identity-sector "
                    "charge; the composite twist is ill-defined")
    t = _twist_product(theory, first.t, second.t)
    correction = correction_coefficients(theory, first.t, second.t, root_order)
    x = first.x.combine(second.x).combine(correction)
    gauge = composition_gauge(theory, first.t, second.t)
    return TorsorInput(t, x), gauge


@dataclass
class CommutatorResult:
    """Reordering class of two twists plus its explicit coboundary witness."""

    cochain: Cochain
    witness: Cochain
    residual: float


def commutator_class(theory, t1, t2, tol=DEFAULT_TOL, root_order=None):
    """Monodromy 3-cocycle comparing the two orders of twist application.

    Verifies that swapping the order shifts the correction coefficients by
    this cocycle times the coboundary of the pairwise-monodromy 1-witness.
    """
    validate_two_cocycle(theory, t1, tol)
    validate_two_cocycle(theory, t2, tol)
    grp = theory.group
    order = root_order or math.lcm(grp.order, max(abelian_subgroup(theory).order, 1), 8)

    def mono(a, b):
        try:
            return monodromy(theory, a, b)
        except NotAbelianMonodromy as exc:
            raise NotAbelianMonodromy(
                f"twist lines ({a},{b}) have no abelian monodromy") from exc

    def value(g, h, k):
        gh = grp.op(g, h)
        hk = grp.op(h, k)
        return (mono(t1(g, h), t2(gh, k))
                / mono(theory.act(g, t1(h, k)), t2(g, hk)))

    entries = {}
    for args in itertools.product(grp.elements(), repeat=3):
        entries[args] = value(*args)
    cochain = Cochain(grp, 3, U1Module(order), entries)
    xi = Cochain.from_function(
        grp, 2, U1Module(order), lambda g, h: mono(t1(g, h), t2(g, h)))
    y12 = correction_coefficients(theory, t1, t2, order)
    y21 = correction_coefficients(theory, t2, t1, order)
    shifted = cochain.combine(xi.coboundary()).combine(y12)
    residual = 0.0
    for args in shifted.support():
        residual = max(residual, abs(y21(*args) - shifted(*args)))
    return CommutatorResult(cochain, xi, residual)

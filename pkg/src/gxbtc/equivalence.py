"""Gauge transformations, relabelings, and equivalence searches.

Gauge matching between two theories with identical fusion reduces to a
linear system for phase exponents: vertex phases and per-charge sheet
phases enter every table multiplicatively.  The solver works over the
circle group exactly (rational turns), so unsolvability is a proof of
inequivalence rather than a search failure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import intlin
from .category import GxTheory, abelian_subgroup
from .errors import (
    BudgetExceeded,
    GradeViolation,
    InvalidInput,
    MatchFailure,
    NotA1Cocycle,
)
from .groups import (
    DEFAULT_TOL,
    Cochain,
    U1Module,
    is_cocycle,
    snap_turns,
    turn_phase,
    validate_cocycle,
)
from .torsor import _f3, _r2, _u2, apply_torsor


@dataclass
class GaugeTransform:
    """Vertex phases on splitting spaces plus sheet-action phases.

    ``vertex`` maps admissible (a, b, c) to a unit phase; ``sheet`` maps
    (charge, group element) pairs.  Missing entries default to 1, and the
    vacuum-line conventions are enforced on construction.
    """

    vertex: dict = field(default_factory=dict)
    sheet: dict = field(default_factory=dict)

    def gamma(self, a, b, c):
        return self.vertex.get((a, b, c), complex(1.0))

    def phase(self, a, g):
        return self.sheet.get((a, g), complex(1.0))

    def validate(self, theory, tol=DEFAULT_TOL):
        vac = theory.vacuum
        ident = theory.group.identity
        ref = self.gamma(vac, vac, vac)
        for a in theory.charges():
            if abs(self.gamma(a, vac, a) - ref) > tol \
                    or abs(self.gamma(vac, a, a) - ref) > tol:
                raise InvalidInput("vertex phases break the vacuum-line rules")
            if abs(self.phase(a, ident) - 1.0) > tol:
                raise InvalidInput("sheet phase at the identity must be 1")
        for g in theory.group.elements():
            if abs(self.phase(vac, g) - 1.0) > tol:
                raise InvalidInput("sheet phase of the vacuum must be 1")
        return self

    def is_trivial(self, tol=DEFAULT_TOL):
        return all(abs(v - 1.0) <= tol for v in self.vertex.values()) and \
            all(abs(v - 1.0) <= tol for v in self.sheet.values())


def identity_gauge():
    return GaugeTransform()


def apply_gauge(theory, gauge, tol=DEFAULT_TOL):
    """Transform all symbol tables by a gauge; fusion and action unchanged."""
    gauge.validate(theory, tol)
    grp = theory.group
    gm = gauge.gamma
    ph = gauge.phase
    new_f = {}
    for (a, b, c, d, e, f), val in theory.f_entries().items():
        new_f[(a, b, c, d, e, f)] = (gm(a, b, e) * gm(e, c, d)
                                     * val
                                     * gm(b, c, f).conjugate()
                                     * gm(a, f, d).conjugate())
    new_r = {}
    for (a, b, c), val in theory.r_entries().items():
        h = theory.grade(b)
        moved = theory.act(grp.inverse(h), a)
        new_r[(a, b, c)] = (gm(b, moved, c) * val * gm(a, b, c).conjugate()
                            * ph(a, h))
    new_u = {}
    for (k, a, b, c), val in theory.u_entries().items():
        kbar = grp.inverse(k)
        new_u[(k, a, b, c)] = (
            gm(theory.act(kbar, a), theory.act(kbar, b), theory.act(kbar, c))
            * val * gm(a, b, c).conjugate()
            * ph(a, k) * ph(b, k) * ph(c, k).conjugate())
    new_eta = {}
    for (x, g, h), val in theory.eta_entries().items():
        xg = theory.act(grp.inverse(g), x)
        new_eta[(x, g, h)] = (val * ph(x, grp.op(g, h))
                              * ph(xg, h).conjugate() * ph(x, g).conjugate())
    meta = dict(theory.metadata)
    return theory.replace(f=new_f, r=new_r, u=new_u, eta=new_eta, metadata=meta)


# ---------------------------------------------------------------------------
# relabelings


@dataclass(frozen=True)
class Relabeling:
    """Grade-preserving permutation of charge labels."""

    perm: tuple

    def __call__(self, a):
        return self.perm[a]

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return Relabeling(tuple(inv))

    def validate(self, theory):
        if sorted(self.perm) != list(theory.charges()):
            raise InvalidInput("relabeling is not a permutation of the charges")
        for a in theory.charges():
            if theory.grade(self.perm[a]) != theory.grade(a):
                raise GradeViolation(
                    f"relabeling moves charge {a} across grades")
        return self


def relabel(theory, relabeling):
    """Conjugate every table by a grade-preserving permutation."""
    relabeling.validate(theory)
    perm = relabeling.perm
    inv = relabeling.inverse().perm
    fusion = [(perm[a], perm[b], perm[c]) for a, b, c in theory.fusion_triples()]
    f = {(perm[a], perm[b], perm[c], perm[d], perm[e], perm[ff]): val
         for (a, b, c, d, e, ff), val in theory.f_entries().items()}
    r = {(perm[a], perm[b], perm[c]): val
         for (a, b, c), val in theory.r_entries().items()}
    u = {(k, perm[a], perm[b], perm[c]): val
         for (k, a, b, c), val in theory.u_entries().items()}
    eta = {(perm[x], g, h): val for (x, g, h), val in theory.eta_entries().items()}
    action = {g: tuple(perm[theory.act(g, inv[a])] for a in theory.charges())
              for g in theory.group.elements()}
    meta = dict(theory.metadata)
    return GxTheory(theory.group, theory.grades, perm[theory.vacuum], fusion,
                    f, r, u, eta, action, metadata=meta)


def relabeling_from_1cochain(theory, z):
    """The permutation a_g -> z(g) x a_g."""
    if z.degree != 1 or z.module.kind != "charges":
        raise InvalidInput("relabelings come from 1-cochains in abelian charges")
    perm = tuple(theory.translate(z(theory.grade(a)), a) for a in theory.charges())
    return Relabeling(perm).validate(theory)


def relabel_by_1cochain(theory, z):
    return relabel(theory, relabeling_from_1cochain(theory, z))


# ---------------------------------------------------------------------------
# exact gauge solving


class _NonRootRatio(Exception):
    """A table ratio is off the root-of-unity lattice; cannot decide exactly."""


def _phase_ratio_turns(target, source, snap_tol=1e-9):
    """Ratio as an exact fraction of a turn; None if magnitudes differ.

    Magnitude mismatch soundly refutes a gauge (magnitudes are invariant);
    an unsnappable phase ratio is merely undecidable here and raises.
    """
    if abs(abs(target) - abs(source)) > snap_tol:
        return None
    turns = snap_turns(target / source, max_denominator=96, snap_tol=1e-7)
    if turns is None:
        raise _NonRootRatio(f"ratio {target / source!r} is not a small root of unity")
    return turns


def solve_gauge_matching(source, target, tol=DEFAULT_TOL):
    """Gauge with apply_gauge(source, gauge) == target, or None.

    Both theories must share fusion, grades, and action.  The returned
    None is a proof of gauge-inequivalence whenever every table ratio is a
    phase; a non-phase ratio also rules a gauge out (magnitudes are gauge
    invariant).
    """
    if source.grades != target.grades or source.action != target.action \
            or set(source.fusion_triples()) != set(target.fusion_triples()):
        return None
    grp = source.group
    vac = source.vacuum
    ident = grp.identity
    vertex_ids = {}
    for trip in source.fusion_triples():
        a, b, c = trip
        if a == vac or b == vac:
            continue  # pinned to 1 by the vacuum-line convention
        vertex_ids[trip] = len(vertex_ids)
    sheet_ids = {}
    for a in source.charges():
        if a == vac:
            continue
        for g in grp.elements():
            if g == ident:
                continue
            sheet_ids[(a, g)] = len(vertex_ids) + len(sheet_ids)
    total = len(vertex_ids) + len(sheet_ids)

    rows = {}

    def emit(coeffs, rhs):
        # accumulate sparse integer rows, deduplicating identical patterns
        pattern = tuple(sorted((i, c) for i, c in coeffs.items() if c))
        if pattern in rows:
            if rows[pattern] != rhs:
                return False
        else:
            rows[pattern] = rhs
        return True

    def vertex_coeff(coeffs, trip, sign):
        if trip in vertex_ids:
            coeffs[vertex_ids[trip]] = coeffs.get(vertex_ids[trip], 0) + sign

    def sheet_coeff(coeffs, key, sign):
        if key in sheet_ids:
            coeffs[sheet_ids[key]] = coeffs.get(sheet_ids[key], 0) + sign

    for key, sval in source.f_entries().items():
        a, b, c, d, e, f = key
        ratio = _phase_ratio_turns(target.f_entries()[key], sval)
        if ratio is None:
            return None
        coeffs = {}
        vertex_coeff(coeffs, (a, b, e), 1)
        vertex_coeff(coeffs, (e, c, d), 1)
        vertex_coeff(coeffs, (b, c, f), -1)
        vertex_coeff(coeffs, (a, f, d), -1)
        if not emit(coeffs, ratio):
            return None
    for key, sval in source.r_entries().items():
        a, b, c = key
        h = source.grade(b)
        ratio = _phase_ratio_turns(target.r_entries()[key], sval)
        if ratio is None:
            return None
        coeffs = {}
        vertex_coeff(coeffs, (b, source.act(grp.inverse(h), a), c), 1)
        vertex_coeff(coeffs, (a, b, c), -1)
        sheet_coeff(coeffs, (a, h), 1)
        if not emit(coeffs, ratio):
            return None
    for key, sval in source.u_entries().items():
        k, a, b, c = key
        kbar = grp.inverse(k)
        ratio = _phase_ratio_turns(target.u_entries()[key], sval)
        if ratio is None:
            return None
        coeffs = {}
        vertex_coeff(coeffs, (source.act(kbar, a), source.act(kbar, b),
                              source.act(kbar, c)), 1)
        vertex_coeff(coeffs, (a, b, c), -1)
        sheet_coeff(coeffs, (a, k), 1)
        sheet_coeff(coeffs, (b, k), 1)
        sheet_coeff(coeffs, (c, k), -1)
        if not emit(coeffs, ratio):
            return None
    for key, sval in source.eta_entries().items():
        x, g, h = key
        ratio = _phase_ratio_turns(target.eta_entries()[key], sval)
        if ratio is None:
            return None
        coeffs = {}
        sheet_coeff(coeffs, (x, grp.op(g, h)), 1)
        sheet_coeff(coeffs, (source.act(grp.inverse(g), x), h), -1)
        sheet_coeff(coeffs, (x, g), -1)
        if not emit(coeffs, ratio):
            return None

    matrix = []
    rhs = []
    for pattern, turns in rows.items():
        if not pattern:
            if turns != 0:
                return None
            continue
        row = [0] * total
        for idx, coeff in pattern:
            row[idx] = coeff
        matrix.append(row)
        rhs.append(turns)
    if not matrix:
        return GaugeTransform()
    sf = intlin.smith_normal_form(matrix, len(matrix), total)
    solution = intlin.solve_turns(sf, rhs)
    if solution is None:
        return None
    vertex = {trip: turn_phase(solution[i]) for trip, i in vertex_ids.items()}
    sheet = {key: turn_phase(solution[i]) for key, i in sheet_ids.items()}
    gauge = GaugeTransform(vertex, sheet)
    # exact witness check; failure here means a bug, not inequivalence
    from .category import tables_distance

    if tables_distance(apply_gauge(source, gauge), target) > max(tol, 1e-8):
        raise MatchFailure("solved gauge fails to reproduce the target tables")
    return gauge


# ---------------------------------------------------------------------------
# the coboundary collapse


def boundary_coefficients(theory, z):
    """Phase coefficients absorbed by relabeling with the 1-cochain ``z``.

    The twisted functor with twist d(z) and these coefficients reproduces
    the relabeled theory up to a gauge; their coboundary inverts the
    relative obstruction of d(z).
    """
    grp = theory.group
    dual = theory.dual
    act = theory.act
    tr = theory.translate
    dz = z.coboundary()

    def value(g, h, k):
        gh = grp.op(g, h)
        hk = grp.op(h, k)
        ghk = grp.op(gh, k)
        zbar_g = dual(z(g))
        gzbar_h = act(g, dual(z(h)))
        ghzbar_k = act(gh, dual(z(k)))
        gdz_hk = act(g, dz(h, k))
        zk_zhk = act(g, tr(z(k), dual(z(hk))))
        zhk_zghk = tr(act(g, z(hk)), dual(z(ghk)))
        zh_zgh = act(g, tr(z(h), dual(z(gh))))
        val = theory.eta_symbol(ghzbar_k, g, h)
        val = val * _u2(theory, g, gdz_hk, act(g, dual(z(h))))
        val = val * _u2(theory, g, zk_zhk, ghzbar_k)
        val = val * _r2(theory, gdz_hk, zbar_g)
        num = (_f3(theory, dz(gh, k), zh_zgh, gzbar_h)
               * _f3(theory, dz(gh, k), dz(g, h), zbar_g)
               * _f3(theory, dz(g, hk), zbar_g, gdz_hk))
        den = (_f3(theory, dz(g, hk), gdz_hk, zbar_g)
               * _f3(theory, zhk_zghk, gdz_hk, gzbar_h)
               * _f3(theory, zhk_zghk, zk_zhk, ghzbar_k))
        return val * (num / den)

    entries = {}
    for args in itertools.product(grp.elements(), repeat=3):
        entries[args] = value(*args)
    order = math.lcm(theory.group.order, max(abelian_subgroup(theory).order, 1), 8)
    return Cochain(grp, 3, U1Module(order), entries)


def coboundary_equivalence(theory, z, tol=DEFAULT_TOL):
    """Witness that relabeling by ``z`` equals the twist by its coboundary.

    Returns (coefficients, gauge) with
    ``apply_gauge(relabel_by_1cochain(theory, z), gauge)`` equal to
    ``apply_torsor(theory, d(z), coefficients)`` entrywise.
    """
    coeffs = boundary_coefficients(theory, z)
    twisted = apply_torsor(theory, z.coboundary(), coeffs, tol)
    relabeled = relabel_by_1cochain(theory, z)
    try:
        gauge = solve_gauge_matching(relabeled, twisted, tol)
    except _NonRootRatio as exc:
        raise MatchFailure(str(exc)) from exc
    if gauge is None:
        raise MatchFailure(
            "no gauge matches the relabeled theory to its twisted form")
    return coeffs, gauge


def cocycle_relabel_class(theory, z, tol=DEFAULT_TOL):
    """Defectification shift induced by a closed 1-cochain relabeling.

    The returned 3-cocycle's class measures which coefficient classes the
    relabeling identifies.
    """
    if not is_cocycle(z):
        raise NotA1Cocycle("relabeling 1-cochain must be closed")
    grp = theory.group
    dual = theory.dual
    act = theory.act
    tr = theory.translate

    def value(g, h, k):
        gh = grp.op(g, h)
        hk = grp.op(h, k)
        ghk = grp.op(gh, k)
        ghzbar_k = act(gh, dual(z(k)))
        zk_zhk = act(g, tr(z(k), dual(z(hk))))
        zhk_zghk = tr(act(g, z(hk)), dual(z(ghk)))
        val = theory.eta_symbol(ghzbar_k, g, h)
        val = val * _u2(theory, g, zk_zhk, ghzbar_k)
        return val / _f3(theory, zhk_zghk, zk_zhk, ghzbar_k)

    entries = {}
    for args in itertools.product(grp.elements(), repeat=3):
        entries[args] = value(*args)
    order = math.lcm(theory.group.order, max(abelian_subgroup(theory).order, 1), 8)
    out = Cochain(grp, 3, U1Module(order), entries)
    validate_cocycle(out, max(tol, 1e-7), degree=3)
    return out


# ---------------------------------------------------------------------------
# equivalence search


def _grade_preserving_permutations(theory):
    by_grade = {}
    for a in theory.charges():
        by_grade.setdefault(theory.grade(a), []).append(a)
    pools = [list(itertools.permutations(chs)) for chs in by_grade.values()]
    blocks = list(by_grade.values())
    for combo in itertools.product(*pools):
        perm = [0] * theory.num_charges
        for block, images in zip(blocks, combo):
            for src, dst in zip(block, images):
                perm[src] = dst
        yield Relabeling(tuple(perm))


def theories_equivalent(first, second, budget=10000, tol=DEFAULT_TOL):
    """Search for (relabeling, gauge) making the theories identical.

    Returns the witness pair or None when the whole grade-preserving
    search space has been refuted.  Raises BudgetExceeded when the budget
    ran out first (inconclusive).
    """
    if first.group.mult != second.group.mult:
        return None
    per_grade_first = sorted(
        (g, len(first.charges_of_grade(g))) for g in first.group.elements())
    per_grade_second = sorted(
        (g, len(second.charges_of_grade(g))) for g in second.group.elements())
    if per_grade_first != per_grade_second:
        return None
    examined = 0
    inconclusive = 0
    for relabeling in _grade_preserving_permutations(first):
        if examined >= budget:
            raise BudgetExceeded(
                f"examined {examined} relabelings without a verdict")
        examined += 1
        try:
            moved = relabel(first, relabeling)
        except InvalidInput:
            continue
        if moved.vacuum != second.vacuum:
            continue
        if set(moved.fusion_triples()) != set(second.fusion_triples()):
            continue
        if moved.action != second.action:
            continue
        try:
            gauge = solve_gauge_matching(moved, second, tol)
        except _NonRootRatio:
            inconclusive += 1
            continue
        if gauge is not None:
            return relabeling, gauge
    if inconclusive:
        raise BudgetExceeded(
            f"{inconclusive} candidate relabelings were undecidable "
            "(phases off the root-of-unity lattice)")
    return None

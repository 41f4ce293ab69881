"""Skeletal data of a G-crossed braided tensor category.

A theory is a finite set of charges graded by group elements, a
multiplicity-free fusion tensor, sparse F/R/U/eta symbol tables, and a
symmetry action permuting charges.  Symbol lookups on tuples without a
fusion channel raise instead of returning zero; the consistency checkers
use the internal ``*_or_zero`` variants when a genuine zero entry is meant.
"""

from __future__ import annotations

import math
import weakref

import numpy as np

from .errors import InadmissibleTuple, InvalidInput, NotAbelianMonodromy
from .groups import (
    DEFAULT_TOL,
    AbelianModule,
    FiniteGroup,
    phase_from_json,
    phase_to_json,
)


class GxTheory:
    """Immutable container for the basic data of a G-crossed theory.

    Parameters
    ----------
    group : FiniteGroup
    grades : sequence of group elements, one per charge
    vacuum : charge index of the vacuum
    fusion : iterable of admissible (a, b, c) triples (N = 1 on these)
    f, r, u, eta : symbol tables keyed as described below
    action : mapping g -> charge permutation (sequence)
    metadata : optional JSON-compatible dict, not part of the identity

    Table keys: ``f[(a, b, c, d, e, f_)]``, ``r[(a, b, c)]``,
    ``u[(k, a, b, c)]``, ``eta[(x, g, h)]``.
    """

    def __init__(self, group, grades, vacuum, fusion, f, r, u, eta, action,
                 metadata=None):
        self.group = group
        self.grades = tuple(grades)
        self.vacuum = int(vacuum)
        n = len(self.grades)
        self.num_charges = n
        if not (0 <= self.vacuum < n):
            raise InvalidInput("vacuum index out of range")
        if self.grades[self.vacuum] != group.identity:
            raise InvalidInput("vacuum must carry the identity grade")
        self._n = frozenset(tuple(t) for t in fusion)
        self._outcomes = {}
        for a, b, c in sorted(self._n):
            self._outcomes.setdefault((a, b), []).append(c)
        self._f = dict(f)
        self._r = dict(r)
        self._u = dict(u)
        self._eta = dict(eta)
        self.action = {g: tuple(perm) for g, perm in dict(action).items()}
        if sorted(self.action) != list(group.elements()):
            raise InvalidInput("action must cover every group element")
        self.metadata = dict(metadata or {})
        self._dual = self._compute_duals()
        self._abelian = tuple(
            a for a in range(n)
            if all(len(self._outcomes.get((a, b), ())) == 1 for b in range(n)))

    # -- structure ---------------------------------------------------------

    def _compute_duals(self):
        dual = []
        for a in range(self.num_charges):
            partners = [b for b in range(self.num_charges)
                        if (a, b, self.vacuum) in self._n]
            if len(partners) != 1:
                raise InvalidInput(f"charge {a} has {len(partners)} duals")
            dual.append(partners[0])
        return tuple(dual)

    def charges(self):
        return range(self.num_charges)

    def grade(self, a):
        return self.grades[a]

    def dual(self, a):
        return self._dual[a]

    def n(self, a, b, c):
        return 1 if (a, b, c) in self._n else 0

    def fusion_triples(self):
        return sorted(self._n)

    def fusion_outcomes(self, a, b):
        return tuple(self._outcomes.get((a, b), ()))

    def charges_of_grade(self, g):
        return tuple(a for a in self.charges() if self.grades[a] == g)

    def is_abelian_charge(self, a):
        return a in self._abelian

    def abelian_charges(self):
        """Abelian charges in the identity-graded sector, sorted."""
        ident = self.group.identity
        return tuple(a for a in self._abelian if self.grades[a] == ident)

    def act(self, g, a):
        return self.action[g][a]

    def translate(self, x, a):
        """The unique charge in x (x) a for an abelian left factor x."""
        out = self._outcomes.get((x, a), ())
        if len(out) != 1:
            raise InadmissibleTuple(
                f"translation by {x} of {a} is not unique: outcomes {out}")
        return out[0]

    def translate_right(self, a, x):
        out = self._outcomes.get((a, x), ())
        if len(out) != 1:
            raise InadmissibleTuple(
                f"right translation of {a} by {x} is not unique: outcomes {out}")
        return out[0]

    def fuse_abelian(self, *xs):
        """Iterated fusion of abelian charges."""
        acc = self.vacuum
        for x in xs:
            acc = self.translate(acc, x)
        return acc

    # -- symbol lookups ----------------------------------------------------

    def f_symbol(self, a, b, c, d, e, f):
        key = (a, b, c, d, e, f)
        try:
            return self._f[key]
        except KeyError:
            raise InadmissibleTuple(f"F{key} is not an admissible tuple") from None

    def r_symbol(self, a, b, c):
        key = (a, b, c)
        try:
            return self._r[key]
        except KeyError:
            raise InadmissibleTuple(f"R{key} is not an admissible tuple") from None

    def u_symbol(self, k, a, b, c):
        key = (k, a, b, c)
        try:
            return self._u[key]
        except KeyError:
            raise InadmissibleTuple(f"U{key} is not an admissible tuple") from None

    def eta_symbol(self, x, g, h):
        key = (x, g, h)
        try:
            return self._eta[key]
        except KeyError:
            raise InadmissibleTuple(f"eta{key} is not an admissible tuple") from None

    def f_or_zero(self, a, b, c, d, e, f):
        return self._f.get((a, b, c, d, e, f), 0j)

    def f_entries(self):
        return self._f

    def r_entries(self):
        return self._r

    def u_entries(self):
        return self._u

    def eta_entries(self):
        return self._eta

    # -- admissibility helpers ----------------------------------------------

    def f_admissible_tuples(self):
        """All (a,b,c,d,e,f) with the four defining fusion channels."""
        for a, b, e in self.fusion_triples():
            for c in self.charges():
                for d in self.fusion_outcomes(e, c):
                    for f in self.fusion_outcomes(b, c):
                        if (a, f, d) in self._n:
                            yield (a, b, c, d, e, f)

    def replace(self, **tables):
        """Functional update used by gauge transforms and torsor output."""
        kwargs = dict(
            group=self.group, grades=self.grades, vacuum=self.vacuum,
            fusion=self._n, f=self._f, r=self._r, u=self._u, eta=self._eta,
            action=self.action, metadata=self.metadata)
        kwargs.update(tables)
        return GxTheory(**kwargs)

    def __repr__(self):
        name = self.metadata.get("name", "")
        return (f"GxTheory({name or 'unnamed'}: |G|={self.group.order}, "
                f"charges={self.num_charges})")


# ---------------------------------------------------------------------------
# derived quantities


def validate(theory, tol=DEFAULT_TOL):
    """Structural checks; returns a list of human-readable violations."""
    out = []
    g = theory.group
    n = theory.num_charges

    def note(msg):
        out.append(msg)

    # grading
    for a, b, c in theory.fusion_triples():
        if theory.grade(c) != g.op(theory.grade(a), theory.grade(b)):
            note(f"grading violated on N({a},{b};{c})")
    # vacuum axioms
    for a in theory.charges():
        if theory.n(theory.vacuum, a, a) != 1 or theory.n(a, theory.vacuum, a) != 1:
            note(f"vacuum does not fuse trivially with charge {a}")
        for b in theory.charges():
            expected = 1 if b == theory.dual(a) else 0
            if theory.n(a, b, theory.vacuum) != expected:
                note(f"vacuum channel of ({a},{b}) contradicts the dual map")
        ga, gd = theory.grade(a), theory.grade(theory.dual(a))
        if gd != g.inverse(ga):
            note(f"dual of charge {a} has grade {gd}, expected inverse of {ga}")
    # associativity of the fusion ring
    for a in theory.charges():
        for b in theory.charges():
            for c in theory.charges():
                for d in theory.charges():
                    lhs = sum(theory.n(a, b, e) * theory.n(e, c, d)
                              for e in theory.charges())
                    rhs = sum(theory.n(b, c, f) * theory.n(a, f, d)
                              for f in theory.charges())
                    if lhs != rhs:
                        note(f"fusion not associative at ({a},{b},{c};{d})")
    # action: homomorphism, grade covariance, fusion preservation
    ident = g.identity
    if theory.action[ident] != tuple(theory.charges()):
        note("identity group element does not act trivially")
    for k in g.elements():
        perm = theory.action[k]
        if sorted(perm) != list(theory.charges()):
            note(f"action of {k} is not a permutation")
            continue
        for a in theory.charges():
            if theory.grade(perm[a]) != g.prod(k, theory.grade(a), g.inverse(k)):
                note(f"action of {k} violates grade covariance on charge {a}")
        for h in g.elements():
            combo = tuple(perm[theory.action[h][a]] for a in theory.charges())
            if combo != theory.action[g.op(k, h)]:
                note(f"action is not a homomorphism at ({k},{h})")
                break
        for a, b, c in theory.fusion_triples():
            if (perm[a], perm[b], perm[c]) not in theory._n:
                note(f"action of {k} does not preserve N({a},{b};{c})")
    # normalization conventions
    for (k, a, b, c), val in theory.u_entries().items():
        if k == ident and abs(val - 1.0) > tol:
            note(f"U_0({a},{b};{c}) != 1")
        if a == theory.vacuum and b == c and abs(val - 1.0) > tol:
            note(f"U_{k}(vacuum,{b};{b}) != 1")
        if b == theory.vacuum and a == c and abs(val - 1.0) > tol:
            note(f"U_{k}({a},vacuum;{a}) != 1")
    for (x, gg, hh), val in theory.eta_entries().items():
        if x == theory.vacuum and abs(val - 1.0) > tol:
            note(f"eta_vacuum({gg},{hh}) != 1")
        if (gg == ident or hh == ident) and abs(val - 1.0) > tol:
            note(f"eta_{x}({gg},{hh}) != 1 on an identity argument")
    # F unitarity per (a,b,c,d) block
    blocks = {}
    for (a, b, c, d, e, f), val in theory.f_entries().items():
        blocks.setdefault((a, b, c, d), {})[(e, f)] = val
    for key, entries in blocks.items():
        es = sorted({e for e, _ in entries})
        fs = sorted({f for _, f in entries})
        if len(es) != len(fs):
            note(f"F block {key} is not square")
            continue
        mat = np.array([[entries.get((e, f), 0j) for f in fs] for e in es])
        if not np.allclose(mat @ mat.conj().T, np.eye(len(es)), atol=max(tol, 1e-9)):
            note(f"F block {key} is not unitary")
    # table coverage
    f_keys = set(theory.f_entries())
    for tup in theory.f_admissible_tuples():
        if tup not in f_keys:
            note(f"missing F entry at {tup}")
    for a, b, c in theory.fusion_triples():
        if (a, b, c) not in theory.r_entries():
            note(f"missing R entry at ({a},{b},{c})")
        for k in g.elements():
            if (k, a, b, c) not in theory.u_entries():
                note(f"missing U entry at ({k},{a},{b},{c})")
    for x in theory.charges():
        for gg in g.elements():
            for hh in g.elements():
                if (x, gg, hh) not in theory.eta_entries():
                    note(f"missing eta entry at ({x},{gg},{hh})")
    return out


def quantum_dimensions(theory):
    """Per-charge quantum dimensions (spectral radii) plus the total D."""
    n = theory.num_charges
    dims = {}
    for a in theory.charges():
        mat = np.zeros((n, n))
        for b in theory.charges():
            for c in theory.fusion_outcomes(a, b):
                mat[b, c] = 1.0
        dims[a] = float(max(abs(np.linalg.eigvals(mat))))
    total = math.sqrt(sum(d * d for d in dims.values()))
    return dims, total


class ChargeModule(AbelianModule):
    """The abelian identity-sector charges of a theory as a coefficient module.

    Elements are charge indices; the cyclic decomposition provides the
    residue coordinates used by the cohomology engine.
    """

    kind = "charges"

    def __init__(self, theory):
        charges = theory.abelian_charges()
        basis, orders, vectors = _cyclic_decomposition(theory, charges)
        super().__init__(orders, theory.group)
        self.theory = theory
        self.charges = charges
        self.basis = basis
        self.order = len(charges)
        self.identity = theory.vacuum
        self._vector_of = vectors
        self._charge_of = {v: c for c, v in vectors.items()}

    def op(self, a, b):
        return self.theory.translate(a, b)

    def inv(self, a):
        return self.theory.dual(a)

    def act(self, g, a):
        return self.theory.act(g, a)

    def close(self, a, b, tol=None):
        return a == b

    def is_identity(self, a, tol=None):
        return a == self.identity

    def elements(self):
        return self.charges

    def to_vec(self, a):
        return self._vector_of[a]

    def from_vec(self, vec):
        return self._charge_of[tuple(x % m for x, m in zip(vec, self.factors))]

    def action_matrix(self, g):
        k = len(self.factors)
        cols = [self._vector_of[self.theory.act(g, self.basis[j])] for j in range(k)]
        return [[cols[j][i] for j in range(k)] for i in range(k)]

    def validate_element(self, a):
        if a not in self._vector_of:
            raise InvalidInput(f"charge {a} is not an abelian identity-sector charge")
        return a

    def describe(self):
        return {"charges": list(self.charges), "cyclic": list(self.factors)}


def _cyclic_decomposition(theory, charges):
    """Split an abelian charge set into cyclic factors by exhaustive search."""
    if not charges:
        return (), (), {}
    vac = theory.vacuum
    orders = {}
    for c in charges:
        n, x = 1, c
        while x != vac:
            x = theory.translate(x, c)
            n += 1
        orders[c] = n
    total = len(charges)
    candidates = sorted(charges, key=lambda c: (-orders[c], c))

    def search(span, basis):
        # span: coordinate tuple -> charge, always a direct-product image
        if len(span) == total:
            return basis, span
        for c in candidates:
            m = orders[c]
            if len(span) * m > total or total % (len(span) * m) != 0:
                continue
            new_span = {}
            for coords, elem in span.items():
                x = elem
                new_span[coords + (0,)] = x
                for p in range(1, m):
                    x = theory.translate(x, c)
                    new_span[coords + (p,)] = x
            if len(set(new_span.values())) == len(span) * m:
                found = search(new_span, basis + [c])
                if found is not None:
                    return found
        return None

    found = search({(): vac}, [])
    if found is None:
        raise InvalidInput("abelian charges do not form a group under fusion")
    basis, span = found
    factor_orders = tuple(orders[b] for b in basis)
    vectors = {charge: coords for coords, charge in span.items()}
    # present ascending so the invariant-factor chain reads smallest first
    order_idx = sorted(range(len(basis)), key=lambda i: factor_orders[i])
    basis = tuple(basis[i] for i in order_idx)
    factor_orders = tuple(factor_orders[i] for i in order_idx)
    vectors = {c: tuple(v[i] for i in order_idx) for c, v in vectors.items()}
    return tuple(basis), factor_orders, vectors


_ABELIAN_CACHE = weakref.WeakKeyDictionary()


def abelian_subgroup(theory):
    """Group structure on the abelian identity-sector charges.

    The result doubles as the coefficient module for torsor 2-cochains,
    carrying the restriction of the symmetry action.
    """
    cached = _ABELIAN_CACHE.get(theory)
    if cached is not None:
        return cached
    module = ChargeModule(theory)
    for g in theory.group.elements():
        for a in module.charges:
            if theory.act(g, a) not in module.charges:
                raise InvalidInput(
                    f"action of {g} does not preserve the abelian sector")
    _ABELIAN_CACHE[theory] = module
    return module


def monodromy(theory, a, b):
    """Full double-braid phase R^{ab} R^{ba} for identity-graded charges."""
    ident = theory.group.identity
    if theory.grade(a) != ident or theory.grade(b) != ident:
        raise NotAbelianMonodromy("monodromy needs identity-graded charges")
    if not (theory.is_abelian_charge(a) or theory.is_abelian_charge(b)):
        raise NotAbelianMonodromy(f"neither {a} nor {b} is abelian")
    outcomes = theory.fusion_outcomes(a, b)
    if len(outcomes) != 1:
        raise NotAbelianMonodromy(f"fusion of ({a},{b}) is not unique")
    c = outcomes[0]
    return theory.r_symbol(a, b, c) * theory.r_symbol(b, a, c)


def tables_distance(first, second):
    """Max absolute difference across all symbol tables; requires equal shape."""
    if first.grades != second.grades or first._n != second._n:
        raise InvalidInput("theories have different fusion structure")
    worst = 0.0
    for table in ("_f", "_r", "_u", "_eta"):
        ta, tb = getattr(first, table), getattr(second, table)
        if set(ta) != set(tb):
            raise InvalidInput(f"{table} tables are keyed differently")
        for key, val in ta.items():
            worst = max(worst, abs(val - tb[key]))
    return worst


# ---------------------------------------------------------------------------
# JSON serialization


def group_to_json(group):
    return {"table": [list(row) for row in group.mult], "name": group.name}


def group_from_json(obj):
    if "cyclic" in obj:
        return FiniteGroup.from_cyclic_factors(obj["cyclic"], obj.get("name"))
    if "table" in obj:
        return FiniteGroup.from_table(obj["table"], obj.get("name", ""))
    raise InvalidInput("group spec needs 'cyclic' or 'table'")


def theory_to_json(theory):
    return {
        "group": group_to_json(theory.group),
        "charges": [{"grade": g} for g in theory.grades],
        "vacuum": theory.vacuum,
        "dual": list(theory._dual),
        "fusion": [list(t) for t in theory.fusion_triples()],
        "action": [list(theory.action[g]) for g in theory.group.elements()],
        "F": [{"charges": list(k), "value": phase_to_json(v)}
              for k, v in sorted(theory.f_entries().items())],
        "R": [{"charges": list(k), "value": phase_to_json(v)}
              for k, v in sorted(theory.r_entries().items())],
        "U": [{"sheet": k[0], "charges": list(k[1:]), "value": phase_to_json(v)}
              for k, v in sorted(theory.u_entries().items())],
        "eta": [{"charge": k[0], "pair": list(k[1:]), "value": phase_to_json(v)}
                for k, v in sorted(theory.eta_entries().items())],
        "metadata": theory.metadata,
    }


def theory_from_json(obj):
    try:
        group = group_from_json(obj["group"])
        grades = [c["grade"] for c in obj["charges"]]
        fusion = [tuple(t) for t in obj["fusion"]]
        f = {tuple(e["charges"]): phase_from_json(e["value"]) for e in obj["F"]}
        r = {tuple(e["charges"]): phase_from_json(e["value"]) for e in obj["R"]}
        u = {(e["sheet"], *e["charges"]): phase_from_json(e["value"])
             for e in obj["U"]}
        eta = {(e["charge"], *e["pair"]): phase_from_json(e["value"])
               for e in obj["eta"]}
        action = {g: obj["action"][g] for g in group.elements()}
        theory = GxTheory(group, grades, obj["vacuum"], fusion, f, r, u, eta,
                          action, metadata=obj.get("metadata"))
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidInput(f"malformed theory JSON: {exc}") from exc
    declared = obj.get("dual")
    if declared is not None and list(theory._dual) != list(declared):
        raise InvalidInput("declared dual map contradicts the fusion tensor")
    return theory

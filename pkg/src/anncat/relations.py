"""Relations defining structures and Mac Lane quadruples, plus the coboundary maps.

Each relation is a list of linear identities written in the term language of
:mod:`anncat.expr`.  Two variants exist for every relation: ``"shipped"`` (the
forms that agree with the diagrammatic oracle) and ``"printed"`` (the forms as
they appear in the source literature).  Where the two differ, ``TYPOS``
records what changed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cochains import (ARITY, AnnStructure, Cochain, CochainPair, MacLaneQuadruple, STRUCTURE_KINDS,
                       QUADRUPLE_KINDS, forced_zero_mask, make_cochain, unflatten)
from .errors import InternalInconsistencyError
from .expr import ZERO, compile_equations, evaluate_residual


@dataclass(frozen=True)
class Relation:
    id: str
    nvars: int
    fn: object
    axiom: str  # oracle axiom this relation transcribes
    text: str
    normalization: tuple[str, str] | None = None  # (kind, pattern) for forced-zero checks


# structure relations


def _rel1(c, x, y, z, t):
    return [(c.xi(y, z, t) - c.xi(x + y, z, t) + c.xi(x, y + z, t) - c.xi(x, y, z + t) + c.xi(x, y, z), ZERO)]


def _rel1_alt(c, x, y, z, t):
    # second occurrence in the literature, with a transposed argument
    return [(c.xi(y, z, t) - c.xi(x, z, y) + c.xi(x, y + z, t) - c.xi(x, y, z + t) + c.xi(x, y, z), ZERO)]


def _rel3(c, x, y, z):
    return [(c.xi(x, y, z) - c.xi(x, z, y) + c.xi(z, x, y) + c.eta(x + y, z) - c.eta(x, z) - c.eta(y, z), ZERO)]


def _rel4(c, x, y):
    return [(c.eta(x, y) + c.eta(y, x), ZERO)]


def _rel5(c, x, y, z):
    return [(x * c.eta(y, z) - c.eta(x * y, x * z), c.lam(x, y, z) - c.lam(x, z, y))]


def _rel6(c, x, y, z):
    return [(c.eta(x, y) * z - c.eta(x * z, y * z), c.rho(x, y, z) - c.rho(y, x, z))]


def _rel7(c, x, y, z, t):
    return [(x * c.xi(y, z, t) - c.xi(x * y, x * z, x * t),
             c.lam(x, z, t) - c.lam(x, y + z, t) + c.lam(x, y, z + t) - c.lam(x, y, z))]


def _rel8(c, x, y, z, t):
    return [(c.xi(x, y, z) * t - c.xi(x * t, y * t, z * t),
             c.rho(y, z, t) - c.rho(x + y, z, t) + c.rho(x, y + z, t) - c.rho(x, y, t))]


def _rel8_printed(c, x, y, z, t):
    return [(c.xi(x, y, z) * t - c.xi(x * t, y * t, z * t),
             c.rho(y, z, t) - c.rho(x + y, z, t) + c.rho(x, y + z, t) - c.rho(x, y, z))]


def _rel9_lhs(c, x, y, z, t):
    return (c.rho(x, y, z + t) - c.rho(x, y, z) - c.rho(x, y, t)
            + c.lam(x, z, t) + c.lam(y, z, t) - c.lam(x + y, z, t))


def _rel9(c, x, y, z, t):
    xz, xt, yz, yt = x * z, x * t, y * z, y * t
    return [(_rel9_lhs(c, x, y, z, t),
             -c.xi(xz + xt, yz, yt) + c.xi(xz, xt, yz) - c.eta(xt, yz) + c.xi(xz + yz, xt, yt) - c.xi(xz, yz, xt))]


def _rel9_printed(c, x, y, z, t):
    xz, xt, yz, yt = x * z, x * t, y * z, y * t
    return [(_rel9_lhs(c, x, y, z, t),
             c.xi(xz + xt, yz, yt) + c.xi(xz, xt, yz) - c.eta(xt, yz) + c.xi(xz + yz, xt, yt) - c.xi(xz, yz, xt))]


def _rel10(c, x, y, z, t):
    return [(c.alpha(x, y, z + t) - c.alpha(x, y, z) - c.alpha(x, y, t),
             x * c.lam(y, z, t) + c.lam(x, y * z, y * t) - c.lam(x * y, z, t))]


def _rel10_printed(c, x, y, z, t):
    return [(c.alpha(x, y, z + t) - c.alpha(x, y, z) - c.alpha(x, y, t),
             x * c.alpha(y, z, t) + c.lam(x, y * z, y * t) - c.lam(x * y, z, t))]


def _rel11(c, x, y, z, t):
    return [(c.alpha(x, y + z, t) - c.alpha(x, y, t) - c.alpha(x, z, t),
             x * c.rho(y, z, t) - c.rho(x * y, x * z, t) + c.lam(x, y * t, z * t) - c.lam(x, y, z) * t)]


def _rel12(c, x, y, z, t):
    return [(c.alpha(x + y, z, t) - c.alpha(x, z, t) - c.alpha(y, z, t),
             -(c.rho(x, y, z) * t) - c.rho(x * z, y * z, t) + c.rho(x, y, z * t))]


def _rel12_printed(c, x, y, z, t):
    return [(c.alpha(x + y, z, t) - c.alpha(x, y, t) - c.alpha(y, z, t),
             -(c.rho(x, y, z) * t) - c.rho(x * z, y * z, t) + c.rho(x, y, z * t))]


def _rel13(c, x, y, z, t):
    return [(x * c.alpha(y, z, t) - c.alpha(x * y, z, t) + c.alpha(x, y * z, t) - c.alpha(x, y, z * t)
             + c.alpha(x, y, z) * t, ZERO)]


def _rel18(c, x):
    return [(c.eta(x, x), ZERO)]


# quadruple conditions


def _v3(c, x, y, z, t):
    return [(x * c.lam(y, z, t) + c.lam(x, y * z, y * t) - c.lam(x * y, z, t),
             c.alpha(x, y, z + t) - c.alpha(x, y, z) - c.alpha(x, y, t))]


def _v3_printed(c, x, y, z, t):
    return [(x * c.lam(y, z, t) + c.lam(x, y * z, y * t) - c.lam(x * y, z, t),
             c.alpha(x, y, z) + c.alpha(x, y, t) - c.alpha(x, y, z + t))]


def _v4(c, x, y, z, t):
    return [(c.alpha(x, y, t) + c.alpha(x, z, t) - c.alpha(x, y + z, t) + x * c.rho(y, z, t)
             - c.rho(x * y, x * z, t) + c.lam(x, y * t, z * t) - c.lam(x, y, z) * t, ZERO)]


def _v5(c, x, y, z, t):
    return [(c.rho(x * z, y * z, t) - c.rho(x, y, z * t) + c.rho(x, y, z) * t,
             c.alpha(x, z, t) + c.alpha(y, z, t) - c.alpha(x + y, z, t))]


def _v5_printed(c, x, y, z, t):
    return [(c.rho(x * z, y * z, t) - c.rho(x, y, z * t) + c.lam(x, y, z) * t,
             c.alpha(x + y, z, t) - c.alpha(x, z, t) - c.alpha(y, z, t))]


def _v6_rhs(c, a, x, y, z, t, first):
    return (first + c.lam(a, x, z) + c.lam(a, y, t) - c.lam(a, x + y, z + t) - c.lam(a, x, y) - c.lam(a, z, t))


def _v6(c, a, x, y, z, t):
    return [(c.sigma(a * x, a * y, a * z, a * t) - a * c.sigma(x, y, z, t),
             _v6_rhs(c, a, x, y, z, t, c.lam(a, x + z, y + t)))]


def _v6_printed(c, a, x, y, z, t):
    # the same lambda term appears twice with opposite signs, so it cancels
    return [(c.sigma(a * x, a * y, a * z, a * t) - a * c.sigma(x, y, z, t),
             c.lam(a, x, z) + c.lam(a, y, t) - c.lam(a, x + z, y + t) - c.lam(a, x, y) - c.lam(a, z, t)
             + c.lam(a, x + z, y + t))]


def _v7_rhs(c, a, b, x, y):
    return (c.rho(a, b, x + y) + c.lam(a, x, y) + c.lam(b, x, y) - c.lam(a + b, x, y)
            - c.rho(a, b, x) - c.rho(a, b, y))


def _v7(c, a, b, x, y):
    return [(c.sigma(a * x, b * x, a * y, b * y), _v7_rhs(c, a, b, x, y))]


def _v7_printed(c, a, b, x, y):
    return [(c.sigma(a * x, a * y, b * x, b * y), _v7_rhs(c, a, b, x, y))]


def _v8_rhs(c, a, x, y, z, t):
    return (c.rho(x, z, a) + c.rho(y, t, a) - c.rho(x + y, z + t, a) - c.rho(x, y, a) - c.rho(z, t, a)
            + c.rho(x + z, y + t, a))


def _v8(c, a, x, y, z, t):
    return [(c.sigma(x * a, y * a, z * a, t * a) - c.sigma(x, y, z, t) * a, _v8_rhs(c, a, x, y, z, t))]


def _v8_printed(c, a, x, y, z, t):
    # printed as a chain "lhs = rhs = 0"
    return [(c.sigma(x * a, y * a, z * a, t * a) - c.sigma(x, y, z, t) * a, _v8_rhs(c, a, x, y, z, t)),
            (_v8_rhs(c, a, x, y, z, t), ZERO)]


def _v9(c, a, b, cc, d, x, y, z, t):
    s = c.sigma
    return [(s(a, b, cc, d) + s(x, y, z, t) + s(a + cc, b + d, x + z, y + t) + s(a, cc, x, z) + s(b, d, y, t),
             s(a + b, cc + d, x + y, z + t) + s(a, b, x, y) + s(cc, d, z, t) + s(a + x, b + y, cc + z, d + t))]


def _v9_printed(c, a, b, cc, d, x, y, z, t):
    s = c.sigma
    return [(s(a, b, cc, d) + s(x, y, z, t) - s(a + x, b + y, cc + z, d + t) + s(a, b, x, y) + s(cc, d, z, t)
             - s(a + cc, b + d, x + z, y + t) + s(a, cc, x, z) + s(b, d, y, t) - s(a + b, cc + d, x + y, z + t),
             ZERO)]


def _nrm(kind: str, pattern: str) -> tuple[str, str]:
    return (kind, pattern)


STRUCTURE_RELATIONS: dict[str, list[Relation]] = {
    "shipped": [
        Relation("rel1", 4, _rel1, "pentagon-plus", "pentagon for the additive associativity constraint"),
        Relation("rel2", 0, None, "unit-strict", "xi vanishes when an argument is 0", _nrm("xi", "zero")),
        Relation("rel3", 3, _rel3, "hexagon-c", "hexagon linking a+ and c"),
        Relation("rel4", 2, _rel4, "c-involution", "c is an involution"),
        Relation("rel5", 3, _rel5, "ann1-L-comm", "left distributivity respects c"),
        Relation("rel6", 3, _rel6, "ann1-R-comm", "right distributivity respects c"),
        Relation("rel7", 4, _rel7, "ann1-L-assoc", "left distributivity respects a+"),
        Relation("rel8", 4, _rel8, "ann1-R-assoc", "right distributivity respects a+"),
        Relation("rel9", 4, _rel9, "ann2-d4", "compatibility of L and R through the interchange"),
        Relation("rel10", 4, _rel10, "ann2-d1", "a against L"),
        Relation("rel11", 4, _rel11, "ann2-d3", "a against L and R"),
        Relation("rel12", 4, _rel12, "ann2-d2", "a against R"),
        Relation("rel13", 4, _rel13, "pentagon-times", "pentagon for the multiplicative associativity constraint"),
        Relation("rel14", 0, None, "triangle-times", "alpha vanishes when an argument is 1", _nrm("alpha", "one")),
        Relation("rel15", 0, None, "unit-zero", "alpha vanishes when an argument is 0", _nrm("alpha", "zero")),
        Relation("rel16", 0, None, "ann3-L", "lambda vanishes on its normalization pattern", _nrm("lambda", "all")),
        Relation("rel17", 0, None, "ann3-R", "rho vanishes on its normalization pattern", _nrm("rho", "all")),
    ],
}
_printed_overrides = {"rel8": _rel8_printed, "rel9": _rel9_printed, "rel10": _rel10_printed, "rel12": _rel12_printed}
STRUCTURE_RELATIONS["printed"] = [
    Relation(r.id, r.nvars, _printed_overrides.get(r.id, r.fn), r.axiom, r.text, r.normalization)
    for r in STRUCTURE_RELATIONS["shipped"]
]
REGULAR_RELATION = Relation("rel18", 1, _rel18, "regular", "eta vanishes on the diagonal")
ALTERNATE_PENTAGON = Relation("rel1-alt", 4, _rel1_alt, "pentagon-plus", "second printed pentagon")

QUADRUPLE_CONDITIONS: dict[str, list[Relation]] = {
    "shipped": [
        Relation("v1", 4, _rel13, "pentagon-times", "pentagon for alpha"),
        Relation("v2", 0, None, "normalization", "alpha vanishes on 0 and 1", _nrm("alpha", "all")),
        Relation("v3", 4, _v3, "ann2-d1", "alpha against lambda"),
        Relation("v4", 4, _v4, "ann2-d3", "alpha against lambda and rho"),
        Relation("v5", 4, _v5, "ann2-d2", "alpha against rho"),
        Relation("v6", 5, _v6, "ann1-L-v", "lambda against the interchange"),
        Relation("v7", 4, _v7, "ann2-d4", "sigma through lambda and rho"),
        Relation("v8", 5, _v8, "ann1-R-v", "rho against the interchange"),
        Relation("v9", 8, _v9, "v-hexagon", "coherence of iterated interchanges"),
        Relation("v10", 0, None, "normalization", "sigma vanishes on its normalization pattern", _nrm("sigma", "all")),
    ],
}
_printed_v = {"v3": _v3_printed, "v5": _v5_printed, "v6": _v6_printed, "v7": _v7_printed, "v8": _v8_printed,
              "v9": _v9_printed}
QUADRUPLE_CONDITIONS["printed"] = [
    Relation(r.id, r.nvars, _printed_v.get(r.id, r.fn), r.axiom, r.text, r.normalization)
    for r in QUADRUPLE_CONDITIONS["shipped"]
]


@dataclass(frozen=True)
class Typo:
    id: str
    relation: str
    printed: str
    shipped: str


TYPOS: dict[str, Typo] = {t.id: t for t in [
    Typo("T-rel1-alt", "rel1-alt", "second statement transposes the arguments of the second xi term",
         "xi(y,z,t) - xi(x+y,z,t) + ... as in the first statement"),
    Typo("T-rel8", "rel8", "last term rho(x,y,z)", "last term rho(x,y,t)"),
    Typo("T-rel9", "rel9", "+xi(xz+xt,yz,yt)", "-xi(xz+xt,yz,yt)"),
    Typo("T-rel10", "rel10", "x.alpha(y,z,t)", "x.lambda(y,z,t)"),
    Typo("T-rel12", "rel12", "alpha(x,y,t)", "alpha(x,z,t)"),
    Typo("T-v3", "v3", "right side alpha(x,y,z)+alpha(x,y,t)-alpha(x,y,z+t)", "right side negated"),
    Typo("T-v5", "v5", "lambda(x,y,z)t with right side alpha(x+y,z,t)-alpha(x,z,t)-alpha(y,z,t)",
         "rho(x,y,z)t with right side negated"),
    Typo("T-v6", "v6", "-lambda(a,x+z,y+t), cancelling the last term", "-lambda(a,x+y,z+t)"),
    Typo("T-v7", "v7", "sigma(ax,ay,bx,by)", "sigma(ax,bx,ay,by)"),
    Typo("T-v8", "v8", "trailing '= 0' forcing the rho expression to vanish", "no trailing equation"),
    Typo("T-v9", "v9", "signs of sigma(a,b,x,y), sigma(c,d,z,t), sigma(a+c,b+d,x+z,y+t)",
         "signs read off the iterated-interchange diagram"),
    Typo("T-cob-xi", "coboundary-xi", "three-argument mu(x,y,z)", "mu(x,y+z)"),
    Typo("T-cob-eta", "coboundary-eta", "eta'(x,y) - eta(y,x)", "eta'(x,y) - eta(x,y)"),
    Typo("T-d2-sign", "coboundary-sigma", "sigma - sigma'", "sigma' - sigma"),
]}
TYPO_OF_RELATION = {t.relation: t.id for t in TYPOS.values()}


# coboundary maps, written as a single equation "value = 0"


def _cob_xi(c, x, y, z):
    return [(c.mu(y, z) - c.mu(x + y, z) + c.mu(x, y + z) - c.mu(x, y), ZERO)]


def _cob_eta(c, x, y):
    return [(c.mu(x, y) - c.mu(y, x), ZERO)]


def _cob_alpha(c, x, y, z):
    return [(x * c.nu(y, z) - c.nu(x * y, z) + c.nu(x, y * z) - c.nu(x, y) * z, ZERO)]


def _cob_lambda(c, x, y, z):
    return [(c.nu(x, y + z) - c.nu(x, y) - c.nu(x, z) + x * c.mu(y, z) - c.mu(x * y, x * z), ZERO)]


def _cob_rho(c, x, y, z):
    return [(c.nu(x + y, z) - c.nu(x, z) - c.nu(y, z) + c.mu(x, y) * z - c.mu(x * z, y * z), ZERO)]


def _cob_sigma(c, x, y, z, t):
    return [(c.mu(x, y) + c.mu(z, t) - c.mu(x + z, y + t) - c.mu(x, z) - c.mu(y, t) + c.mu(x + y, z + t), ZERO)]


STRUCTURE_COBOUNDARY = {"xi": _cob_xi, "eta": _cob_eta, "alpha": _cob_alpha, "lambda": _cob_lambda, "rho": _cob_rho}
QUADRUPLE_COBOUNDARY = {"sigma": _cob_sigma, "alpha": _cob_alpha, "lambda": _cob_lambda, "rho": _cob_rho}


def _sigma_printed_formula(c, x, y, z, t):
    return [(c.xi(x + y, z, t) - c.xi(x, y, z) + c.eta(y, z) + c.xi(x, z, y) - c.xi(x + z, y, t), ZERO)]


# evaluation


def _compiled(ring, key, fn, nvars):
    ck = ("eqs", key)
    if ck not in ring._cache:
        ring._cache[ck] = compile_equations(fn, nvars, ring)
    return ring._cache[ck]


def compiled_relation(rel: Relation, ring, variant: str = ""):
    return _compiled(ring, (variant, rel.id, rel.fn), rel.fn, rel.nvars)


@dataclass
class RelationFailure:
    relation: str
    axiom: str
    count: int
    witnesses: list[tuple[int, ...]]
    residuals: list[int]

    def to_json(self) -> dict:
        return {"relation": self.relation, "axiom": self.axiom, "count": self.count,
                "witnesses": [list(w) for w in self.witnesses], "residuals": self.residuals}


@dataclass
class RelationReport:
    subject: str
    variant: str
    checked: list[str] = field(default_factory=list)
    failures: list[RelationFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed_ids(self) -> list[str]:
        return [f.relation for f in self.failures]

    def to_json(self) -> dict:
        return {"subject": self.subject, "variant": self.variant, "ok": self.ok, "checked": self.checked,
                "failures": [f.to_json() for f in self.failures]}

    def to_text(self) -> str:
        head = f"{self.subject} [{self.variant}]: " + ("all relations hold" if self.ok else
                                                      f"{len(self.failures)} relation(s) fail")
        lines = [head]
        for f in self.failures:
            lines.append(f"  {f.relation} ({f.axiom}): {f.count} instance(s), e.g. {f.witnesses[:3]}")
        return "\n".join(lines)


def _norm_failure(rel: Relation, c: Cochain, cap: int) -> RelationFailure | None:
    kind, pattern = rel.normalization
    ring = c.ring
    mask = forced_zero_mask(kind, ring).copy()
    if pattern != "all":
        a = ARITY[kind]
        g = np.meshgrid(*[np.arange(ring.n)] * a, indexing="ij")
        target = 0 if pattern == "zero" else ring.one
        mask &= np.logical_or.reduce([x.reshape(-1) == target for x in g])
    bad = np.flatnonzero(mask & (c.values != 0))
    if not bad.size:
        return None
    return RelationFailure(rel.id, rel.axiom, int(bad.size),
                           [unflatten(int(i), ARITY[kind], ring.n) for i in bad[:cap]],
                           [int(c.values[i]) for i in bad[:cap]])


def _run(relations: list[Relation], family, variant: str, subject: str, cap: int) -> RelationReport:
    ring, module = family.ring, family.module
    values = {c.kind: c.values for c in family.parts}
    rep = RelationReport(subject, variant)
    for rel in relations:
        rep.checked.append(rel.id)
        if rel.normalization is not None:
            fail = _norm_failure(rel, family[rel.normalization[0]], cap)
            if fail:
                rep.failures.append(fail)
            continue
        total, wit, res = 0, [], []
        for eq in compiled_relation(rel, ring, variant):
            r = evaluate_residual(eq, values, module)
            bad = np.flatnonzero(r)
            total += int(bad.size)
            for i in bad[:max(0, cap - len(wit))]:
                wit.append(tuple(int(v) for v in eq.instances[i]))
                res.append(int(r[i]))
        if total:
            rep.failures.append(RelationFailure(rel.id, rel.axiom, total, wit, res))
    return rep


def check_structure(f: AnnStructure, *, regular: bool = False, variant: str = "shipped",
                    cap: int = 10) -> RelationReport:
    """Evaluate every structure relation; report failures with up to ``cap`` witnesses each."""
    rels = list(STRUCTURE_RELATIONS[variant])
    if regular:
        rels.append(REGULAR_RELATION)
    return _run(rels, f, variant, "structure", cap)


def check_cocycle(q: MacLaneQuadruple, *, variant: str = "shipped", cap: int = 10) -> RelationReport:
    """Evaluate the quadruple conditions v1..v10."""
    return _run(QUADRUPLE_CONDITIONS[variant], q, variant, "quadruple", cap)


def _apply_map(table: dict, kinds, source, ring, module) -> dict[str, np.ndarray]:
    values = {c.kind: c.values for c in source.parts}
    out = {}
    for kind in kinds:
        eq = _compiled(ring, ("map", kind, table[kind]), table[kind], ARITY[kind])[0]
        out[kind] = evaluate_residual(eq, values, module)
    return out


def _normalized(kind, vals, ring, module) -> Cochain:
    if (vals[forced_zero_mask(kind, ring)] != 0).any():
        raise InternalInconsistencyError(f"coboundary of a normalized pair is not normalized in {kind}")
    return Cochain(kind, ring, module, vals)


def structure_coboundary(p: CochainPair) -> AnnStructure:
    """The structure ``delta(p)`` with ``f + delta(p)`` the transport of ``f`` along ``p``."""
    ring, module = p.ring, p.module
    vals = _apply_map(STRUCTURE_COBOUNDARY, STRUCTURE_KINDS, p, ring, module)
    return AnnStructure(*(_normalized(k, vals[k], ring, module) for k in STRUCTURE_KINDS))


def apply_structure_coboundary(f: AnnStructure, p: CochainPair) -> AnnStructure:
    """``f' = f + delta(mu, nu)``; the identity in each normalization is preserved."""
    if f.ring != p.ring or f.module != p.module:
        from .errors import AmbientMismatchError
        raise AmbientMismatchError("structure and pair live over different (R, M)")
    return f + structure_coboundary(p)


def apply_structure_coboundary_printed(f: AnnStructure, p: CochainPair) -> AnnStructure:
    """The literal printed transport: ``eta'(x,y) = eta(y,x) + mu(x,y) - mu(y,x)``; other parts as shipped."""
    g = apply_structure_coboundary(f, p)
    n = f.ring.n
    transposed = f.eta.values.reshape(n, n).T.reshape(-1)
    delta = structure_coboundary(p).eta.values
    eta = Cochain("eta", f.ring, f.module, f.module.add[transposed, delta])
    return AnnStructure(g.xi, eta, g.alpha, g.lam, g.rho)


def d2(p: CochainPair) -> MacLaneQuadruple:
    """The Mac Lane coboundary of a pair ``(mu, nu)``."""
    ring, module = p.ring, p.module
    vals = _apply_map(QUADRUPLE_COBOUNDARY, QUADRUPLE_KINDS, p, ring, module)
    return MacLaneQuadruple(*(_normalized(k, vals[k], ring, module) for k in QUADRUPLE_KINDS))


def sigma_printed(f: AnnStructure) -> Cochain:
    """sigma from the closed formula in terms of xi and eta (no diagram chasing)."""
    eq = _compiled(f.ring, ("sigma-printed",), _sigma_printed_formula, 4)[0]
    vals = evaluate_residual(eq, {c.kind: c.values for c in f.parts}, f.module)
    return Cochain("sigma", f.ring, f.module, vals)


def zero_pair(ring, module) -> CochainPair:
    return CochainPair(make_cochain("mu", ring, module), make_cochain("nu", ring, module))

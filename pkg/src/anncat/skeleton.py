"""Diagrammatic oracle: the skeletal Ann-category of type (R, M).

Objects are ring elements and every morphism is an automorphism ``(r, u)``
with ``u`` in ``M``.  Constraints are built from a structure and every axiom
is checked by composing the two paths of its diagram, never through a
closed-form relation.  All operations accept numpy arrays, so a diagram is
checked at every argument tuple in one pass.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cochains import AnnStructure, Cochain, flatten
from .errors import DomainError
from .expr import instance_grid


@dataclass
class SkeletalMorphism:
    """Automorphism (or batch of automorphisms) of ``obj`` with value ``val``."""

    obj: np.ndarray | int
    val: np.ndarray | int
    ctx: "Skeleton" = field(repr=False, compare=False)

    def __eq__(self, other) -> bool:
        return np.array_equal(self.obj, other.obj) and np.array_equal(self.val, other.val)


def mor_compose(f: SkeletalMorphism, g: SkeletalMorphism) -> SkeletalMorphism:
    """``g . f``; both must be automorphisms of the same object."""
    same = np.asarray(f.obj) == np.asarray(g.obj)
    if not np.all(same):
        i = int(np.flatnonzero(np.ravel(~same))[0]) if np.ndim(same) else 0
        fo, go = np.ravel(f.obj)[i % np.size(f.obj)], np.ravel(g.obj)[i % np.size(g.obj)]
        raise DomainError(f"cannot compose automorphisms of {int(fo)} and {int(go)}")
    return SkeletalMorphism(f.obj, f.ctx.module.add[f.val, g.val], f.ctx)


def mor_sum(f: SkeletalMorphism, g: SkeletalMorphism) -> SkeletalMorphism:
    """``f + g`` on objects and values."""
    c = f.ctx
    return SkeletalMorphism(c.ring.add[f.obj, g.obj], c.module.add[f.val, g.val], c)


def mor_prod(f: SkeletalMorphism, g: SkeletalMorphism) -> SkeletalMorphism:
    """``(s, u) x (t, v) = (st, s.v + u.t)``."""
    c = f.ctx
    M = c.module
    return SkeletalMorphism(c.ring.mul[f.obj, g.obj], M.add[M.left[f.obj, g.val], M.right[f.val, g.obj]], c)


def mor_inverse(f: SkeletalMorphism) -> SkeletalMorphism:
    return SkeletalMorphism(f.obj, f.ctx.module.neg[f.val], f.ctx)


def path(*morphisms: SkeletalMorphism) -> SkeletalMorphism:
    """Compose a path given in the order the arrows are traversed."""
    out = morphisms[0]
    for m in morphisms[1:]:
        out = mor_compose(out, m)
    return out


class Skeleton:
    """Constraint morphisms of the Ann-category with a given structure."""

    def __init__(self, f: AnnStructure):
        self.f = f
        self.ring = f.ring
        self.module = f.module
        self.n = f.ring.n

    def _val(self, c: Cochain, *args):
        pos = 0
        for a in args:
            pos = pos * self.n + np.asarray(a)
        return c.values[pos]

    def ident(self, x) -> SkeletalMorphism:
        return SkeletalMorphism(x, np.zeros_like(np.asarray(x)), self)

    def s(self, x, y):
        return self.ring.add[x, y]

    def p(self, x, y):
        return self.ring.mul[x, y]

    # constraints; each is an automorphism of the (common) object

    def a_plus(self, x, y, z) -> SkeletalMorphism:
        """x+(y+z) -> (x+y)+z"""
        return SkeletalMorphism(self.s(x, self.s(y, z)), self._val(self.f.xi, x, y, z), self)

    def c(self, x, y) -> SkeletalMorphism:
        """x+y -> y+x"""
        return SkeletalMorphism(self.s(x, y), self._val(self.f.eta, x, y), self)

    def a_times(self, x, y, z) -> SkeletalMorphism:
        """x(yz) -> (xy)z"""
        return SkeletalMorphism(self.p(x, self.p(y, z)), self._val(self.f.alpha, x, y, z), self)

    def L(self, x, y, z) -> SkeletalMorphism:
        """x(y+z) -> xy+xz"""
        return SkeletalMorphism(self.p(x, self.s(y, z)), self._val(self.f.lam, x, y, z), self)

    def R(self, x, y, z) -> SkeletalMorphism:
        """(x+y)z -> xz+yz"""
        return SkeletalMorphism(self.p(self.s(x, y), z), self._val(self.f.rho, x, y, z), self)

    def unit_plus(self, x) -> SkeletalMorphism:
        # strict unit: 0+x = x = x+0 and the unit constraints are identities
        return self.ident(x)

    def unit_times(self, x) -> SkeletalMorphism:
        return self.ident(x)

    def zero_mul(self, x) -> SkeletalMorphism:
        # x0 = 0 = 0x, also strict
        return self.ident(self.p(x, 0 * np.asarray(x)))

    def v(self, x, y, z, t) -> SkeletalMorphism:
        """Interchange (x+y)+(z+t) -> (x+z)+(y+t), canonical factorization."""
        I, S = self.ident, mor_sum
        inv = mor_inverse
        return path(
            inv(self.a_plus(x, y, self.s(z, t))),
            S(I(x), self.a_plus(y, z, t)),
            S(I(x), S(self.c(y, z), I(t))),
            S(I(x), inv(self.a_plus(z, y, t))),
            self.a_plus(x, z, self.s(y, t)),
        )

    def v_alt(self, x, y, z, t) -> SkeletalMorphism:
        """The same interchange through ((x+y)+z)+t."""
        I, S = self.ident, mor_sum
        inv = mor_inverse
        return path(
            self.a_plus(self.s(x, y), z, t),
            S(inv(self.a_plus(x, y, z)), I(t)),
            S(S(I(x), self.c(y, z)), I(t)),
            S(self.a_plus(x, z, y), I(t)),
            inv(self.a_plus(self.s(x, z), y, t)),
        )


_CONSTRAINTS = {"a_plus": ("a_plus", 3), "c": ("c", 2), "a_times": ("a_times", 3), "L": ("L", 3), "R": ("R", 3),
                "unit_plus": ("unit_plus", 1), "unit_times": ("unit_times", 1)}


def constraint_of(kind: str, f: AnnStructure, *args: int) -> SkeletalMorphism:
    """The constraint morphism ``kind`` of ``f`` at the given objects."""
    if kind not in _CONSTRAINTS:
        raise ValueError(f"unknown constraint {kind!r}")
    name, arity = _CONSTRAINTS[kind]
    if len(args) != arity:
        raise TypeError(f"{kind} takes {arity} objects, got {len(args)}")
    return getattr(Skeleton(f), name)(*args)


# each axiom returns the two paths of its diagram


def _pentagon_plus(k: Skeleton, x, y, z, t):
    I, S = k.ident, mor_sum
    return (path(S(I(x), k.a_plus(y, z, t)), k.a_plus(x, k.s(y, z), t), S(k.a_plus(x, y, z), I(t))),
            path(k.a_plus(x, y, k.s(z, t)), k.a_plus(k.s(x, y), z, t)))


def _hexagon_c(k: Skeleton, x, y, z):
    I, S = k.ident, mor_sum
    return (path(k.a_plus(x, y, z), k.c(k.s(x, y), z), k.a_plus(z, x, y)),
            path(S(I(x), k.c(y, z)), k.a_plus(x, z, y), S(k.c(x, z), I(y))))


def _c_involution(k: Skeleton, x, y):
    return path(k.c(x, y), k.c(y, x)), k.ident(k.s(x, y))


def _unit_plus(k: Skeleton, x, y):
    # strict zero: the triangle and its consequences force these to be identities
    zero = 0 * np.asarray(x)
    I, S = k.ident, mor_sum
    return [(path(k.a_plus(x, zero, y), S(k.unit_plus(x), I(y))), k.ident(k.s(x, y))),
            (k.a_plus(zero, x, y), k.ident(k.s(x, y))),
            (k.a_plus(x, y, zero), k.ident(k.s(x, y))),
            (k.c(x, zero), k.ident(x)),
            (k.c(zero, y), k.ident(y))]


def _pentagon_times(k: Skeleton, x, y, z, t):
    I, P = k.ident, mor_prod
    return (path(P(I(x), k.a_times(y, z, t)), k.a_times(x, k.p(y, z), t), P(k.a_times(x, y, z), I(t))),
            path(k.a_times(x, y, k.p(z, t)), k.a_times(k.p(x, y), z, t)))


def _triangle_times(k: Skeleton, x, y):
    one = np.full_like(np.asarray(x), k.ring.one)
    I, P = k.ident, mor_prod
    return [(path(k.a_times(x, one, y), P(k.unit_times(x), I(y))), P(I(x), k.unit_times(y))),
            (k.a_times(one, x, y), k.ident(k.p(x, y))),
            (k.a_times(x, y, one), k.ident(k.p(x, y)))]


def _ann1_L_assoc(k: Skeleton, x, y, z, t):
    I, S, P = k.ident, mor_sum, mor_prod
    xy, xz, xt = k.p(x, y), k.p(x, z), k.p(x, t)
    return (path(k.L(x, y, k.s(z, t)), S(I(xy), k.L(x, z, t)), k.a_plus(xy, xz, xt)),
            path(P(I(x), k.a_plus(y, z, t)), k.L(x, k.s(y, z), t), S(k.L(x, y, z), I(xt))))


def _ann1_L_comm(k: Skeleton, x, y, z):
    I, P = k.ident, mor_prod
    return (path(k.L(x, y, z), k.c(k.p(x, y), k.p(x, z))),
            path(P(I(x), k.c(y, z)), k.L(x, z, y)))


def _ann1_R_assoc(k: Skeleton, x, y, z, t):
    I, S, P = k.ident, mor_sum, mor_prod
    xt, yt, zt = k.p(x, t), k.p(y, t), k.p(z, t)
    return (path(k.R(x, k.s(y, z), t), S(I(xt), k.R(y, z, t)), k.a_plus(xt, yt, zt)),
            path(P(k.a_plus(x, y, z), I(t)), k.R(k.s(x, y), z, t), S(k.R(x, y, t), I(zt))))


def _ann1_R_comm(k: Skeleton, x, y, z):
    I, P = k.ident, mor_prod
    return (path(k.R(x, y, z), k.c(k.p(x, z), k.p(y, z))),
            path(P(k.c(x, y), I(z)), k.R(y, x, z)))


def _ann2_d1(k: Skeleton, a, b, x, y):
    # a(b(x+y)) -> (ab)x + (ab)y
    I, S, P = k.ident, mor_sum, mor_prod
    return (path(k.a_times(a, b, k.s(x, y)), k.L(k.p(a, b), x, y)),
            path(P(I(a), k.L(b, x, y)), k.L(a, k.p(b, x), k.p(b, y)), S(k.a_times(a, b, x), k.a_times(a, b, y))))


def _ann2_d2(k: Skeleton, x, y, b, a):
    # (x+y)(ba) -> (xb)a + (yb)a
    I, S, P = k.ident, mor_sum, mor_prod
    return (path(k.a_times(k.s(x, y), b, a), P(k.R(x, y, b), I(a)), k.R(k.p(x, b), k.p(y, b), a)),
            path(k.R(x, y, k.p(b, a)), S(k.a_times(x, b, a), k.a_times(y, b, a))))


def _ann2_d3(k: Skeleton, a, x, y, b):
    # a((x+y)b) -> (ax)b + (ay)b
    I, S, P = k.ident, mor_sum, mor_prod
    return (path(k.a_times(a, k.s(x, y), b), P(k.L(a, x, y), I(b)), k.R(k.p(a, x), k.p(a, y), b)),
            path(P(I(a), k.R(x, y, b)), k.L(a, k.p(x, b), k.p(y, b)), S(k.a_times(a, x, b), k.a_times(a, y, b))))


def _ann2_d4(k: Skeleton, a, b, x, y):
    # (a+b)(x+y) -> (ax+ay)+(bx+by)
    S = mor_sum
    p = k.p
    return (path(k.L(k.s(a, b), x, y), S(k.R(a, b, x), k.R(a, b, y)), k.v(p(a, x), p(b, x), p(a, y), p(b, y))),
            path(k.R(a, b, k.s(x, y)), S(k.L(a, x, y), k.L(b, x, y))))


def _ann3_L(k: Skeleton, x, y):
    one = np.full_like(np.asarray(x), k.ring.one)
    S = mor_sum
    return path(k.L(one, x, y), S(k.unit_times(x), k.unit_times(y))), k.unit_times(k.s(x, y))


def _ann3_R(k: Skeleton, x, y):
    one = np.full_like(np.asarray(x), k.ring.one)
    S = mor_sum
    return path(k.R(x, y, one), S(k.unit_times(x), k.unit_times(y))), k.unit_times(k.s(x, y))


def _unit_zero_L(k: Skeleton, x, y):
    # the zero object is strict, so every constraint with a 0 argument is trivial
    zero = 0 * np.asarray(x)
    I, S = k.ident, mor_sum
    return [(path(k.L(x, zero, y), S(k.zero_mul(x), I(k.p(x, y)))), k.ident(k.p(x, y))),
            (k.L(x, y, zero), k.ident(k.p(x, y))),
            (k.L(zero, x, y), k.ident(zero)),
            (k.a_times(zero, x, y), k.ident(zero)),
            (k.a_times(x, zero, y), k.ident(zero)),
            (k.a_times(x, y, zero), k.ident(zero))]


def _unit_zero_R(k: Skeleton, x, y):
    zero = 0 * np.asarray(x)
    I, S = k.ident, mor_sum
    return [(path(k.R(x, zero, y), S(I(k.p(x, y)), k.zero_mul(y))), k.ident(k.p(x, y))),
            (k.R(zero, x, y), k.ident(k.p(x, y))),
            (k.R(x, y, zero), k.ident(zero))]


# consequences of the axioms, used to cross-check the interchange construction


def _ann1_L_v(k: Skeleton, a, x, y, z, t):
    S, P, I = mor_sum, mor_prod, k.ident
    p, s = k.p, k.s
    return (path(k.L(a, s(x, y), s(z, t)), S(k.L(a, x, y), k.L(a, z, t)), k.v(p(a, x), p(a, y), p(a, z), p(a, t))),
            path(P(I(a), k.v(x, y, z, t)), k.L(a, s(x, z), s(y, t)), S(k.L(a, x, z), k.L(a, y, t))))


def _ann1_R_v(k: Skeleton, a, x, y, z, t):
    S, P, I = mor_sum, mor_prod, k.ident
    p, s = k.p, k.s
    return (path(k.R(s(x, y), s(z, t), a), S(k.R(x, y, a), k.R(z, t, a)), k.v(p(x, a), p(y, a), p(z, a), p(t, a))),
            path(P(k.v(x, y, z, t), I(a)), k.R(s(x, z), s(y, t), a), S(k.R(x, z, a), k.R(y, t, a))))


def _v_hexagon(k: Skeleton, a, b, c, d, x, y, z, t):
    S, s = mor_sum, k.s
    return (path(k.v(s(a, b), s(c, d), s(x, y), s(z, t)), S(k.v(a, b, x, y), k.v(c, d, z, t)),
                 k.v(s(a, x), s(b, y), s(c, z), s(d, t))),
            path(S(k.v(a, b, c, d), k.v(x, y, z, t)), k.v(s(a, c), s(b, d), s(x, z), s(y, t)),
                 S(k.v(a, c, x, z), k.v(b, d, y, t))))


def _v_involution(k: Skeleton, x, y, z, t):
    return path(k.v(x, y, z, t), k.v(x, z, y, t)), k.ident(k.s(k.s(x, y), k.s(z, t)))


def _v_factorizations(k: Skeleton, x, y, z, t):
    return k.v(x, y, z, t), k.v_alt(x, y, z, t)


AXIOMS: dict[str, tuple[int, object]] = {
    "pentagon-plus": (4, _pentagon_plus),
    "hexagon-c": (3, _hexagon_c),
    "c-involution": (2, _c_involution),
    "unit-plus": (2, _unit_plus),
    "pentagon-times": (4, _pentagon_times),
    "triangle-times": (2, _triangle_times),
    "ann1-L-assoc": (4, _ann1_L_assoc),
    "ann1-L-comm": (3, _ann1_L_comm),
    "ann1-R-assoc": (4, _ann1_R_assoc),
    "ann1-R-comm": (3, _ann1_R_comm),
    "ann2-d1": (4, _ann2_d1),
    "ann2-d2": (4, _ann2_d2),
    "ann2-d3": (4, _ann2_d3),
    "ann2-d4": (4, _ann2_d4),
    "ann3-L": (2, _ann3_L),
    "ann3-R": (2, _ann3_R),
    "unit-zero-L": (2, _unit_zero_L),
    "unit-zero-R": (2, _unit_zero_R),
}
DERIVED: dict[str, tuple[int, object]] = {
    "ann1-L-v": (5, _ann1_L_v),
    "ann1-R-v": (5, _ann1_R_v),
    "v-hexagon": (8, _v_hexagon),
    "v-involution": (4, _v_involution),
    "v-factorizations": (4, _v_factorizations),
}


def _grid(ring, nvars):
    key = ("grid", nvars)
    if key not in ring._cache:
        g = instance_grid(ring.n, nvars)
        ring._cache[key] = g
    return ring._cache[key]


def axiom_residuals(f: AnnStructure, axiom: str) -> tuple[np.ndarray, np.ndarray]:
    """``(instances, residual)``: path difference in ``M`` for every argument tuple.

    Axioms made of several separate squares stack their instances.
    """
    nvars, fn = AXIOMS.get(axiom) or DERIVED[axiom]
    k = Skeleton(f)
    inst = _grid(f.ring, nvars)
    N = inst.shape[0]
    out = fn(k, *[inst[:, i] for i in range(nvars)])
    pairs = out if isinstance(out, list) else [out]
    M = f.module
    res = []
    for p1, p2 in pairs:
        if not np.array_equal(np.broadcast_to(p1.obj, (N,)), np.broadcast_to(p2.obj, (N,))):
            raise DomainError(f"{axiom}: the two paths end on different objects")
        res.append(M.add[np.broadcast_to(p1.val, (N,)), M.neg[np.broadcast_to(p2.val, (N,))]])
    return np.concatenate([inst] * len(pairs)), np.concatenate(res)


@dataclass
class AxiomFailure:
    axiom: str
    count: int
    witnesses: list[tuple[int, ...]]

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "count": self.count, "witnesses": [list(w) for w in self.witnesses]}


@dataclass
class DiagramReport:
    checked: list[str] = field(default_factory=list)
    failures: list[AxiomFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed(self) -> list[str]:
        return [a.axiom for a in self.failures]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": [a.to_json() for a in self.failures]}


def verify_axioms(f: AnnStructure, *, derived: bool = False, cap: int = 10) -> DiagramReport:
    """Check every Ann-category axiom diagram (and optionally the derived interchange coherences)."""
    rep = DiagramReport()
    names = list(AXIOMS) + (list(DERIVED) if derived else [])
    for name in names:
        rep.checked.append(name)
        inst, res = axiom_residuals(f, name)
        bad = np.flatnonzero(res)
        if bad.size:
            rep.failures.append(AxiomFailure(name, int(bad.size), [tuple(int(v) for v in inst[i]) for i in bad[:cap]]))
    return rep


def interchange_v(f: AnnStructure, x: int, y: int, z: int, t: int, *, factorization: str = "canonical"
                  ) -> SkeletalMorphism:
    """The interchange morphism ``(x+y)+(z+t) -> (x+z)+(y+t)`` as a composite of constraints."""
    k = Skeleton(f)
    return (k.v if factorization == "canonical" else k.v_alt)(x, y, z, t)


def interchange_table(f: AnnStructure, factorization: str = "canonical") -> np.ndarray:
    """Values of the interchange at every 4-tuple, flat in lexicographic order."""
    inst = _grid(f.ring, 4)
    k = Skeleton(f)
    m = (k.v if factorization == "canonical" else k.v_alt)(*[inst[:, i] for i in range(4)])
    return np.asarray(m.val, dtype=np.int64)


def interchange_mismatches(f: AnnStructure, cap: int = 10) -> list[tuple[int, ...]]:
    """Tuples where the two factorizations of the interchange disagree (none for valid structures)."""
    a, b = interchange_table(f), interchange_table(f, "alternate")
    inst = _grid(f.ring, 4)
    return [tuple(int(v) for v in inst[i]) for i in np.flatnonzero(a != b)[:cap]]


def check_ann_functor(source: AnnStructure, target: AnnStructure, breve: Cochain, tilde: Cochain,
                      cap: int = 10) -> DiagramReport:
    """Compatibility of ``(id, breve, tilde)`` from the structure ``source`` to ``target``.

    ``breve(x, y)`` is the value of ``x+y -> x+y`` relating the two sums and
    ``tilde(x, y)`` that of ``xy -> xy``.  Each constraint of ``source``,
    pushed through the functor, must equal the one of ``target``.
    """
    ks, kt = Skeleton(source), Skeleton(target)
    ring, M = source.ring, source.module
    n = ring.n

    def B(x, y):
        return SkeletalMorphism(ring.add[x, y], breve.values[np.asarray(x) * n + y], kt)

    def T(x, y):
        return SkeletalMorphism(ring.mul[x, y], tilde.values[np.asarray(x) * n + y], kt)

    def src(m: SkeletalMorphism) -> SkeletalMorphism:
        # F = id on objects and on automorphism values
        return SkeletalMorphism(m.obj, m.val, kt)

    I, S, P = kt.ident, mor_sum, mor_prod
    s, p = ring.add, ring.mul

    def a_plus(x, y, z):
        return (path(S(I(x), B(y, z)), B(x, s[y, z]), src(ks.a_plus(x, y, z))),
                path(kt.a_plus(x, y, z), S(B(x, y), I(z)), B(s[x, y], z)))

    def comm(x, y):
        return path(B(x, y), src(ks.c(x, y))), path(kt.c(x, y), B(y, x))

    def a_times(x, y, z):
        return (path(P(I(x), T(y, z)), T(x, p[y, z]), src(ks.a_times(x, y, z))),
                path(kt.a_times(x, y, z), P(T(x, y), I(z)), T(p[x, y], z)))

    def left(x, y, z):
        # x(y+z): F(x) F(y+z) <- F(x)(Fy+Fz)
        return (path(P(I(x), B(y, z)), T(x, s[y, z]), src(ks.L(x, y, z))),
                path(kt.L(x, y, z), S(T(x, y), T(x, z)), B(p[x, y], p[x, z])))

    def right(x, y, z):
        return (path(P(B(x, y), I(z)), T(s[x, y], z), src(ks.R(x, y, z))),
                path(kt.R(x, y, z), S(T(x, z), T(y, z)), B(p[x, z], p[y, z])))

    def interchange(x, y, z, t):
        # both sides (x+y)+(z+t) -> (x+z)+(y+t), as in the functor square for v
        return (path(S(B(x, y), B(z, t)), B(s[x, y], s[z, t]), src(ks.v(x, y, z, t))),
                path(kt.v(x, y, z, t), S(B(x, z), B(y, t)), B(s[x, z], s[y, t])))

    checks = {"functor-a+": (3, a_plus), "functor-c": (2, comm), "functor-a": (3, a_times),
              "functor-L": (3, left), "functor-R": (3, right), "functor-v": (4, interchange)}
    rep = DiagramReport()
    for name, (nv, fn) in checks.items():
        rep.checked.append(name)
        inst = _grid(ring, nv)
        p1, p2 = fn(*[inst[:, i] for i in range(nv)])
        res = M.add[p1.val, M.neg[p2.val]]
        bad = np.flatnonzero(res)
        if bad.size:
            rep.failures.append(AxiomFailure(name, int(bad.size), [tuple(int(v) for v in inst[i]) for i in bad[:cap]]))
    return rep


def append_discrepancies(path_: str | Path, records: list[dict]) -> None:
    """Append records to a JSON-lines discrepancy log (never rewrites earlier lines)."""
    with open(path_, "a", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True) + "\n")


__all__ = ["SkeletalMorphism", "Skeleton", "mor_compose", "mor_sum", "mor_prod", "mor_inverse", "path",
           "verify_axioms", "axiom_residuals", "constraint_of", "interchange_v", "interchange_table", "interchange_mismatches",
           "check_ann_functor", "AXIOMS", "DERIVED", "DiagramReport", "append_discrepancies", "flatten"]

"""A small term language for linear identities between cochains.

An identity is written once, as Python arithmetic over ring variables, e.g.::

    lambda c, x, y, z: [(x * c.eta(y, z) - c.eta(x * y, x * z),
                         c.lam(x, y, z) - c.lam(x, z, y))]

Variables are numpy index arrays ranging over all instances at once, so the
same definition can be evaluated on concrete cochains (vectorized) or
assembled into an integer matrix acting on free-support coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Bimodule, FiniteRing
from .cochains import ARITY, Layout, flatten


class Var:
    __slots__ = ("ring", "idx")

    def __init__(self, ring: FiniteRing, idx):
        self.ring = ring
        self.idx = idx

    def __add__(self, other: "Var") -> "Var":
        return Var(self.ring, self.ring.add[self.idx, other.idx])

    def __mul__(self, other):
        if isinstance(other, Var):
            return Var(self.ring, self.ring.mul[self.idx, other.idx])
        return other._act_left(self)


@dataclass
class Term:
    kind: str
    args: tuple
    sign: int = 1
    left: object = None  # ring index array or None
    right: object = None

    def _act_left(self, x: Var) -> "Term":
        ring = x.ring
        left = x.idx if self.left is None else ring.mul[x.idx, self.left]
        return Term(self.kind, self.args, self.sign, left, self.right)

    def __mul__(self, t: Var) -> "Term":
        right = t.idx if self.right is None else t.ring.mul[self.right, t.idx]
        return Term(self.kind, self.args, self.sign, self.left, right)

    def __neg__(self) -> "Term":
        return Term(self.kind, self.args, -self.sign, self.left, self.right)

    def __add__(self, other) -> "Expr":
        return Expr([self]) + other

    def __sub__(self, other) -> "Expr":
        return Expr([self]) - other


class Expr:
    def __init__(self, terms: list[Term] | None = None):
        self.terms = list(terms or [])

    def _act_left(self, x: Var) -> "Expr":
        return Expr([t._act_left(x) for t in self.terms])

    def __mul__(self, t: Var) -> "Expr":
        return Expr([term * t for term in self.terms])

    def __neg__(self) -> "Expr":
        return Expr([-t for t in self.terms])

    def __add__(self, other) -> "Expr":
        other = other if isinstance(other, Expr) else Expr([other])
        return Expr(self.terms + other.terms)

    def __sub__(self, other) -> "Expr":
        other = other if isinstance(other, Expr) else Expr([other])
        return self + (-other)


ZERO = Expr()


class Symbols:
    """Term constructors: ``c.xi(x, y, z)``, ``c.lam(...)`` and so on."""

    def __init__(self, ring: FiniteRing):
        self._n = ring.n

    def _make(self, kind, args):
        if len(args) != ARITY[kind]:
            raise TypeError(f"{kind} takes {ARITY[kind]} arguments")
        return Term(kind, tuple(a.idx for a in args))

    def xi(self, *a): return self._make("xi", a)
    def eta(self, *a): return self._make("eta", a)
    def alpha(self, *a): return self._make("alpha", a)
    def lam(self, *a): return self._make("lambda", a)
    def rho(self, *a): return self._make("rho", a)
    def sigma(self, *a): return self._make("sigma", a)
    def mu(self, *a): return self._make("mu", a)
    def nu(self, *a): return self._make("nu", a)


@dataclass
class CompiledTerm:
    kind: str
    pos: np.ndarray  # flat cochain position per instance
    sign: int
    left: np.ndarray | None
    right: np.ndarray | None


@dataclass
class CompiledEquation:
    instances: np.ndarray  # (N, nvars) ring indices
    terms: list[CompiledTerm]  # residual = lhs - rhs


def instance_grid(n: int, nvars: int) -> np.ndarray:
    if nvars == 0:
        return np.zeros((1, 0), dtype=np.int64)
    g = np.meshgrid(*[np.arange(n)] * nvars, indexing="ij")
    return np.stack([x.reshape(-1) for x in g], axis=1)


def compile_equations(fn, nvars: int, ring: FiniteRing, instances: np.ndarray | None = None) -> list[CompiledEquation]:
    """Trace ``fn(symbols, *vars)`` over every instance (or the given ones)."""
    inst = instance_grid(ring.n, nvars) if instances is None else np.asarray(instances, dtype=np.int64)
    vars_ = [Var(ring, inst[:, i]) for i in range(nvars)]
    eqs = fn(Symbols(ring), *vars_)
    out = []
    n = ring.n
    N = inst.shape[0]
    for lhs, rhs in eqs:
        lhs = lhs if isinstance(lhs, Expr) else Expr([lhs])
        rhs = rhs if isinstance(rhs, Expr) else Expr([rhs])
        terms = []
        for t in (lhs - rhs).terms:
            pos = np.zeros(N, dtype=np.int64)
            for a in t.args:
                pos = pos * n + np.broadcast_to(a, (N,))
            bc = (lambda v: None if v is None else np.broadcast_to(v, (N,)))
            terms.append(CompiledTerm(t.kind, pos, t.sign, bc(t.left), bc(t.right)))
        out.append(CompiledEquation(inst, terms))
    return out


def evaluate_residual(eq: CompiledEquation, values: dict[str, np.ndarray], module: Bimodule) -> np.ndarray:
    """Element of ``M`` per instance: lhs minus rhs."""
    N = eq.instances.shape[0]
    acc = np.zeros(N, dtype=np.int64)
    for t in eq.terms:
        v = values[t.kind][t.pos]
        if t.left is not None:
            v = module.left[t.left, v]
        if t.right is not None:
            v = module.right[v, t.right]
        if t.sign < 0:
            v = module.neg[v]
        acc = module.add[acc, v]
    return acc


def assemble_matrix(eq: CompiledEquation, layout: Layout, rows: slice | None = None) -> np.ndarray:
    """Integer matrix ``A`` with ``coords(residual_i) = A[i*k:(i+1)*k] @ x`` mod the moduli of ``M``."""
    module = layout.module
    k = module.k
    sel = slice(None) if rows is None else rows
    N = eq.instances[sel].shape[0]
    A = np.zeros((N * k, layout.size), dtype=np.int64)
    if k == 0:
        return A
    eye = np.broadcast_to(np.eye(k, dtype=np.int64), (N, k, k))
    for t in eq.terms:
        col = layout.col_of[t.kind][t.pos[sel]]
        live = col >= 0
        if not live.any():
            continue
        coef = eye
        if t.left is not None:
            coef = module.lmat[t.left[sel]] @ coef
        if t.right is not None:
            coef = module.rmat[t.right[sel]] @ coef
        coef = t.sign * coef
        inst = np.flatnonzero(live)
        for a, b in itertools.product(range(k), range(k)):
            c = coef[inst, a, b]
            nz = c != 0
            np.add.at(A, (inst[nz] * k + a, col[inst[nz]] + b), c[nz])
    return A


def evaluate_expr_at(fn, ring: FiniteRing, module: Bimodule, values: dict[str, np.ndarray], args: tuple[int, ...]) -> int:
    """Scalar convenience: the residual of the first equation of ``fn`` at one instance."""
    eq = compile_equations(fn, len(args), ring, np.array([args]))[0]
    return int(evaluate_residual(eq, values, module)[0])


__all__ = ["Var", "Term", "Expr", "ZERO", "Symbols", "compile_equations", "evaluate_residual",
           "assemble_matrix", "instance_grid", "flatten", "evaluate_expr_at"]

"""Cocycles, coboundaries, H^3 and classification of structures.

Every group here is a product of cyclic groups written in integer
coordinates (see :class:`anncat.cochains.Layout`), and every map between
them is an integer matrix.  Kernels come from a Hermite basis over
``Z/E``, quotients from a Smith normal form, and preimages from the
augmented Hermite basis in :func:`anncat.intlinalg.solve_mod_system`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, prod

import numpy as np

from .algebra import Bimodule, FiniteRing
from .cochains import (ARITY, PAIR_KINDS, QUADRUPLE_KINDS, STRUCTURE_KINDS, AnnStructure, Cochain, CochainPair,
                       Layout, MacLaneQuadruple, forced_zero_mask, layout_for, search_space_size, unflatten)
from .errors import (BudgetExceededError, InternalInconsistencyError, InvalidStructureError, NormalizationError,
                     SizeRefusalError)
from .expr import assemble_matrix
from .intlinalg import (ModLattice, invariant_factors_of, lattice_dual_basis, mat_inverse_unimodular, rank_mod_p,
                        smith_normal_form, solve_mod_system)
from .relations import (QUADRUPLE_COBOUNDARY, QUADRUPLE_CONDITIONS, REGULAR_RELATION, STRUCTURE_COBOUNDARY,
                        STRUCTURE_RELATIONS, _compiled, apply_structure_coboundary, check_cocycle, check_structure,
                        compiled_relation, sigma_printed)
from .skeleton import interchange_table

__all__ = ["GroupPresentation", "Hom", "smith_normal_form", "kernel_image", "solve_preimage", "compute_h3",
           "H3Data", "class_of", "find_witness", "quadruple_of", "sigma_of", "enumerate_structures",
           "classify", "structure_map", "cocycle_map", "d2_map", "structure_coboundary_map", "quadruple_map"]

DEFAULT_MAX_COORDS = 600
DEFAULT_MAX_ROWS = 5_000_000
CHUNK = 4096


def _lcm(values) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), [int(v) for v in values], 1)


@dataclass
class GroupPresentation:
    """``Z^rank / colspan(relations)``; ``embedding`` maps generators into an ambient group when set."""

    rank: int
    relations: np.ndarray
    embedding: np.ndarray | None = None

    def invariant_factors(self) -> list[int]:
        return invariant_factors_of(self.relations, self.rank)

    def order(self) -> int:
        f = self.invariant_factors()
        if 0 in f:
            raise InternalInconsistencyError("infinite group where a finite one was expected")
        return prod(f)

    @classmethod
    def cyclic_product(cls, moduli) -> "GroupPresentation":
        moduli = [int(m) for m in moduli]
        return cls(len(moduli), np.diag(np.array(moduli, dtype=object)).reshape(len(moduli), len(moduli)))


@dataclass
class Hom:
    """Homomorphism ``prod Z/dom_moduli -> prod Z/cod_moduli`` given by an integer matrix."""

    matrix: np.ndarray
    dom_moduli: np.ndarray
    cod_moduli: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64).reshape(len(self.cod_moduli), len(self.dom_moduli))
        self.dom_moduli = np.asarray(self.dom_moduli, dtype=np.int64)
        self.cod_moduli = np.asarray(self.cod_moduli, dtype=np.int64)

    def __call__(self, x) -> np.ndarray:
        return (self.matrix @ np.asarray(x, dtype=np.int64)) % self.cod_moduli

    def is_well_defined(self) -> bool:
        return not ((self.matrix * self.dom_moduli[None, :]) % self.cod_moduli[:, None]).any()

    @property
    def exponent(self) -> int:
        return _lcm(list(self.dom_moduli) + list(self.cod_moduli))


@dataclass
class Kernel:
    """``K = {x : A x = 0}`` as a lattice ``E * H^-1 Z^g`` plus the quotient by the domain relations."""

    g: int
    E: int
    H: np.ndarray  # canonical Hermite basis of the scaled row lattice
    dom_moduli: np.ndarray

    @property
    def C(self) -> list[list[int]]:
        if not hasattr(self, "_C"):
            self._C = lattice_dual_basis(self.H, self.E)
        return self._C

    def contains(self, x) -> bool:
        return not ((self.H @ np.asarray(x, dtype=np.int64)) % self.E).any()

    def order(self) -> int:
        """``|K / L_dom|``."""
        num = prod(int(d) for d in self.dom_moduli) * prod(int(p) for p in np.diag(self.H))
        den = self.E ** self.g
        if num % den:
            raise InternalInconsistencyError("kernel index is not integral")
        return num // den

    def to_k(self, x) -> np.ndarray:
        """Coordinates of ``x`` in the basis ``C``: ``H x / E``."""
        y = self.H.astype(object) @ np.asarray(x, dtype=object)
        if any(v % self.E for v in y):
            raise InternalInconsistencyError("vector is not in the kernel")
        return np.array([v // self.E for v in y], dtype=object)

    def from_k(self, y) -> np.ndarray:
        C = np.array(self.C, dtype=object).reshape(self.g, self.g)
        x = C @ np.asarray(y, dtype=object)
        return np.array([int(v) % int(d) for v, d in zip(x, self.dom_moduli)], dtype=np.int64)

    def presentation(self) -> GroupPresentation:
        D = np.diag(self.dom_moduli.astype(object)).reshape(self.g, self.g)
        H = self.H.astype(object)
        rel = (H @ D)
        if any(v % self.E for v in rel.flat):
            raise InternalInconsistencyError("domain relations are not in the kernel")
        return GroupPresentation(self.g, rel // self.E, np.array(self.C, dtype=object).reshape(self.g, self.g))


def _row_blocks(h: "Hom | RowSource"):
    if isinstance(h, Hom):
        yield h.matrix, h.cod_moduli
    else:
        yield from h.blocks()


class RowSource:
    """Lazily assembled rows of a large linear system (relation residuals)."""

    def __init__(self, equations, layout: Layout):
        self.equations = equations
        self.layout = layout
        self.dom_moduli = layout.moduli

    @property
    def row_moduli(self) -> np.ndarray:
        return self.layout.module.moduli

    def blocks(self):
        k = self.layout.module.k
        if k == 0:
            return
        for eq in self.equations:
            N = eq.instances.shape[0]
            for s in range(0, N, CHUNK):
                sl = slice(s, min(N, s + CHUNK))
                A = assemble_matrix(eq, self.layout, sl)
                yield A, np.tile(self.layout.module.moduli, A.shape[0] // k)

    def row_count(self) -> int:
        return sum(eq.instances.shape[0] for eq in self.equations) * self.layout.module.k

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        mats, mods = [], []
        for A, m in self.blocks():
            mats.append(A)
            mods.append(m)
        if not mats:
            return np.zeros((0, self.layout.size), dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.concatenate(mats), np.concatenate(mods)


def kernel_of(h, dom_moduli=None) -> Kernel:
    dom = np.asarray(h.dom_moduli if dom_moduli is None else dom_moduli, dtype=np.int64)
    g = dom.size
    mods = set(int(d) for d in dom)
    if isinstance(h, Hom):
        mods |= set(int(m) for m in h.cod_moduli)
    else:
        mods |= set(int(m) for m in h.row_moduli)
    E = _lcm(mods) if mods else 1
    lat = ModLattice(g, E)
    for A, m in _row_blocks(h):
        if A.size:
            lat.insert_many(A * (E // m)[:, None])
    return Kernel(g, E, lat.canonical(), dom)


def kernel_image(h: Hom) -> tuple[GroupPresentation, GroupPresentation]:
    """Presentations of ``ker h`` (embedded in the domain) and ``im h`` (embedded in the codomain)."""
    K = kernel_of(h)
    ker = K.presentation()
    C = np.array(K.C, dtype=object).reshape(K.g, K.g)
    # im h = domain / ker, generated by the images of the domain generators
    img = GroupPresentation(K.g, C, h.matrix.astype(object))
    return ker, img


def solve_preimage(h: Hom, target) -> np.ndarray | None:
    """Some ``x`` with ``h(x) = target``, or None when ``target`` is not in the image."""
    x = solve_mod_system(h.matrix, np.asarray(target, dtype=np.int64), h.cod_moduli)
    if x is None:
        return None
    x = x % h.dom_moduli
    if not np.array_equal(h(x), np.asarray(target) % h.cod_moduli):
        raise InternalInconsistencyError("preimage check failed")
    return x


def solve_preimage_bruteforce(h: Hom, target, budget: int = 1 << 16) -> np.ndarray | None:
    size = prod(int(d) for d in h.dom_moduli)
    if size > budget:
        raise BudgetExceededError(size, budget, "domain")
    t = np.asarray(target) % h.cod_moduli
    for x in itertools.product(*[range(int(d)) for d in h.dom_moduli]):
        if np.array_equal(h(np.array(x, dtype=np.int64)), t):
            return np.array(x, dtype=np.int64)
    return None


# maps between the coordinate groups of (R, M)


def _map_matrix(table: dict, layout_in: Layout, layout_out: Layout) -> np.ndarray:
    ring = layout_in.ring
    k = layout_in.module.k
    rows = []
    for block in layout_out.blocks:
        eq = _compiled(ring, ("map", block.kind, table[block.kind]), table[block.kind], ARITY[block.kind])[0]
        A = assemble_matrix(eq, layout_in)
        if k:
            sel = (block.free[:, None] * k + np.arange(k)[None, :]).reshape(-1)
            rows.append(A[sel])
    if not rows:
        return np.zeros((layout_out.size, layout_in.size), dtype=np.int64)
    return np.concatenate(rows)


def d2_map(ring: FiniteRing, module: Bimodule) -> Hom:
    """``(mu, nu) -> (sigma, alpha, lambda, rho)``."""
    key = ("hom-d2",)
    if key not in module._cache:
        Lp = layout_for(PAIR_KINDS, ring, module)
        Lq = layout_for(QUADRUPLE_KINDS, ring, module)
        module._cache[key] = Hom(_map_matrix(QUADRUPLE_COBOUNDARY, Lp, Lq), Lp.moduli, Lq.moduli)
    return module._cache[key]


def structure_coboundary_map(ring: FiniteRing, module: Bimodule) -> Hom:
    """``(mu, nu) -> (xi, eta, alpha, lambda, rho)``."""
    key = ("hom-delta",)
    if key not in module._cache:
        Lp = layout_for(PAIR_KINDS, ring, module)
        Ls = layout_for(STRUCTURE_KINDS, ring, module)
        module._cache[key] = Hom(_map_matrix(STRUCTURE_COBOUNDARY, Lp, Ls), Lp.moduli, Ls.moduli)
    return module._cache[key]


def structure_map(ring: FiniteRing, module: Bimodule, *, variant: str = "shipped", regular: bool = False) -> RowSource:
    rels = list(STRUCTURE_RELATIONS[variant]) + ([REGULAR_RELATION] if regular else [])
    eqs = [eq for r in rels if r.fn is not None for eq in compiled_relation(r, ring, variant)]
    return RowSource(eqs, layout_for(STRUCTURE_KINDS, ring, module))


def cocycle_map(ring: FiniteRing, module: Bimodule, *, variant: str = "shipped") -> RowSource:
    eqs = [eq for r in QUADRUPLE_CONDITIONS[variant] if r.fn is not None for eq in compiled_relation(r, ring, variant)]
    return RowSource(eqs, layout_for(QUADRUPLE_KINDS, ring, module))


def sigma_of(f: AnnStructure, method: str = "diagram") -> Cochain:
    """sigma from the interchange morphism (``diagram``) or from the closed formula (``printed``)."""
    if method == "diagram":
        return Cochain("sigma", f.ring, f.module, interchange_table(f))
    if method == "printed":
        return sigma_printed(f)
    raise ValueError(f"unknown sigma method {method!r}")


def quadruple_of(f: AnnStructure, method: str = "diagram") -> MacLaneQuadruple:
    s = sigma_of(f, method)
    bad = np.flatnonzero(forced_zero_mask("sigma", f.ring) & (s.values != 0))
    if bad.size:
        raise NormalizationError("sigma", [unflatten(int(i), 4, f.ring.n) for i in bad])
    return MacLaneQuadruple(s, f.alpha, f.lam, f.rho)


def quadruple_map(ring: FiniteRing, module: Bimodule, method: str = "diagram") -> Hom:
    """Matrix of ``f -> quadruple_of(f)`` obtained by probing basis structures (the map is additive)."""
    key = ("hom-phi", method)
    if key not in module._cache:
        Ls = layout_for(STRUCTURE_KINDS, ring, module)
        Lq = layout_for(QUADRUPLE_KINDS, ring, module)
        cols = []
        for j in range(Ls.size):
            x = np.zeros(Ls.size, dtype=np.int64)
            x[j] = 1
            cols.append(Lq.encode(quadruple_of(Ls.decode(AnnStructure, x), method)))
        mat = np.array(cols, dtype=np.int64).T.reshape(Lq.size, Ls.size)
        module._cache[key] = Hom(mat, Ls.moduli, Lq.moduli)
    return module._cache[key]


# H^3


@dataclass
class H3Data:
    ring: FiniteRing
    module: Bimodule
    variant: str
    invariant_factors: list[int]
    order_z3: int
    order_b3: int
    order_h3: int
    kernel: Kernel = field(repr=False)
    U: list = field(repr=False)
    Uinv: list = field(repr=False)
    diag: list = field(repr=False)
    cross_check: dict = field(default_factory=dict)

    @property
    def nontrivial(self) -> list[int]:
        return [i for i, d in enumerate(self.diag) if d != 1]

    def representative(self, label: tuple[int, ...]) -> MacLaneQuadruple:
        z = [0] * len(self.U)
        for i, c in zip(self.nontrivial, label):
            z[i] = int(c)
        y = np.array(self.Uinv, dtype=object).reshape(len(z), len(z)) @ np.array(z, dtype=object)
        x = self.kernel.from_k(y)
        return layout_for(QUADRUPLE_KINDS, self.ring, self.module).decode(MacLaneQuadruple, x)

    def labels(self):
        return itertools.product(*[range(d) for d in self.invariant_factors])

    def add_labels(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def to_json(self) -> dict:
        out = {"type": "h3", "ring_order": self.ring.n, "module_order": self.module.m, "variant": self.variant,
               "invariant_factors": self.invariant_factors, "order_z3": self.order_z3, "order_b3": self.order_b3,
               "order_h3": self.order_h3}
        if self.cross_check:
            out["cross_check"] = self.cross_check
        return out

    def to_text(self) -> str:
        inv = " + ".join(f"Z/{d}" for d in self.invariant_factors) or "0"
        lines = [f"H^3({self.ring.name}, {self.module.name}) = {inv}",
                 f"  |Z^3| = {self.order_z3}, |B^3| = {self.order_b3}, |H^3| = {self.order_h3}"]
        for k, v in self.cross_check.items():
            lines.append(f"  cross-check {k}: {v}")
        return "\n".join(lines)


def _h3_sizes(ring, module, variant) -> dict:
    Lq = layout_for(QUADRUPLE_KINDS, ring, module)
    return {"coordinates": Lq.size, "rows": cocycle_map(ring, module, variant=variant).row_count()}


def compute_h3(ring: FiniteRing, module: Bimodule, *, variant: str = "shipped", cross_check: bool = False,
               max_coords: int = DEFAULT_MAX_COORDS, max_rows: int = DEFAULT_MAX_ROWS,
               brute_budget: int = 1 << 16) -> H3Data:
    """``H^3 = Z^3 / B^3`` with invariant factors, orders and data for :func:`class_of`."""
    key = ("h3", variant)
    if key in module._cache and not cross_check:
        return module._cache[key]
    sizes = _h3_sizes(ring, module, variant)
    if sizes["coordinates"] > max_coords or sizes["rows"] > max_rows:
        raise SizeRefusalError(f"H^3 computation too large: {sizes}", sizes)
    Z = cocycle_map(ring, module, variant=variant)
    K = kernel_of(Z)
    D = d2_map(ring, module)
    if D.matrix.size and ((K.H @ D.matrix) % K.E).any():
        bad = int(np.flatnonzero(((K.H @ D.matrix) % K.E).any(axis=0))[0])
        raise InternalInconsistencyError(f"B^3 is not inside Z^3 for variant {variant!r} (generator {bad})")
    g = K.g
    H = K.H.astype(object)
    gens = np.concatenate([D.matrix.astype(object), np.diag(K.dom_moduli.astype(object)).reshape(g, g)], axis=1) \
        if g else np.zeros((0, 0), dtype=object)
    rel = H @ gens if g else gens
    if any(v % K.E for v in rel.flat):
        raise InternalInconsistencyError("coboundaries do not lie in the cocycle lattice")
    rel = rel // K.E if g else rel
    U, S, _ = smith_normal_form(rel) if g else ([], [], [])
    diag = [S[i][i] if i < len(S[0]) else 0 for i in range(g)]
    if 0 in diag:
        raise InternalInconsistencyError("H^3 came out infinite")
    factors = sorted(d for d in diag if d != 1)
    order_h3 = prod(factors)
    order_z3 = K.order()
    order_b3 = _image_order(D)
    if order_z3 != order_b3 * order_h3:
        raise InternalInconsistencyError(f"|Z|={order_z3} != |B|*|H| = {order_b3}*{order_h3}")
    # keep nontrivial diagonal positions in increasing order so labels follow invariant factors
    data = H3Data(ring, module, variant, factors, order_z3, order_b3, order_h3, K, U,
                  mat_inverse_unimodular(U) if g else [], diag)
    _sort_diag(data)
    if cross_check:
        data.cross_check = _cross_check_h3(ring, module, variant, data, brute_budget)
    else:
        module._cache[key] = data
    return data


def _sort_diag(data: H3Data) -> None:
    # Smith form already has d_1 | d_2 | ..., so nontrivial positions are increasing
    nt = data.nontrivial
    if [data.diag[i] for i in nt] != data.invariant_factors:
        raise InternalInconsistencyError("unexpected Smith diagonal order")


def _image_order(h: Hom) -> int:
    K = kernel_of(h)
    dom = prod(int(d) for d in h.dom_moduli)
    return dom // K.order()


def _cross_check_h3(ring, module, variant, data: H3Data, budget: int) -> dict:
    out = {}
    ps = set(module.factors)
    if len(ps) == 1:
        p = ps.pop()
        if all(p % q for q in range(2, int(p ** 0.5) + 1)):
            A, _ = cocycle_map(ring, module, variant=variant).dense()
            Lq = layout_for(QUADRUPLE_KINDS, ring, module)
            z = p ** (Lq.size - rank_mod_p(A, p))
            b = p ** rank_mod_p(d2_map(ring, module).matrix, p)
            out["rank_mod_p"] = {"order_z3": z, "order_b3": b, "order_h3": z // b,
                                 "agrees": (z, b) == (data.order_z3, data.order_b3)}
    Lp = layout_for(PAIR_KINDS, ring, module)
    pairs = prod(int(d) for d in Lp.moduli)
    if pairs <= budget:
        D = d2_map(ring, module)
        imgs = {tuple(D(np.array(x, dtype=np.int64))) for x in itertools.product(*[range(int(d)) for d in Lp.moduli])}
        out["enumerate_b3"] = {"order_b3": len(imgs), "agrees": len(imgs) == data.order_b3}
    Lq = layout_for(QUADRUPLE_KINDS, ring, module)
    cand = prod(int(d) for d in Lq.moduli)
    if cand <= budget:
        count = 0
        for x in itertools.product(*[range(int(d)) for d in Lq.moduli]):
            q = Lq.decode(MacLaneQuadruple, np.array(x, dtype=np.int64))
            count += check_cocycle(q, variant=variant, cap=1).ok
        out["enumerate_z3"] = {"order_z3": count, "agrees": count == data.order_z3}
    return out


def class_of(q: MacLaneQuadruple, data: H3Data | None = None) -> tuple[int, ...]:
    """Label of the class of a cocycle ``q``: coordinates in ``Z/d_1 + ... + Z/d_r``."""
    if data is None:
        data = compute_h3(q.ring, q.module)
    x = layout_for(QUADRUPLE_KINDS, q.ring, q.module).encode(q)
    if not data.kernel.contains(x):
        rep = check_cocycle(q)
        raise InvalidStructureError("quadruple is not a cocycle: " + ", ".join(rep.failed_ids()), rep)
    y = data.kernel.to_k(x)
    z = np.array(data.U, dtype=object).reshape(len(y), len(y)) @ y if len(y) else y
    return tuple(int(z[i]) % data.diag[i] for i in data.nontrivial)


# witnesses


def find_witness(f: AnnStructure, g: AnnStructure) -> CochainPair | None:
    """A pair ``p`` with ``apply_structure_coboundary(f, p) == g``, or None if none exists."""
    ring, module = f.ring, f.module
    Ls = layout_for(STRUCTURE_KINDS, ring, module)
    Lp = layout_for(PAIR_KINDS, ring, module)
    h = structure_coboundary_map(ring, module)
    t = (Ls.encode(g) - Ls.encode(f)) % Ls.moduli if Ls.size else np.zeros(0, dtype=np.int64)
    if Lp.size == 0:
        return Lp.decode(CochainPair, np.zeros(0, dtype=np.int64)) if not t.any() else None
    x = solve_preimage(h, t)
    if x is None:
        return None
    p = Lp.decode(CochainPair, x)
    if apply_structure_coboundary(f, p) != g:
        raise InternalInconsistencyError("witness does not transport f to g")
    return p


def find_witness_bruteforce(f: AnnStructure, g: AnnStructure, budget: int = 1 << 16) -> CochainPair | None:
    Lp = layout_for(PAIR_KINDS, f.ring, f.module)
    size = prod(int(d) for d in Lp.moduli)
    if size > budget:
        raise BudgetExceededError(size, budget, "pair space")
    for x in itertools.product(*[range(int(d)) for d in Lp.moduli]):
        p = Lp.decode(CochainPair, np.array(x, dtype=np.int64))
        if apply_structure_coboundary(f, p) == g:
            return p
    return None


# enumeration and classification


def structure_kernel(ring: FiniteRing, module: Bimodule, regular: bool = False) -> Kernel:
    key = ("struct-kernel", regular)
    if key not in module._cache:
        module._cache[key] = kernel_of(structure_map(ring, module, regular=regular))
    return module._cache[key]


def _kernel_elements(K: Kernel):
    pres = K.presentation()
    U, S, V = smith_normal_form(pres.relations) if K.g else ([], [], [])
    # generators of K/L_dom in Smith coordinates: columns of C U^-1
    diag = [S[i][i] if i < len(S[0]) else 0 for i in range(K.g)]
    if K.g == 0:
        yield np.zeros(0, dtype=np.int64)
        return
    Uinv = np.array(mat_inverse_unimodular(U), dtype=object).reshape(K.g, K.g)
    C = np.array(K.C, dtype=object).reshape(K.g, K.g)
    gens = C @ Uinv
    live = [i for i, d in enumerate(diag) if d != 1]
    mods = K.dom_moduli
    G = np.array([[int(v) for v in gens[:, i]] for i in live], dtype=np.int64).reshape(len(live), K.g) % mods
    for coeffs in itertools.product(*[range(diag[i]) for i in live]):
        yield (np.array(coeffs, dtype=np.int64) @ G) % mods if live else np.zeros(K.g, dtype=np.int64)


def enumerate_structures(ring: FiniteRing, module: Bimodule, *, budget: int = 1 << 20, regular: bool = False,
                         method: str = "auto"):
    """Yield every valid structure in lexicographic order of free-support values.

    ``brute`` tests every normalized candidate (``|M|^(free support)`` of them);
    ``kernel`` lists the solution group of the relations directly.  ``auto``
    uses brute force when it fits the budget, the kernel otherwise.
    """
    size = search_space_size(ring, module)
    if method == "auto":
        if size <= budget:
            method = "brute"
        else:
            K = structure_kernel(ring, module, regular)
            if K.order() > budget:
                raise BudgetExceededError(size, budget)
            method = "kernel"
    if method == "brute":
        if size > budget:
            raise BudgetExceededError(size, budget)
        Ls = layout_for(STRUCTURE_KINDS, ring, module)
        vals = [np.arange(module.m)] * Ls.free_count
        for combo in itertools.product(*vals):
            v = np.array(combo, dtype=np.int64)
            parts, off = [], 0
            for b in Ls.blocks:
                arr = np.zeros(ring.n ** ARITY[b.kind], dtype=np.int64)
                arr[b.free] = v[off:off + b.free.size]
                off += b.free.size
                parts.append(Cochain(b.kind, ring, module, arr))
            f = AnnStructure(*parts)
            if check_structure(f, regular=regular, cap=1).ok:
                yield f
        return
    if method == "kernel":
        K = structure_kernel(ring, module, regular)
        if K.order() > budget:
            raise BudgetExceededError(K.order(), budget, "solution set")
        Ls = layout_for(STRUCTURE_KINDS, ring, module)
        found = [Ls.decode(AnnStructure, x) for x in _kernel_elements(K)]
        found.sort(key=lambda f: f.value_key())
        yield from found
        return
    raise ValueError(f"unknown enumeration method {method!r}")


def random_structure(ring: FiniteRing, module: Bimodule, rng: np.random.Generator, regular: bool = False
                     ) -> AnnStructure:
    """Uniformly random valid structure (a random element of the solution group)."""
    K = structure_kernel(ring, module, regular)
    Ls = layout_for(STRUCTURE_KINDS, ring, module)
    if K.g == 0:
        return AnnStructure.zero(ring, module)
    y = [int(v) for v in rng.integers(0, K.E, size=K.g)]
    return Ls.decode(AnnStructure, K.from_k(y))


def random_pair(ring: FiniteRing, module: Bimodule, rng: np.random.Generator) -> CochainPair:
    Lp = layout_for(PAIR_KINDS, ring, module)
    x = np.array([int(rng.integers(0, d)) for d in Lp.moduli], dtype=np.int64)
    return Lp.decode(CochainPair, x)


@dataclass
class ClassificationReport:
    ring: FiniteRing
    module: Bimodule
    search_space: int
    method: str
    structures: list[AnnStructure]
    labels: list[tuple[int, ...]]
    h3: H3Data
    regular_flags: list[bool]
    audit: dict = field(default_factory=dict)

    def classes(self) -> dict[tuple[int, ...], list[int]]:
        out: dict[tuple[int, ...], list[int]] = {}
        for i, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(i)
        return dict(sorted(out.items()))

    def regular_labels(self) -> list[tuple[int, ...]]:
        return sorted({lab for lab, r in zip(self.labels, self.regular_flags) if r})

    def regular_closed(self) -> bool:
        labs = set(self.regular_labels())
        return all(self.h3.add_labels(a, b) in labs for a in labs for b in labs)

    def to_json(self) -> dict:
        cls = self.classes()
        return {
            "type": "classification", "ring_order": self.ring.n, "module_order": self.module.m,
            "search_space": self.search_space, "method": self.method, "valid_structures": len(self.structures),
            "regular_structures": int(sum(self.regular_flags)),
            "h3_invariant_factors": self.h3.invariant_factors, "h3_order": self.h3.order_h3,
            "classes": [{"label": list(k), "size": len(v), "regular": int(sum(self.regular_flags[i] for i in v))}
                        for k, v in cls.items()],
            "regular_classes": [list(k) for k in self.regular_labels()],
            "regular_classes_closed": self.regular_closed(),
            "audit": self.audit,
        }

    def to_text(self) -> str:
        cls = self.classes()
        lines = [f"classification over {self.ring.name} with coefficients {self.module.name}",
                 f"  search space {self.search_space} candidates ({self.method}), "
                 f"{len(self.structures)} valid structures, {sum(self.regular_flags)} regular",
                 "  H^3 = " + (" + ".join(f"Z/{d}" for d in self.h3.invariant_factors) or "0"),
                 f"  {len(cls)} classes hit out of {self.h3.order_h3}"]
        for k, v in cls.items():
            lines.append(f"    class {k}: {len(v)} structures")
        lines.append(f"  regular classes {self.regular_labels()} closed under addition: {self.regular_closed()}")
        for k, v in self.audit.items():
            lines.append(f"  audit {k}: {v}")
        return "\n".join(lines)


def classify(ring: FiniteRing, module: Bimodule, *, budget: int = 1 << 20, method: str = "auto",
             sigma_method: str = "diagram", regular: bool = False, audit_pairs: int = 100,
             seed: int = 0) -> ClassificationReport:
    """Enumerate structures, label each by its class in H^3, and self-audit against find_witness."""
    h3 = compute_h3(ring, module)
    size = search_space_size(ring, module)
    chosen = method if method != "auto" else ("brute" if size <= budget else "kernel")
    structs = list(enumerate_structures(ring, module, budget=budget, method=method, regular=regular))
    labels = [class_of(quadruple_of(f, sigma_method), h3) for f in structs]
    rep = ClassificationReport(ring, module, size, chosen, structs, labels, h3, [f.is_regular() for f in structs])
    rng = np.random.default_rng(seed)
    same = [(i, j) for v in rep.classes().values() for i in v for j in v if i < j]
    if len(same) > audit_pairs:
        same = [same[i] for i in sorted(rng.choice(len(same), audit_pairs, replace=False))]
    ok_same = sum(find_witness(structs[i], structs[j]) is not None for i, j in same)
    rep.audit = {"same_class_pairs": len(same), "same_class_witnessed": ok_same}
    return rep

"""Normalized cochains and the structures built from them.

A cochain of kind ``k`` and arity ``a`` is a function ``R^a -> M`` stored as a
flat array of element indices; the flat position of ``(x_1, ..., x_a)`` is
``sum x_i * n^(a-i)`` (leftmost argument most significant).  Every kind has a
normalization pattern of argument tuples on which it must vanish; the
remaining tuples form its free support.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

import numpy as np

from .algebra import Bimodule, FiniteRing
from .errors import AmbientMismatchError, FormatError, NormalizationError

ARITY = {"xi": 3, "eta": 2, "alpha": 3, "lambda": 3, "rho": 3, "sigma": 4, "mu": 2, "nu": 2}
KINDS = tuple(ARITY)

STRUCTURE_KINDS = ("xi", "eta", "alpha", "lambda", "rho")
QUADRUPLE_KINDS = ("sigma", "alpha", "lambda", "rho")
PAIR_KINDS = ("mu", "nu")


def forced_zero_mask(kind: str, ring: FiniteRing) -> np.ndarray:
    """Boolean array over all argument tuples: True where the cochain must vanish."""
    key = ("forced", kind)
    if key in ring._cache:
        return ring._cache[key]
    a = ARITY[kind]
    n, one = ring.n, ring.one
    g = np.meshgrid(*[np.arange(n)] * a, indexing="ij")
    z = [x == 0 for x in g]
    o = [x == one for x in g]
    if kind in ("xi", "eta", "mu"):
        mask = np.logical_or.reduce(z)
    elif kind in ("alpha", "nu"):
        mask = np.logical_or.reduce(z + o)
    elif kind == "lambda":
        mask = z[0] | o[0] | z[1] | z[2]
    elif kind == "rho":
        mask = z[0] | z[1] | z[2] | o[2]
    elif kind == "sigma":
        x, y, zz, t = z
        mask = (x & y) | (zz & t) | (x & zz) | (y & t) | (y & zz)
    else:
        raise KeyError(kind)
    mask = mask.reshape(-1)
    mask.setflags(write=False)
    ring._cache[key] = mask
    return mask


def free_support(kind: str, ring: FiniteRing) -> np.ndarray:
    """Flat positions of the free argument tuples, in lexicographic order."""
    return np.flatnonzero(~forced_zero_mask(kind, ring))


def unflatten(pos: int, arity: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(arity):
        pos, r = divmod(pos, n)
        out.append(r)
    return tuple(reversed(out))


def flatten(args, n: int) -> int:
    pos = 0
    for a in args:
        pos = pos * n + int(a)
    return pos


def _check_ambient(a, b) -> None:
    if a.ring != b.ring or a.module != b.module:
        raise AmbientMismatchError("cochains live over different (R, M)")


class Cochain:
    """An immutable normalized cochain ``R^arity -> M``."""

    __slots__ = ("kind", "ring", "module", "values")

    def __init__(self, kind: str, ring: FiniteRing, module: Bimodule, values: np.ndarray):
        self.kind = kind
        self.ring = ring
        self.module = module
        v = np.ascontiguousarray(values, dtype=np.int64)
        v.setflags(write=False)
        self.values = v

    @property
    def arity(self) -> int:
        return ARITY[self.kind]

    def __call__(self, *args: int) -> int:
        return int(self.values[flatten(args, self.ring.n)])

    def __getitem__(self, args) -> int:
        return self(*args)

    def __add__(self, other: "Cochain") -> "Cochain":
        return cochain_add(self, other)

    def __neg__(self) -> "Cochain":
        return cochain_neg(self)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return cochain_add(self, cochain_neg(other))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.kind == other.kind and self.ring == other.ring
                and self.module == other.module and np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash((self.kind, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"Cochain({self.kind}, nonzero={int(np.count_nonzero(self.values))})"

    def is_zero(self) -> bool:
        return not self.values.any()

    def entries(self):
        """Yield ``(args, value)`` for every argument tuple."""
        n = self.ring.n
        for pos, args in enumerate(itertools.product(range(n), repeat=self.arity)):
            yield args, int(self.values[pos])

    def to_json(self) -> dict:
        return {"kind": self.kind, "ring_order": self.ring.n, "module_order": self.module.m,
                "values": self.values.tolist()}


def make_cochain(kind: str, ring: FiniteRing, module: Bimodule, entries=None) -> Cochain:
    """Build a cochain; ``entries`` is a flat table of length ``n^arity`` or a dict ``args -> value``.

    Raises FormatError for bad shapes or values and NormalizationError if a
    forced-zero tuple carries a nonzero value.
    """
    if kind not in ARITY:
        raise FormatError(f"unknown cochain kind {kind!r}", "kind")
    size = ring.n ** ARITY[kind]
    if entries is None:
        return Cochain(kind, ring, module, np.zeros(size, dtype=np.int64))
    if isinstance(entries, dict):
        vals = np.zeros(size, dtype=np.int64)
        for args, v in entries.items():
            if len(args) != ARITY[kind] or any(not 0 <= a < ring.n for a in args):
                raise FormatError(f"bad argument tuple {args}", kind)
            vals[flatten(args, ring.n)] = v
    else:
        vals = np.asarray(entries)
        if vals.dtype == object or vals.ndim != 1 or vals.shape[0] != size:
            raise FormatError(f"expected flat table of length {size}, got shape {vals.shape}", kind)
        if vals.size and not np.issubdtype(vals.dtype, np.integer):
            raise FormatError("values must be integers", kind)
    vals = vals.astype(np.int64)
    if vals.size and (vals.min() < 0 or vals.max() >= module.m):
        i = int(np.flatnonzero((vals < 0) | (vals >= module.m))[0])
        raise FormatError(f"value {int(vals[i])} at {unflatten(i, ARITY[kind], ring.n)} is not an element of M", kind)
    bad = np.flatnonzero(forced_zero_mask(kind, ring) & (vals != 0))
    if bad.size:
        raise NormalizationError(kind, [unflatten(int(i), ARITY[kind], ring.n) for i in bad])
    return Cochain(kind, ring, module, vals)


def cochain_add(f: Cochain, g: Cochain) -> Cochain:
    if f.kind != g.kind:
        raise AmbientMismatchError(f"cannot add {f.kind} and {g.kind} cochains")
    _check_ambient(f, g)
    return Cochain(f.kind, f.ring, f.module, f.module.add[f.values, g.values])


def cochain_neg(f: Cochain) -> Cochain:
    return Cochain(f.kind, f.ring, f.module, f.module.neg[f.values])


def random_cochain(kind: str, ring: FiniteRing, module: Bimodule, rng: np.random.Generator) -> Cochain:
    vals = np.zeros(ring.n ** ARITY[kind], dtype=np.int64)
    free = free_support(kind, ring)
    vals[free] = rng.integers(0, module.m, size=free.size)
    return Cochain(kind, ring, module, vals)


class _Family:
    """A fixed tuple of named cochains over a common ``(R, M)``."""

    KINDS: tuple[str, ...] = ()

    def __init__(self, *cochains: Cochain):
        if len(cochains) != len(self.KINDS):
            raise FormatError(f"expected {len(self.KINDS)} cochains")
        for c, k in zip(cochains, self.KINDS):
            if not isinstance(c, Cochain) or c.kind != k:
                raise FormatError(f"expected a {k} cochain, got {getattr(c, 'kind', type(c).__name__)}")
            _check_ambient(c, cochains[0])
        self.parts = tuple(cochains)

    @property
    def ring(self) -> FiniteRing:
        return self.parts[0].ring

    @property
    def module(self) -> Bimodule:
        return self.parts[0].module

    def __getitem__(self, kind: str) -> Cochain:
        return self.parts[self.KINDS.index(kind)]

    def as_dict(self) -> dict[str, Cochain]:
        return dict(zip(self.KINDS, self.parts))

    def __add__(self, other):
        return type(self)(*(a + b for a, b in zip(self.parts, other.parts)))

    def __neg__(self):
        return type(self)(*(-a for a in self.parts))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(tuple(hash(p) for p in self.parts))

    @classmethod
    def zero(cls, ring: FiniteRing, module: Bimodule):
        return cls(*(make_cochain(k, ring, module) for k in cls.KINDS))

    @classmethod
    def from_arrays(cls, ring, module, **arrays):
        return cls(*(make_cochain(k, ring, module, arrays.get(_py(k))) for k in cls.KINDS))

    def value_key(self) -> tuple[int, ...]:
        """Concatenated free-support values, the order used for lexicographic enumeration."""
        return tuple(int(v) for c in self.parts for v in c.values[free_support(c.kind, c.ring)])

    def digest(self) -> str:
        h = hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode())
        return h.hexdigest()[:16]

    def to_json(self) -> dict:
        out = {"type": self.TYPE, "ring": self.ring.to_json(), "module": self.module.to_json()}
        for c in self.parts:
            out[c.kind] = c.values.tolist()
        return out

    @classmethod
    def from_json(cls, data: dict, ring: FiniteRing | None = None, module: Bimodule | None = None):
        if not isinstance(data, dict):
            raise FormatError("expected an object")
        if "ring" in data:
            ring = FiniteRing.from_json(data["ring"])
        if "module" in data:
            if ring is None:
                raise FormatError("a module needs its ring", "ring")
            module = Bimodule.from_json(ring, data["module"])
        if ring is None or module is None:
            raise FormatError("ambient ring and module are required", "ring/module")
        parts = []
        for k in cls.KINDS:
            if k not in data:
                raise FormatError("missing cochain", k)
            parts.append(make_cochain(k, ring, module, data[k]))
        return cls(*parts)


def _py(kind: str) -> str:
    return "lam" if kind == "lambda" else kind


class AnnStructure(_Family):
    """Five cochains ``(xi, eta, alpha, lambda, rho)`` for the constraints a+, c, a, L, R."""

    KINDS = STRUCTURE_KINDS
    TYPE = "structure"

    xi = property(lambda self: self.parts[0])
    eta = property(lambda self: self.parts[1])
    alpha = property(lambda self: self.parts[2])
    lam = property(lambda self: self.parts[3])
    rho = property(lambda self: self.parts[4])

    def is_regular(self) -> bool:
        n = self.ring.n
        return not self.eta.values[np.arange(n) * (n + 1)].any()


class MacLaneQuadruple(_Family):
    KINDS = QUADRUPLE_KINDS
    TYPE = "quadruple"

    sigma = property(lambda self: self.parts[0])
    alpha = property(lambda self: self.parts[1])
    lam = property(lambda self: self.parts[2])
    rho = property(lambda self: self.parts[3])


class CochainPair(_Family):
    KINDS = PAIR_KINDS
    TYPE = "pair"

    mu = property(lambda self: self.parts[0])
    nu = property(lambda self: self.parts[1])


@dataclass(frozen=True)
class Block:
    kind: str
    free: np.ndarray  # flat positions
    offset: int  # first coordinate index


class Layout:
    """Integer coordinates for a family of cochains over the free supports.

    Each free tuple contributes ``k`` coordinates (one per invariant factor
    of ``M``); ``moduli`` gives the modulus of every coordinate.
    """

    def __init__(self, kinds: tuple[str, ...], ring: FiniteRing, module: Bimodule):
        self.kinds = kinds
        self.ring = ring
        self.module = module
        k = module.k
        blocks = []
        off = 0
        col_of = {}
        for kind in kinds:
            free = free_support(kind, ring)
            blocks.append(Block(kind, free, off))
            lookup = np.full(ring.n ** ARITY[kind], -1, dtype=np.int64)
            lookup[free] = off + np.arange(free.size) * k
            col_of[kind] = lookup
            off += free.size * k
        self.blocks = blocks
        self.size = off
        self.col_of = col_of  # flat position -> first coordinate, or -1 if forced zero
        self.moduli = np.tile(module.moduli, sum(b.free.size for b in blocks)) if k else np.zeros(0, dtype=np.int64)
        self.free_count = sum(b.free.size for b in blocks)

    def encode(self, family: _Family) -> np.ndarray:
        parts = []
        for b, c in zip(self.blocks, family.parts):
            parts.append(self.module.coords[c.values[b.free]].reshape(-1))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def decode_values(self, x: np.ndarray) -> list[np.ndarray]:
        k = self.module.k
        out = []
        x = np.asarray(x, dtype=np.int64)
        for b in self.blocks:
            vals = np.zeros(self.ring.n ** ARITY[b.kind], dtype=np.int64)
            if k:
                seg = x[b.offset:b.offset + b.free.size * k].reshape(-1, k)
                vals[b.free] = self.module.from_coords(seg)
            out.append(vals)
        return out

    def decode(self, cls, x: np.ndarray):
        vals = self.decode_values(x)
        return cls(*(Cochain(b.kind, self.ring, self.module, v) for b, v in zip(self.blocks, vals)))


def layout_for(kinds: tuple[str, ...], ring: FiniteRing, module: Bimodule) -> Layout:
    key = ("layout", kinds, ring.fingerprint)
    if key not in module._cache:
        module._cache[key] = Layout(kinds, ring, module)
    return module._cache[key]


def search_space_size(ring: FiniteRing, module: Bimodule, kinds=STRUCTURE_KINDS) -> int:
    """``|M|^(total free support)`` -- the exact size of a brute-force search."""
    return module.m ** sum(int(free_support(k, ring).size) for k in kinds)


def load_cochain(data: dict, ring: FiniteRing, module: Bimodule) -> Cochain:
    if not isinstance(data, dict):
        raise FormatError("cochain file must hold an object")
    for key in ("kind", "ring_order", "module_order", "values"):
        if key not in data:
            raise FormatError("missing field", key)
    if data["ring_order"] != ring.n or data["module_order"] != module.m:
        raise AmbientMismatchError(
            f"cochain declares |R|={data['ring_order']}, |M|={data['module_order']} "
            f"but ambient has |R|={ring.n}, |M|={module.m}")
    return make_cochain(data["kind"], ring, module, data["values"])

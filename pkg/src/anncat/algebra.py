"""Finite rings, finite abelian groups and R-bimodules given by tables.

Elements are indices ``0..n-1`` and index 0 is always the additive identity.
Bimodules additionally carry a coordinate system ``M ~ Z/d_1 + ... + Z/d_k`` (invariant factors, each dividing
the next) so that group homomorphisms can be written as integer matrices.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, InvalidOrderError, InvalidStructureError
from .intlinalg import ModLattice, smith_normal_form


@dataclass(frozen=True)
class Violation:
    law: str
    message: str
    witness: tuple[int, ...]
    count: int = 1

    def to_json(self) -> dict:
        return {"law": self.law, "message": self.message, "witness": list(self.witness), "count": self.count}


@dataclass
class ValidationReport:
    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> list[str]:
        return [v.law for v in self.violations]

    def add(self, law: str, message: str, mask: np.ndarray, grids: tuple[np.ndarray, ...]) -> None:
        bad = np.argwhere(mask)
        if len(bad):
            first = tuple(int(g[tuple(bad[0])]) for g in grids)
            self.violations.append(Violation(law, message.format(*first), first, int(len(bad))))

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "violations": [v.to_json() for v in self.violations]}

    def to_text(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} law(s) violated"]
        for v in self.violations:
            lines.append(f"  [{v.law}] {v.message} (witness {v.witness}, {v.count} instance(s))")
        return "\n".join(lines)


def _table(raw, shape: tuple[int, ...], bound: int, name: str) -> np.ndarray:
    try:
        arr = np.asarray(raw)
    except Exception as exc:  # ragged nested lists
        raise FormatError(f"not a rectangular table ({exc})", name) from None
    if arr.dtype == object or arr.shape != shape:
        raise FormatError(f"expected shape {shape}, got {getattr(arr, 'shape', '?')}", name)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise FormatError("entries must be integers", name)
    arr = arr.astype(np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        bad = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= bound))[0])
        raise FormatError(f"entry {int(arr[bad])} at {bad} out of range 0..{bound - 1}", name)
    return arr


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _fingerprint(*arrays: np.ndarray) -> str:
    h = hashlib.sha256()
    for a in arrays:
        h.update(str(a.shape).encode())
        h.update(np.ascontiguousarray(a, dtype=np.int64).tobytes())
    return h.hexdigest()[:16]


class FiniteRing:
    """A finite unital ring on ``0..n-1``; index 0 is the additive identity.

    The multiplicative identity is found from the table and stored as ``one``.
    """

    def __init__(self, add, mul, *, name: str | None = None, _checked: bool = False):
        add = np.asarray(add)
        n = add.shape[0] if add.ndim == 2 else -1
        if n < 2:
            raise InvalidOrderError("a ring needs at least two elements (0 != 1)")
        self.add = _readonly(_table(add, (n, n), n, "add"))
        self.mul = _readonly(_table(mul, (n, n), n, "mul"))
        self.n = n
        self.name = name or f"R{n}"
        if not _checked:
            rep = validate_ring({"order": n, "add": self.add.tolist(), "mul": self.mul.tolist()})
            if not rep.ok:
                raise InvalidStructureError(rep.to_text(), rep)
        self.one = _find_unit(np.asarray(self.mul))
        neg = np.argmax(self.add == 0, axis=1)
        self.neg = _readonly(neg)
        self.fingerprint = _fingerprint(self.add, self.mul)
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRing) and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name})"

    def to_json(self) -> dict:
        return {"type": "ring", "order": self.n, "add": self.add.tolist(), "mul": self.mul.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteRing":
        if not isinstance(data, dict):
            raise FormatError("ring description must be an object")
        for key in ("order", "add", "mul"):
            if key not in data:
                raise FormatError("missing field", key)
        n = data["order"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise FormatError("must be an integer", "order")
        if n < 2:
            raise InvalidOrderError("a ring needs at least two elements (0 != 1)")
        _table(data["add"], (n, n), n, "add")
        _table(data["mul"], (n, n), n, "mul")
        return cls(data["add"], data["mul"], name=data.get("name"))


def make_cyclic_ring(n: int) -> FiniteRing:
    if not isinstance(n, int) or n < 2:
        raise InvalidOrderError(f"Z/{n} is not a ring with 0 != 1")
    a = np.arange(n)
    return FiniteRing((a[:, None] + a[None, :]) % n, (a[:, None] * a[None, :]) % n, name=f"Z/{n}", _checked=True)


def make_product_ring(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    """Direct product; the pair ``(a, b)`` is flattened to ``a * |r2| + b``."""
    n1, n2 = r1.n, r2.n
    a, b = np.divmod(np.arange(n1 * n2), n2)
    add = r1.add[a[:, None], a[None, :]] * n2 + r2.add[b[:, None], b[None, :]]
    mul = r1.mul[a[:, None], a[None, :]] * n2 + r2.mul[b[:, None], b[None, :]]
    ring = FiniteRing(add, mul, name=f"{r1.name}x{r2.name}", _checked=True)
    ring.pair_of = tuple((int(x), int(y)) for x, y in zip(a, b))
    return ring


def _find_unit(mul: np.ndarray) -> int | None:
    e = np.arange(mul.shape[0])
    ok = np.flatnonzero((mul == e[None, :]).all(axis=1) & (mul.T == e[None, :]).all(axis=1))
    return int(ok[0]) if ok.size else None


def validate_ring(candidate) -> ValidationReport:
    """Check every ring axiom exhaustively; report each violated law once."""
    if isinstance(candidate, FiniteRing):
        candidate = candidate.to_json()
    if not isinstance(candidate, dict):
        raise FormatError("ring description must be an object")
    n = candidate.get("order")
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError("must be an integer", "order")
    if n < 1:
        raise InvalidOrderError("order must be positive")
    add = _table(candidate.get("add"), (n, n), n, "add")
    mul = _table(candidate.get("mul"), (n, n), n, "mul")
    rep = ValidationReport(f"ring of order {n}")
    e = np.arange(n)
    x2, y2 = np.meshgrid(e, e, indexing="ij")
    x3, y3, z3 = np.meshgrid(e, e, e, indexing="ij")
    if n < 2:
        rep.violations.append(Violation("zero-ne-one", "0 = 1 in a ring of order 1", (0,)))
    rep.add("add-identity", "0 is not an additive identity at {0}", (add[0] != e) | (add[:, 0] != e), (e,))
    rep.add("add-commutative", "{0}+{1} != {1}+{0}", add != add.T, (x2, y2))
    rep.add("add-associative", "({0}+{1})+{2} != {0}+({1}+{2})",
            add[add[x3, y3], z3] != add[x3, add[y3, z3]], (x3, y3, z3))
    rep.add("add-inverse", "no additive inverse for {0}", ~(add == 0).any(axis=1), (e,))
    rep.add("mul-associative", "({0}{1}){2} != {0}({1}{2})",
            mul[mul[x3, y3], z3] != mul[x3, mul[y3, z3]], (x3, y3, z3))
    if _find_unit(mul) is None:
        rep.violations.append(Violation("mul-identity", "unit axiom violated: no two-sided multiplicative identity",
                                        (1,) if n > 1 else (0,)))
    rep.add("left-distributive", "{0}({1}+{2}) != {0}{1}+{0}{2}",
            mul[x3, add[y3, z3]] != add[mul[x3, y3], mul[x3, z3]], (x3, y3, z3))
    rep.add("right-distributive", "({0}+{1}){2} != {0}{2}+{1}{2}",
            mul[add[x3, y3], z3] != add[mul[x3, z3], mul[y3, z3]], (x3, y3, z3))
    return rep


def _abelian_group_report(add: np.ndarray, subject: str) -> ValidationReport:
    m = add.shape[0]
    rep = ValidationReport(subject)
    e = np.arange(m)
    x2, y2 = np.meshgrid(e, e, indexing="ij")
    x3, y3, z3 = np.meshgrid(e, e, e, indexing="ij")
    rep.add("group-identity", "0 is not the identity of M at {0}", (add[0] != e) | (add[:, 0] != e), (e,))
    rep.add("group-commutative", "{0}+{1} != {1}+{0} in M", add != add.T, (x2, y2))
    rep.add("group-associative", "({0}+{1})+{2} != {0}+({1}+{2}) in M",
            add[add[x3, y3], z3] != add[x3, add[y3, z3]], (x3, y3, z3))
    rep.add("group-inverse", "no inverse for {0} in M", ~(add == 0).any(axis=1), (e,))
    return rep


def _group_from_factors(factors: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Addition table and coordinates for Z/d_1 + ... (leftmost coordinate most significant)."""
    coords = np.array(list(itertools.product(*[range(d) for d in factors])), dtype=np.int64).reshape(-1, len(factors))
    if not factors:
        coords = np.zeros((1, 0), dtype=np.int64)
    d = np.array(factors, dtype=np.int64)
    weights = np.array([int(np.prod(factors[i + 1:])) for i in range(len(factors))], dtype=np.int64)
    s = (coords[:, None, :] + coords[None, :, :]) % d if factors else np.zeros((1, 1, 0), dtype=np.int64)
    add = (s * weights).sum(axis=2) if factors else np.zeros((1, 1), dtype=np.int64)
    return add.astype(np.int64), coords


def group_coordinates(add: np.ndarray) -> tuple[list[int], np.ndarray]:
    """Invariant factors and a coordinate isomorphism for a finite abelian group table.

    A generating set ``s_1..s_k`` is picked greedily and every element gets a
    word ``w(a)`` in ``Z^k`` by breadth-first search.  The relation lattice
    is spanned by ``w(a) + e_i - w(a + s_i)`` (closed loops in the Cayley
    graph), and the Smith form of its Hermite basis gives the decomposition.
    Returns ``(factors, coords)`` with ``coords[a]`` the image of element ``a``.
    """
    m = add.shape[0]
    if m == 1:
        return [], np.zeros((1, 0), dtype=np.int64)
    gens: list[int] = []
    word: dict[int, tuple[int, ...]] = {0: ()}
    for cand in range(1, m):
        if cand in word:
            continue
        gens.append(cand)
        word = {a: w + (0,) for a, w in word.items()}
        frontier = list(word)
        while frontier:
            nxt = []
            for a in frontier:
                for i, s in enumerate(gens):
                    b = int(add[a, s])
                    if b not in word:
                        w = list(word[a])
                        w[i] += 1
                        word[b] = tuple(w)
                        nxt.append(b)
            frontier = nxt
    k = len(gens)
    W = np.array([word[a] for a in range(m)], dtype=np.int64)
    # the relation lattice contains m * Z^k, so a Hermite basis mod m is exact
    lat = ModLattice(k, m)
    rows = W[:, None, :] + np.eye(k, dtype=np.int64)[None, :, :] - W[add[:, gens]]
    lat.insert_many(rows.reshape(-1, k))
    rel = lat.canonical().T.astype(object)
    U, S, _ = smith_normal_form(rel)
    diag = [S[i][i] for i in range(k)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise InvalidStructureError("group table does not describe a finite abelian group")
    factors = [diag[i] for i in keep]
    Uk = np.array([[U[i][j] for j in range(k)] for i in keep], dtype=object).reshape(len(keep), k)
    img = W.astype(object) @ Uk.T
    coords = np.array([[int(v) % f for v, f in zip(row, factors)] for row in img], dtype=np.int64)
    return factors, coords.reshape(m, len(keep))


class Bimodule:
    """A finite abelian group with commuting left and right ring actions.

    ``left[r, u]`` is ``r.u`` and ``right[u, r]`` is ``u.r``.  ``coords`` and
    ``factors`` fix an isomorphism with ``Z/d_1 + ... + Z/d_k``; ``lmat[r]`` and
    ``rmat[r]`` are the actions written in those coordinates.
    """

    def __init__(self, ring: FiniteRing, add, left, right, *, name: str | None = None,
                 factors: list[int] | None = None, coords: np.ndarray | None = None,
                 _checked: bool = False):
        self.ring = ring
        add = np.asarray(add)
        m = add.shape[0] if add.ndim == 2 else -1
        if m < 1:
            raise InvalidOrderError("module order must be positive")
        n = ring.n
        self.add = _readonly(_table(add, (m, m), m, "group_add"))
        self.left = _readonly(_table(left, (n, m), m, "left_action"))
        self.right = _readonly(_table(right, (m, n), m, "right_action"))
        self.m = m
        self.name = name or f"M{m}"
        if not _checked:
            rep = validate_bimodule(ring, {"group_add": self.add.tolist(), "left_action": self.left.tolist(),
                                           "right_action": self.right.tolist()})
            if not rep.ok:
                raise InvalidStructureError(rep.to_text(), rep)
        self.neg = _readonly(np.argmax(self.add == 0, axis=1))
        if factors is None or coords is None:
            factors, coords = group_coordinates(np.asarray(self.add))
        self.factors = list(int(d) for d in factors)
        self.k = len(self.factors)
        self.coords = _readonly(coords.reshape(m, self.k))
        self.moduli = _readonly(np.array(self.factors, dtype=np.int64))
        weights = [int(np.prod(self.factors[i + 1:])) for i in range(self.k)]
        self._weights = np.array(weights, dtype=np.int64)
        lookup = np.zeros(m, dtype=np.int64)
        keys = (self.coords * self._weights).sum(axis=1) if self.k else np.zeros(m, dtype=np.int64)
        lookup[keys] = np.arange(m)
        self._lookup = _readonly(lookup)
        self.exponent = int(np.lcm.reduce(self.moduli)) if self.k else 1
        basis = [self.from_coords(np.eye(self.k, dtype=np.int64)[j]) for j in range(self.k)]
        self.lmat = _readonly(np.stack([self.coords[self.left[r, basis]].T for r in range(n)])
                              if self.k else np.zeros((n, 0, 0), dtype=np.int64))
        self.rmat = _readonly(np.stack([self.coords[self.right[basis, r]].T for r in range(n)])
                              if self.k else np.zeros((n, 0, 0), dtype=np.int64))
        self.fingerprint = _fingerprint(ring.add, ring.mul, self.add, self.left, self.right)
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return self.m

    def from_coords(self, c) -> np.ndarray | int:
        """Element index for coordinate vector(s) ``c`` (last axis = coordinates)."""
        c = np.asarray(c, dtype=np.int64)
        if self.k == 0:
            return np.zeros(c.shape[:-1], dtype=np.int64) if c.ndim > 1 else 0
        key = ((c % self.moduli) * self._weights).sum(axis=-1)
        out = self._lookup[key]
        return out if c.ndim > 1 else int(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bimodule) and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __repr__(self) -> str:
        return f"Bimodule({self.name} over {self.ring.name})"

    def to_json(self) -> dict:
        return {"type": "bimodule", "order": self.m, "group_add": self.add.tolist(),
                "left_action": self.left.tolist(), "right_action": self.right.tolist()}

    @classmethod
    def from_json(cls, ring: FiniteRing, data: dict) -> "Bimodule":
        if not isinstance(data, dict):
            raise FormatError("bimodule description must be an object")
        if data.get("regular"):
            return regular_bimodule(ring)
        rep = validate_bimodule(ring, data)
        if not rep.ok:
            raise InvalidStructureError(rep.to_text(), rep)
        add, factors, coords = _bimodule_group(data)
        return cls(ring, add, data["left_action"], data["right_action"], name=data.get("name"),
                   factors=factors, coords=coords, _checked=True)


def _bimodule_group(data: dict):
    if "invariant_factors" in data:
        factors = data["invariant_factors"]
        if not isinstance(factors, list) or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 2
                                                    for d in factors):
            raise FormatError("must be a list of integers >= 2", "invariant_factors")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise FormatError("each invariant factor must divide the next", "invariant_factors")
        add, coords = _group_from_factors(list(factors))
        return add, list(factors), coords
    if "group_add" in data:
        ga = data["group_add"]
        m = len(ga) if isinstance(ga, list) else -1
        if m < 1:
            raise FormatError("must be a non-empty square table", "group_add")
        return _table(ga, (m, m), m, "group_add"), None, None
    raise FormatError("need invariant_factors or group_add", "bimodule")


def validate_bimodule(ring: FiniteRing, candidate) -> ValidationReport:
    """Check the abelian group laws and the bimodule laws (a)..(e) exhaustively.

    Law labels: a/a' distribute actions over M, b/b' over R, c/c' are
    associativity of each action, d/d' are the unit laws and e is
    compatibility of the two actions.
    """
    if isinstance(candidate, Bimodule):
        candidate = candidate.to_json()
    if not isinstance(candidate, dict):
        raise FormatError("bimodule description must be an object")
    add, _, _ = _bimodule_group(candidate)
    m, n = add.shape[0], ring.n
    for key in ("left_action", "right_action"):
        if key not in candidate:
            raise FormatError("missing field", key)
    L = _table(candidate["left_action"], (n, m), m, "left_action")
    R = _table(candidate["right_action"], (m, n), m, "right_action")
    rep = _abelian_group_report(add, f"bimodule of order {m} over ring of order {n}")
    if not rep.ok:
        return rep
    rA, rM = ring.add, ring.mul
    r = np.arange(n)
    u = np.arange(m)
    s3, u3, v3 = np.meshgrid(r, u, u, indexing="ij")
    rep.add("a", "s(u1+u2) != su1+su2 at s={0}, u1={1}, u2={2}",
            L[s3, add[u3, v3]] != add[L[s3, u3], L[s3, v3]], (s3, u3, v3))
    rep.add("a'", "(u1+u2)s != u1s+u2s at s={0}, u1={1}, u2={2}",
            R[add[u3, v3], s3] != add[R[u3, s3], R[v3, s3]], (s3, u3, v3))
    s, t, uu = np.meshgrid(r, r, u, indexing="ij")
    rep.add("b", "(s+t)u != su+tu at s={0}, t={1}, u={2}", L[rA[s, t], uu] != add[L[s, uu], L[t, uu]], (s, t, uu))
    rep.add("b'", "u(s+t) != us+ut at s={0}, t={1}, u={2}", R[uu, rA[s, t]] != add[R[uu, s], R[uu, t]], (s, t, uu))
    rep.add("c", "(st)u != s(tu) at s={0}, t={1}, u={2}", L[rM[s, t], uu] != L[s, L[t, uu]], (s, t, uu))
    rep.add("c'", "u(st) != (us)t at s={0}, t={1}, u={2}", R[uu, rM[s, t]] != R[R[uu, s], t], (s, t, uu))
    one = _find_unit(np.asarray(rM))
    rep.add("d", "1u=u violated: 1u != u at u={0}", L[one] != u, (u,))
    rep.add("d'", "u1=u violated: u1 != u at u={0}", R[:, one] != u, (u,))
    rep.add("e", "(su)t != s(ut) at s={0}, t={1}, u={2}", R[L[s, uu], t] != L[s, R[uu, t]], (s, t, uu))
    return rep


def make_bimodule(ring: FiniteRing, *, invariant_factors=None, group_add=None, left_action, right_action,
                  name: str | None = None) -> Bimodule:
    data = {"left_action": np.asarray(left_action).tolist(), "right_action": np.asarray(right_action).tolist()}
    if invariant_factors is not None:
        data["invariant_factors"] = list(invariant_factors)
    if group_add is not None:
        data["group_add"] = np.asarray(group_add).tolist()
    if name:
        data["name"] = name
    return Bimodule.from_json(ring, data)


def regular_bimodule(ring: FiniteRing) -> Bimodule:
    """``R`` acting on its own additive group by left and right multiplication."""
    return Bimodule(ring, ring.add, ring.mul, ring.mul, name=f"{ring.name} (regular)", _checked=True)


def cyclic_quotient_bimodule(ring: FiniteRing, m: int) -> Bimodule:
    """``Z/m`` over ``Z/n`` (``m`` dividing ``n``) with ``r.u = u.r = ru mod m``."""
    if ring.n % m:
        raise InvalidOrderError(f"{m} does not divide {ring.n}")
    a = np.arange(ring.n)[:, None]
    u = np.arange(m)[None, :]
    return make_bimodule(ring, invariant_factors=[m] if m > 1 else [], left_action=(a * u) % m,
                         right_action=((a * u) % m).T, name=f"Z/{m}")


def trivial_bimodule(ring: FiniteRing) -> Bimodule:
    return Bimodule(ring, [[0]], np.zeros((ring.n, 1), dtype=int), np.zeros((1, ring.n), dtype=int),
                    name="0", factors=[], coords=np.zeros((1, 0), dtype=np.int64), _checked=True)

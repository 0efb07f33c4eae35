"""Adjudication of relation variants against the diagrammatic oracle.

All the checks involved are additive in the structure, so verdicts over the
whole (possibly huge) candidate space are settled by comparing solution
groups: the oracle's residual map is read off by probing basis structures,
its additivity is spot-checked, and the two kernels are compared exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Bimodule, FiniteRing
from .cochains import PAIR_KINDS, QUADRUPLE_KINDS, STRUCTURE_KINDS, AnnStructure, MacLaneQuadruple, layout_for
from .cohomology import Hom, Kernel, d2_map, kernel_of, quadruple_map, structure_map
from .errors import InternalInconsistencyError
from .relations import ALTERNATE_PENTAGON, TYPO_OF_RELATION, TYPOS, _run, check_cocycle, check_structure
from .skeleton import AXIOMS, axiom_residuals, verify_axioms


def oracle_map(ring: FiniteRing, module: Bimodule, rng: np.random.Generator | None = None, checks: int = 5) -> Hom:
    """Matrix of ``f -> (all axiom residuals)`` by probing basis structures, with additivity spot checks."""
    key = ("hom-oracle",)
    if key in module._cache:
        return module._cache[key]
    Ls = layout_for(STRUCTURE_KINDS, ring, module)

    def residual_coords(f):
        return np.concatenate([module.coords[axiom_residuals(f, a)[1]].reshape(-1) for a in AXIOMS])

    cols = []
    for j in range(Ls.size):
        x = np.zeros(Ls.size, dtype=np.int64)
        x[j] = 1
        cols.append(residual_coords(Ls.decode(AnnStructure, x)))
    zero = residual_coords(AnnStructure.zero(ring, module))
    mat = np.array(cols, dtype=np.int64).T if cols else np.zeros((zero.size, 0), dtype=np.int64)
    cod = np.tile(module.moduli, zero.size // module.k) if module.k else np.zeros(0, dtype=np.int64)
    h = Hom(mat.reshape(zero.size, Ls.size), Ls.moduli, cod)
    rng = rng or np.random.default_rng(0)
    for _ in range(checks if Ls.size else 0):
        x = np.array([int(rng.integers(0, d)) for d in Ls.moduli], dtype=np.int64)
        if not np.array_equal(h(x), residual_coords(Ls.decode(AnnStructure, x)) % cod):
            raise InternalInconsistencyError("oracle residuals are not additive")
    module._cache[key] = h
    return h


def oracle_kernel(ring: FiniteRing, module: Bimodule) -> Kernel:
    key = ("oracle-kernel",)
    if key not in module._cache:
        module._cache[key] = kernel_of(oracle_map(ring, module))
    return module._cache[key]


def _kernel_basis(K: Kernel) -> list[np.ndarray]:
    out = []
    for c in range(K.g):
        y = [0] * K.g
        y[c] = 1
        x = K.from_k(y)
        if x.any():
            out.append(x)
    return out


@dataclass
class Adjudication:
    ring: str
    module: str
    variant: str
    structures_equal: bool
    valid_count: int
    relation_valid_count: int
    records: list[dict] = field(default_factory=list)
    cocycle_records: list[dict] = field(default_factory=list)

    @property
    def disagreements(self) -> int:
        return len(self.records) + len(self.cocycle_records)

    def unresolved(self) -> list[dict]:
        return [r for r in self.records + self.cocycle_records if r.get("resolution") is None]


def _record(f, relation, axiom, witness, oracle, variant, kind):
    return {"kind": kind, "structure": f.digest(), "variant": variant, "relation": relation, "axiom": axiom,
            "witness": list(witness) if witness is not None else None, "oracle": oracle,
            "resolution": TYPO_OF_RELATION.get(relation)}


def adjudicate(ring: FiniteRing, module: Bimodule, variant: str = "printed") -> Adjudication:
    """Compare a relation variant with the oracle over every normalized candidate of ``(R, M)``."""
    Ls = layout_for(STRUCTURE_KINDS, ring, module)
    Ko = oracle_kernel(ring, module)
    Kr = kernel_of(structure_map(ring, module, variant=variant))
    equal = np.array_equal(Ko.H, Kr.H)
    out = Adjudication(ring.name, module.name, variant, equal, Ko.order(), Kr.order())
    # oracle-valid structures the variant rejects, and the converse
    for x in _kernel_basis(Ko):
        f = Ls.decode(AnnStructure, x)
        rep = check_structure(f, variant=variant, cap=1)
        if variant == "printed":
            rep.failures += _run([ALTERNATE_PENTAGON], f, variant, "structure", 1).failures
        for fail in rep.failures:
            out.records.append(_record(f, fail.relation, fail.axiom, fail.witnesses[0], "valid", variant, "structure"))
    for x in _kernel_basis(Kr):
        f = Ls.decode(AnnStructure, x)
        rep = verify_axioms(f, cap=1)
        for fail in rep.failures:
            out.records.append(_record(f, None, fail.axiom, fail.witnesses[0], "invalid", variant, "structure"))
    # cocycle conditions: coboundaries and images of valid structures must be cocycles
    Lp = layout_for(PAIR_KINDS, ring, module)
    Lq = layout_for(QUADRUPLE_KINDS, ring, module)
    D = d2_map(ring, module)
    sources = [("coboundary", Lq.decode(MacLaneQuadruple, D(np.eye(Lp.size, dtype=np.int64)[j]))) for j in range(Lp.size)]
    Phi = quadruple_map(ring, module)
    sources += [("structure-image", Lq.decode(MacLaneQuadruple, Phi(x))) for x in _kernel_basis(Ko)]
    for origin, q in sources:
        rep = check_cocycle(q, variant=variant, cap=1)
        for fail in rep.failures:
            rec = _record(q, fail.relation, fail.axiom, fail.witnesses[0], "cocycle", variant, origin)
            out.cocycle_records.append(rec)
    return out


def write_log(adj: Adjudication, path) -> int:
    """Append every disagreement of ``adj`` to a JSON-lines log; return the count written."""
    from .skeleton import append_discrepancies
    recs = [dict(r, ring=adj.ring, module=adj.module) for r in adj.records + adj.cocycle_records]
    append_discrepancies(path, recs)
    return len(recs)


def brute_force_agreement(ring: FiniteRing, module: Bimodule, variant: str = "shipped", budget: int = 1 << 12
                          ) -> tuple[int, int]:
    """Check every candidate structure with both checkers; return ``(candidates, disagreements)``."""
    import itertools
    from .cochains import search_space_size
    size = search_space_size(ring, module)
    if size > budget:
        from .errors import BudgetExceededError
        raise BudgetExceededError(size, budget)
    Ls = layout_for(STRUCTURE_KINDS, ring, module)
    bad = 0
    count = 0
    for x in itertools.product(*[range(int(d)) for d in Ls.moduli]):
        f = Ls.decode(AnnStructure, np.array(x, dtype=np.int64))
        count += 1
        bad += check_structure(f, variant=variant, cap=1).ok != verify_axioms(f, cap=1).ok
    return count, bad


def sampled_agreement(ring: FiniteRing, module: Bimodule, samples: int, rng: np.random.Generator,
                      variant: str = "shipped") -> tuple[int, int]:
    """Compare verdicts on random normalized candidates and on random valid structures."""
    from .cohomology import random_structure
    Ls = layout_for(STRUCTURE_KINDS, ring, module)
    bad = 0
    for i in range(samples):
        if i % 2:
            f = random_structure(ring, module, rng)
        else:
            x = np.array([int(rng.integers(0, d)) for d in Ls.moduli], dtype=np.int64)
            f = Ls.decode(AnnStructure, x)
        bad += check_structure(f, variant=variant, cap=1).ok != verify_axioms(f, cap=1).ok
    return samples, bad


__all__ = ["oracle_map", "oracle_kernel", "adjudicate", "write_log", "brute_force_agreement", "sampled_agreement",
           "Adjudication", "TYPOS"]

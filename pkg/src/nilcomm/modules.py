"""Finite left modules over finite rings, indexed like the rings are.

A module exposes add/act/neg on dense ids, a descriptor in the structure
DSL, and the same tabulate-small / compute-large split as the rings.  The
regular module shares its ring's bound operations outright.
"""

from __future__ import annotations

from random import Random
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import EngineConfig, resolve
from .errors import (
    AxiomError,
    DecisionCapError,
    InvalidParameterError,
    ShapeMismatchError,
    SizeCapError,
)
from .rings import (
    FULL,
    SPECIAL_UPPER,
    UPPER,
    V_TYPE,
    FiniteRing,
    MatrixShape,
    RingHom,
    _MatrixLayout,
    _stable_seed,
    make_matrix_ring,
    shape_fill,
    shape_read,
)

_MODULE_PREFIX = {FULL: "matmod", UPPER: "trimod", SPECIAL_UPPER: "smod", V_TYPE: "vmod"}


class FiniteModule:
    """Base class: a finite unitary left module on ids 0..size-1."""

    zero: int

    def __init__(self, ring: FiniteRing, size: int, descriptor: str,
                 config: EngineConfig):
        if size < 1:
            raise InvalidParameterError(f"module size must be positive, got {size}")
        if size > config.construction_cap:
            raise SizeCapError(
                f"{descriptor}: size {size} exceeds the construction cap "
                f"{config.construction_cap}",
                config.construction_cap,
            )
        self.ring = ring
        self.size = size
        self.descriptor = descriptor
        self.config = config
        self.tabulated = False
        self._add_rows = None
        self._act_rows = None
        self._neg_row = None
        self._nil_cache = None
        self._torsion_cache = None

    # Structural operations supplied by subclasses.
    def _add(self, m: int, n: int) -> int:
        raise NotImplementedError

    def _act(self, r: int, m: int) -> int:
        raise NotImplementedError

    def _neg(self, m: int) -> int:
        # (-1) * m is the additive inverse in any unitary module
        return self._act(self.ring.neg(self.ring.one), m)

    def _seal(self, validate: bool = True, share_ring_ops: bool = False) -> None:
        if share_ring_ops:
            self.add = self.ring.add
            self.act = self.ring.mul
            self.neg = self.ring.neg
            self.tabulated = self.ring.tabulated
        else:
            threshold = self.config.tabulate_threshold
            if self.size <= threshold and self.ring.size <= threshold:
                add_rows = [[self._add(a, b) for b in range(self.size)]
                            for a in range(self.size)]
                act_rows = [[self._act(r, m) for m in range(self.size)]
                            for r in range(self.ring.size)]
                neg_row = [self._neg(m) for m in range(self.size)]
                self._add_rows, self._act_rows, self._neg_row = add_rows, act_rows, neg_row
                self.add = lambda a, b, _t=add_rows: _t[a][b]
                self.act = lambda r, m, _t=act_rows: _t[r][m]
                self.neg = lambda m, _t=neg_row: _t[m]
                self.tabulated = True
            else:
                self.add = self._add
                self.act = self._act
                self.neg = self._neg
        if validate:
            check_module_axioms(self)

    add: Callable[[int, int], int]
    act: Callable[[int, int], int]
    neg: Callable[[int], int]

    def sub(self, m: int, n: int) -> int:
        return self.add(m, self.neg(n))

    def elements(self) -> range:
        return range(self.size)

    def render(self, m: int) -> str:
        return str(m)

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor} size={self.size}>"


# ---------------------------------------------------------------------------
# Concrete module families


class RegularModule(FiniteModule):
    """The ring seen as a left module over itself."""

    def __init__(self, ring: FiniteRing, config: EngineConfig | None = None):
        config = resolve(config)
        super().__init__(ring, ring.size, f"regular({ring.descriptor})", config)
        self.zero = ring.zero
        self._seal(share_ring_ops=True)

    def _add(self, m, n):
        return self.ring.add(m, n)

    def _act(self, r, m):
        return self.ring.mul(r, m)

    def _neg(self, m):
        return self.ring.neg(m)

    def render(self, m):
        return self.ring.render(m)


class MatrixModule(_MatrixLayout, FiniteModule):
    """Matrices with module entries, acted on by the same-shape matrix ring."""

    def __init__(self, shape: MatrixShape, base_ring: FiniteRing,
                 base_module: FiniteModule, config: EngineConfig | None = None):
        config = resolve(config)
        if base_module.ring.descriptor != base_ring.descriptor:
            raise ShapeMismatchError(
                f"matrix module wants a module over {base_ring.descriptor}, "
                f"got one over {base_module.ring.descriptor}"
            )
        ring = make_matrix_ring(shape, base_ring, config)
        self.shape = shape
        self.base = base_module
        self.positions = shape.free_positions()
        self._radix = base_module.size
        self._entry_zero = base_module.zero
        size = base_module.size ** len(self.positions)
        descriptor = f"{_MODULE_PREFIX[shape.kind]}({shape.n}, {base_module.descriptor})"
        super().__init__(ring, size, descriptor, config)
        self.zero = self._encode_digits([base_module.zero] * len(self.positions))
        self._seal()

    def _add(self, m, n):
        badd = self.base.add
        dm = self._decode_digits(m)
        dn = self._decode_digits(n)
        return self._encode_digits([badd(x, y) for x, y in zip(dm, dn)])

    def _neg(self, m):
        bneg = self.base.neg
        return self._encode_digits([bneg(x) for x in self._decode_digits(m)])

    def _act(self, r, m):
        A = self.ring.entries(r)           # grid of base-ring ids
        K = self.entries(m)                # grid of base-module ids
        base = self.base
        badd, bact, zero = base.add, base.act, base.zero
        rzero = self.ring.base.zero
        n = self.shape.n
        C = [[zero] * n for _ in range(n)]
        for i in range(n):
            Ai = A[i]
            Ci = C[i]
            for k in range(n):
                aik = Ai[k]
                if aik == rzero:
                    continue
                Kk = K[k]
                for j in range(n):
                    Ci[j] = badd(Ci[j], bact(aik, Kk[j]))
        return self.from_entries(C)

    def render(self, m):
        return self._render_grid(m, self.base.render)


class ProductModule(FiniteModule):
    """Componentwise product of modules over one common ring."""

    def __init__(self, factors: Sequence[FiniteModule],
                 config: EngineConfig | None = None):
        config = resolve(config)
        factors = tuple(factors)
        if not factors:
            raise InvalidParameterError("product module needs at least one factor")
        ring = factors[0].ring
        for f in factors[1:]:
            if f.ring.descriptor != ring.descriptor:
                raise InvalidParameterError(
                    "product module factors must share a ring, got "
                    f"{ring.descriptor} and {f.ring.descriptor}"
                )
        self.factors = factors
        self.radices = tuple(f.size for f in factors)
        size = 1
        for s in self.radices:
            size *= s
        descriptor = "prodmod(" + ", ".join(f.descriptor for f in factors) + ")"
        super().__init__(ring, size, descriptor, config)
        self.zero = self._encode([f.zero for f in factors])
        self._seal()

    def _encode(self, comps) -> int:
        eid = 0
        for c, s in zip(comps, self.radices):
            eid = eid * s + c
        return eid

    def _decode(self, eid: int):
        comps = [0] * len(self.radices)
        for i in range(len(comps) - 1, -1, -1):
            eid, comps[i] = divmod(eid, self.radices[i])
        return comps

    def _add(self, m, n):
        cm, cn = self._decode(m), self._decode(n)
        return self._encode([f.add(x, y) for f, x, y in zip(self.factors, cm, cn)])

    def _act(self, r, m):
        return self._encode([f.act(r, x) for f, x in zip(self.factors, self._decode(m))])

    def _neg(self, m):
        return self._encode([f.neg(x) for f, x in zip(self.factors, self._decode(m))])

    def render(self, m):
        comps = self._decode(m)
        return "(" + ", ".join(f.render(c) for f, c in zip(self.factors, comps)) + ")"


class SubModule(FiniteModule):
    """A submodule re-indexed densely, remembering its parent embedding."""

    def __init__(self, parent: FiniteModule, embedded_ids: Sequence[int],
                 descriptor: str, config: EngineConfig | None = None):
        config = resolve(config)
        embedding = tuple(sorted(set(embedded_ids)))
        if parent.zero not in embedding:
            raise InvalidParameterError(f"{descriptor}: submodule must contain zero")
        self.parent = parent
        self.embedding = embedding
        self.index_of = {pid: i for i, pid in enumerate(embedding)}
        super().__init__(parent.ring, len(embedding), descriptor, config)
        self.zero = self.index_of[parent.zero]
        self._validate_closed()
        self._seal()

    def _validate_closed(self):
        parent = self.parent
        members = self.index_of
        for a in self.embedding:
            for b in self.embedding:
                if parent.add(a, b) not in members:
                    raise InvalidParameterError(
                        f"{self.descriptor}: not closed under addition at "
                        f"({parent.render(a)}, {parent.render(b)})"
                    )
        for r in parent.ring.elements():
            for a in self.embedding:
                if parent.act(r, a) not in members:
                    raise InvalidParameterError(
                        f"{self.descriptor}: not closed under the ring action at "
                        f"(r={parent.ring.render(r)}, {parent.render(a)})"
                    )

    def embed(self, m: int) -> int:
        """Parent id of a submodule element."""
        return self.embedding[m]

    def _add(self, m, n):
        return self.index_of[self.parent.add(self.embedding[m], self.embedding[n])]

    def _act(self, r, m):
        return self.index_of[self.parent.act(r, self.embedding[m])]

    def _neg(self, m):
        return self.index_of[self.parent.neg(self.embedding[m])]

    def render(self, m):
        return self.parent.render(self.embedding[m])


class QuotientModule(FiniteModule):
    """Cosets of a submodule, with operations validated well-defined."""

    def __init__(self, parent: FiniteModule, sub: SubModule,
                 config: EngineConfig | None = None):
        config = resolve(config)
        if not isinstance(sub, SubModule) or sub.parent.descriptor != parent.descriptor:
            raise InvalidParameterError(
                f"quotient wants a submodule of {parent.descriptor}, got "
                f"{sub.descriptor}"
            )
        nset = set(sub.embedding)
        for pid in nset:
            if not 0 <= pid < parent.size:
                raise InvalidParameterError(
                    f"quotient: embedded id {pid} is not an element of "
                    f"{parent.descriptor}"
                )
        self.parent = parent
        self.sub = sub
        coset_of = [-1] * parent.size
        reps: list[int] = []
        for m in parent.elements():
            if coset_of[m] >= 0:
                continue
            cid = len(reps)
            reps.append(m)
            for x in nset:
                coset_of[parent.add(m, x)] = cid
            if coset_of[m] != cid:
                raise AxiomError(
                    f"quot({parent.descriptor}, ...): coset of {m} does not "
                    "contain it; the subset is not closed"
                )
        self.coset_of = coset_of
        self.reps = tuple(reps)
        descriptor = f"quot({parent.descriptor}, {sub.descriptor})"
        super().__init__(parent.ring, len(reps), descriptor, config)
        self.zero = coset_of[parent.zero]
        self._validate_well_defined()
        self._seal()

    def _validate_well_defined(self):
        parent = self.parent
        coset_of = self.coset_of
        members: list[list[int]] = [[] for _ in self.reps]
        for m in parent.elements():
            members[coset_of[m]].append(m)
        for ca, group_a in enumerate(members):
            for cb, group_b in enumerate(members):
                expect = coset_of[parent.add(self.reps[ca], self.reps[cb])]
                for p in group_a:
                    for q in group_b:
                        if coset_of[parent.add(p, q)] != expect:
                            raise AxiomError(
                                f"{self.descriptor}: addition is not well defined "
                                f"at cosets ({ca}, {cb})"
                            )
        for r in parent.ring.elements():
            for cid, group in enumerate(members):
                expect = coset_of[parent.act(r, self.reps[cid])]
                for p in group:
                    if coset_of[parent.act(r, p)] != expect:
                        raise AxiomError(
                            f"{self.descriptor}: the action is not well defined "
                            f"at (r={r}, coset {cid})"
                        )

    def _add(self, m, n):
        return self.coset_of[self.parent.add(self.reps[m], self.reps[n])]

    def _act(self, r, m):
        return self.coset_of[self.parent.act(r, self.reps[m])]

    def _neg(self, m):
        return self.coset_of[self.parent.neg(self.reps[m])]

    def render(self, m):
        return f"[{self.parent.render(self.reps[m])}]"


class InducedModule(FiniteModule):
    """A module pulled back along a ring hom: r acts as map(r) did."""

    def __init__(self, hom: RingHom, base: FiniteModule,
                 config: EngineConfig | None = None):
        config = resolve(config)
        if base.ring.descriptor != hom.target.descriptor:
            raise InvalidParameterError(
                f"induced module wants a module over {hom.target.descriptor}, "
                f"got one over {base.ring.descriptor}"
            )
        self.hom = hom
        self.base = base
        descriptor = f"induced({hom.descriptor}, {base.descriptor})"
        super().__init__(hom.source, base.size, descriptor, config)
        self.zero = base.zero
        self._seal()

    def _add(self, m, n):
        return self.base.add(m, n)

    def _act(self, r, m):
        return self.base.act(self.hom.map[r], m)

    def _neg(self, m):
        return self.base.neg(m)

    def render(self, m):
        return self.base.render(m)


# ---------------------------------------------------------------------------
# Constructors


def regular_module(ring: FiniteRing, config: EngineConfig | None = None) -> RegularModule:
    return RegularModule(ring, config)


def matrix_module(shape: MatrixShape, base_ring: FiniteRing,
                  base_module: FiniteModule,
                  config: EngineConfig | None = None) -> MatrixModule:
    return MatrixModule(shape, base_ring, base_module, config)


def make_product_module(factors: Sequence[FiniteModule],
                        config: EngineConfig | None = None) -> ProductModule:
    return ProductModule(factors, config)


def cyclic_submodule(module: FiniteModule, m: int,
                     config: EngineConfig | None = None) -> SubModule:
    """The submodule Rm of everything the ring action reaches from m."""
    if not 0 <= m < module.size:
        raise InvalidParameterError(
            f"element {m} is not in {module.descriptor} (size {module.size})"
        )
    orbit = {module.act(r, m) for r in module.ring.elements()}
    return SubModule(module, sorted(orbit),
                     f"cyclic({module.descriptor}, {m})", config)


def submodule_generated(module: FiniteModule, gens: Iterable[int],
                        config: EngineConfig | None = None) -> SubModule:
    """Closure of a generating set under addition and the ring action."""
    gens = sorted(set(gens))
    for g in gens:
        if not 0 <= g < module.size:
            raise InvalidParameterError(
                f"generator {g} is not in {module.descriptor}"
            )
    members: set[int] = set()
    queue = [module.zero] + list(gens)
    while queue:
        x = queue.pop()
        if x in members:
            continue
        members.add(x)
        for r in module.ring.elements():
            y = module.act(r, x)
            if y not in members:
                queue.append(y)
        for y in list(members):
            s = module.add(x, y)
            if s not in members:
                queue.append(s)
    gens_text = "{" + ", ".join(str(g) for g in gens) + "}"
    return SubModule(module, sorted(members),
                     f"gen({module.descriptor}, {gens_text})", config)


def quotient_module(module: FiniteModule, sub: SubModule,
                    config: EngineConfig | None = None) -> QuotientModule:
    return QuotientModule(module, sub, config)


def induced_module(hom: RingHom, module: FiniteModule,
                   config: EngineConfig | None = None) -> InducedModule:
    return InducedModule(hom, module, config)


# ---------------------------------------------------------------------------
# Axiom validation


def check_module_axioms(module: FiniteModule, exhaustive: bool | None = None,
                        samples: int | None = None) -> None:
    """Verify the unitary left module axioms, raising AxiomError on failure.

    The full regime scans every (r, s, m) and (r, m, n) combination; the
    sampled regime draws random ones.  exhaustive=None picks from the
    construction budget.
    """
    cfg = module.config
    ring = module.ring
    nm = module.size
    nr = ring.size
    desc = module.descriptor
    cost = max(nr * nr * nm, nr * nm * nm, nm ** 3)
    over_cap = cost > cfg.decision_cap and not cfg.force
    if exhaustive is None:
        exhaustive = cost <= cfg.full_check_budget and not over_cap
    elif exhaustive and over_cap:
        raise DecisionCapError(
            f"{desc}: full module axiom scan of {cost} triples exceeds cap "
            f"{cfg.decision_cap}",
            cfg.decision_cap,
        )

    add, act, neg = module.add, module.act, module.neg
    radd, rmul = ring.add, ring.mul
    zero = module.zero
    rng = Random(_stable_seed(cfg, desc))
    count = samples if samples is not None else cfg.validation_samples

    # Unitary action and additive identity, checked elementwise when feasible.
    if exhaustive or nm <= count:
        unit_iter: Iterable[int] = range(nm)
    else:
        unit_iter = (rng.randrange(nm) for _ in range(count))
    for m in unit_iter:
        if act(ring.one, m) != m:
            raise AxiomError(f"{desc}: act(1, m) != m at m={m}")
        if add(zero, m) != m:
            raise AxiomError(f"{desc}: zero is not an additive identity at {m}")
        if add(m, neg(m)) != zero:
            raise AxiomError(f"{desc}: neg fails at {m}")

    if exhaustive:
        group_triples = ((a, b, c) for a in range(nm) for b in range(nm)
                         for c in range(nm))
        mixed = ((r, s, m) for r in range(nr) for s in range(nr) for m in range(nm))
        dist = ((r, m, n) for r in range(nr) for m in range(nm) for n in range(nm))
    else:
        group_triples = ((rng.randrange(nm), rng.randrange(nm), rng.randrange(nm))
                         for _ in range(count))
        mixed = ((rng.randrange(nr), rng.randrange(nr), rng.randrange(nm))
                 for _ in range(count))
        dist = ((rng.randrange(nr), rng.randrange(nm), rng.randrange(nm))
                for _ in range(count))
    for a, b, c in group_triples:
        if add(a, b) != add(b, a):
            raise AxiomError(f"{desc}: module addition not commutative at ({a}, {b})")
        if add(add(a, b), c) != add(a, add(b, c)):
            raise AxiomError(f"{desc}: module addition not associative at ({a}, {b}, {c})")
    for r, s, m in mixed:
        if act(radd(r, s), m) != add(act(r, m), act(s, m)):
            raise AxiomError(f"{desc}: (r+s)m != rm+sm at ({r}, {s}, {m})")
        if act(rmul(r, s), m) != act(r, act(s, m)):
            raise AxiomError(f"{desc}: (rs)m != r(sm) at ({r}, {s}, {m})")
    for r, m, n in dist:
        if act(r, add(m, n)) != add(act(r, m), act(r, n)):
            raise AxiomError(f"{desc}: r(m+n) != rm+rn at ({r}, {m}, {n})")

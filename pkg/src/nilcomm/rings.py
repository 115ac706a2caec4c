"""Finite unital rings addressed by dense integer element ids.

Every ring exposes total add/mul/neg operations on ids 0..size-1 and a
descriptor string that doubles as its canonical serialized form (the same
expressions the structure DSL parses).  Small rings precompute operation
tables; larger ones evaluate operations structurally per call.  Matrix
elements are indexed as base-|R| digit strings over the shape's free
positions in row-major order, first position most significant, so id 0 is
always the zero matrix when the base ring's zero has id 0.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import EngineConfig, resolve
from .errors import (
    AxiomError,
    DecisionCapError,
    InvalidHomError,
    InvalidParameterError,
    SizeCapError,
)

# Matrix shape kinds.
FULL = "full"
UPPER = "upper"
SPECIAL_UPPER = "special-upper"
V_TYPE = "v-type"

_SHAPE_PREFIX = {FULL: "M", UPPER: "T", SPECIAL_UPPER: "S", V_TYPE: "V"}


@dataclass(frozen=True)
class MatrixShape:
    """An admissible pattern of n-by-n matrices.

    full admits every matrix; upper forces zeros below the diagonal;
    special-upper additionally forces equal diagonal entries; v-type admits
    exactly the matrices constant on each superdiagonal and zero below (the
    span of I, V, ..., V^(n-1) for the superdiagonal shift V).
    """

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in _SHAPE_PREFIX:
            raise InvalidParameterError(f"unknown matrix shape kind {self.kind!r}")
        if self.n < 1:
            raise InvalidParameterError(f"matrix dimension must be >= 1, got {self.n}")

    def free_positions(self) -> tuple[tuple[int, int], ...]:
        return _free_positions(self.kind, self.n)


@lru_cache(maxsize=None)
def _free_positions(kind: str, n: int) -> tuple[tuple[int, int], ...]:
    if kind == FULL:
        return tuple((i, j) for i in range(n) for j in range(n))
    if kind == UPPER:
        return tuple((i, j) for i in range(n) for j in range(n) if i <= j)
    if kind == SPECIAL_UPPER:
        return ((0, 0),) + tuple((i, j) for i in range(n) for j in range(n) if i < j)
    # v-type: one digit per power of the shift matrix
    return tuple((0, j) for j in range(n))


def shape_fill(shape: MatrixShape, positions, digits, zero):
    """Expand free-position digits into a full n-by-n entry grid."""
    n = shape.n
    rows = [[zero] * n for _ in range(n)]
    if shape.kind == SPECIAL_UPPER:
        diag = digits[0]
        for i in range(n):
            rows[i][i] = diag
        for (i, j), d in zip(positions[1:], digits[1:]):
            rows[i][j] = d
    elif shape.kind == V_TYPE:
        for k, d in enumerate(digits):
            for i in range(n - k):
                rows[i][i + k] = d
    else:
        for (i, j), d in zip(positions, digits):
            rows[i][j] = d
    return rows


def shape_read(shape: MatrixShape, positions, rows, zero, what: str = "matrix"):
    """Read free-position digits off an entry grid, validating admissibility."""
    n = shape.n
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidParameterError(f"{what}: expected an {n}x{n} entry grid")
    kind = shape.kind
    if kind in (UPPER, SPECIAL_UPPER, V_TYPE):
        for i in range(n):
            for j in range(i):
                if rows[i][j] != zero:
                    raise InvalidParameterError(
                        f"{what}: entry ({i},{j}) below the diagonal must be zero for {kind}"
                    )
    if kind == SPECIAL_UPPER:
        d = rows[0][0]
        for i in range(1, n):
            if rows[i][i] != d:
                raise InvalidParameterError(f"{what}: diagonal entries must agree for {kind}")
    if kind == V_TYPE:
        for k in range(n):
            d = rows[0][k]
            for i in range(1, n - k):
                if rows[i][i + k] != d:
                    raise InvalidParameterError(
                        f"{what}: superdiagonal {k} must be constant for {kind}"
                    )
    return [rows[i][j] for (i, j) in positions]


def _stable_seed(config: EngineConfig, descriptor: str) -> int:
    return (config.seed << 16) ^ zlib.crc32(descriptor.encode("utf-8"))


class FiniteRing:
    """Base class: a finite associative ring with identity on ids 0..size-1."""

    zero: int
    one: int

    def __init__(self, size: int, descriptor: str, config: EngineConfig):
        if size < 1:
            raise InvalidParameterError(f"ring size must be positive, got {size}")
        if size > config.construction_cap:
            raise SizeCapError(
                f"{descriptor}: size {size} exceeds the construction cap "
                f"{config.construction_cap}",
                config.construction_cap,
            )
        self.size = size
        self.descriptor = descriptor
        self.config = config
        self.tabulated = False
        self._add_rows = None
        self._mul_rows = None
        self._neg_row = None
        self._commutative: bool | None = None

    # Structural operations supplied by subclasses.
    def _add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _neg(self, a: int) -> int:
        raise NotImplementedError

    def _table_rows(self):
        n = self.size
        add_rows = [[self._add(a, b) for b in range(n)] for a in range(n)]
        mul_rows = [[self._mul(a, b) for b in range(n)] for a in range(n)]
        neg_row = [self._neg(a) for a in range(n)]
        return add_rows, mul_rows, neg_row

    def _seal(self, validate: bool = True) -> None:
        """Finalize construction: reject the trivial ring, bind ops, validate."""
        if self.zero == self.one:
            raise InvalidParameterError(
                f"{self.descriptor}: the trivial ring (0 = 1) is rejected"
            )
        if self.size <= self.config.tabulate_threshold:
            add_rows, mul_rows, neg_row = self._table_rows()
            self._add_rows, self._mul_rows, self._neg_row = add_rows, mul_rows, neg_row
            self.add = lambda a, b, _t=add_rows: _t[a][b]
            self.mul = lambda a, b, _t=mul_rows: _t[a][b]
            self.neg = lambda a, _t=neg_row: _t[a]
            self.tabulated = True
        else:
            self.add = self._add
            self.mul = self._mul
            self.neg = self._neg
        if validate:
            check_ring_axioms(self)

    # Bound at seal time; declared for introspection.
    add: Callable[[int, int], int]
    mul: Callable[[int, int], int]
    neg: Callable[[int], int]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            raise InvalidParameterError("ring power wants a non-negative exponent")
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return result

    def elements(self) -> range:
        return range(self.size)

    def render(self, a: int) -> str:
        return str(a)

    def is_commutative(self) -> bool:
        if self._commutative is None:
            if self.tabulated:
                t = np.asarray(self._mul_rows)
                self._commutative = bool((t == t.T).all())
            else:
                pairs = self.size * self.size
                if pairs > self.config.decision_cap and not self.config.force:
                    raise DecisionCapError(
                        f"{self.descriptor}: commutativity scan of {pairs} pairs "
                        f"exceeds cap {self.config.decision_cap}",
                        self.config.decision_cap,
                    )
                mul = self.mul
                self._commutative = all(
                    mul(a, b) == mul(b, a)
                    for a in range(self.size)
                    for b in range(a + 1, self.size)
                )
        return self._commutative

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor} size={self.size}>"


# ---------------------------------------------------------------------------
# Concrete ring families


class ZnRing(FiniteRing):
    """Integers modulo n; element id k is the residue k."""

    def __init__(self, n: int, config: EngineConfig | None = None):
        config = resolve(config)
        if n < 2:
            raise InvalidParameterError(f"Z(n) needs n >= 2, got {n}")
        self.n = n
        super().__init__(n, f"Z({n})", config)
        self.zero = 0
        self.one = 1
        self._seal()

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _table_rows(self):
        r = np.arange(self.n, dtype=np.int64)
        add = (r[:, None] + r[None, :]) % self.n
        mul = (r[:, None] * r[None, :]) % self.n
        neg = (-r) % self.n
        return add.tolist(), mul.tolist(), neg.tolist()


class _MatrixLayout:
    """Digit encoding shared by matrix rings and matrix modules."""

    shape: MatrixShape
    positions: tuple[tuple[int, int], ...]
    _radix: int
    _entry_zero: int

    def _encode_digits(self, digits) -> int:
        radix = self._radix
        eid = 0
        for d in digits:
            if not 0 <= d < radix:
                raise InvalidParameterError(
                    f"entry id {d} out of range for base of size {radix}"
                )
            eid = eid * radix + d
        return eid

    def _decode_digits(self, eid: int):
        radix = self._radix
        digits = [0] * len(self.positions)
        for i in range(len(digits) - 1, -1, -1):
            eid, digits[i] = divmod(eid, radix)
        return digits

    def entries(self, eid: int):
        """Full n-by-n grid of base ids for one element."""
        return shape_fill(self.shape, self.positions, self._decode_digits(eid), self._entry_zero)

    def from_entries(self, rows) -> int:
        """Element id of an entry grid; rejects grids outside the shape."""
        digits = shape_read(self.shape, self.positions, rows, self._entry_zero,
                            what=getattr(self, "descriptor", "matrix"))
        return self._encode_digits(digits)

    def unit(self, i: int, j: int, value: int) -> int:
        """Element with value at (i, j) and zeros elsewhere, if admissible."""
        n = self.shape.n
        rows = [[self._entry_zero] * n for _ in range(n)]
        rows[i][j] = value
        return self.from_entries(rows)

    def scalar(self, value: int) -> int:
        """value times the identity matrix."""
        n = self.shape.n
        rows = [[self._entry_zero] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = value
        return self.from_entries(rows)

    def superdiag(self, value: int, k: int = 1) -> int:
        """value on superdiagonal k (the matrix value * V^k), zeros elsewhere."""
        n = self.shape.n
        rows = [[self._entry_zero] * n for _ in range(n)]
        for i in range(n - k):
            rows[i][i + k] = value
        return self.from_entries(rows)

    def _render_grid(self, eid: int, render_entry) -> str:
        rows = self.entries(eid)
        return "[" + ", ".join(
            "[" + ", ".join(render_entry(x) for x in row) + "]" for row in rows
        ) + "]"


class MatrixRing(_MatrixLayout, FiniteRing):
    """Matrices over a base ring restricted to one shape's free positions."""

    def __init__(self, shape: MatrixShape, base: FiniteRing,
                 config: EngineConfig | None = None):
        config = resolve(config)
        self.shape = shape
        self.base = base
        self.positions = shape.free_positions()
        self._radix = base.size
        self._entry_zero = base.zero
        size = base.size ** len(self.positions)
        prefix = _SHAPE_PREFIX[shape.kind]
        super().__init__(size, f"{prefix}({shape.n}, {base.descriptor})", config)
        self.zero = self._encode_digits([base.zero] * len(self.positions))
        self.one = self.scalar(base.one)
        self._seal()

    def _add(self, a, b):
        badd = self.base.add
        da = self._decode_digits(a)
        db = self._decode_digits(b)
        return self._encode_digits([badd(x, y) for x, y in zip(da, db)])

    def _neg(self, a):
        bneg = self.base.neg
        return self._encode_digits([bneg(x) for x in self._decode_digits(a)])

    def _mul(self, a, b):
        A = self.entries(a)
        B = self.entries(b)
        base = self.base
        badd, bmul, zero = base.add, base.mul, base.zero
        n = self.shape.n
        C = [[zero] * n for _ in range(n)]
        for i in range(n):
            Ai = A[i]
            Ci = C[i]
            for k in range(n):
                aik = Ai[k]
                if aik == zero:
                    continue
                Bk = B[k]
                for j in range(n):
                    Ci[j] = badd(Ci[j], bmul(aik, Bk[j]))
        return self.from_entries(C)

    def render(self, a):
        return self._render_grid(a, self.base.render)


class ProductRing(FiniteRing):
    """Componentwise product of finitely many rings."""

    def __init__(self, factors: Sequence[FiniteRing], config: EngineConfig | None = None):
        config = resolve(config)
        factors = tuple(factors)
        if not factors:
            raise InvalidParameterError("product ring needs at least one factor")
        self.factors = factors
        self.radices = tuple(f.size for f in factors)
        size = 1
        for s in self.radices:
            size *= s
        descriptor = "prod(" + ", ".join(f.descriptor for f in factors) + ")"
        super().__init__(size, descriptor, config)
        self.zero = self._encode([f.zero for f in factors])
        self.one = self._encode([f.one for f in factors])
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

    def _add(self, a, b):
        ca, cb = self._decode(a), self._decode(b)
        return self._encode([f.add(x, y) for f, x, y in zip(self.factors, ca, cb)])

    def _mul(self, a, b):
        ca, cb = self._decode(a), self._decode(b)
        return self._encode([f.mul(x, y) for f, x, y in zip(self.factors, ca, cb)])

    def _neg(self, a):
        return self._encode([f.neg(x) for f, x in zip(self.factors, self._decode(a))])

    def render(self, a):
        comps = self._decode(a)
        return "(" + ", ".join(f.render(c) for f, c in zip(self.factors, comps)) + ")"


class PolyQuotientRing(FiniteRing):
    """Polynomials over a base ring truncated at degree n (x^n = 0).

    Elements are coefficient tuples (c0, ..., c_{n-1}); products drop every
    term of degree n or higher.
    """

    def __init__(self, base: FiniteRing, n: int, config: EngineConfig | None = None):
        config = resolve(config)
        if n < 1:
            raise InvalidParameterError(f"polyq needs degree bound >= 1, got {n}")
        self.base = base
        self.degree = n
        size = base.size ** n
        super().__init__(size, f"polyq({base.descriptor}, {n})", config)
        self.zero = self._encode([base.zero] * n)
        self.one = self._encode([base.one] + [base.zero] * (n - 1))
        self._seal()

    def _encode(self, coeffs) -> int:
        radix = self.base.size
        eid = 0
        for c in coeffs:
            eid = eid * radix + c
        return eid

    def coefficients(self, eid: int):
        radix = self.base.size
        coeffs = [0] * self.degree
        for i in range(self.degree - 1, -1, -1):
            eid, coeffs[i] = divmod(eid, radix)
        return coeffs

    def from_coefficients(self, coeffs) -> int:
        if len(coeffs) != self.degree:
            raise InvalidParameterError(
                f"{self.descriptor}: expected {self.degree} coefficients"
            )
        return self._encode(coeffs)

    def _add(self, a, b):
        badd = self.base.add
        return self._encode([badd(x, y) for x, y in
                             zip(self.coefficients(a), self.coefficients(b))])

    def _neg(self, a):
        bneg = self.base.neg
        return self._encode([bneg(x) for x in self.coefficients(a)])

    def _mul(self, a, b):
        ca = self.coefficients(a)
        cb = self.coefficients(b)
        base = self.base
        out = [base.zero] * self.degree
        for i, x in enumerate(ca):
            if x == base.zero:
                continue
            for j in range(self.degree - i):
                y = cb[j]
                if y == base.zero:
                    continue
                out[i + j] = base.add(out[i + j], base.mul(x, y))
        return self._encode(out)

    def render(self, a):
        coeffs = self.coefficients(a)
        base = self.base
        terms = []
        for i, c in enumerate(coeffs):
            if c == base.zero:
                continue
            if i == 0:
                terms.append(base.render(c))
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                terms.append(xpow if c == base.one else f"{base.render(c)}{xpow}")
        return "+".join(terms) if terms else base.render(base.zero)


# ---------------------------------------------------------------------------
# Constructors (the public spelling used throughout)


def make_zn(n: int, config: EngineConfig | None = None) -> ZnRing:
    """The ring of integers mod n, n >= 2."""
    return ZnRing(n, config)


def make_matrix_ring(shape: MatrixShape, base: FiniteRing,
                     config: EngineConfig | None = None) -> MatrixRing:
    """Matrices of one shape over a base ring."""
    return MatrixRing(shape, base, config)


def make_product_ring(factors: Sequence[FiniteRing],
                      config: EngineConfig | None = None) -> ProductRing:
    """Componentwise product of the given rings."""
    return ProductRing(factors, config)


def make_poly_quotient_ring(base: FiniteRing, n: int,
                            config: EngineConfig | None = None) -> PolyQuotientRing:
    """Truncated polynomial ring with x^n = 0."""
    return PolyQuotientRing(base, n, config)


# ---------------------------------------------------------------------------
# Derived element sets


def center(ring: FiniteRing) -> frozenset[int]:
    """Elements commuting with the whole ring, computed exhaustively."""
    pairs = ring.size * ring.size
    if pairs > ring.config.decision_cap and not ring.config.force:
        raise DecisionCapError(
            f"{ring.descriptor}: center scan of {pairs} pairs exceeds cap "
            f"{ring.config.decision_cap}",
            ring.config.decision_cap,
        )
    mul = ring.mul
    out = []
    for c in ring.elements():
        if all(mul(c, r) == mul(r, c) for r in ring.elements()):
            out.append(c)
    return frozenset(out)


def regular_elements(ring: FiniteRing) -> frozenset[int]:
    """Nonzero elements that are neither left nor right zero divisors."""
    mul = ring.mul
    zero = ring.zero
    out = []
    for s in ring.elements():
        if s == zero:
            continue
        ok = True
        for r in ring.elements():
            if r == zero:
                continue
            if mul(s, r) == zero or mul(r, s) == zero:
                ok = False
                break
        if ok:
            out.append(s)
    return frozenset(out)


def nil_ring_set(ring: FiniteRing) -> frozenset[int]:
    """Elements with a^k = 0 for some k >= 1, by power iteration."""
    mul = ring.mul
    zero = ring.zero
    out = []
    for a in ring.elements():
        x = a
        seen = set()
        while True:
            if x == zero:
                out.append(a)
                break
            if x in seen:
                break
            seen.add(x)
            x = mul(x, a)
    return frozenset(out)


def nilpotency_degree(ring: FiniteRing, a: int) -> int | None:
    """Least k >= 1 with a^k = 0, or None if a is not nilpotent."""
    mul = ring.mul
    zero = ring.zero
    x = a
    k = 1
    seen = set()
    while True:
        if x == zero:
            return k
        if x in seen:
            return None
        seen.add(x)
        x = mul(x, a)
        k += 1


# ---------------------------------------------------------------------------
# Ring homomorphisms


@dataclass(frozen=True)
class RingHom:
    """A validated unital ring homomorphism given by an id table."""

    source: FiniteRing
    target: FiniteRing
    map: tuple[int, ...]
    surjective: bool
    descriptor: str

    def __call__(self, a: int) -> int:
        return self.map[a]


def make_ring_hom(source: FiniteRing, target: FiniteRing, mapping,
                  descriptor: str | None = None) -> RingHom:
    """Build a RingHom, validating every axiom exhaustively."""
    if callable(mapping):
        table = tuple(mapping(a) for a in source.elements())
    else:
        table = tuple(mapping)
    if len(table) != source.size:
        raise InvalidHomError(
            f"hom table has {len(table)} entries, expected {source.size}"
        )
    for a, v in enumerate(table):
        if not 0 <= v < target.size:
            raise InvalidHomError(f"hom maps {a} to out-of-range id {v}", pair=(a,))
    if table[source.zero] != target.zero:
        raise InvalidHomError("hom does not preserve zero", pair=(source.zero,))
    if table[source.one] != target.one:
        raise InvalidHomError("hom does not preserve one", pair=(source.one,))
    pairs = source.size * source.size
    if pairs > source.config.decision_cap and not source.config.force:
        raise DecisionCapError(
            f"hom validation over {pairs} pairs exceeds cap "
            f"{source.config.decision_cap}",
            source.config.decision_cap,
        )
    for a in source.elements():
        fa = table[a]
        for b in source.elements():
            if table[source.add(a, b)] != target.add(fa, table[b]):
                raise InvalidHomError(
                    f"hom is not additive at ({a}, {b})", pair=(a, b)
                )
            if table[source.mul(a, b)] != target.mul(fa, table[b]):
                raise InvalidHomError(
                    f"hom is not multiplicative at ({a}, {b})", pair=(a, b)
                )
    surjective = len(set(table)) == target.size
    if descriptor is None:
        descriptor = f"hom({source.descriptor}, {target.descriptor})"
    return RingHom(source, target, table, surjective, descriptor)


def zn_reduction_hom(m: int, n: int, config: EngineConfig | None = None) -> RingHom:
    """The canonical surjection Z(m) -> Z(n) for n dividing m."""
    if m % n != 0:
        raise InvalidParameterError(f"zred({m}, {n}) needs {n} to divide {m}")
    src = make_zn(m, config)
    tgt = make_zn(n, config)
    return make_ring_hom(src, tgt, lambda a: a % n, descriptor=f"zred({m}, {n})")


def identity_hom(ring: FiniteRing) -> RingHom:
    """The identity map on a ring, packaged as a hom."""
    return make_ring_hom(ring, ring, lambda a: a,
                         descriptor=f"idhom({ring.descriptor})")


# ---------------------------------------------------------------------------
# The coefficient-reading map between V-shaped matrices and truncated polys


def verify_theta_iso(base: FiniteRing, n: int,
                     config: EngineConfig | None = None) -> bool:
    """Check that reading V-polynomial coefficients as x-coefficients is a
    bijective ring homomorphism from the v-type matrix ring onto the
    truncated polynomial ring of the same degree, exhaustively."""
    config = resolve(config)
    vring = make_matrix_ring(MatrixShape(V_TYPE, n), base, config)
    pring = make_poly_quotient_ring(base, n, config)
    pairs = vring.size * vring.size
    if pairs > config.decision_cap and not config.force:
        raise DecisionCapError(
            f"theta check over {pairs} pairs exceeds cap {config.decision_cap}",
            config.decision_cap,
        )
    theta = [pring.from_coefficients(vring._decode_digits(a)) for a in vring.elements()]
    if len(set(theta)) != vring.size or vring.size != pring.size:
        return False
    if theta[vring.zero] != pring.zero or theta[vring.one] != pring.one:
        return False
    for a in vring.elements():
        ta = theta[a]
        for b in vring.elements():
            if theta[vring.add(a, b)] != pring.add(ta, theta[b]):
                return False
            if theta[vring.mul(a, b)] != pring.mul(ta, theta[b]):
                return False
    return True


# ---------------------------------------------------------------------------
# Axiom validation


def _np_ring_tables(ring: FiniteRing):
    add = np.asarray(ring._add_rows, dtype=np.int64)
    mul = np.asarray(ring._mul_rows, dtype=np.int64)
    neg = np.asarray(ring._neg_row, dtype=np.int64)
    return add, mul, neg


def _first_bad(eq: np.ndarray):
    idx = np.argwhere(~eq)
    return tuple(int(x) for x in idx[0])


def check_ring_axioms(ring: FiniteRing, exhaustive: bool | None = None,
                      samples: int | None = None) -> None:
    """Verify the ring axioms, raising AxiomError on the first failure.

    exhaustive=None picks a regime from the construction budget: a full
    triple scan when size^3 fits, sampling otherwise.  exhaustive=True
    forces the full scan (guarded by the decision cap).
    """
    cfg = ring.config
    n = ring.size
    desc = ring.descriptor
    over_cap = n ** 3 > cfg.decision_cap and not cfg.force
    if exhaustive is None:
        # auto regime: full when the budget and the cap both allow it
        exhaustive = (ring.tabulated and n ** 3 <= cfg.full_check_budget
                      and not over_cap)
    elif exhaustive and over_cap:
        raise DecisionCapError(
            f"{desc}: full axiom scan of {n ** 3} triples exceeds cap "
            f"{cfg.decision_cap}",
            cfg.decision_cap,
        )

    if ring.tabulated:
        add, mul, neg = _np_ring_tables(ring)
        ar = np.arange(n)
        for name, t in (("add", add), ("mul", mul)):
            if t.min() < 0 or t.max() >= n:
                raise AxiomError(f"{desc}: {name} table has out-of-range ids")
        if not (add == add.T).all():
            a, b = _first_bad(add == add.T)
            raise AxiomError(f"{desc}: add is not commutative at ({a}, {b})")
        if not (add[ring.zero] == ar).all():
            raise AxiomError(f"{desc}: zero is not an additive identity")
        if not (add[ar, neg] == ring.zero).all():
            raise AxiomError(f"{desc}: neg does not give additive inverses")
        if not (mul[ring.one] == ar).all() or not (mul[:, ring.one] == ar).all():
            raise AxiomError(f"{desc}: one is not a multiplicative identity")
        if exhaustive:
            for a in range(n):
                if not (add[add[a]] == add[a][add]).all():
                    b, c = _first_bad(add[add[a]] == add[a][add])
                    raise AxiomError(f"{desc}: add not associative at ({a}, {b}, {c})")
                if not (mul[mul[a]] == mul[a][mul]).all():
                    b, c = _first_bad(mul[mul[a]] == mul[a][mul])
                    raise AxiomError(f"{desc}: mul not associative at ({a}, {b}, {c})")
                left = mul[a][add]
                right = add[mul[a][:, None], mul[a][None, :]]
                if not (left == right).all():
                    b, c = _first_bad(left == right)
                    raise AxiomError(
                        f"{desc}: left distributivity fails at ({a}, {b}, {c})"
                    )
                left = mul[add, a]
                col = mul[:, a]
                right = add[col[:, None], col[None, :]]
                if not (left == right).all():
                    b, c = _first_bad(left == right)
                    raise AxiomError(
                        f"{desc}: right distributivity fails at ({a}, {b}, {c})"
                    )
            return

    # Sampled (or non-tabulated) regime: spot identities plus random triples.
    add_op, mul_op, neg_op = ring.add, ring.mul, ring.neg
    zero, one = ring.zero, ring.one
    rng = Random(_stable_seed(cfg, desc))
    count = samples if samples is not None else cfg.validation_samples
    if exhaustive or n <= count:
        unit_iter: Iterable[int] = range(n)
    else:
        unit_iter = (rng.randrange(n) for _ in range(count))
    for a in unit_iter:
        if add_op(zero, a) != a:
            raise AxiomError(f"{desc}: zero is not an additive identity at {a}")
        if add_op(a, neg_op(a)) != zero:
            raise AxiomError(f"{desc}: neg fails at {a}")
        if mul_op(one, a) != a or mul_op(a, one) != a:
            raise AxiomError(f"{desc}: one is not a multiplicative identity at {a}")
    if exhaustive:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    else:
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(count))
    for a, b, c in triples:
        if add_op(a, b) != add_op(b, a):
            raise AxiomError(f"{desc}: add is not commutative at ({a}, {b})")
        if add_op(add_op(a, b), c) != add_op(a, add_op(b, c)):
            raise AxiomError(f"{desc}: add not associative at ({a}, {b}, {c})")
        if mul_op(mul_op(a, b), c) != mul_op(a, mul_op(b, c)):
            raise AxiomError(f"{desc}: mul not associative at ({a}, {b}, {c})")
        if mul_op(a, add_op(b, c)) != add_op(mul_op(a, b), mul_op(a, c)):
            raise AxiomError(f"{desc}: left distributivity fails at ({a}, {b}, {c})")
        if mul_op(add_op(b, c), a) != add_op(mul_op(b, a), mul_op(c, a)):
            raise AxiomError(f"{desc}: right distributivity fails at ({a}, {b}, {c})")

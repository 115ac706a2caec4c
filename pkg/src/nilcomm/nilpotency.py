"""Nilpotent and torsion element sets of a finite module.

An element m is nilpotent when m = 0 or some ring element t satisfies
t*t*m = 0 with t*m != 0; equivalently some r and k >= 2 satisfy
r^k m = 0 with r^(k-1) m != 0.  Both criteria are implemented: the squared
form is the workhorse (one linear scan over the ring per element), the
power form walks orbits and exists for cross-checking and witness variety.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import EngineConfig, resolve
from .errors import DecisionCapError
from .modules import FiniteModule
from .rings import regular_elements


@dataclass
class NilSet:
    """Nilpotent elements of one module, as a bitmask plus witnesses.

    witnesses maps each nonzero member m to a pair (t, k) with
    act(t^k, m) = 0 and act(t, m) != 0; the zero element needs none.
    """

    module: FiniteModule
    mask: int
    witnesses: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __contains__(self, m: int) -> bool:
        return bool(self.mask >> m & 1)

    def members(self) -> list[int]:
        return [m for m in self.module.elements() if self.mask >> m & 1]

    @property
    def count(self) -> int:
        return bin(self.mask).count("1")

    def covers_module(self) -> bool:
        return self.count == self.module.size

    def to_json_dict(self) -> dict:
        return {
            "descriptor": self.module.descriptor,
            "size": self.count,
            "members": self.members(),
            "witnesses": {
                str(m): {"t": t, "k": k} for m, (t, k) in sorted(self.witnesses.items())
            },
        }


@dataclass
class TorsionSets:
    """Torsion elements, split by what kind of ring element kills them.

    tor_mask marks elements killed by some nonzero ring element; t_mask
    marks elements killed by some regular (non-zero-divisor) element.  The
    closure flags record whether each set is closed under addition and the
    ring action.
    """

    module: FiniteModule
    tor_mask: int
    t_mask: int
    tor_closed_add: bool
    tor_closed_act: bool
    t_closed_add: bool
    t_closed_act: bool

    def tor_members(self) -> list[int]:
        return [m for m in self.module.elements() if self.tor_mask >> m & 1]

    def t_members(self) -> list[int]:
        return [m for m in self.module.elements() if self.t_mask >> m & 1]

    @property
    def tor_is_submodule(self) -> bool:
        return self.tor_closed_add and self.tor_closed_act

    @property
    def t_is_submodule(self) -> bool:
        return self.t_closed_add and self.t_closed_act

    def to_json_dict(self) -> dict:
        return {
            "descriptor": self.module.descriptor,
            "tor": self.tor_members(),
            "t": self.t_members(),
            "tor_is_submodule": self.tor_is_submodule,
            "t_is_submodule": self.t_is_submodule,
        }


def is_nilpotent_squared(module: FiniteModule, m: int,
                         config: EngineConfig | None = None):
    """Squared criterion; returns (verdict, least witness t or None)."""
    if m == module.zero:
        return True, None
    act = module.act
    mul = module.ring.mul
    zero = module.zero
    for t in module.ring.elements():
        if act(t, m) != zero and act(mul(t, t), m) == zero:
            return True, t
    return False, None


def is_nilpotent_power(module: FiniteModule, m: int,
                       config: EngineConfig | None = None):
    """Power criterion by orbit walking; returns (verdict, (r, k) or None).

    For each ring element r the walk m, rm, r^2 m, ... stops at the first
    zero (a witness when it happens at step k >= 2) or at a repeat (no
    witness for this r).
    """
    if m == module.zero:
        return True, None
    act = module.act
    zero = module.zero
    for r in module.ring.elements():
        cur = act(r, m)
        if cur == zero:
            continue  # the first zero would be at k = 1, which is excluded
        seen = {m, cur}
        k = 1
        while True:
            nxt = act(r, cur)
            k += 1
            if nxt == zero:
                return True, (r, k)
            if nxt in seen:
                break
            seen.add(nxt)
            cur = nxt
    return False, None


def nil_set(module: FiniteModule, config: EngineConfig | None = None) -> NilSet:
    """All nilpotent elements with stored witnesses; cached per module."""
    if module._nil_cache is not None:
        return module._nil_cache
    cfg = resolve(config if config is not None else module.config)
    pairs = module.ring.size * module.size
    if pairs > cfg.decision_cap and not cfg.force:
        raise DecisionCapError(
            f"{module.descriptor}: nilpotency scan of {pairs} (t, m) pairs "
            f"exceeds cap {cfg.decision_cap}",
            cfg.decision_cap,
        )
    mask = 0
    witnesses: dict[int, tuple[int, int]] = {}
    for m in module.elements():
        ok, t = is_nilpotent_squared(module, m)
        if ok:
            mask |= 1 << m
            if t is not None:
                witnesses[m] = (t, 2)
    result = NilSet(module, mask, witnesses)
    module._nil_cache = result
    return result


def is_nil_module(module: FiniteModule, config: EngineConfig | None = None) -> bool:
    """True when every element of the module is nilpotent."""
    return nil_set(module, config).covers_module()


def _closed_under(module: FiniteModule, mask: int) -> tuple[bool, bool]:
    members = [m for m in module.elements() if mask >> m & 1]
    add_closed = all(mask >> module.add(a, b) & 1 for a in members for b in members)
    act_closed = all(
        mask >> module.act(r, a) & 1
        for r in module.ring.elements()
        for a in members
    )
    return add_closed, act_closed


def torsion_sets(module: FiniteModule,
                 config: EngineConfig | None = None) -> TorsionSets:
    """Torsion and regular-torsion element sets with closure flags; cached."""
    if module._torsion_cache is not None:
        return module._torsion_cache
    cfg = resolve(config if config is not None else module.config)
    pairs = module.ring.size * module.size
    if pairs > cfg.decision_cap and not cfg.force:
        raise DecisionCapError(
            f"{module.descriptor}: torsion scan of {pairs} pairs exceeds cap "
            f"{cfg.decision_cap}",
            cfg.decision_cap,
        )
    ring = module.ring
    act = module.act
    zero = module.zero
    rzero = ring.zero
    regulars = regular_elements(ring)
    tor_mask = 0
    t_mask = 0
    for m in module.elements():
        if m == zero:
            tor_mask |= 1 << m
            t_mask |= 1 << m
            continue
        for r in ring.elements():
            if r == rzero:
                continue
            if act(r, m) == zero:
                tor_mask |= 1 << m
                if r in regulars:
                    t_mask |= 1 << m
                    break
    tor_add, tor_act = _closed_under(module, tor_mask)
    t_add, t_act = _closed_under(module, t_mask)
    result = TorsionSets(module, tor_mask, t_mask, tor_add, tor_act, t_add, t_act)
    module._torsion_cache = result
    return result


def is_torsion_free(module: FiniteModule,
                    config: EngineConfig | None = None) -> bool:
    """True when only zero is a torsion element."""
    return torsion_sets(module, config).tor_mask == 1 << module.zero

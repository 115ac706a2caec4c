"""Deciders for the module and ring semicommutativity properties.

Each decider scans the full (a, r, m) space under the decision cap and
returns a Verdict: holds, or fails with the lexicographically least
violating triple in (a, m, r) order.  Above the cap the decider either
refuses (exhaustive mode) or degrades to witness-only mode, where a
supplied witness can still settle the answer negatively.  Sampling never
happens silently; it is a separate, labeled mode.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from random import Random
from typing import Callable

from .config import EngineConfig, resolve
from .errors import DecisionCapError, InvalidParameterError
from .modules import FiniteModule, cyclic_submodule
from .nilpotency import is_nilpotent_squared, nil_set
from .reports import CONFIRMED, REFUTED, CheckReport
from .rings import FiniteRing, nil_ring_set

PROP_SEMICOMMUTATIVE = "semicommutative"
PROP_WEAKLY = "weakly-semicommutative"
PROP_NIL_SEMI = "nil-semicommutative"
PROP_REDUCED_I = "reduced-i"
PROP_REDUCED_II = "reduced-ii"
PROP_RING_SEMI = "ring-semicommutative"
PROP_RING_NIL_SEMI = "ring-nil-semicommutative"

MODULE_PROPERTIES = (
    PROP_SEMICOMMUTATIVE,
    PROP_WEAKLY,
    PROP_NIL_SEMI,
    PROP_REDUCED_I,
    PROP_REDUCED_II,
)
RING_PROPERTIES = (PROP_RING_SEMI, PROP_RING_NIL_SEMI)

METHOD_EXHAUSTIVE = "exhaustive"
METHOD_WITNESS = "witness-only"
METHOD_SAMPLED = "sampled"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one property decision.

    witness is the violating triple (a, r, m) when holds is False; holds is
    None when the method could not settle the property.
    """

    property: str
    holds: bool | None
    method: str
    witness: tuple[int, int, int] | None
    descriptor: str
    explanation: str = ""
    witness_render: tuple[str, str, str] | None = None

    def to_json_dict(self) -> dict:
        w = None
        if self.witness is not None:
            a, r, m = self.witness
            w = {"a": a, "r": r, "m": m}
            if self.witness_render is not None:
                w["a_render"], w["r_render"], w["m_render"] = self.witness_render
        return {
            "property": self.property,
            "holds": self.holds,
            "method": self.method,
            "witness": w,
            "descriptor": self.descriptor,
            "explanation": self.explanation,
        }


def _module_renders(module: FiniteModule, triple) -> tuple[str, str, str]:
    a, r, m = triple
    return (module.ring.render(a), module.ring.render(r), module.render(m))


def _ring_renders(ring: FiniteRing, triple) -> tuple[str, str, str]:
    a, r, b = triple
    return (ring.render(a), ring.render(r), ring.render(b))


# ---------------------------------------------------------------------------
# Scan machinery


def _scan_block(module, trigger, violates, a_range):
    """Least violating (a, m, r) with a in a_range, or None."""
    act = module.act
    for a in a_range:
        for m in module.elements():
            if not trigger(a, m):
                continue
            rm = None
            for r in module.ring.elements():
                if violates(a, r, m):
                    rm = r
                    break
            if rm is not None:
                return (a, m, rm)
    return None


def _scan_module(module, trigger, violates, threads: int):
    """Partitioned exhaustive scan returning the least violation or None."""
    nr = module.ring.size
    if threads <= 1 or nr < 4:
        return _scan_block(module, trigger, violates, range(nr))
    blocks = min(threads * 4, nr)
    bounds = [(i * nr) // blocks for i in range(blocks + 1)]
    ranges = [range(bounds[i], bounds[i + 1]) for i in range(blocks)
              if bounds[i] < bounds[i + 1]]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        found = list(pool.map(
            lambda rg: _scan_block(module, trigger, violates, rg), ranges))
    hits = [f for f in found if f is not None]
    return min(hits) if hits else None


def _predicates(module: FiniteModule, prop: str, nil_member: Callable[[int], bool]):
    """Trigger and violation predicates for one module property."""
    act = module.act
    mul = module.ring.mul
    zero = module.zero
    if prop == PROP_SEMICOMMUTATIVE:
        return (lambda a, m: act(a, m) == zero,
                lambda a, r, m: act(a, act(r, m)) != zero)
    if prop == PROP_WEAKLY:
        return (lambda a, m: act(a, m) == zero,
                lambda a, r, m: not nil_member(act(a, act(r, m))))
    if prop == PROP_NIL_SEMI:
        return (lambda a, m: nil_member(act(a, m)),
                lambda a, r, m: not nil_member(act(a, act(r, m))))
    if prop == PROP_REDUCED_I:
        return (lambda a, m: act(mul(a, a), m) == zero,
                lambda a, r, m: act(a, act(r, m)) != zero)
    raise InvalidParameterError(f"unknown module property {prop!r}")


def _scan_reduced_ii(module: FiniteModule, threads: int):
    """Reduced condition (ii): am = 0 forces aM and Rm to meet only in 0.

    Returns (triple, explanation) for the least violation, else None.  The
    witness r satisfies act(r, m) = act(a, x) != 0 for some x, recorded in
    the explanation.
    """
    act = module.act
    zero = module.zero
    for a in module.ring.elements():
        a_image = {act(a, x) for x in module.elements()}
        a_image.discard(zero)
        if not a_image:
            continue
        for m in module.elements():
            if act(a, m) != zero:
                continue
            for r in module.ring.elements():
                w = act(r, m)
                if w != zero and w in a_image:
                    x = next(x for x in module.elements() if act(a, x) == w)
                    expl = (f"a*x = r*m = {module.render(w)} != 0 with "
                            f"x = {module.render(x)}")
                    return (a, m, r), expl
    return None


def _sampled_scan(module, trigger, violates, count: int, seed: int):
    rng = Random(seed)
    nr = module.ring.size
    nm = module.size
    for _ in range(count):
        a = rng.randrange(nr)
        m = rng.randrange(nm)
        if not trigger(a, m):
            continue
        r = rng.randrange(nr)
        if violates(a, r, m):
            return (a, m, r)
    return None


# ---------------------------------------------------------------------------
# Module deciders


def decide(module: FiniteModule, prop: str, config: EngineConfig | None = None,
           mode: str = "auto", witness_hint=None,
           sample: int | None = None) -> Verdict:
    """Decide one module property.

    mode "exhaustive" refuses above the decision cap; "auto" degrades to
    witness-only there; "witness" skips the scan outright.  sample=N runs a
    labeled sampled scan instead (never the default).
    """
    cfg = resolve(config if config is not None else module.config)
    desc = module.descriptor
    if prop not in MODULE_PROPERTIES:
        raise InvalidParameterError(f"unknown module property {prop!r}")

    triples = module.ring.size * module.ring.size * module.size
    allowed = triples <= cfg.decision_cap or cfg.force

    if sample is not None:
        nil_member = _pointwise_nil(module)
        if prop == PROP_REDUCED_II:
            raise InvalidParameterError("reduced-ii has no sampled mode")
        trigger, violates = _predicates(module, prop, nil_member)
        hit = _sampled_scan(module, trigger, violates, sample, cfg.seed)
        if hit is not None:
            a, m, r = hit
            return Verdict(prop, False, METHOD_SAMPLED, (a, r, m), desc,
                           explanation=f"violation found within {sample} samples",
                           witness_render=_module_renders(module, (a, r, m)))
        return Verdict(prop, None, METHOD_SAMPLED, None, desc,
                       explanation=f"no violation in {sample} samples")

    if mode == "exhaustive" and not allowed:
        raise DecisionCapError(
            f"{desc}: {prop} scan of {triples} (a, r, m) triples exceeds cap "
            f"{cfg.decision_cap}; re-run with force to override",
            cfg.decision_cap,
        )
    if mode == "witness" or (mode == "auto" and not allowed):
        return _witness_only(module, prop, witness_hint, desc, cfg)

    if prop == PROP_REDUCED_II:
        hit = _scan_reduced_ii(module, cfg.threads)
        if hit is None:
            return Verdict(prop, True, METHOD_EXHAUSTIVE, None, desc)
        (a, m, r), expl = hit
        return Verdict(prop, False, METHOD_EXHAUSTIVE, (a, r, m), desc,
                       explanation=expl,
                       witness_render=_module_renders(module, (a, r, m)))

    if prop in (PROP_WEAKLY, PROP_NIL_SEMI):
        nils = nil_set(module, cfg)
        nil_member = lambda x: x in nils
    else:
        nil_member = lambda x: False
    trigger, violates = _predicates(module, prop, nil_member)
    hit = _scan_module(module, trigger, violates, cfg.threads)
    if hit is None:
        return Verdict(prop, True, METHOD_EXHAUSTIVE, None, desc)
    a, m, r = hit
    return Verdict(prop, False, METHOD_EXHAUSTIVE, (a, r, m), desc,
                   witness_render=_module_renders(module, (a, r, m)))


def _pointwise_nil(module: FiniteModule) -> Callable[[int], bool]:
    """Nil membership by per-element scan, for structures too big to tabulate."""
    if module._nil_cache is not None:
        cached = module._nil_cache
        return lambda x: x in cached
    memo: dict[int, bool] = {}

    def member(x: int) -> bool:
        got = memo.get(x)
        if got is None:
            got = is_nilpotent_squared(module, x)[0]
            memo[x] = got
        return got

    return member


def _witness_only(module, prop, hint, desc, cfg) -> Verdict:
    if hint is None:
        return Verdict(prop, None, METHOD_WITNESS, None, desc,
                       explanation="above the decision cap and no witness supplied")
    a, r, m = hint
    nil_member = _pointwise_nil(module)
    if prop == PROP_REDUCED_II:
        raise InvalidParameterError("reduced-ii has no witness-only mode")
    trigger, violates = _predicates(module, prop, nil_member)
    if trigger(a, m) and violates(a, r, m):
        return Verdict(prop, False, METHOD_WITNESS, (a, r, m), desc,
                       explanation="supplied witness verified",
                       witness_render=_module_renders(module, (a, r, m)))
    return Verdict(prop, None, METHOD_WITNESS, None, desc,
                   explanation="supplied witness did not verify")


def is_semicommutative(module, config=None, **kw) -> Verdict:
    """am = 0 forces aRm = 0."""
    return decide(module, PROP_SEMICOMMUTATIVE, config, **kw)


def is_weakly_semicommutative(module, config=None, **kw) -> Verdict:
    """am = 0 forces aRm inside the nil set."""
    return decide(module, PROP_WEAKLY, config, **kw)


def is_nil_semicommutative(module, config=None, **kw) -> Verdict:
    """am nilpotent forces aRm inside the nil set."""
    return decide(module, PROP_NIL_SEMI, config, **kw)


def is_reduced_i(module, config=None, **kw) -> Verdict:
    """a^2 m = 0 forces aRm = 0."""
    return decide(module, PROP_REDUCED_I, config, **kw)


def is_reduced_ii(module, config=None, **kw) -> Verdict:
    """am = 0 forces aM and Rm to intersect only in zero."""
    return decide(module, PROP_REDUCED_II, config, **kw)


# ---------------------------------------------------------------------------
# Ring deciders


def _decide_ring(ring: FiniteRing, prop: str,
                 config: EngineConfig | None = None) -> Verdict:
    cfg = resolve(config)
    desc = ring.descriptor
    triples = ring.size ** 3
    if triples > cfg.decision_cap and not cfg.force:
        raise DecisionCapError(
            f"{desc}: {prop} scan of {triples} triples exceeds cap "
            f"{cfg.decision_cap}; re-run with force to override",
            cfg.decision_cap,
        )
    mul = ring.mul
    zero = ring.zero
    if prop == PROP_RING_SEMI:
        trigger = lambda a, b: mul(a, b) == zero
        violates = lambda a, r, b: mul(a, mul(r, b)) != zero
    else:
        nils = nil_ring_set(ring)
        trigger = lambda a, b: mul(a, b) in nils
        violates = lambda a, r, b: mul(a, mul(r, b)) not in nils
    for a in ring.elements():
        for b in ring.elements():
            if not trigger(a, b):
                continue
            for r in ring.elements():
                if violates(a, r, b):
                    return Verdict(prop, False, METHOD_EXHAUSTIVE, (a, r, b), desc,
                                   witness_render=_ring_renders(ring, (a, r, b)))
    return Verdict(prop, True, METHOD_EXHAUSTIVE, None, desc)


def ring_is_semicommutative(ring: FiniteRing, config=None) -> Verdict:
    """ab = 0 forces aRb = 0."""
    return _decide_ring(ring, PROP_RING_SEMI, config)


def ring_is_nil_semicommutative(ring: FiniteRing, config=None) -> Verdict:
    """ab nilpotent forces aRb nilpotent."""
    return _decide_ring(ring, PROP_RING_NIL_SEMI, config)


# ---------------------------------------------------------------------------
# Single-shot witness verification (no size restriction)


def verify_nonsemicommutative_witness(module: FiniteModule, a: int, r: int,
                                      m: int) -> bool:
    """True when am = 0 yet a(rm) != 0: a semicommutativity violation."""
    act = module.act
    zero = module.zero
    return act(a, m) == zero and act(a, act(r, m)) != zero


def verify_not_nil_semicommutative_witness(module: FiniteModule, a: int, r: int,
                                           m: int,
                                           config: EngineConfig | None = None) -> bool:
    """True when am is nilpotent yet a(rm) is not: a nil-semicommutativity
    violation.  Nilpotency of both products is decided by the squared
    criterion's full scan over the ring."""
    act = module.act
    am_nil, _ = is_nilpotent_squared(module, act(a, m))
    arm_nil, _ = is_nilpotent_squared(module, act(a, act(r, m)))
    return am_nil and not arm_nil


# ---------------------------------------------------------------------------
# Cyclic submodule equivalence


def check_submodule_equivalence(module: FiniteModule,
                                config: EngineConfig | None = None) -> CheckReport:
    """Compare nil-semicommutativity of a module against all of its cyclic
    submodules; the two are asserted equivalent."""
    cfg = resolve(config if config is not None else module.config)
    whole = decide(module, PROP_NIL_SEMI, cfg, mode="exhaustive")
    seen: dict[tuple[int, ...], dict] = {}
    for m in module.elements():
        # the orbit alone identifies the submodule; build each one once
        key = tuple(sorted({module.act(r, m) for r in module.ring.elements()}))
        if key in seen:
            seen[key]["generators"].append(m)
            continue
        sub = cyclic_submodule(module, m, cfg)
        verdict = decide(sub, PROP_NIL_SEMI, cfg, mode="exhaustive")
        seen[key] = {
            "descriptor": sub.descriptor,
            "generators": [m],
            "size": sub.size,
            "holds": verdict.holds,
            "witness": verdict.to_json_dict()["witness"],
        }
    subs = list(seen.values())
    all_hold = all(entry["holds"] for entry in subs)
    equivalent = bool(whole.holds) == all_hold
    detail = {
        "descriptor": module.descriptor,
        "module_holds": whole.holds,
        "module_witness": whole.to_json_dict()["witness"],
        "cyclic_submodules": subs,
        "all_submodules_hold": all_hold,
        "equivalent": equivalent,
    }
    if not equivalent:
        bad = whole if not whole.holds else None
        if bad is not None and bad.witness is not None:
            a, r, m = bad.witness
            detail["witness"] = {
                "kind": "not-nil-semicommutative",
                "descriptor": module.descriptor,
                "a": a, "r": r, "m": m,
            }
        else:
            first_bad = next(e for e in subs if not e["holds"])
            w = first_bad["witness"]
            detail["witness"] = {
                "kind": "not-nil-semicommutative",
                "descriptor": first_bad["descriptor"],
                "a": w["a"], "r": w["r"], "m": w["m"],
            }
    return CheckReport(
        check_id="submodule_equivalence",
        claim="a module is nil-semicommutative exactly when every cyclic "
              "submodule is",
        status=CONFIRMED if equivalent else REFUTED,
        detail=detail,
    )

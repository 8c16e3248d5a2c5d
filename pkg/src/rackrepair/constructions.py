"""Evaluation-point plans and repair-polynomial families.

Four flavors share one engine:

* basic (C1): one rack per power-of-rbar exponent, sub-packetization rbar^nbar;
* multi-base (C2): rack exponents follow the mixed-radix weights of the prime
  decomposition rbar = p_1 ... p_m, shrinking l to roughly rbar^(nbar/m),
  including the remainder layout when m does not divide nbar;
* prime-rbar (Cor7): rbar >= 5 prime is handled by running the multi-base
  machinery for rbar' = rbar - 1 while the code keeps its true dimension;
* homogeneous: the u = 1 degeneration of the basic construction.

Every generated family is a set of monomials g_(t,s)(x) = zeta^(ut) x^(us);
the rank-l repair condition is verified numerically, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import prod

from .gf import GF, ExtensionField, FieldElement, PrimeField, rank_over_base
from .numbertheory import factorize, is_prime
from .radix import RadixSystem, index_set_c1, index_set_c2
from .rs import CodeSpec

MODES = ("C1", "C2", "C2-remainder", "Cor7", "homogeneous")
_C2_FAMILY = ("C2", "C2-remainder", "Cor7")


@dataclass(frozen=True)
class SchemeParams:
    """Validated integer parameters of one construction instance."""

    mode: str
    q: int
    u: int
    nbar: int
    rbar: int
    primes: tuple[int, ...] | None
    v: int
    # derived
    rbar_eff: int
    m: int
    h: int
    nprime: int
    l: int
    kbar: int
    k: int
    n: int
    kprime: int | None


def _validate_common(q: int, u: int, nbar: int, rbar: int, v: int):
    if not is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    if u < 1 or (q - 1) % u != 0:
        raise ValueError(f"u = {u} must divide q - 1 = {q - 1}")
    if not 0 <= v <= u - 1:
        raise ValueError(f"v = {v} must lie in [0, {u - 1}]")
    kbar = nbar - rbar
    if kbar < 1:
        raise ValueError("need nbar - rbar >= 1")
    k = kbar * u + v
    if k < u:
        raise ValueError("need k >= u")
    return kbar, k


def c1_params(q: int, u: int, nbar: int, rbar: int, v: int = 0, *, mode: str = "C1") -> SchemeParams:
    """Parameters for the basic construction (l = rbar^nbar)."""
    if rbar < 2:
        raise ValueError("need rbar >= 2")
    kbar, k = _validate_common(q, u, nbar, rbar, v)
    return SchemeParams(
        mode=mode, q=q, u=u, nbar=nbar, rbar=rbar, primes=None, v=v,
        rbar_eff=rbar, m=1, h=0, nprime=nbar, l=rbar**nbar,
        kbar=kbar, k=k, n=nbar * u, kprime=None,
    )


def homogeneous_params(q: int, nbar: int, rbar: int, v: int = 0) -> SchemeParams:
    """u = 1 degeneration: every node is its own rack."""
    if v != 0:
        raise ValueError("v must be 0 when u = 1")
    return c1_params(q, 1, nbar, rbar, 0, mode="homogeneous")


def c2_params(q: int, u: int, nbar: int, primes, v: int = 0) -> SchemeParams:
    """Parameters for the multi-base construction (rbar = p_1 * ... * p_m)."""
    primes = tuple(int(p) for p in primes)
    if len(primes) < 2:
        raise ValueError("the multi-base construction needs m >= 2 primes")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} in the prime list is composite")
    rbar = prod(primes)
    m = len(primes)
    nprime, h = divmod(nbar, m)
    if nprime < 2:
        raise ValueError("need floor(nbar / m) >= 2")
    kbar, k = _validate_common(q, u, nbar, rbar, v)
    l = rbar**nprime * prod(primes[:h])
    return SchemeParams(
        mode="C2" if h == 0 else "C2-remainder", q=q, u=u, nbar=nbar, rbar=rbar,
        primes=primes, v=v, rbar_eff=rbar, m=m, h=h, nprime=nprime, l=l,
        kbar=kbar, k=k, n=nbar * u, kprime=None,
    )


def cor7_params(q: int, u: int, nbar: int, rbar: int, v: int = 0) -> SchemeParams:
    """Prime rbar >= 5: repair with the multi-base system of rbar' = rbar - 1.

    The code keeps its true dimension k = (nbar - rbar) u + v; the repair
    family is the one for the larger dimension k' = (nbar - rbar') u + v,
    which stays valid because its polynomial degrees fit under n - k' - 1.
    """
    if rbar in (2, 3):
        raise ValueError("rbar = 2 or 3 needs no adaptation; use the basic construction")
    if not is_prime(rbar):
        raise ValueError("rbar is composite; use the multi-base construction directly")
    kbar, k = _validate_common(q, u, nbar, rbar, v)
    primes = tuple(factorize(rbar - 1))
    m = len(primes)
    nprime, h = divmod(nbar, m)
    if nprime < 2:
        raise ValueError("need floor(nbar / m) >= 2 for the rbar - 1 system")
    l = (rbar - 1) ** nprime * prod(primes[:h])
    kprime = (nbar - (rbar - 1)) * u + v
    return SchemeParams(
        mode="Cor7", q=q, u=u, nbar=nbar, rbar=rbar, primes=primes, v=v,
        rbar_eff=rbar - 1, m=m, h=h, nprime=nprime, l=l,
        kbar=kbar, k=k, n=nbar * u, kprime=kprime,
    )


# ---------------------------------------------------------------------------
# instance construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvaluationPlan:
    """alpha of order u in B, one zeta exponent per rack, and the full
    point table alpha_(e,j) = zeta^exponent(e) * alpha^j."""

    alpha: int
    rack_exponents: tuple[int, ...]
    points: tuple[tuple[FieldElement, ...], ...]


@dataclass(frozen=True, eq=False)
class CodeInstance:
    params: SchemeParams
    field: ExtensionField
    code: CodeSpec
    plan: EvaluationPlan
    radix: RadixSystem


def digit_system(params: SchemeParams) -> RadixSystem:
    """The mixed-radix system housing the construction's exponents: uniform
    rbar-ary for the basic modes, multi-base of the (effective) primes
    otherwise.  Its capacity is exactly l and its weights are the rack
    exponents."""
    if params.mode in ("C1", "homogeneous"):
        return RadixSystem.uniform(params.rbar, params.nbar)
    return RadixSystem.multi_base(params.primes, params.nbar)


def build(params: SchemeParams) -> CodeInstance:
    """Construct the field, evaluation plan, and code for validated params."""
    if params.mode not in MODES:
        raise ValueError(f"unknown mode {params.mode!r}")
    radix = digit_system(params)
    if radix.capacity != params.l:
        raise AssertionError("digit system capacity does not match l")
    field = GF(params.q, params.l)
    base = PrimeField(params.q)
    alpha = pow(base.primitive_root, (params.q - 1) // params.u, params.q)
    if pow(alpha, params.u, params.q) != 1 or any(
        pow(alpha, params.u // p, params.q) == 1 for p in set(factorize(params.u))
    ):
        raise AssertionError("alpha does not have order u")
    exponents = radix.weights
    points = []
    for e in range(1, params.nbar + 1):
        zd = field.zeta ** exponents[e - 1]
        points.append(tuple(zd * pow(alpha, j, params.q) for j in range(1, params.u + 1)))
    flat = tuple(p for rack in points for p in rack)
    if len(set(flat)) != len(flat):
        raise AssertionError("evaluation points collide; construction invariant broken")
    code = CodeSpec(
        field=field, n=params.n, k=params.k, eval_points=flat,
        nbar=params.nbar, u=params.u,
    )
    return CodeInstance(params=params, field=field, code=code,
                        plan=EvaluationPlan(alpha, tuple(exponents), tuple(points)),
                        radix=radix)


def build_construction1(params: SchemeParams) -> CodeInstance:
    if params.mode not in ("C1", "homogeneous"):
        raise ValueError("params are not for the basic construction")
    return build(params)


def build_construction2(params: SchemeParams) -> CodeInstance:
    if params.mode not in ("C2", "C2-remainder"):
        raise ValueError("params are not for the multi-base construction")
    return build(params)


def build_cor7(params: SchemeParams) -> CodeInstance:
    if params.mode != "Cor7":
        raise ValueError("params are not for the prime-rbar adaptation")
    return build(params)


def rack_wy(params: SchemeParams, rack: int) -> tuple[int, int]:
    """Block coordinates (w, y) of a flat rack index (multi-base modes)."""
    return (rack - 1) // params.m, (rack - 1) % params.m + 1


# ---------------------------------------------------------------------------
# repair families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RepairScheme:
    """The polynomial family {g_(t,s)(x) = zeta^(ut) x^(us)} for one failed
    node, as (t, s) exponent descriptors in a fixed enumeration order
    (t ascending, then s ascending)."""

    node: int
    rack: int
    index_set: tuple[int, ...]
    rbar_eff: int
    u: int
    descriptors: tuple[tuple[int, int], ...]
    rank_verified: bool = False


def repair_family(instance: CodeInstance, node: int) -> RepairScheme:
    params = instance.params
    e, _ = instance.code.rack_of(node)
    if params.mode in ("C1", "homogeneous"):
        t_set = index_set_c1(e, params.nbar, params.rbar)
    else:
        w, y = rack_wy(params, e)
        t_set = index_set_c2(w, y, params.primes, params.nprime, params.h)
    if len(t_set) * params.rbar_eff != params.l:
        raise AssertionError("index set size times rbar does not equal l")
    max_deg = params.u * (params.rbar_eff - 1)
    if max_deg > params.n - params.k - 1:
        raise AssertionError("repair polynomial degree exceeds n - k - 1")
    if params.kprime is not None and max_deg > params.n - params.kprime - 1:
        raise AssertionError("repair polynomial degree exceeds n - k' - 1")
    descriptors = tuple((t, s) for t in t_set for s in range(params.rbar_eff))
    return RepairScheme(
        node=node, rack=e, index_set=t_set, rbar_eff=params.rbar_eff,
        u=params.u, descriptors=descriptors,
    )


class FamilyEvaluator:
    """Evaluates every g_(t,s) of a scheme at the plan's points, reusing the
    zeta^(ut) table across racks."""

    def __init__(self, instance: CodeInstance, scheme: RepairScheme):
        self.instance = instance
        self.scheme = scheme
        zeta = instance.field.zeta
        self._zeta_ut = {t: zeta ** (scheme.u * t) for t in scheme.index_set}

    def at(self, rack: int, j: int = 1) -> tuple[FieldElement, ...]:
        point = self.instance.plan.points[rack - 1][j - 1]
        ppow = {s: point ** (self.scheme.u * s) for s in range(self.scheme.rbar_eff)}
        return tuple(self._zeta_ut[t] * ppow[s] for t, s in self.scheme.descriptors)


@dataclass(frozen=True)
class RankCheck:
    ok: bool
    rank: int
    scheme: RepairScheme


def verify_rank_condition(
    instance: CodeInstance, node: int, scheme: RepairScheme | None = None
) -> RankCheck:
    """Evaluate the failed node's family and check rank_B = l.

    Also asserts, exactly, the identities the construction is built on:
    the evaluations equal (zeta^u)^(t + s * exponent(e)) at every rack and
    in-rack position (so they are position independent within a rack), the
    basic modes' evaluated set is {(zeta^u)^a : a in [0, l-1]}, and the
    multi-base coset decomposition of the exponents.
    """
    params = instance.params
    if scheme is None:
        scheme = repair_family(instance, node)
    elif scheme.node != node:
        raise ValueError("scheme was generated for a different node")
    ev = FamilyEvaluator(instance, scheme)
    field = instance.field

    exps = instance.plan.rack_exponents
    amax = max(t + s * exps[e] for (t, s) in scheme.descriptors for e in range(params.nbar))
    zu_pow = [field.one]
    zu = field.zeta ** scheme.u
    for _ in range(amax):
        zu_pow.append(zu_pow[-1] * zu)

    for e in range(1, params.nbar + 1):
        want = tuple(zu_pow[t + s * exps[e - 1]] for (t, s) in scheme.descriptors)
        for j in range(1, params.u + 1):
            if ev.at(e, j) != want:
                raise AssertionError(
                    "monomial evaluations depend on the in-rack position; "
                    "alpha order invariant broken"
                )

    host = scheme.rack
    evaluated = ev.at(host, 1)
    if params.mode in ("C1", "homogeneous"):
        if set(evaluated) != set(zu_pow[: params.l]):
            raise AssertionError("basic-mode evaluations missed {(zeta^u)^a}")
    elif params.h == 0:
        w, y = rack_wy(params, host)
        sums = sorted(t + s * exps[host - 1] for (t, s) in scheme.descriptors)
        scale = prod(params.primes[: y - 1]) if w == params.nprime - 1 else 1
        if sums != [scale * a for a in range(params.l)]:
            raise AssertionError("multi-base coset decomposition failed")

    rank = rank_over_base(evaluated).rank
    ok = rank == params.l
    return RankCheck(ok=ok, rank=rank, scheme=replace(scheme, rank_verified=ok))

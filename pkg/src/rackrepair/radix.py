"""Mixed-radix digit systems: r-ary and multi-base expansions, positional
weights, and the zero-digit index sets the repair constructions select from.

Positions are 1-based to match the usual digit notation t_1, t_2, ...; the
flat position of block coordinates (w, y) is w*m + y.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .numbertheory import is_prime


@dataclass(frozen=True)
class DigitVector:
    """Digits of one value, position 1 first."""

    digits: tuple[int, ...]

    def __str__(self):
        return ",".join(map(str, self.digits))


class RadixSystem:
    """Positional system with per-position radices (rho_1, ..., rho_N).

    weight[i] = rho_1 * ... * rho_(i-1), so a value decodes as
    sum_i digit_i * weight_i and encode/decode is a bijection between
    [0, capacity - 1] and the digit box.
    """

    def __init__(self, radices):
        radices = tuple(int(r) for r in radices)
        if not radices or any(r < 2 for r in radices):
            raise ValueError("radices must be integers >= 2")
        self.radices = radices
        weights = [1]
        for r in radices[:-1]:
            weights.append(weights[-1] * r)
        self.weights = tuple(weights)
        self.capacity = prod(radices)

    @classmethod
    def uniform(cls, radix: int, length: int) -> "RadixSystem":
        return cls((radix,) * length)

    @classmethod
    def multi_base(cls, primes, nbar: int) -> "RadixSystem":
        """Radix list for the multi-base expansion over nbar positions:
        (p_1..p_m) repeated floor(nbar/m) times, then (p_1..p_h)."""
        primes = tuple(int(p) for p in primes)
        if any(not is_prime(p) for p in primes):
            raise ValueError("multi-base radices must all be prime")
        m = len(primes)
        nprime, h = divmod(nbar, m)
        return cls(primes * nprime + primes[:h])

    def encode(self, a: int) -> DigitVector:
        """Unique digit vector of a, extracted greedily position by position."""
        if not 0 <= a < self.capacity:
            raise ValueError(f"value {a} outside [0, {self.capacity - 1}]")
        digits = []
        for r in self.radices:
            digits.append(a % r)
            a //= r
        return DigitVector(tuple(digits))

    def decode(self, d: DigitVector) -> int:
        if len(d.digits) != len(self.radices):
            raise ValueError("digit count does not match the radix list")
        for t, r in zip(d.digits, self.radices):
            if not 0 <= t < r:
                raise ValueError(f"digit {t} out of bounds for radix {r}")
        return sum(t * w for t, w in zip(d.digits, self.weights))

    def digit(self, a: int, position: int) -> int:
        """Digit of a at the given 1-based position."""
        return self.encode(a).digits[position - 1]


def weight_dwy(w: int, y: int, primes) -> int:
    """Positional weight rbar^w * p_1 * ... * p_(y-1) (empty product for y=1),
    where rbar is the product of all the primes.  Equals the RadixSystem
    weight at flat position w*m + y."""
    primes = tuple(int(p) for p in primes)
    if w < 0 or not 1 <= y <= len(primes):
        raise ValueError("need w >= 0 and y in [1, m]")
    rbar = prod(primes)
    return rbar**w * prod(primes[: y - 1])


def index_set_c1(i: int, nbar: int, rbar: int) -> tuple[int, ...]:
    """All t in [0, rbar^nbar - 1] whose i-th rbar-ary digit is zero.

    The result has exactly rbar^(nbar-1) entries, ascending.
    """
    if not 1 <= i <= nbar:
        raise ValueError(f"rack index {i} outside [1, {nbar}]")
    sys = RadixSystem.uniform(rbar, nbar)
    out = tuple(t for t in range(sys.capacity) if sys.digit(t, i) == 0)
    assert len(out) == rbar ** (nbar - 1)
    return out


def index_set_c2(w: int, y: int, primes, nprime: int, h: int = 0) -> tuple[int, ...]:
    """All t whose m consecutive digits starting at flat position w*m + y are
    zero, positions wrapping circularly past the last digit.

    With h = 0 this is the block/wrapped selection of the multi-base
    construction (the wrap only engages for w = nprime - 1); with h != 0
    the same rule runs over the transformed digit positions, which now
    include the h remainder positions.  The radices covered by the window
    must multiply to rbar so that the set has exactly capacity/rbar
    entries; other layouts are rejected.
    """
    primes = tuple(int(p) for p in primes)
    m = len(primes)
    if nprime < 2:
        raise ValueError("need nprime >= 2")
    if not 1 <= y <= m:
        raise ValueError(f"y={y} outside [1, {m}]")
    max_w = nprime - 1 if h == 0 else nprime
    if not 0 <= w <= max_w or (h and w == nprime and y > h):
        raise ValueError(f"rack coordinates (w={w}, y={y}) out of range")
    nbar = nprime * m + h
    sys = RadixSystem.multi_base(primes, nbar)
    positions = [((w * m + y + yp - 1) % nbar) + 1 for yp in range(m)]
    rbar = prod(primes)
    window = prod(sys.radices[p - 1] for p in positions)
    if window != rbar:
        raise ValueError(
            "digit window does not cover one full radix period; "
            "this remainder layout has no size-l/rbar index set"
        )
    out = []
    for t in range(sys.capacity):
        digits = sys.encode(t).digits
        if all(digits[p - 1] == 0 for p in positions):
            out.append(t)
    assert len(out) * rbar == sys.capacity
    return tuple(out)

"""Exact arithmetic in B = GF(q) and F = GF(q^l), plus the trace machinery
(dual bases, ranks over B) that linear repair schemes are built on.

An element of F is a length-l vector of residues mod q, lowest-degree
coefficient first, reduced modulo a monic irreducible polynomial.  Field
construction is fully deterministic: the modulus is the first irreducible
polynomial in counting order over the coefficient vector, and the primitive
element is the first candidate (same counting order) certified to have order
q^l - 1 against the prime factorization of that order.  Exponents and orders
are plain Python integers, so they stay exact far beyond machine word size.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .numbertheory import cyclotomic_value, divisors, factorize, is_prime


# ---------------------------------------------------------------------------
# polynomials over GF(q): 1-d int64 arrays, low-degree first, no trailing zeros
# ---------------------------------------------------------------------------

def _trim(p: np.ndarray) -> np.ndarray:
    nz = np.nonzero(p)[0]
    return p[: nz[-1] + 1] if nz.size else p[:0]


def _poly_divmod(a: np.ndarray, b: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = _trim(a % q), _trim(b % q)
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if a.size < b.size:
        return a[:0], a
    inv_lead = pow(int(b[-1]), -1, q)
    r = a.copy()
    quo = np.zeros(a.size - b.size + 1, dtype=np.int64)
    for shift in range(a.size - b.size, -1, -1):
        c = r[shift + b.size - 1] * inv_lead % q
        if c:
            quo[shift] = c
            r[shift : shift + b.size] = (r[shift : shift + b.size] - c * b) % q
    return quo, _trim(r)


def _poly_gcd(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    a, b = _trim(a % q), _trim(b % q)
    while b.size:
        a, b = b, _poly_divmod(a, b, q)[1]
    if a.size:  # monic normalization
        a = a * pow(int(a[-1]), -1, q) % q
    return a


def _poly_inv_mod(a: np.ndarray, modulus: np.ndarray, q: int) -> np.ndarray:
    """Inverse of a modulo `modulus` via extended Euclid; a must be a unit."""
    r0, r1 = _trim(modulus % q), _trim(a % q)
    t0 = np.zeros(1, dtype=np.int64)[:0]
    t1 = np.ones(1, dtype=np.int64)
    while r1.size:
        quo, rem = _poly_divmod(r0, r1, q)
        r0, r1 = r1, rem
        prod = np.convolve(quo, t1) % q if quo.size and t1.size else quo[:0]
        n = max(t0.size, prod.size)
        nxt = np.zeros(n, dtype=np.int64)
        nxt[: t0.size] += t0
        nxt[: prod.size] -= prod
        t0, t1 = t1, _trim(nxt % q)
    if r0.size != 1:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    return _trim(t0 * pow(int(r0[0]), -1, q) % q)


class _QuotientRing:
    """Arithmetic in B[x]/(f) for a monic f (not necessarily irreducible)."""

    def __init__(self, q: int, modulus: np.ndarray):
        modulus = np.asarray(modulus, dtype=np.int64) % q
        if modulus.size < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.q = q
        self.l = modulus.size - 1
        self.modulus = modulus
        l = self.l
        # reduction[j] = coefficients of x^(l+j) mod f, for j in [0, l-2]
        red = np.zeros((max(l - 1, 0), l), dtype=np.int64)
        cur = (-modulus[:l]) % q  # x^l mod f
        for j in range(l - 1):
            red[j] = cur
            nxt = np.zeros(l, dtype=np.int64)
            nxt[1:] = cur[: l - 1]
            cur = (nxt + cur[l - 1] * red[0]) % q
        self.reduction = red

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        q, l = self.q, self.l
        if l == 1:
            return a * b % q
        full = np.convolve(a, b) % q  # length 2l - 1 for length-l inputs
        high = full[l:]
        return (full[:l] + high @ self.reduction[: high.size]) % q

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        out = np.zeros(self.l, dtype=np.int64)
        out[0] = 1
        base = a % self.q
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


# ---------------------------------------------------------------------------
# modular matrix kernels
# ---------------------------------------------------------------------------

def _mat_inv_mod(mat: np.ndarray, q: int) -> np.ndarray:
    """Inverse of a square matrix over GF(q) by Gauss-Jordan elimination."""
    n = mat.shape[0]
    aug = np.concatenate([mat % q, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        piv_rows = np.nonzero(aug[col:, col])[0]
        if piv_rows.size == 0:
            raise ValueError("matrix is singular over GF(q)")
        piv = col + int(piv_rows[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, q) % q
        others = np.nonzero(aug[:, col])[0]
        others = others[others != col]
        if others.size:
            aug[others] = (aug[others] - np.outer(aug[others, col], aug[col])) % q
    return aug[:, n:]


class RankProfile:
    """Result of a rank computation over B.

    Attributes:
        rank: dimension of the span over B.
        pivots: indices of the first maximal independent subset, in input order.
        coords: (num_elements x rank) residue matrix; row i gives the
            B-coordinates of element i in the pivot subset.
    """

    def __init__(self, rank: int, pivots: tuple[int, ...], coords: np.ndarray):
        self.rank = rank
        self.pivots = pivots
        self.coords = coords

    def __repr__(self):
        return f"RankProfile(rank={self.rank}, pivots={self.pivots})"


def _rank_profile(matrix: np.ndarray, q: int) -> RankProfile:
    """Greedy row-by-row reduction keeping a reduced echelon basis.

    E holds the echelon rows (unit pivot columns), W expresses each echelon
    row as a combination of the chosen original rows, so any row v in the
    span satisfies v = v[pivcols] @ E and has coordinates v[pivcols] @ W.
    """
    num, width = matrix.shape
    E = np.zeros((0, width), dtype=np.int64)
    W = np.zeros((0, 0), dtype=np.int64)
    pivcols: list[int] = []
    pivots: list[int] = []
    for i in range(num):
        v = matrix[i] % q
        f = v[pivcols]
        r = (v - f @ E) % q if pivcols else v.copy()
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            continue
        c = int(nz[0])
        lead_inv = pow(int(r[c]), -1, q)
        rn = r * lead_inv % q
        w_new = np.zeros(len(pivots) + 1, dtype=np.int64)
        if pivots:
            w_new[:-1] = (-lead_inv * (f @ W)) % q
        w_new[-1] = lead_inv
        if pivots:
            fac = E[:, c].copy()
            W = np.concatenate([W, np.zeros((W.shape[0], 1), dtype=np.int64)], axis=1)
            E = (E - np.outer(fac, rn)) % q
            W = (W - np.outer(fac, w_new)) % q
        else:
            W = np.zeros((0, 1), dtype=np.int64)
        E = np.concatenate([E, rn[None, :]])
        W = np.concatenate([W, w_new[None, :]])
        pivcols.append(c)
        pivots.append(i)
    coords = (matrix[:, pivcols] @ W) % q if pivots else np.zeros((num, 0), dtype=np.int64)
    return RankProfile(len(pivots), tuple(pivots), coords)


# ---------------------------------------------------------------------------
# field specs and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeField:
    """The base field B = GF(q); q is verified prime at construction."""

    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")

    @functools.cached_property
    def primitive_root(self) -> int:
        """Smallest generator of GF(q)*, certified against factors of q-1."""
        checks = [(self.q - 1) // p for p in sorted(set(factorize(self.q - 1)))]
        for g in range(2, self.q):
            if all(pow(g, e, self.q) != 1 for e in checks):
                return g
        return 1  # q == 2


class FieldElement:
    """An element of GF(q^l) as an immutable residue-coefficient vector."""

    __slots__ = ("field", "vec", "_hash")

    def __init__(self, field: "ExtensionField", vec: np.ndarray):
        self.field = field
        vec = np.asarray(vec, dtype=np.int64)
        vec.flags.writeable = False
        self.vec = vec
        self._hash = None

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients as ints, lowest degree first."""
        return tuple(int(c) for c in self.vec)

    def is_zero(self) -> bool:
        return not self.vec.any()

    def trace(self) -> int:
        return self.field.trace(self)

    def order(self) -> int:
        return self.field.element_order(self)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different field specs")
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, (self.vec + o.vec) % self.field.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, (self.vec - o.vec) % self.field.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, (o.vec - self.vec) % self.field.q)

    def __neg__(self):
        return FieldElement(self.field, (-self.vec) % self.field.q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._ring.mul(self.vec, o.vec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in GF(q^l)")
        f = self.field
        inv = _poly_inv_mod(self.vec, f._ring.modulus, f.q)
        out = np.zeros(f.l, dtype=np.int64)
        out[: inv.size] = inv
        return FieldElement(f, out)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return FieldElement(self.field, self.field._ring.pow(self.vec, e))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.scalar(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and bool(np.array_equal(self.vec, other.vec))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.field.l, self.vec.tobytes()))
        return self._hash

    def __repr__(self):
        return f"GF({self.field.q}^{self.field.l})[{','.join(map(str, self.coeffs))}]"

    def __str__(self):
        return ",".join(map(str, self.coeffs))


class ExtensionField:
    """F = GF(q^l) with a certified primitive element and trace machinery.

    Construction performs, in order: primality check on q, deterministic
    irreducible-modulus search, Frobenius/trace precomputation (with a
    one-time certification that every trace lands in B), factorization of
    q^l - 1 by cyclotomic splitting, and certification of the primitive
    element zeta.  Instances are immutable and safe to share.
    """

    def __init__(self, q: int, l: int):
        self.base = PrimeField(q)
        if l < 1:
            raise ValueError("extension degree must be >= 1")
        self.q = q
        self.l = l
        self.modulus = find_irreducible(q, l)
        self._ring = _QuotientRing(q, np.array(self.modulus, dtype=np.int64))
        self._init_trace()
        self.order = q**l - 1
        self.order_factorization = factor_field_order(q, l)
        self.zeta = find_primitive_element(self)

    def _init_trace(self):
        q, l = self.q, self.l
        # Frobenius matrix: column i holds (x^i)^q = (x^q)^i mod f.
        frob = np.zeros((l, l), dtype=np.int64)
        if l == 1:
            frob[0, 0] = 1
        else:
            x = np.zeros(l, dtype=np.int64)
            x[1] = 1
            xq = self._ring.pow(x, q)
            col = np.zeros(l, dtype=np.int64)
            col[0] = 1
            for i in range(l):
                frob[:, i] = col
                col = self._ring.mul(col, xq)
        # Trace-sum matrix S = I + M + ... + M^(l-1); tr(a) = (S @ a)[0].
        S = np.zeros((l, l), dtype=np.int64)
        term = np.eye(l, dtype=np.int64)
        for _ in range(l):
            S = (S + term) % q
            term = (frob @ term) % q
        if np.any(S[1:]):
            raise AssertionError("trace of some element falls outside the base field")
        self._frobenius = frob
        self._trace_vec = S[0]
        # Bilinear form T[i, j] = tr(x^(i+j)): products never leave the span.
        mono = np.zeros(2 * l - 1, dtype=np.int64)
        mono[:l] = self._trace_vec
        for j in range(l, 2 * l - 1):
            mono[j] = self._ring.reduction[j - l] @ self._trace_vec % q
        idx = np.add.outer(np.arange(l), np.arange(l))
        self._trace_form = mono[idx]

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and self.q == other.q
            and self.l == other.l
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.q, self.l, self.modulus))

    def __repr__(self):
        return f"ExtensionField(q={self.q}, l={self.l})"

    # -- element constructors -------------------------------------------------

    def element(self, coeffs: Iterable[int]) -> FieldElement:
        vec = np.asarray(list(coeffs), dtype=np.int64)
        if vec.shape != (self.l,):
            raise ValueError(f"expected {self.l} coefficients")
        return FieldElement(self, vec % self.q)

    def scalar(self, c: int) -> FieldElement:
        vec = np.zeros(self.l, dtype=np.int64)
        vec[0] = c % self.q
        return FieldElement(self, vec)

    @functools.cached_property
    def zero(self) -> FieldElement:
        return self.scalar(0)

    @functools.cached_property
    def one(self) -> FieldElement:
        return self.scalar(1)

    def monomial(self, i: int) -> FieldElement:
        """The basis element x^i, 0 <= i < l."""
        vec = np.zeros(self.l, dtype=np.int64)
        vec[i] = 1
        return FieldElement(self, vec)

    def random_element(self, rng) -> FieldElement:
        return self.element([rng.randrange(self.q) for _ in range(self.l)])

    # -- trace machinery ------------------------------------------------------

    def trace(self, a: FieldElement) -> int:
        """tr(a) = a + a^q + ... + a^(q^(l-1)), returned as a residue mod q.

        Membership of every trace in B is certified once at construction,
        so the runtime computation is the equivalent linear form.
        """
        self._check(a)
        return int(self._trace_vec @ a.vec % self.q)

    def trace_product(self, a: FieldElement, b: FieldElement) -> int:
        """tr(a * b) without forming the product (bilinear trace form)."""
        self._check(a)
        self._check(b)
        return int(a.vec @ self._trace_form @ b.vec % self.q)

    def dual_basis(self, basis: Sequence[FieldElement]) -> "DualBasisPair":
        """Dual basis {mu_j} with tr(basis_i * mu_j) = delta_ij.

        Obtained by inverting the Gram matrix G[i][j] = tr(basis_i basis_j)
        over B; raises if the input is rank deficient.  The Kronecker
        condition is re-verified exactly before returning.
        """
        if len(basis) != self.l:
            raise ValueError(f"need exactly {self.l} basis elements")
        Z = np.stack([self._check(b).vec for b in basis])
        gram = Z @ self._trace_form @ Z.T % self.q
        try:
            ginv = _mat_inv_mod(gram, self.q)
        except ValueError:
            raise ValueError("basis is rank deficient over the base field") from None
        mu = ginv.T @ Z % self.q
        if not np.array_equal(Z @ self._trace_form @ mu.T % self.q, np.eye(self.l, dtype=np.int64)):
            raise AssertionError("dual basis failed the Kronecker condition")
        return DualBasisPair(
            zeta_basis=tuple(basis),
            mu_basis=tuple(FieldElement(self, row) for row in mu),
        )

    def element_order(self, a: FieldElement) -> int:
        """Least e >= 1 with a^e = 1, via the stored factorization of q^l - 1."""
        self._check(a)
        if a.is_zero():
            raise ValueError("the zero element has no multiplicative order")
        e = self.order
        for p in sorted(set(self.order_factorization)):
            while e % p == 0 and (a ** (e // p)) == self.one:
                e //= p
        if a**e != self.one:
            raise AssertionError("element order computation failed")
        return e

    # -- misc ----------------------------------------------------------------

    def describe(self) -> dict:
        """Serializable field description (coefficients low-degree first)."""
        return {
            "q": self.q,
            "l": self.l,
            "modulus": list(self.modulus),
            "zeta": list(self.zeta.coeffs),
        }

    def _check(self, a: FieldElement) -> FieldElement:
        if not isinstance(a, FieldElement) or a.field != self:
            raise ValueError("element does not belong to this field spec")
        return a


@dataclass(frozen=True)
class DualBasisPair:
    """Two bases of F over B with tr(zeta_i * mu_j) = delta_ij."""

    zeta_basis: tuple[FieldElement, ...]
    mu_basis: tuple[FieldElement, ...]


@functools.lru_cache(maxsize=None)
def GF(q: int, l: int) -> ExtensionField:
    """Deterministic, cached construction of GF(q^l)."""
    return ExtensionField(q, l)


# ---------------------------------------------------------------------------
# construction-time searches and certification
# ---------------------------------------------------------------------------

def find_irreducible(q: int, l: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree l over GF(q), in counting
    order of the non-leading coefficient vector (constant term fastest).

    The winner is certified by Rabin's criterion: x^(q^l) = x mod f together
    with gcd(x^(q^(l/p)) - x, f) = 1 for every prime p dividing l.  The
    search itself discards candidates as soon as a distinct-degree gcd finds
    a low-degree factor.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if l < 1:
        raise ValueError("degree must be >= 1")
    if l == 1:
        return (0, 1)  # x itself; every monic linear polynomial is irreducible
    counter = 0
    while True:
        coeffs = np.zeros(l + 1, dtype=np.int64)
        m = counter
        counter += 1
        for i in range(l):
            coeffs[i] = m % q
            m //= q
        if m:
            raise AssertionError("irreducible search exhausted the degree")
        coeffs[l] = 1
        if coeffs[0] == 0:  # divisible by x
            continue
        if _has_root(coeffs, q):
            continue
        if _is_irreducible(coeffs, q, l):
            return tuple(int(c) for c in coeffs)


def _has_root(coeffs: np.ndarray, q: int) -> bool:
    for c in range(q):
        acc = 0
        for a in coeffs[::-1]:
            acc = (acc * c + int(a)) % q
        if acc == 0:
            return True
    return False


def _is_irreducible(coeffs: np.ndarray, q: int, l: int) -> bool:
    # Distinct-degree sieve: gcd(x^(q^d) - x, f) != 1 exactly when f has an
    # irreducible factor of degree dividing d, and any reducible f of degree
    # l has a factor of degree <= l/2.  The d = l/p Rabin checkpoints are a
    # subset of the sieve; the final Frobenius fixed-point check completes it.
    ring = _QuotientRing(q, coeffs)
    x = np.zeros(l, dtype=np.int64)
    x[1] = 1
    h = x.copy()
    for _ in range(l // 2):
        h = ring.pow(h, q)
        if _poly_gcd((h - x) % q, coeffs, q).size != 1:
            return False
    for _ in range(l - l // 2):
        h = ring.pow(h, q)
    return bool(np.array_equal(h, x))


def factor_field_order(q: int, l: int) -> tuple[int, ...]:
    """Prime factorization of q^l - 1 as a sorted multiset.

    q^l - 1 is first split into cyclotomic polynomial values prod_{d|l}
    Phi_d(q), and each (much smaller) piece is factored by trial division
    plus deterministic Pollard rho.  The result multiplies back to q^l - 1
    and every entry is certified prime.
    """
    out: list[int] = []
    for d in divisors(l):
        out += factorize(cyclotomic_value(d, q))
    out.sort()
    prod = 1
    for p in out:
        prod *= p
        if not is_prime(p):
            raise AssertionError(f"non-prime factor {p} escaped factorization")
    if prod != q**l - 1:
        raise AssertionError("cyclotomic splitting lost a factor")
    return tuple(out)


def find_primitive_element(field: ExtensionField) -> FieldElement:
    """First element (counting order) of order q^l - 1, certified against the
    stored factorization: zeta^((q^l-1)/p) != 1 for every prime factor p."""
    checks = [field.order // p for p in sorted(set(field.order_factorization))]
    counter = 1
    while True:
        vec = np.zeros(field.l, dtype=np.int64)
        m = counter
        counter += 1
        for i in range(field.l):
            vec[i] = m % field.q
            m //= field.q
        if m:
            raise AssertionError("no primitive element found (impossible)")
        cand = FieldElement(field, vec)
        if all((cand**e) != field.one for e in checks):
            return cand


# ---------------------------------------------------------------------------
# linear algebra over B
# ---------------------------------------------------------------------------

def rank_over_base(elems: Sequence[FieldElement]) -> RankProfile:
    """Rank over B of the coefficient vectors of `elems`, with the first
    maximal independent subset and the B-coordinates of every element in it."""
    if not elems:
        return RankProfile(0, (), np.zeros((0, 0), dtype=np.int64))
    field = elems[0].field
    mat = np.stack([field._check(e).vec for e in elems])
    return _rank_profile(mat, field.q)


def expand_in_dual_basis(traces: Sequence[int], pair: DualBasisPair) -> FieldElement:
    """Reconstruct a from its trace profile: a = sum_i traces[i] * mu_i."""
    mu = pair.mu_basis
    if len(traces) != len(mu):
        raise ValueError("trace profile length must match the basis size")
    field = mu[0].field
    t = np.asarray(list(traces), dtype=np.int64) % field.q
    mat = np.stack([m.vec for m in mu])
    return FieldElement(field, t @ mat % field.q)

"""Univariate polynomial arithmetic over one FieldSpec.

Coefficients are element keys stored little-endian: coeffs[i] multiplies
x**i, and the tuple carries no trailing zeros, so () is the zero polynomial.
The degree of the zero polynomial is the module constant NEG_INF, which
compares below every integer; callers never see -1 doing double duty.

Everything is exact.  Dense classical algorithms cover the general case;
remainders of very sparse inputs (the census works with trinomials whose
degree runs into the thousands) are routed through a term-dict loop so a
gcd there costs a few hundred dictionary updates instead of a quadratic
dense division.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from .field import FieldElement, FieldSpec, _kernel

__all__ = [
    "NEG_INF",
    "Poly",
    "canonical_poly_key",
    "degree_profile",
    "extract_quadratic_factor",
    "from_terms",
    "gcd",
    "is_irreducible",
    "is_squarefree",
    "monomial",
    "odd_multiplicity_part",
    "one",
    "poly",
    "pow_mod",
    "squarefree_decomposition",
    "squarefree_witness",
    "variable",
    "zero",
]

NEG_INF = float("-inf")

# Fixed seed for the equal-degree splitting walk; see extract_quadratic_factor.
_SPLIT_SEED = 2

# Inputs at least this sparse take the term-dict remainder path.
_SPARSE_TERMS = 8
_SPARSE_MIN_DEGREE = 48


@dataclass(frozen=True)
class Poly:
    """An immutable polynomial; build via the module constructors."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("unnormalized coefficient tuple (trailing zero)")

    # -- shape --------------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, i: int) -> FieldElement:
        key = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return self.field.from_key(key)

    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.field.from_key(self.coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == _kernel(self.field).one_key

    def terms(self) -> tuple[tuple[int, int], ...]:
        """(exponent, key) pairs of the nonzero terms, ascending exponent."""
        return tuple((e, c) for e, c in enumerate(self.coeffs) if c)

    # -- arithmetic ---------------------------------------------------------

    def _peer(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise ValueError("mixed fields in polynomial arithmetic")
            return other
        if isinstance(other, (FieldElement, int)):
            return _mk(self.field, [self.field.element(other).key])
        return NotImplemented

    def __add__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        k = _kernel(self.field)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = k.add(out[i], c)
        return _mk(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        k = _kernel(self.field)
        return _mk(self.field, [k.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _mk(self.field, [])
        k = _kernel(self.field)
        ta = [(e, c) for e, c in enumerate(a) if c]
        tb = [(e, c) for e, c in enumerate(b) if c]
        out = [0] * (len(a) + len(b) - 1)
        for ea, ca in ta:
            for eb, cb in tb:
                i = ea + eb
                out[i] = k.add(out[i], k.mul(ca, cb))
        return _mk(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        k = _kernel(self.field)
        db = other.degree
        if self.degree < db:
            return _mk(self.field, []), self
        rem = list(self.coeffs)
        quot = [0] * (len(rem) - db)
        binv = k.inv(other.coeffs[-1])
        btail = [(j, c) for j, c in enumerate(other.coeffs[:-1]) if c]
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = k.mul(c, binv)
                quot[i - db] = f
                for j, bc in btail:
                    idx = i - db + j
                    rem[idx] = k.sub(rem[idx], k.mul(f, bc))
                rem[i] = 0
        return _mk(self.field, quot), _mk(self.field, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return _remainder(self, other)

    def __call__(self, x) -> FieldElement:
        x = self.field.element(x)
        k = _kernel(self.field)
        acc = 0
        xk = x.key
        for c in reversed(self.coeffs):
            acc = k.add(k.mul(acc, xk), c)
        return self.field.from_key(acc)

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        k = _kernel(self.field)
        inv = k.inv(self.coeffs[-1])
        return _mk(self.field, [k.mul(c, inv) for c in self.coeffs])

    def derivative(self) -> "Poly":
        k = _kernel(self.field)
        out = [k.smul(c, e) for e, c in enumerate(self.coeffs)][1:]
        return _mk(self.field, out)

    def shift(self, n: int) -> "Poly":
        """Multiply by x**n."""
        if self.is_zero() or n == 0:
            return self
        return _mk(self.field, [0] * n + list(self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            ce = self.field.from_key(c)
            if e == 0:
                parts.append(str(ce))
            else:
                xs = "x" if e == 1 else f"x^{e}"
                one_key = _kernel(self.field).one_key
                parts.append(xs if c == one_key else f"{ce}*{xs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} over {self.field}>"


def _mk(field: FieldSpec, keys) -> Poly:
    keys = list(keys)
    while keys and keys[-1] == 0:
        keys.pop()
    return Poly(field, tuple(keys))


# ---------------------------------------------------------------------------
# Constructors


def poly(field: FieldSpec, coefficients) -> Poly:
    """Build from ascending coefficients; ints embed as integers."""
    return _mk(field, [field.element(c).key for c in coefficients])


def from_terms(field: FieldSpec, terms: dict) -> Poly:
    """Build from an {exponent: coefficient} mapping."""
    if not terms:
        return _mk(field, [])
    top = max(terms)
    keys = [0] * (top + 1)
    for e, c in terms.items():
        if e < 0:
            raise ValueError("negative exponent")
        keys[e] = field.element(c).key
    return _mk(field, keys)


def monomial(field: FieldSpec, degree: int, coefficient=1) -> Poly:
    return from_terms(field, {degree: coefficient})


def zero(field: FieldSpec) -> Poly:
    return _mk(field, [])


def one(field: FieldSpec) -> Poly:
    return poly(field, [1])


def variable(field: FieldSpec) -> Poly:
    return poly(field, [0, 1])


def canonical_poly_key(f: Poly):
    """Sort key realizing the canonical polynomial order.

    Lower degree first; equal degrees compare coefficient keys from the
    constant term upward, mirroring the element order.
    """
    return (len(f.coeffs), f.coeffs)


# ---------------------------------------------------------------------------
# Remainders, including the sparse path


def _sparse_mod(a: Poly, b: Poly):
    """Remainder of a by b via term dicts; None if the work densifies."""
    k = _kernel(a.field)
    db = b.degree
    bterms = b.terms()
    binv = k.inv(bterms[-1][1])
    tail = bterms[:-1]
    rem = {e: c for e, c in a.terms()}
    heap = [-e for e in rem if e >= db]
    heapq.heapify(heap)
    limit = max(64, 4 * (len(rem) + len(bterms)))
    while heap:
        e = -heapq.heappop(heap)
        c = rem.pop(e, 0)
        if not c:
            continue
        f = k.mul(c, binv)
        for eb, cb in tail:
            ne = e - db + eb
            nv = k.sub(rem.get(ne, 0), k.mul(f, cb))
            if nv:
                if ne not in rem and ne >= db:
                    heapq.heappush(heap, -ne)
                rem[ne] = nv
            else:
                rem.pop(ne, None)
        if len(rem) > limit:
            return None
    if not rem:
        return _mk(a.field, [])
    out = [0] * (max(rem) + 1)
    for e, c in rem.items():
        out[e] = c
    return _mk(a.field, out)


def _remainder(a: Poly, b: Poly) -> Poly:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.degree < b.degree:
        return a
    na = len(a.terms())
    nb = len(b.terms())
    if (
        na <= _SPARSE_TERMS
        and nb <= _SPARSE_TERMS
        and a.degree >= _SPARSE_MIN_DEGREE
    ):
        out = _sparse_mod(a, b)
        if out is not None:
            return out
    return divmod(a, b)[1]


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is 0."""
    if a.field is not b.field:
        raise ValueError("mixed fields in gcd")
    while not b.is_zero():
        a, b = b, _remainder(a, b)
    return a.monic()


def pow_mod(base: Poly, e: int, modulus: Poly) -> Poly:
    """base**e reduced mod modulus, by binary powering."""
    if e < 0:
        raise ValueError("negative exponent")
    result = one(base.field)
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Squarefreeness and factor structure


def squarefree_witness(f: Poly):
    """None if f is squarefree, else a monic nontrivial repeated part.

    The witness is gcd(f, f'), or the full radical-defect f itself when the
    derivative vanishes identically (every factor repeated).
    """
    if f.degree < 1:
        raise ValueError("squarefreeness is undefined for constant input")
    d = f.derivative()
    if d.is_zero():
        return f.monic()
    g = gcd(f, d)
    return None if g.degree == 0 else g


def is_squarefree(f: Poly) -> bool:
    return squarefree_witness(f) is None


def _pth_root(f: Poly) -> Poly:
    """The g with g**p == f, for f whose exponents are all multiples of p."""
    field = f.field
    k = _kernel(field)
    p = field.p
    root_exp = field.q // p
    out = {}
    for e, c in f.terms():
        if e % p:
            raise ValueError("input is not a p-th power")
        out[e // p] = k.pow(c, root_exp)
    return _mk(field, [out.get(i, 0) for i in range(max(out) + 1)]) if out else zero(field)


def squarefree_decomposition(f: Poly):
    """(unit, {multiplicity: monic factor}) with f = unit * prod g_m**m.

    The parts are pairwise coprime, squarefree and nonconstant.  Handles
    characteristic p fully: factors whose multiplicity is divisible by p
    are pulled out through p-th roots.
    """
    if f.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    unit = f.leading()
    out: dict[int, Poly] = {}
    _sqf_rec(f.monic(), 1, out)
    return unit, out


def _sqf_rec(f: Poly, scale: int, out: dict) -> None:
    if f.degree == 0:
        return
    p = f.field.p
    d = f.derivative()
    if d.is_zero():
        _sqf_rec(_pth_root(f), scale * p, out)
        return
    c = gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        a = w // y
        if a.degree > 0:
            m = i * scale
            assert m not in out
            out[m] = a
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        _sqf_rec(_pth_root(c), scale * p, out)


def odd_multiplicity_part(f: Poly):
    """Split f as (s, t) with f = s * t**2 and s squarefree-up-to-unit.

    s collects each irreducible factor an odd number of times (once), with
    f's leading coefficient attached; t soaks up the squares.  The identity
    s * t * t == f is checked before returning.
    """
    if f.is_zero():
        raise ValueError("cannot split the zero polynomial")
    unit, parts = squarefree_decomposition(f)
    s = from_terms(f.field, {0: unit})
    t = one(f.field)
    for m, g in sorted(parts.items()):
        if m % 2:
            s = s * g
        for _ in range(m // 2):
            t = t * g
    assert s * t * t == f, "odd/even multiplicity split lost mass"
    return s, t


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over the coefficient field, by Frobenius powers.

    x**(q**d) must reduce to x mod f, and for every maximal proper divisor
    d/ell the power x**(q**(d/ell)) - x must be coprime to f.
    """
    if f.degree < 1:
        raise ValueError("irreducibility is undefined for constant input")
    fm = f.monic()
    d = fm.degree
    if d == 1:
        return True
    if fm.coeffs[0] == 0:
        return False
    q = f.field.q
    x = variable(f.field)
    frob = []
    cur = x
    for _ in range(d):
        cur = pow_mod(cur, q, fm)
        frob.append(cur)
    if frob[-1] != x:
        return False
    for ell in _prime_divisors(d):
        if gcd(frob[d // ell - 1] - x, fm).degree != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def degree_profile(f: Poly) -> dict[int, int]:
    """{irreducible-factor degree: total degree contributed} for squarefree f.

    Distinct-degree splitting: strip gcd(x**(q**d) - x, remaining) for
    d = 1, 2, ...; whatever survives past degree/2 is a single irreducible.
    """
    w = squarefree_witness(f)
    if w is not None:
        raise ValueError(f"degree profile needs squarefree input (repeated part {w})")
    field = f.field
    q = field.q
    work = f.monic()
    x = variable(field)
    profile: dict[int, int] = {}
    h = x % work
    d = 0
    while work.degree >= 1:
        d += 1
        if work.degree < 2 * d:
            profile[work.degree] = profile.get(work.degree, 0) + work.degree
            break
        h = pow_mod(h, q, work)
        g = gcd(h - x, work)
        if g.degree > 0:
            profile[d] = profile.get(d, 0) + g.degree
            work = work // g
            h = h % work
    return profile


def extract_quadratic_factor(f: Poly):
    """The canonically least monic irreducible quadratic factor, or None.

    Splits the degree-2 part of squarefree f.  The internal equal-degree
    splitting walks random polynomials from a generator seeded with the
    module constant _SPLIT_SEED (= 2); determinism of the result does not
    rest on the seed, because all quadratic factors are collected and the
    least in canonical order is returned.
    """
    w = squarefree_witness(f)
    if w is not None:
        raise ValueError(f"quadratic extraction needs squarefree input (repeated part {w})")
    field = f.field
    q = field.q
    work = f.monic()
    x = variable(field)
    h = x % work
    part = None
    d = 0
    while work.degree >= 1 and d < 2:
        d += 1
        if work.degree < 2 * d:
            break
        h = pow_mod(h, q, work)
        g = gcd(h - x, work)
        if g.degree > 0:
            if d == 2:
                part = g
            work = work // g
            h = h % work
    if part is None and work.degree == 2:
        # Leftover of degree 2 past the d = 1 strip is irreducible.
        part = work
    if part is None:
        return None
    if part.degree == 2:
        return part.monic()
    rng = random.Random(_SPLIT_SEED)
    quads = []
    stack = [part]
    exp = (q * q - 1) // 2
    while stack:
        hcur = stack.pop()
        if hcur.degree == 2:
            quads.append(hcur)
            continue
        while True:
            a = _mk(field, [rng.randrange(q) for _ in range(hcur.degree)])
            if a.degree < 1:
                continue
            b = pow_mod(a, exp, hcur) - one(field)
            g = gcd(b, hcur)
            if 0 < g.degree < hcur.degree:
                stack.append(g)
                stack.append(hcur // g)
                break
    return min(quads, key=canonical_poly_key)

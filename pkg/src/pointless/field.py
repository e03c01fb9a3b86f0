"""Small finite fields of odd characteristic with a deterministic basis.

An element of GF(p**r) is a coordinate vector (c0, ..., c_{r-1}) of least
nonnegative residues mod p with respect to the power basis 1, X, ...,
X**(r-1) of GF(p)[X] modulo a fixed monic irreducible modulus.  The modulus
is not a free choice: for each (p, r) it is the first monic irreducible
polynomial of degree r when the non-leading coefficient tuples
(c0, ..., c_{r-1}) are enumerated in ascending lexicographic order.  Two
runs, or two machines, therefore agree on the representation of every
element.

Canonical order: coordinate vectors compare lexicographically, c0 first.
The integer key of an element is sum(c_i * p**(r-1-i)), so ascending keys
walk the field in canonical order; for r == 1 the key is the residue
itself.  Keys index the lookup tables used by the point-counting and
search code, and they are what Poly stores as coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "FieldElement",
    "FieldSpec",
    "PRIME_LIMIT",
    "canonical_nonsquare",
    "make_field",
    "quadratic_character",
]

PRIME_LIMIT = 1 << 31

# Witnesses making Miller-Rabin deterministic far beyond PRIME_LIMIT.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# q*q lookup tables are built only below this size.
_TABLE_LIMIT = 4096
# Dense vectorized counting is capped here; beyond it the term-wise
# fallback keeps memory flat.
_DENSE_LIMIT = 1 << 22


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Bootstrap arithmetic in GF(p)[X] on plain residue lists, used only to pick
# the modulus.  Little-endian, trailing zeros stripped.


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            f = c * inv % p
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - f * m[j]) % p
            a[i] = 0
    return _fp_trim(a[:dm])


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_mod(out, m, p)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    a = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, a, m, p)
        a = _fp_mulmod(a, a, m, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _prime_factors(n: int) -> list[int]:
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


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    d = len(f) - 1
    if d == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    cur = x
    frob = []
    for _ in range(d):
        cur = _fp_powmod(cur, p, f, p)
        frob.append(cur)
    if frob[-1] != x:
        return False
    for ell in _prime_factors(d):
        diff = frob[d // ell - 1][:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(diff, f, p)) != 1:
            return False
    return True


def _least_irreducible(p: int, r: int) -> tuple[int, ...]:
    if r == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=r):
        f = list(tail) + [1]
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found; unreachable")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """One finite field GF(p**r): characteristic, degree, modulus, size.

    Instances come from make_field and are interned, so identity comparison
    is safe and they key caches cheaply.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    q: int

    def element(self, value) -> "FieldElement":
        """Coerce value to an element: int means the embedded integer."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coords = [0] * self.r
            coords[0] = value % self.p
            return FieldElement(self, tuple(coords))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.r:
            raise ValueError(f"need {self.r} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def from_key(self, key: int) -> "FieldElement":
        if not 0 <= key < self.q:
            raise ValueError(f"key {key} out of range for field of size {self.q}")
        return FieldElement(self, _kernel(self).coords(key))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.r)

    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self):
        """All elements in canonical order."""
        for key in range(self.q):
            yield self.from_key(key)

    def __str__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        # Reconstruct through make_field so unpickling (e.g. in process
        # pool workers) lands on the interned instance.
        return (make_field, (self.p, self.r))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, r={self.r}, q={self.q})"


@dataclass(frozen=True)
class FieldElement:
    """One element, as its coordinate vector in the fixed basis."""

    field: FieldSpec
    coords: tuple[int, ...]

    @property
    def key(self) -> int:
        return _kernel(self.field).key(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _peer(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("mixed fields in element arithmetic")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        k = _kernel(self.field)
        return self.field.from_key(k.add(self.key, other.key))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        k = _kernel(self.field)
        return self.field.from_key(k.sub(self.key, other.key))

    def __rsub__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        k = _kernel(self.field)
        return self.field.from_key(k.mul(self.key, other.key))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        k = _kernel(self.field)
        return self.field.from_key(k.mul(self.key, k.inv(other.key)))

    def __rtruediv__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        k = _kernel(self.field)
        return self.field.from_key(k.neg(self.key))

    def __pow__(self, e: int):
        k = _kernel(self.field)
        key = self.key
        if e < 0:
            key = k.inv(key)
            e = -e
        return self.field.from_key(k.pow(key, e))

    def __lt__(self, other):
        other = self._peer(other)
        return self.coords < other.coords

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.field.r == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"<{self} in {self.field}>"


class _Kernel:
    """Key-level arithmetic for one field; cached per FieldSpec.

    Everything here works on integer keys.  Lookup tables (numpy) are built
    lazily and only for fields small enough that the q*q footprint is
    negligible; the coordinate fallback handles the rest.
    """

    __slots__ = (
        "p", "r", "q", "modulus", "one_key", "_high", "_np_tables", "_chi_cache",
    )

    def __init__(self, spec: FieldSpec):
        self.p = spec.p
        self.r = spec.r
        self.q = spec.q
        self.modulus = spec.modulus
        self.one_key = self.p ** (self.r - 1) if self.r > 1 else 1
        self._np_tables = None
        self._chi_cache = None
        if self.r > 1:
            # _high[i] = coordinates of X**(r+i) reduced mod the modulus.
            p, r = self.p, self.r
            base = [(-c) % p for c in self.modulus[:r]]
            high = [base]
            for _ in range(r - 2):
                prev = high[-1]
                shifted = [0] + prev[:-1]
                top = prev[-1]
                if top:
                    shifted = [(s + top * b) % p for s, b in zip(shifted, base)]
                high.append(shifted)
            self._high = high
        else:
            self._high = None

    # -- key <-> coords -----------------------------------------------------

    def coords(self, key: int) -> tuple[int, ...]:
        if self.r == 1:
            return (key,)
        out = []
        for _ in range(self.r):
            key, d = divmod(key, self.p)
            out.append(d)
        out.reverse()
        return tuple(out)

    def key(self, coords) -> int:
        if self.r == 1:
            return coords[0]
        k = 0
        for c in coords:
            k = k * self.p + c
        return k

    def embed(self, n: int) -> int:
        return (n % self.p) * self.one_key if self.r > 1 else n % self.p

    # -- ring ops on keys ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        return self.key([(x + y) % self.p for x, y in zip(ca, cb)])

    def sub(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a - b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        return self.key([(x - y) % self.p for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        return self.key([(-x) % self.p for x in self.coords(a)])

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        p, r = self.p, self.r
        ca, cb = self.coords(a), self.coords(b)
        conv = [0] * (2 * r - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        conv[i + j] = (conv[i + j] + x * y) % p
        for i in range(2 * r - 2, r - 1, -1):
            c = conv[i]
            if c and i >= r:
                red = self._high[i - r]
                for j, m in enumerate(red):
                    if m:
                        conv[j] = (conv[j] + c * m) % p
                conv[i] = 0
        return self.key(conv[:r])

    def pow(self, a: int, e: int) -> int:
        if self.r == 1:
            return pow(a, e, self.p)
        result = self.one_key
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting zero field element")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def smul(self, a: int, n: int) -> int:
        """Multiply a by the embedded integer n."""
        if self.r == 1:
            return a * (n % self.p) % self.p
        return self.mul(a, self.embed(n))

    def chi(self, a: int) -> int:
        """Quadratic character of the element with key a: -1, 0 or 1."""
        if a == 0:
            return 0
        t = self.pow(a, (self.q - 1) // 2)
        if t == self.one_key:
            return 1
        return -1

    # -- numpy tables -------------------------------------------------------

    def np_tables(self):
        """(add, mul, chi) arrays indexed by key; None for large fields."""
        if self._np_tables is None:
            import numpy as np

            q = self.q
            if self.r == 1:
                if q > _TABLE_LIMIT:
                    return None
                ar = np.arange(q, dtype=np.int64)
                add = (ar[:, None] + ar[None, :]) % q
                mul = (ar[:, None] * ar[None, :]) % q
            else:
                if q > _TABLE_LIMIT:
                    return None
                add = np.empty((q, q), dtype=np.int64)
                mul = np.empty((q, q), dtype=np.int64)
                for a in range(q):
                    for b in range(a, q):
                        s = self.add(a, b)
                        m = self.mul(a, b)
                        add[a, b] = add[b, a] = s
                        mul[a, b] = mul[b, a] = m
            chi = np.array([self.chi(a) for a in range(q)], dtype=np.int8)
            self._np_tables = (add, mul, chi)
        return self._np_tables

    def chi_array(self):
        """Quadratic character per key as an int8 array, via squaring.

        Built by enumerating squares rather than by exponentiation, so the
        two routes cross-check each other in the tests.
        """
        if self._chi_cache is None:
            import numpy as np

            q = self.q
            if self.r == 1:
                ar = np.arange(q, dtype=np.int64)
                sq = ar * ar % q
                out = np.full(q, -1, dtype=np.int8)
                out[sq] = 1
                out[0] = 0
            else:
                out = np.full(q, -1, dtype=np.int8)
                for a in range(q):
                    out[self.mul(a, a)] = 1
                out[0] = 0
            self._chi_cache = out
        return self._chi_cache


@lru_cache(maxsize=None)
def _kernel_cached(spec: FieldSpec) -> _Kernel:
    return _Kernel(spec)


def _kernel(spec: FieldSpec) -> _Kernel:
    return _kernel_cached(spec)


def make_field(p: int, r: int = 1) -> FieldSpec:
    """Return the interned GF(p**r) with the deterministic modulus.

    p must be an odd prime below 2**31 and r a positive integer.  The
    r == 1 modulus is X itself (elements are bare residues).
    """
    # Normalize before caching so make_field(11) and make_field(11, 1)
    # intern to the same instance.
    return _make_field_cached(p, r)


@lru_cache(maxsize=None)
def _make_field_cached(p: int, r: int) -> FieldSpec:
    if not isinstance(p, int) or not isinstance(r, int):
        raise ValueError("p and r must be integers")
    if p < 3 or p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if p >= PRIME_LIMIT:
        raise ValueError(f"p must be below 2**31, got {p}")
    if r < 1:
        raise ValueError(f"r must be a positive integer, got {r}")
    modulus = _least_irreducible(p, r)
    return FieldSpec(p=p, r=r, modulus=modulus, q=p ** r)


def quadratic_character(elem: FieldElement) -> int:
    """-1, 0 or 1 according to whether elem is a nonsquare, zero, a square."""
    return _kernel(elem.field).chi(elem.key)


def canonical_nonsquare(field: FieldSpec) -> FieldElement:
    """The first nonsquare in canonical order; every field has one."""
    k = _kernel(field)
    for key in range(1, field.q):
        if k.chi(key) == -1:
            return field.from_key(key)
    raise AssertionError("odd field without a nonsquare; unreachable")

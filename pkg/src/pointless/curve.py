"""Hyperelliptic curve models y**2 = f(x) over odd finite fields.

A model is admissible when f is squarefree of degree at least 3; its genus
is (deg f - 1) // 2 on the smooth projective model.  Rational points split
into the affine ones, counted as sum over x of (1 + chi(f(x))) with chi the
quadratic character, and the points at infinity: one for odd degree, two or
zero for even degree according to whether the leading coefficient is a
square.  Twisting by a nonsquare c sends N to 2q + 2 - N, so a curve with
no points at all is exactly the twist of one meeting the Weil ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateMapError, NonSquarefreeError
from .field import FieldSpec, _kernel, canonical_nonsquare
from .poly import Poly, odd_multiplicity_part, squarefree_witness, one, zero

__all__ = [
    "HyperellipticCurve",
    "PointCount",
    "RationalMap",
    "count_points",
    "genus",
    "is_maximal",
    "is_pointless",
    "new_curve",
    "pullback",
    "quadratic_twist",
]

# Dense vectorized counting keeps a few arrays of q entries; bigger fields
# fall back to the term-wise path.
_DENSE_COUNT_LIMIT = 1 << 22
# Polys with at most this many terms and large degree are evaluated
# term-by-term with modular exponentiation instead of dense Horner.
_SPARSE_COUNT_TERMS = 8
_SPARSE_COUNT_MIN_DEGREE = 128


@dataclass(frozen=True)
class HyperellipticCurve:
    """An admissible model y**2 = f(x); construct via new_curve."""

    field: FieldSpec
    f: Poly

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    def __str__(self):
        return f"y^2 = {self.f} over {self.field}"

    def __repr__(self):
        return f"<{self}>"


@dataclass(frozen=True)
class PointCount:
    """Rational points on the smooth model, split affine/infinity."""

    affine: int
    at_infinity: int

    @property
    def total(self) -> int:
        return self.affine + self.at_infinity


@dataclass(frozen=True)
class RationalMap:
    """A substitution x -> num(t) / den(t)."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.num.field is not self.den.field:
            raise ValueError("numerator and denominator over different fields")
        if self.den.is_zero():
            raise ValueError("zero denominator")

    def __str__(self):
        return f"({self.num}) / ({self.den})"


def new_curve(field: FieldSpec, f: Poly) -> HyperellipticCurve:
    """Validate and wrap a model.

    Rejects constants, repeated factors (with the gcd witness attached) and
    degrees below 3, in that order, so a repeated-root quadratic is reported
    for its roots rather than its size.
    """
    if f.field is not field:
        raise ValueError("polynomial is over a different field")
    if f.degree < 1:
        raise ValueError("defining polynomial must be nonconstant")
    w = squarefree_witness(f)
    if w is not None:
        raise NonSquarefreeError(
            f"defining polynomial has a repeated factor: gcd(f, f') = {w}",
            witness=w,
        )
    if f.degree < 3:
        raise ValueError(
            f"degree {f.degree} is below the genus-1 threshold (need at least 3)"
        )
    return HyperellipticCurve(field=field, f=f)


def genus(curve: HyperellipticCurve) -> int:
    return curve.genus


def _infinity_points(curve: HyperellipticCurve) -> int:
    if curve.f.degree % 2 == 1:
        return 1
    k = _kernel(curve.field)
    return 2 if k.chi(curve.f.coeffs[-1]) == 1 else 0


def count_points(curve: HyperellipticCurve) -> PointCount:
    """Exact rational point count of the smooth model."""
    field = curve.field
    q = field.q
    k = _kernel(field)
    f = curve.f
    terms = f.terms()
    sparse = (
        len(terms) <= _SPARSE_COUNT_TERMS and f.degree >= _SPARSE_COUNT_MIN_DEGREE
    )
    if q <= _DENSE_COUNT_LIMIT:
        chi = k.chi_array()
        if sparse:
            affine = q + sum(int(chi[_eval_key(k, terms, x)]) for x in range(q))
        elif field.r == 1:
            import numpy as np

            xs = np.arange(q, dtype=np.int64)
            vals = np.zeros(q, dtype=np.int64)
            for c in reversed(f.coeffs):
                vals = (vals * xs + c) % q
            affine = q + int(chi[vals].sum())
        else:
            tables = k.np_tables()
            if tables is not None:
                import numpy as np

                add_t, mul_t, _ = tables
                xs = np.arange(q, dtype=np.int64)
                vals = np.zeros(q, dtype=np.int64)
                for c in reversed(f.coeffs):
                    vals = add_t[mul_t[vals, xs], c]
                affine = q + int(chi[vals].sum())
            else:
                affine = q + sum(int(chi[_eval_key(k, terms, x)]) for x in range(q))
    else:
        affine = q
        for x in range(q):
            affine += k.chi(_eval_key(k, terms, x))
    return PointCount(affine=affine, at_infinity=_infinity_points(curve))


def _eval_key(k, terms, x: int) -> int:
    acc = 0
    for e, c in terms:
        acc = k.add(acc, k.mul(c, k.pow(x, e)))
    return acc


def is_pointless(curve: HyperellipticCurve) -> bool:
    return count_points(curve).total == 0


def is_maximal(curve: HyperellipticCurve) -> bool:
    """True when the count meets the Weil ceiling 2q + 2 for its twist class."""
    return count_points(curve).total == 2 * curve.field.q + 2


def quadratic_twist(curve: HyperellipticCurve) -> HyperellipticCurve:
    """The model y**2 = c f(x) with c the canonical nonsquare.

    Counts are complementary: N(curve) + N(twist) = 2q + 2.
    """
    c = canonical_nonsquare(curve.field)
    return new_curve(curve.field, curve.f * c)


def pullback(curve: HyperellipticCurve, substitution: RationalMap) -> HyperellipticCurve:
    """The model reached by substituting x = num/den and clearing squares.

    With e = deg f rounded up to even, F = den**e * f(num/den) is a
    polynomial; splitting F = s * t**2 into odd and even multiplicities
    leaves y**2 = s as the new model (the t**2 is absorbed into y).  A
    result of degree below 3 means the substitution degenerated, which is
    an error rather than a silent collapse.
    """
    f = curve.f
    field = curve.field
    if substitution.num.field is not field:
        raise ValueError("substitution is over a different field")
    num, den = substitution.num, substitution.den
    d = f.degree
    acc = zero(field) + field.from_key(f.coeffs[-1])
    dp = one(field)
    for i in range(d - 1, -1, -1):
        dp = dp * den
        acc = acc * num
        c = f.coeffs[i]
        if c:
            acc = acc + dp * field.from_key(c)
    if d % 2:
        acc = acc * den
    if acc.is_zero():
        raise DegenerateMapError("substitution annihilated the model")
    s, _ = odd_multiplicity_part(acc)
    if s.degree < 3:
        raise DegenerateMapError(
            f"substitution collapsed the model to degree {s.degree}"
        )
    return new_curve(field, s)

"""Exact arithmetic in Q_p and its unramified extensions at fixed precision.

An element is stored as a pair (val, unit): an integer valuation together
with a unit of O/p^N, the unit being a coefficient vector of length f over
Z/p^N in the power basis of (Z/p^N)[X]/(h).  Exact zero is a distinguished
flag, not a large valuation.  Multiplication and division are exact on
these pairs; a sum whose digits cancel through the whole precision window
collapses to exact zero, which is what equality "at precision N" means.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DivisionByZero,
    NegativeValuation,
    NoConvergence,
    NotASimpleRoot,
    NotAUnit,
    NonIntegralCoefficient,
    ParseError,
    ResidueNotASolution,
    SingularMatrix,
    SpecMismatch,
    ZeroResidue,
)

# ---------------------------------------------------------------------------
# primes and dense polynomial arithmetic over Z/m (used for field setup only)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the word-sized primes used here."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
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


def _polytrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymul(a: list[int], b: list[int], m: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return _polytrim(out)


def _polymod(a: list[int], h: Sequence[int], m: int) -> list[int]:
    # h monic
    a = [c % m for c in a]
    d = len(h) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d):
                a[i - d + j] = (a[i - d + j] - c * h[j]) % m
            a[i] = 0
    del a[d:]
    return _polytrim(a)


def _polypow_x(e: int, h: Sequence[int], p: int) -> list[int]:
    """X^e modulo (h, p)."""
    result = [1]
    base = _polymod([0, 1], h, p)
    while e:
        if e & 1:
            result = _polymod(_polymul(result, base, p), h, p)
        base = _polymod(_polymul(base, base, p), h, p)
        e >>= 1
    return result


def _poly_gcd_fp(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        # reduce a mod b with b made monic
        inv = pow(b[-1], -1, p)
        b = [(c * inv) % p for c in b]
        while len(a) >= len(b):
            c = a[-1]
            if c:
                off = len(a) - len(b)
                for j, bj in enumerate(b):
                    a[off + j] = (a[off + j] - c * bj) % p
            _polytrim(a)
            if not a:
                break
        a, b = b, a
    return a


def _irreducible_mod_p(h: Sequence[int], p: int) -> bool:
    f = len(h) - 1
    hp = [c % p for c in h]
    if hp[-1] != 1:
        return False
    # X^{p^f} == X mod h, and gcd(X^{p^{f/l}} - X, h) == 1 for primes l | f
    xq = _polypow_x(p**f, hp, p)
    if xq != [0, 1]:
        return False
    ell = 2
    ff = f
    checked = set()
    while ff > 1:
        while ff % ell:
            ell += 1
        if ell not in checked:
            checked.add(ell)
            xe = _polypow_x(p ** (f // ell), hp, p)
            diff = list(xe) + [0] * max(0, 2 - len(xe))
            diff[1] = (diff[1] - 1) % p
            g = _poly_gcd_fp(_polytrim(diff), list(hp), p)
            if len(g) != 1:
                return False
        ff //= ell
    return True


# degree-f defaults (Conway-style) for small residue fields
DEFAULT_EXTENSION_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
}


# ---------------------------------------------------------------------------
# field specification

@dataclass(frozen=True)
class FieldSpec:
    """An unramified p-adic field at fixed working precision.

    p: prime, f: extension degree, N: number of stored p-adic digits,
    h: monic degree-f defining polynomial (coefficients low-to-high),
    irreducible mod p.  For f = 1 the polynomial is X.
    """

    p: int
    f: int = 1
    N: int = 10
    h: tuple[int, ...] = None  # type: ignore[assignment]
    _pN: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.f < 1 or self.N < 1:
            raise ValueError("need f >= 1 and N >= 1")
        h = self.h
        if h is None:
            if self.f == 1:
                h = (0, 1)
            else:
                try:
                    h = DEFAULT_EXTENSION_POLYS[(self.p, self.f)]
                except KeyError:
                    raise ValueError(
                        f"no built-in defining polynomial for q = {self.p}^{self.f};"
                        " pass h explicitly"
                    ) from None
            object.__setattr__(self, "h", tuple(h))
        else:
            object.__setattr__(self, "h", tuple(int(c) for c in h))
        if len(self.h) != self.f + 1 or self.h[-1] != 1:
            raise ValueError("h must be monic of degree f")
        if self.f > 1 and not _irreducible_mod_p(self.h, self.p):
            raise ValueError("h is not irreducible modulo p")
        object.__setattr__(self, "_pN", self.p**self.N)

    # -- basic data ---------------------------------------------------------

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def roots_of_unity_order(self) -> int:
        """Order of the group of roots of unity of K (unramified case)."""
        return 2 * (self.q - 1) if self.p == 2 else self.q - 1

    def with_precision(self, N: int) -> "FieldSpec":
        return FieldSpec(self.p, self.f, N, self.h)

    def residue_spec(self) -> "FieldSpec":
        """The residue field, usable with the same machinery (N = 1)."""
        return self.with_precision(1)

    def describe(self) -> str:
        if self.f == 1:
            return f"Q_{self.p} (N={self.N})"
        return f"Q_{self.p}[x]/(h), f={self.f} (N={self.N})"

    # -- element constructors ------------------------------------------------

    def zero(self) -> "PadicElement":
        return PadicElement(self, None, ())

    def one(self) -> "PadicElement":
        return PadicElement(self, 0, (1,) + (0,) * (self.f - 1))

    def from_int(self, n: int) -> "PadicElement":
        if n == 0:
            return self.zero()
        v = 0
        while n % self.p == 0:
            n //= self.p
            v += 1
        vec = (n % self._pN,) + (0,) * (self.f - 1)
        return PadicElement(self, v, vec)

    def from_fraction(self, x: Fraction | int) -> "PadicElement":
        x = Fraction(x)
        if x == 0:
            return self.zero()
        num, den = x.numerator, x.denominator
        vn = 0
        while num % self.p == 0:
            num //= self.p
            vn += 1
        vd = 0
        while den % self.p == 0:
            den //= self.p
            vd += 1
        u = num * pow(den, -1, self._pN) % self._pN
        return PadicElement(self, vn - vd, (u,) + (0,) * (self.f - 1))

    def from_vector(self, vec: Sequence[int], val: int = 0) -> "PadicElement":
        """Element p^val * sum(vec[i] * X^i) from exact integer coefficients."""
        if len(vec) > self.f:
            raise ValueError("coefficient vector longer than f")
        ints = [int(c) for c in vec] + [0] * (self.f - len(vec))
        if all(c == 0 for c in ints):
            return self.zero()
        w = _vec_valuation(ints, self.p, None)
        ints = [c // self.p**w for c in ints]
        return PadicElement(self, val + w, tuple(c % self._pN for c in ints))

    def element(self, x) -> "PadicElement":
        if isinstance(x, PadicElement):
            if x.spec != self:
                raise SpecMismatch("element belongs to a different field spec")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a p-adic element")

    # -- scalar literals ------------------------------------------------------

    _DIGITS_RE = re.compile(r"^\[([0-9,\s-]*)\]@(\d+)\^(-?\d+)$")

    def parse(self, text: str) -> "PadicElement":
        """Parse "n", "a/b" or "[c0,...]@p^v" into an element."""
        s = text.strip()
        m = self._DIGITS_RE.match(s)
        if m:
            if int(m.group(2)) != self.p:
                raise ParseError(f"literal {text!r} has wrong prime (expected {self.p})")
            body = m.group(1).strip()
            vec = [int(c) for c in body.split(",")] if body else []
            return self.from_vector(vec, int(m.group(3)))
        try:
            if "/" in s:
                return self.from_fraction(Fraction(s))
            return self.from_int(int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {text!r}") from exc


def _vec_valuation(vec: Sequence[int], p: int, cap: int | None) -> int:
    """min_i v_p(vec[i]) over exact integers; cap (if given) bounds the search."""
    best = None
    for c in vec:
        if c == 0:
            continue
        v = 0
        while c % p == 0 and (cap is None or v < cap):
            c //= p
            v += 1
        best = v if best is None else min(best, v)
        if best == 0:
            return 0
    if best is None:
        raise ValueError("zero vector has no valuation")
    return best


# ---------------------------------------------------------------------------
# unit-vector arithmetic mod (h, m)

def _umul(spec: FieldSpec, u: tuple[int, ...], v: tuple[int, ...], m: int) -> tuple[int, ...]:
    if spec.f == 1:
        return (u[0] * v[0] % m,)
    f = spec.f
    prod = [0] * (2 * f - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] += a * b
    h = spec.h
    for i in range(2 * f - 2, f - 1, -1):
        c = prod[i] % m
        if c:
            for j in range(f):
                prod[i - f + j] -= c * h[j]
        prod[i] = 0
    return tuple(c % m for c in prod[:f])


def _uinv(spec: FieldSpec, u: tuple[int, ...], m: int) -> tuple[int, ...]:
    if spec.f == 1:
        return (pow(u[0], -1, m),)
    p = spec.p
    b = _fq_inv(spec, tuple(c % p for c in u))
    k = p
    while k < m:
        k = min(k * k, m)
        # b <- b * (2 - u b) mod (h, k)
        t = _umul(spec, u, b, k)
        t = tuple((-c) % k for c in t)
        t = (t[0] + 2,) + t[1:]
        t = (t[0] % k,) + t[1:]
        b = _umul(spec, b, t, k)
    return b


def _fq_inv(spec: FieldSpec, u: tuple[int, ...]) -> tuple[int, ...]:
    """Inverse in F_q via extended Euclid over F_p[X]."""
    p = spec.p
    if spec.f == 1:
        return (pow(u[0], -1, p),)
    r0 = _polytrim([c % p for c in spec.h])
    r1 = _polytrim([c % p for c in u])
    if not r1:
        raise DivisionByZero("zero residue has no inverse")
    t0: list[int] = []
    t1: list[int] = [1]
    while r1:
        # q, rem = divmod(r0, r1) over F_p
        q = [0] * max(len(r0) - len(r1) + 1, 0)
        rem = list(r0)
        inv_lead = pow(r1[-1], -1, p)
        for i in range(len(rem) - len(r1), -1, -1):
            c = rem[i + len(r1) - 1] * inv_lead % p
            if c:
                q[i] = c
                for j, bj in enumerate(r1):
                    rem[i + j] = (rem[i + j] - c * bj) % p
        _polytrim(rem)
        qt = _polymul(q, t1, p)
        t_new = [
            ((t0[i] if i < len(t0) else 0) - (qt[i] if i < len(qt) else 0)) % p
            for i in range(max(len(t0), len(qt), 1))
        ]
        r0, r1 = r1, rem
        t0, t1 = t1, _polytrim(t_new)
    # r0 is the gcd, a nonzero constant since h is irreducible
    scale = pow(r0[0], -1, p)
    out = [c * scale % p for c in t0]
    out += [0] * (spec.f - len(out))
    return tuple(out[: spec.f])


# ---------------------------------------------------------------------------
# elements

class PadicElement:
    """Immutable scalar of a fixed FieldSpec.

    `val` is None exactly for the zero element; otherwise `vec` reduces to a
    nonzero residue.  Supports +, -, *, /, ** and exact equality at the
    working precision.
    """

    __slots__ = ("spec", "val", "vec")

    def __init__(self, spec: FieldSpec, val: int | None, vec: tuple[int, ...]):
        self.spec = spec
        self.val = val
        self.vec = vec

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.val is None

    def vanishes(self) -> bool:
        """Zero at the working precision: exact zero, or valuation >= N.

        Products of deep elements can carry valuations at or beyond N; for
        any congruence-mod-p^N purpose they are indistinguishable from zero.
        """
        return self.val is None or self.val >= self.spec.N

    def congruent_to(self, other, modulus_exponent: int | None = None) -> bool:
        """v(self - other) >= modulus_exponent (default: the precision N)."""
        d = self - other
        if d.is_zero():
            return True
        k = self.spec.N if modulus_exponent is None else modulus_exponent
        return d.val >= k

    def is_unit(self) -> bool:
        return self.val == 0

    def is_integral(self) -> bool:
        return self.val is None or self.val >= 0

    def valuation(self) -> int | float:
        return math.inf if self.val is None else self.val

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "PadicElement":
        if isinstance(other, PadicElement):
            if other.spec != self.spec:
                raise SpecMismatch("operands belong to different field specs")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        if isinstance(other, Fraction):
            return self.spec.from_fraction(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        spec = self.spec
        lo, hi = (self, other) if self.val <= other.val else (other, self)
        d = hi.val - lo.val
        if d >= spec.N:
            return lo
        shift = spec.p**d
        s = [a + b * shift for a, b in zip(lo.vec, hi.vec)]
        if d > 0:
            w = 0  # the low unit keeps its nonzero residue
        else:
            w = _vec_valuation(s, spec.p, spec.N)
        if w >= spec.N:
            return spec.zero()
        pw = spec.p**w
        return PadicElement(spec, lo.val + w, tuple(c // pw % spec._pN for c in s))

    __radd__ = __add__

    def __neg__(self) -> "PadicElement":
        if self.is_zero():
            return self
        m = self.spec._pN
        return PadicElement(self.spec, self.val, tuple((m - c) % m for c in self.vec))

    def __sub__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PadicElement":
        return (-self) + other

    def __mul__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.spec.zero()
        vec = _umul(self.spec, self.vec, other.vec, self.spec._pN)
        return PadicElement(self.spec, self.val + other.val, vec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero at working precision")
        if self.is_zero():
            return self
        inv = _uinv(self.spec, other.vec, self.spec._pN)
        vec = _umul(self.spec, self.vec, inv, self.spec._pN)
        return PadicElement(self.spec, self.val - other.val, vec)

    def __rtruediv__(self, other) -> "PadicElement":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs / self

    def __pow__(self, e: int) -> "PadicElement":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.spec.one() / self**(-e)
        if e == 0:
            return self.spec.one()
        if self.is_zero():
            return self
        base, out = self, None
        while e:
            if e & 1:
                out = base if out is None else out * base
            e >>= 1
            if e:
                base = base * base
        return out  # type: ignore[return-value]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, PadicElement):
            return NotImplemented
        if self.spec != other.spec:
            return False
        return self.val == other.val and self.vec == other.vec

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.f, self.spec.N, self.val, self.vec))

    # -- reductions -----------------------------------------------------------

    def residue(self) -> "ResidueElement":
        """Image in the residue field; requires valuation >= 0."""
        if not self.is_integral():
            raise NegativeValuation("element is not integral")
        if self.is_zero() or self.val >= 1:
            return ResidueElement(self.spec, (0,) * self.spec.f)
        return ResidueElement(self.spec, tuple(c % self.spec.p for c in self.vec))

    def truncate(self, spec: FieldSpec) -> "PadicElement":
        """Image under O/p^N -> O/p^N' for N' <= N (same p, f, h)."""
        if (spec.p, spec.f, spec.h) != (self.spec.p, self.spec.f, self.spec.h):
            raise SpecMismatch("truncation must stay in the same field tower")
        if spec.N > self.spec.N:
            raise ValueError("cannot truncate to higher precision")
        if self.is_zero():
            return spec.zero()
        return PadicElement(spec, self.val, tuple(c % spec._pN for c in self.vec))

    def lift_to(self, spec: FieldSpec) -> "PadicElement":
        """Plain digit lift into a higher-precision spec (same p, f, h)."""
        if (spec.p, spec.f, spec.h) != (self.spec.p, self.spec.f, self.spec.h):
            raise SpecMismatch("lift must stay in the same field tower")
        if self.is_zero():
            return spec.zero()
        return PadicElement(spec, self.val, self.vec)

    # -- formatting -----------------------------------------------------------

    def to_literal(self) -> str:
        if self.is_zero():
            return "0"
        spec = self.spec
        if spec.f == 1:
            u = self.vec[0]
            if self.val >= 0:
                return str(u * spec.p**self.val)
            return f"{u}/{spec.p ** (-self.val)}"
        return "[" + ",".join(str(c) for c in self.vec) + f"]@{spec.p}^{self.val}"

    def __repr__(self) -> str:
        return f"padic({self.to_literal()})"


# ---------------------------------------------------------------------------
# residue field

@dataclass(frozen=True)
class ResidueElement:
    """Element of the residue field F_q as a length-f vector over Z/p."""

    spec: FieldSpec
    vec: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vec", tuple(c % self.spec.p for c in self.vec))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vec)

    def __add__(self, other: "ResidueElement") -> "ResidueElement":
        return ResidueElement(self.spec, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __neg__(self) -> "ResidueElement":
        return ResidueElement(self.spec, tuple(-c for c in self.vec))

    def __sub__(self, other: "ResidueElement") -> "ResidueElement":
        return self + (-other)

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        return ResidueElement(self.spec, _umul(self.spec, self.vec, other.vec, self.spec.p))

    def inverse(self) -> "ResidueElement":
        if self.is_zero():
            raise DivisionByZero("zero residue has no inverse")
        return ResidueElement(self.spec, _fq_inv(self.spec, self.vec))

    def __pow__(self, e: int) -> "ResidueElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = ResidueElement(self.spec, (1,) + (0,) * (self.spec.f - 1))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def lift(self) -> PadicElement:
        """Plain digit lift into O at the working precision."""
        if self.is_zero():
            return self.spec.zero()
        return self.spec.from_vector(self.vec, 0)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise NotAUnit("zero has no multiplicative order")
        one = ResidueElement(self.spec, (1,) + (0,) * (self.spec.f - 1))
        t = self.spec.q - 1
        for ell in _prime_factors(self.spec.q - 1):
            while t % ell == 0 and self**(t // ell) == one:
                t //= ell
        return t

    @classmethod
    def all_elements(cls, spec: FieldSpec) -> Iterator["ResidueElement"]:
        f, p = spec.f, spec.p
        for idx in range(p**f):
            vec = []
            n = idx
            for _ in range(f):
                vec.append(n % p)
                n //= p
            yield cls(spec, tuple(vec))

    def __repr__(self) -> str:
        if self.spec.f == 1:
            return f"residue({self.vec[0]})"
        return f"residue({list(self.vec)})"


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


# ---------------------------------------------------------------------------
# Teichmueller lifts and roots of unity

def teichmueller(r: ResidueElement) -> PadicElement:
    """The root of unity of order dividing q-1 congruent to r mod p."""
    if r.is_zero():
        raise ZeroResidue("zero residue has no Teichmueller lift")
    spec = r.spec
    u = tuple(list(r.vec) + [0] * (spec.f - len(r.vec)))
    for _ in range(spec.N + 2):
        nxt = _upow(spec, u, spec.q, spec._pN)
        if nxt == u:
            return PadicElement(spec, 0, u)
        u = nxt
    raise NoConvergence("Teichmueller iteration failed to stabilise")


def _upow(spec: FieldSpec, u: tuple[int, ...], e: int, m: int) -> tuple[int, ...]:
    out = (1,) + (0,) * (spec.f - 1)
    base = u
    while e:
        if e & 1:
            out = _umul(spec, out, base, m)
        base = _umul(spec, base, base, m)
        e >>= 1
    return out


def root_of_unity_order(a: PadicElement) -> int | None:
    """Exact multiplicative order if a is a root of unity at precision N.

    Certification is precision-relative: the comparison with the Teichmueller
    representative happens in O/p^N.  Returns None when a is no root of unity
    at that precision.
    """
    if a.is_zero() or a.val != 0:
        raise NotAUnit("roots of unity have valuation 0")
    r = a.residue()
    omega = teichmueller(r)
    if a == omega:
        return r.multiplicative_order()
    if a.spec.p == 2 and a == -omega:
        return 2 * r.multiplicative_order()
    return None


# ---------------------------------------------------------------------------
# Hensel lifting for simple univariate roots

def hensel_lift_root(coeffs: Sequence[PadicElement], r: ResidueElement) -> PadicElement:
    """Unique root x = r mod p of g(x) = sum coeffs[i] x^i, given g'(r) != 0.

    Newton iteration at the working precision; quadratic convergence.
    """
    if not coeffs:
        raise ValueError("empty polynomial")
    spec = coeffs[0].spec
    for c in coeffs:
        if not c.is_integral():
            raise NonIntegralCoefficient("Hensel lifting needs integral coefficients")
    x = r.lift()
    gx = _horner(coeffs, x)
    if not gx.residue().is_zero():
        raise ResidueNotASolution("r is not a root of the reduced polynomial")
    dcoeffs = [coeffs[i] * i for i in range(1, len(coeffs))]
    dgx = _horner(dcoeffs, x)
    if dgx.is_zero() or dgx.val != 0:
        raise NotASimpleRoot("reduced root is not simple")
    for _ in range(spec.N.bit_length() + 3):
        if gx.vanishes():
            return x
        x = x - gx / dgx
        gx = _horner(coeffs, x)
        dgx = _horner(dcoeffs, x)
    if gx.vanishes():
        return x
    raise NoConvergence("Newton iteration did not reach a root")


def _horner(coeffs: Sequence[PadicElement], x: PadicElement) -> PadicElement:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# exact linear algebra over K

def solve_linear(
    rows: Sequence[Sequence[PadicElement]], rhs: Sequence[PadicElement]
) -> list[PadicElement]:
    """Solve A x = b by Gaussian elimination with minimal-valuation pivots."""
    n = len(rows)
    a = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = None
        best = math.inf
        for i in range(col, n):
            v = a[i][col].valuation()
            if v < best:
                best, pivot = v, i
        if pivot is None or a[pivot][col].is_zero():
            raise SingularMatrix("matrix is singular at working precision")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        for i in range(n):
            if i == col:
                continue
            factor = a[i][col] / inv
            if factor.is_zero():
                continue
            a[i] = [a[i][j] - factor * a[col][j] for j in range(n + 1)]
    return [a[i][n] / a[i][i] for i in range(n)]


def mat_det(rows: Sequence[Sequence[PadicElement]]) -> PadicElement:
    n = len(rows)
    a = [list(r) for r in rows]
    spec = a[0][0].spec
    det = spec.one()
    for col in range(n):
        pivot = None
        best = math.inf
        for i in range(col, n):
            v = a[i][col].valuation()
            if v < best:
                best, pivot = v, i
        if pivot is None or a[pivot][col].is_zero():
            return spec.zero()
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col]
        for i in range(col + 1, n):
            factor = a[i][col] / inv
            if factor.is_zero():
                continue
            a[i] = [a[i][j] - factor * a[col][j] for j in range(n)]
    return det


def mat_inv(rows: Sequence[Sequence[PadicElement]]) -> list[list[PadicElement]]:
    n = len(rows)
    spec = rows[0][0].spec
    cols = []
    for j in range(n):
        e = [spec.one() if i == j else spec.zero() for i in range(n)]
        cols.append(solve_linear(rows, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]

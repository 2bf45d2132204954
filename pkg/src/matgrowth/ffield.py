"""Exact arithmetic in finite fields F_{p^r} with explicit moduli.

A field is described by a prime ``p``, an extension degree ``r``, and a
monic irreducible modulus of degree ``r`` over F_p, stored little-endian
(``modulus[i]`` is the coefficient of ``t**i``).  Elements are coefficient
vectors in reduced form; the canonical integer serialization of an element
("wire form") is ``sum(coeffs[i] * p**i)``, which is a bijection onto
``range(p**r)``.

Prime fields (r == 1) use residue arithmetic directly.  Extensions build
discrete exp/log tables once, from schoolbook polynomial multiplication,
and multiply through the tables afterwards.  Everything is exact integer
arithmetic; there is no floating point anywhere in this module.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import CapExceeded, MismatchError, ParameterError

# Fields larger than this are out of scope: table construction and the
# exhaustive checks used elsewhere assume desk-scale q.
MAX_FIELD_SIZE = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic primality check by trial division (n is desk-scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo a monic ``modulus``, little-endian."""
    a = list(a)
    deg_m = len(modulus) - 1
    for i in range(len(a) - 1, deg_m - 1, -1):
        c = a[i] % p
        if c:
            for j in range(deg_m + 1):
                a[i - deg_m + j] = (a[i - deg_m + j] - c * modulus[j]) % p
    rem = [x % p for x in a[:deg_m]]
    rem.extend(0 for _ in range(deg_m - len(rem)))
    return rem


def poly_is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= r/2.

    For the field sizes this package supports (q <= 2**16) the divisor space
    is tiny, so the check is exact and fast.
    """
    r = len(modulus) - 1
    if r < 1 or modulus[r] % p != 1:
        return False
    if r == 1:
        return True
    for d in range(1, r // 2 + 1):
        for w in range(p**d):
            divisor = _digits(w, p, d) + [1]
            if not any(_poly_rem(modulus, divisor, p)):
                return False
    return True


def _digits(x: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    out = 0
    for d in reversed(ds):
        out = out * p + d
    return out


class FieldSpec:
    """Immutable description of F_{p^r}; also the arithmetic engine.

    The wire-level methods (``add``, ``mul``, ``inv``, ...) operate on
    integer wire forms and are what the set-level kernels use.  The
    ``element`` constructor wraps wires into :class:`FieldElement` for the
    operator-based API.
    """

    def __init__(self, p: int, r: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise ParameterError(f"p = {p} is not prime")
        if r < 1:
            raise ParameterError(f"extension degree r = {r} must be >= 1")
        q = p**r
        if q > MAX_FIELD_SIZE:
            raise ParameterError(f"field size {q} exceeds supported maximum {MAX_FIELD_SIZE}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != r + 1:
            raise ParameterError(f"modulus must have length r + 1 = {r + 1}, got {len(modulus)}")
        if any(c < 0 or c >= p for c in modulus):
            raise ParameterError("modulus coefficients must be residues in [0, p)")
        if modulus[r] != 1:
            raise ParameterError("modulus must be monic")
        if not poly_is_irreducible(modulus, p):
            raise ParameterError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.r = r
        self.modulus = modulus
        self.q = q

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.r == other.r
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.p, self.r, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, r={self.r}, modulus={list(self.modulus)})"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        try:
            return cls(int(obj["p"]), int(obj["r"]), obj["modulus"])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed field description: {obj!r}") from exc

    # -- wire-level arithmetic -------------------------------------------

    def check_wire(self, x: int) -> int:
        if not isinstance(x, int) or x < 0 or x >= self.q:
            raise ParameterError(f"wire value {x!r} out of range for q = {self.q}")
        return x

    def add(self, x: int, y: int) -> int:
        if self.r == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        p = self.p
        out = 0
        mult = 1
        while x or y:
            out += ((x + y) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, x: int) -> int:
        if self.r == 1:
            return (-x) % self.p
        if self.p == 2:
            return x
        p = self.p
        out = 0
        mult = 1
        while x:
            out += (-x % p) * mult
            x //= p
            mult *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.r == 1:
            return (x * y) % self.p
        if x == 0 or y == 0:
            return 0
        exp, log = self._tables
        return exp[(log[x] + log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.r == 1:
            return pow(x, self.p - 2, self.p)
        exp, log = self._tables
        n = self.q - 1
        return exp[(n - log[x]) % n]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def power(self, x: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(x), -e)
        if x == 0:
            return 1 if e == 0 else 0
        if self.r == 1:
            return pow(x, e, self.p)
        exp, log = self._tables
        n = self.q - 1
        return exp[(log[x] * e) % n]

    def frobenius(self, x: int) -> int:
        """x raised to the p-th power (the field's arithmetic symmetry)."""
        return self.power(x, self.p)

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        # exp/log tables over a multiplicative generator; the generator is
        # found by exact order computation with polynomial multiplication,
        # so the tables inherit their correctness from the schoolbook path.
        n = self.q - 1
        if n == 1:
            return [1], [0, 0]
        gen = 0
        for cand in range(2, self.q):
            x = 1
            order = 0
            for i in range(1, n + 1):
                x = self._polymul_wire(x, cand)
                if x == 1:
                    order = i
                    break
            if order == n:
                gen = cand
                break
        if not gen:
            raise AssertionError("no multiplicative generator found (impossible for a field)")
        exp = [0] * n
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._polymul_wire(x, gen)
        return exp, log

    def _polymul_wire(self, x: int, y: int) -> int:
        prod = _poly_mul(_digits(x, self.p, self.r), _digits(y, self.p, self.r), self.p)
        return _undigits(_poly_rem(prod, self.modulus, self.p), self.p)

    # -- coefficient/wire conversions ------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(_digits(x, self.p, self.r))

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.r:
            raise ParameterError(f"coefficient vector longer than degree {self.r}")
        padded = [c % self.p for c in cs] + [0] * (self.r - len(cs))
        return _undigits(padded, self.p)

    # -- element construction ---------------------------------------------

    def element(self, value: Union[int, Sequence[int]]) -> "FieldElement":
        """Build an element from a wire integer or a coefficient vector."""
        if isinstance(value, int):
            return FieldElement(self, self.check_wire(value))
        return FieldElement(self, self.from_coeffs(value))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for w in range(self.q):
            yield FieldElement(self, w)


class FieldElement:
    """A reduced-form field element: a spec plus its wire integer.

    Supports the usual operators.  Plain Python ints coerce through the
    prime subfield, so ``x + 1`` means adding the field's one.
    """

    __slots__ = ("spec", "wire")

    def __init__(self, spec: FieldSpec, wire: int):
        self.spec = spec
        self.wire = wire

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MismatchError(f"elements of {self.spec!r} and {other.spec!r} do not mix")
            return other
        if isinstance(other, int):
            return FieldElement(self.spec, other % self.spec.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.wire, other.wire))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.wire, other.wire))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(other.wire, self.wire))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.wire, other.wire))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(self.wire, other.wire))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(other.wire, self.wire))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.wire))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.power(self.wire, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.wire))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.wire == other % self.spec.p and self.wire < self.spec.p
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.wire == other.wire
        )

    def __hash__(self) -> int:
        return hash((self.spec._hash, self.wire))

    def __bool__(self) -> bool:
        return self.wire != 0

    def __int__(self) -> int:
        return self.wire

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.wire)

    def __repr__(self) -> str:
        return f"ff({self.spec.q}, {self.wire})"


# -- default moduli -------------------------------------------------------

def default_modulus(p: int, r: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree r over F_p, by wire order.

    "Smallest" means the lowest integer serialization of the non-leading
    coefficients, so the choice is deterministic and reproducible.
    """
    for w in range(p**r):
        cand = tuple(_digits(w, p, r)) + (1,)
        if poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("irreducible polynomial exists for every (p, r)")


# Shipped table for the supported prebuilt sizes.  Values equal
# default_modulus(p, r); a unit test pins that equality.
FIELD_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (1, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
    81: (2, 1, 0, 0, 1),
    121: (1, 0, 1),
    125: (1, 1, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
    169: (2, 0, 1),
    243: (1, 2, 0, 0, 0, 1),
    256: (1, 1, 0, 1, 1, 0, 0, 0, 1),
}


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ParameterError(f"not a prime power: {q}")
    p = q
    for f in range(2, q + 1):
        if f * f > q:
            break
        if q % f == 0:
            p = f
            break
    r = 0
    n = q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise ParameterError(f"not a prime power: {q}")
    return p, r


def standard_field(q: int) -> FieldSpec:
    """F_q with the shipped modulus (or the default rule off-table)."""
    p, r = _prime_power(q)
    if r == 1:
        return FieldSpec(p, 1, (0, 1))
    modulus = FIELD_MODULI.get(q) or default_modulus(p, r)
    return FieldSpec(p, r, modulus)


# -- subfields ------------------------------------------------------------

class SubfieldSpec:
    """A subfield of an ambient field, carried as an explicit embedding."""

    def __init__(self, ambient: FieldSpec, degree: int, embedding: Iterable[FieldElement]):
        self.ambient = ambient
        self.degree = degree
        self.embedding = tuple(sorted(embedding, key=lambda e: e.wire))
        self.size = ambient.p**degree
        if len(self.embedding) != self.size:
            raise ParameterError(
                f"embedding has {len(self.embedding)} elements, expected {self.size}"
            )
        self._wires = frozenset(e.wire for e in self.embedding)

    def __contains__(self, x) -> bool:
        if isinstance(x, FieldElement):
            return x.spec == self.ambient and x.wire in self._wires
        return x in self._wires

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubfieldSpec)
            and self.ambient == other.ambient
            and self._wires == other._wires
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self._wires))

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[FieldElement]:
        return iter(self.embedding)

    def __repr__(self) -> str:
        return f"SubfieldSpec(q={self.ambient.q}, degree={self.degree})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "size": self.size,
            "embedding": [e.wire for e in self.embedding],
        }


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def element_degree(x: FieldElement) -> int:
    """Degree over the prime field: the least s | r fixing x under x -> x**(p**s)."""
    spec = x.spec
    for s in _divisors(spec.r):
        y = x.wire
        for _ in range(s):
            y = spec.frobenius(y)
        if y == x.wire:
            return s
    raise AssertionError("every element is fixed by the full power map")


def subfield_of_degree(spec: FieldSpec, s: int) -> SubfieldSpec:
    """The unique subfield of size p**s (s must divide r)."""
    if spec.r % s != 0:
        raise ParameterError(f"degree {s} does not divide extension degree {spec.r}")
    fixed = []
    for w in range(spec.q):
        y = w
        for _ in range(s):
            y = spec.frobenius(y)
        if y == w:
            fixed.append(FieldElement(spec, w))
    return SubfieldSpec(spec, s, fixed)


def subfield_generated_by(elems: Iterable[FieldElement]) -> SubfieldSpec:
    """Smallest subfield containing every given element.

    Computed from element degrees: the generated subfield has degree equal
    to the lcm of the individual degrees (and always contains the prime
    field, so an empty-ish input degenerates to degree 1).
    """
    elems = list(elems)
    if not elems:
        raise ParameterError("need at least one element")
    spec = elems[0].spec
    for e in elems:
        if e.spec != spec:
            raise MismatchError("elements from different fields")
    s = 1
    for e in elems:
        d = element_degree(e)
        s = s * d // _gcd(s, d)
    return subfield_of_degree(spec, s)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def span_over_subfield(
    xs: Iterable[FieldElement],
    sub: SubfieldSpec,
    cap: int = 10**6,
) -> tuple[FieldElement, ...]:
    """Closure of {0} + sub * x over every x: the sub-linear span inside F_q.

    The result size is |sub| ** d for d independent inputs; the cap guards
    the blowup before each expansion step.
    """
    xs = sorted(xs, key=lambda e: e.wire)
    if not xs:
        raise ParameterError("need at least one element")
    spec = xs[0].spec
    if spec != sub.ambient:
        raise MismatchError("span inputs and subfield live in different fields")
    sub_wires = [e.wire for e in sub.embedding]
    span = {0}
    for x in xs:
        if x.spec != spec:
            raise MismatchError("elements from different fields")
        if x.wire in span:
            continue
        if len(span) * len(sub_wires) > cap:
            raise CapExceeded(
                f"span would exceed cap {cap}", partial_size=len(span)
            )
        span = {spec.add(s, spec.mul(f, x.wire)) for s in span for f in sub_wires}
    return tuple(FieldElement(spec, w) for w in sorted(span))

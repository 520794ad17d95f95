"""Exact arithmetic in the finite field F_q, q = p^a.

Elements are stored in the power basis of a root ``u`` of the field's
monic irreducible modulus, as a tuple of ``a`` residues mod ``p`` (constant
term first).  Polynomials over F_p use the same coefficient-list layout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class NotIrreducible(FieldError):
    def __init__(self, modulus):
        super().__init__(f"modulus {list(modulus)} is not irreducible")
        self.modulus = modulus


class DegreeMismatch(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
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
# polynomials over F_p as coefficient lists, constant term first

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    return _trim(out)


def _poly_mod(f, g, p):
    f = _trim(f)
    g = _trim(g)
    if not g:
        raise DivisionByZero("polynomial division by zero")
    lead_inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * lead_inv % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _trim(f)
    return f


def _poly_sub(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _trim([(a - b) % p for a, b in zip(f, g)])


def _poly_gcd(f, g, p):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _poly_mod(f, g, p)
    return f


def _poly_powmod(f, e, m, p):
    result = [1]
    base = _poly_mod(f, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(f, p: int) -> bool:
    """Irreducibility of a polynomial over F_p.

    Degrees up to 3 use the root test; higher degrees use Rabin's test
    (X^(p^n) = X mod f and gcd(X^(p^(n/r)) - X, f) = 1 for primes r | n).
    """
    f = _trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 3:
        return all(_poly_eval(f, x, p) != 0 for x in range(p))
    X = [0, 1]
    if _poly_sub(_poly_powmod(X, p**n, f, p), X, p):
        return False
    for r in prime_factors(n):
        h = _poly_sub(_poly_powmod(X, p ** (n // r), f, p), X, p)
        if len(_poly_gcd(h, f, p)) > 1:
            return False
    return True


def least_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree a, constant term first."""
    if a == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=a):
        f = list(low) + [1]
        if f[0] != 0 and is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    a: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))

    @property
    def q(self) -> int:
        return self.p**self.a

    def __repr__(self):
        return f"GF({self.p}^{self.a})" if self.a > 1 else f"GF({self.p})"

    # element constructors
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.a - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.a:
            raise DegreeMismatch(f"expected {self.a} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    @cached_property
    def zero(self) -> FieldElement:
        return self(0)

    @cached_property
    def one(self) -> FieldElement:
        return self(1)

    def gen(self) -> FieldElement:
        """The root u of the modulus (for a = 1 this is just a residue)."""
        if self.a == 1:
            return self(-self.modulus[0])
        return self((0, 1) + (0,) * (self.a - 2))

    def from_int(self, code: int) -> FieldElement:
        """Inverse of FieldElement.to_int: base-p digits are the coefficients."""
        coeffs = []
        for _ in range(self.a):
            code, r = divmod(code, self.p)
            coeffs.append(r)
        return FieldElement(self, tuple(coeffs))

    def elements(self):
        for k in range(self.q):
            yield self.from_int(k)

    @cached_property
    def _reduction(self) -> list[tuple[int, ...]]:
        # u^(a+k) in the power basis, k = 0 .. a-2
        p, a = self.p, self.a
        cur = [(-c) % p for c in self.modulus[:a]]
        rows = [tuple(cur)]
        for _ in range(a - 2):
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % p for c, m in zip(cur, self.modulus)]
            rows.append(tuple(cur))
        return rows

    def to_dict(self) -> dict:
        return {"p": self.p, "a": self.a, "modulus": list(self.modulus)}


def make_field(p: int, a: int = 1, modulus=None) -> FieldSpec:
    """Build and validate F_{p^a}.

    Without an explicit modulus the lexicographically least monic irreducible
    polynomial (constant term first) is chosen, so field models are
    reproducible.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if a < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {a}")
    if modulus is None:
        modulus = least_irreducible(p, a)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(modulus)) != a + 1 or len(modulus) != a + 1:
            raise DegreeMismatch(f"modulus {list(modulus)} does not have degree {a}")
        if modulus[-1] != 1:
            raise DegreeMismatch(f"modulus {list(modulus)} is not monic")
        if not is_irreducible(modulus, p):
            raise NotIrreducible(modulus)
    return FieldSpec(p, a, modulus)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec = field(repr=False)
    coeffs: tuple[int, ...]

    def __repr__(self):
        if self.spec.a == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
                terms.append(mono if c == 1 and k else f"{c}{mono}")
        return "+".join(reversed(terms)) or "0"

    def to_int(self) -> int:
        return sum(c * self.spec.p**k for k, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.spec(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        return FieldElement(self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        p, a = spec.p, spec.a
        if a == 1:
            return FieldElement(spec, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod = [0] * (2 * a - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    prod[i + j] += x * y
        out = prod[:a]
        for k, c in enumerate(prod[a:]):
            if c:
                for i, r in enumerate(spec._reduction[k]):
                    out[i] += c * r
        return FieldElement(spec, tuple(c % p for c in out))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        spec = self.spec
        if spec.a == 1:
            return FieldElement(spec, (pow(self.coeffs[0], spec.p - 2, spec.p),))
        return self ** (spec.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> FieldElement:
        return self ** self.spec.p


# functional spellings of the operators
def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def neg(x: FieldElement) -> FieldElement:
    return -x


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def power(x: FieldElement, e: int) -> FieldElement:
    return x**e


def minimal_polynomial_degree(t: FieldElement) -> int:
    """Least d >= 1 with t^(p^d) = t; this is the degree of F_p(t) over F_p."""
    y = t.frobenius()
    d = 1
    while y != t:
        y = y.frobenius()
        d += 1
    return d


def generates_field(t: FieldElement, spec: FieldSpec | None = None) -> bool:
    """True iff F_p(t) is the whole field."""
    if spec is not None and t.spec != spec:
        raise FieldMismatch(f"{t!r} is not in {spec!r}")
    return minimal_polynomial_degree(t) == t.spec.a


def in_prime_subfield(x: FieldElement) -> bool:
    return x.frobenius() == x


def order_of(x: FieldElement) -> int:
    """Multiplicative order of a nonzero element."""
    if x.is_zero():
        raise DivisionByZero("zero has no multiplicative order")
    n = x.spec.q - 1
    order = n
    for r in prime_factors(n):
        while order % r == 0 and x ** (order // r) == x.spec.one:
            order //= r
    return order


class ZechTable:
    """Log/antilog tables for q <= 2^16, keyed by FieldElement.to_int codes.

    Zech logarithms Z(n) = log(1 + g^n) turn addition into table lookups;
    zero is represented by the log value ``None``.
    """

    MAX_Q = 2**16

    def __init__(self, spec: FieldSpec):
        if spec.q > self.MAX_Q:
            raise FieldError(f"Zech tables limited to q <= {self.MAX_Q}")
        self.spec = spec
        q = spec.q
        self.primitive = next(
            e for e in (spec.from_int(k) for k in range(1, q)) if order_of(e) == q - 1
        )
        self.exp = [0] * (q - 1)
        self.log = [None] * q
        cur = spec.one
        for i in range(q - 1):
            code = cur.to_int()
            self.exp[i] = code
            self.log[code] = i
            cur = cur * self.primitive
        one = spec.one
        self.zech = [None] * (q - 1)
        for n in range(q - 1):
            s = spec.from_int(self.exp[n]) + one
            self.zech[n] = self.log[s.to_int()]

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        lx, ly = self.log[x.to_int()], self.log[y.to_int()]
        if lx is None or ly is None:
            return self.spec.zero
        return self.spec.from_int(self.exp[(lx + ly) % (self.spec.q - 1)])

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        lx, ly = self.log[x.to_int()], self.log[y.to_int()]
        if lx is None:
            return y
        if ly is None:
            return x
        z = self.zech[(ly - lx) % (self.spec.q - 1)]
        if z is None:
            return self.spec.zero
        return self.spec.from_int(self.exp[(lx + z) % (self.spec.q - 1)])

    def inv(self, x: FieldElement) -> FieldElement:
        lx = self.log[x.to_int()]
        if lx is None:
            raise DivisionByZero("inverse of zero")
        return self.spec.from_int(self.exp[(-lx) % (self.spec.q - 1)])

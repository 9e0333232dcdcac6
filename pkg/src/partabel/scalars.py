"""Exact scalar domains: rationals, prime fields, rational function fields,
and univariate extensions, all behind one small field contract.

Every element type here is immutable and self-contained, so values can be
shared freely across threads and memoized without copying.  The companion
domain objects (``QQ``, ``PrimeField``, ``FunctionField``, ``ExtensionField``)
provide construction, parsing, serialization and random sampling; the hot
linear-algebra kernels work on the raw payloads through these domains.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


class DegenerateSpecialization(RuntimeError):
    """A random specialization hit a degeneracy locus; caller should resample."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_probable_prime(n: int, rounds: int = 24, rng: random.Random | None = None) -> bool:
    """Miller-Rabin with fixed small bases plus random ones."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = rng or random.Random(0xC0FFEE ^ n)
    bases = _SMALL_PRIMES + [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 2**40, hi: int = 2**62) -> int:
    while True:
        n = rng.randrange(lo | 1, hi, 2)
        if is_probable_prime(n):
            return n


# ---------------------------------------------------------------------------
# Domain contract
# ---------------------------------------------------------------------------

class Domain:
    """Uniform contract for an exact field.

    Raw values are whatever the domain stores (``Fraction`` for QQ, ``int``
    for prime fields, ...).  All methods are pure.
    """

    name = "abstract"

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return a / b

    def inv(self, a):
        return self.div(self.one, a)

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a == self.zero

    def random(self, rng: random.Random):
        raise NotImplementedError

    def fmt(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        raise NotImplementedError

    def to_json(self, a):
        return self.fmt(a)

    def from_json(self, obj):
        return self.parse(obj)


class RationalField(Domain):
    """The rationals, realized by ``fractions.Fraction`` (already canonical:
    reduced, positive denominator, zero is 0/1)."""

    name = "rational"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-50, 50), rng.randint(1, 20))

    def parse(self, s: str) -> Fraction:
        return Fraction(s.strip())

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


class PrimeField(Domain):
    """GF(p) on raw int residues in [0, p).  p is checked probabilistically
    at construction and must stay below 2^62 so products fit machine-friendly
    big-int fast paths."""

    name = "prime"

    def __init__(self, p: int):
        if p >= 2**62 or not is_probable_prime(p):
            raise ValueError(f"modulus must be a prime < 2^62, got {p}")
        self.p = p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, q: Fraction) -> int:
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError("denominator vanishes mod p")
        return q.numerator * pow(den, self.p - 2, self.p) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def eq(self, a: int, b: int) -> bool:
        return (a - b) % self.p == 0

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def parse(self, s: str) -> int:
        return int(s) % self.p

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


class PrimeFieldElement:
    """Residue mod p with operator arithmetic; thin wrapper over PrimeField."""

    __slots__ = ("field", "value")

    def __init__(self, value: int, field: PrimeField):
        self.field = field
        self.value = value % field.p

    def _coerce(self, other) -> "PrimeFieldElement":
        if isinstance(other, PrimeFieldElement):
            if other.field.p != self.field.p:
                raise TypeError("mixed prime fields")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.field)
        if isinstance(other, Fraction):
            return PrimeFieldElement(self.field.from_fraction(other), self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.value + other.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.value - other.value, self.field)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.value * other.value, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.value * self.field.inv(other.value), self.field)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.field)

    def inverse(self) -> "PrimeFieldElement":
        return PrimeFieldElement(self.field.inv(self.value), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return (self.value - other) % self.field.p == 0
        return isinstance(other, PrimeFieldElement) and self.field.p == other.field.p \
            and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __repr__(self) -> str:
        return f"{self.value}"


# ---------------------------------------------------------------------------
# Multivariate polynomials and rational functions
# ---------------------------------------------------------------------------

def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial over QQ, keyed by exponent tuples.

    No zero coefficients are ever stored; term order is graded lexicographic.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: dict[tuple[int, ...], Fraction] | None = None):
        self.vars = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(e) != len(self.vars):
                    raise ValueError("exponent arity mismatch")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        c = Fraction(c)
        z = (0,) * len(variables)
        return cls(variables, {z: c} if c else {})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        i = list(variables).index(name)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {e: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        z = (0,) * len(self.vars)
        return self.terms.get(z, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise TypeError("polynomials over different variable sets")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, Fraction(0)) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Polynomial(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial(self.vars)
            return Polynomial(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        t: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, Fraction(0)) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return Polynomial(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.vars, other)
        return isinstance(other, Polynomial) and self.vars == other.vars \
            and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence):
        """Evaluate at a point whose entries support ring arithmetic
        (Fractions, prime-field elements, rational functions, ...)."""
        vals = list(point)
        if len(vals) != len(self.vars):
            raise ValueError("point arity mismatch")
        acc = None
        for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0])):
            term = c
            for v, k in zip(vals, e):
                for _ in range(k):
                    term = term * v
            # term-first keeps richer types (rational functions) in charge
            acc = term if acc is None else term + acc
        if acc is None:
            return Fraction(0)
        return acc

    def content_and_primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Positive rational content; primitive part has integer coprime coeffs."""
        if not self.terms:
            return Fraction(0), self
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        cont = Fraction(num, den)
        return cont, self * (1 / cont)

    def divides_exactly(self, other: "Polynomial") -> "Polynomial | None":
        """Return other / self if the division is exact, else None."""
        q = _poly_divmod(other, self)
        return q

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s


def _poly_divmod(num: Polynomial, den: Polynomial) -> Polynomial | None:
    """Exact multivariate division by leading-term elimination, or None."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q = Polynomial(num.vars)
    r = num
    de, dc = den.leading()
    guard = 0
    while not r.is_zero():
        guard += 1
        if guard > 10000:
            return None
        re, rc = r.leading()
        e = tuple(a - b for a, b in zip(re, de))
        if any(x < 0 for x in e):
            return None
        t = Polynomial(num.vars, {e: rc / dc})
        q = q + t
        r = r - t * den
        if not r.is_zero() and _grlex_key(r.leading()[0]) >= _grlex_key(re):
            return None
    return q


def _poly_gcd_univar_in(p: Polynomial, q: Polynomial, var_index: int) -> Polynomial:
    """Primitive-PRS gcd treating var_index as the main variable."""
    def lift(poly: Polynomial) -> dict[int, Polynomial]:
        out: dict[int, Polynomial] = {}
        for e, c in poly.terms.items():
            k = e[var_index]
            rest = tuple(x if i != var_index else 0 for i, x in enumerate(e))
            out.setdefault(k, Polynomial(poly.vars))
            out[k] = out[k] + Polynomial(poly.vars, {rest: c})
        return {k: v for k, v in out.items() if not v.is_zero()}

    def drop(table: dict[int, Polynomial]) -> Polynomial:
        acc = Polynomial(p.vars)
        xvar = Polynomial.variable(p.vars, p.vars[var_index])
        for k, coeff in table.items():
            acc = acc + coeff * xvar**k
        return acc

    def content(table: dict[int, Polynomial]) -> Polynomial:
        coeffs = list(table.values())
        g = coeffs[0]
        for c in coeffs[1:]:
            g = poly_gcd(g, c)
        return g

    def degree(table) -> int:
        return max(table, default=-1)

    A, B = lift(p), lift(q)
    if not A:
        return q
    if not B:
        return p
    contA, contB = content(A), content(B)
    cont = poly_gcd(contA, contB)

    def primitive(table, c):
        return {k: _poly_divmod(v, c) for k, v in table.items()}

    A = primitive(A, contA)
    B = primitive(B, contB)
    while True:
        if degree(A) < degree(B):
            A, B = B, A
        if not B:
            g = drop(A)
            _, g = g.content_and_primitive()
            return cont * g
        # pseudo-remainder of A by B
        dA, dB = degree(A), degree(B)
        lb = B[dB]
        R = dict(A)
        for _ in range(dA - dB + 1):
            dR = degree(R)
            if dR < dB or not R:
                break
            lr = R[dR]
            newR: dict[int, Polynomial] = {}
            for k, v in R.items():
                newR[k] = v * lb
            for k, v in B.items():
                shift = k + dR - dB
                newR[shift] = newR.get(shift, Polynomial(p.vars)) - v * lr
            R = {k: v for k, v in newR.items() if not v.is_zero()}
        if R:
            c = content(R)
            R = primitive(R, c)
        A, B = B, R


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Multivariate gcd over QQ (primitive PRS); result is primitive with
    positive leading coefficient, up to that normalization."""
    if p.is_zero():
        g = q
    elif q.is_zero():
        g = p
    elif p.is_constant() or q.is_constant():
        return Polynomial.constant(p.vars, 1)
    else:
        main = None
        for i in range(len(p.vars)):
            if any(e[i] for e in p.terms) and any(e[i] for e in q.terms):
                main = i
                break
        if main is None:
            return Polynomial.constant(p.vars, 1)
        g = _poly_gcd_univar_in(p, q, main)
    if g.is_zero():
        return g
    _, g = g.content_and_primitive()
    if g.leading()[1] < 0:
        g = -g
    return g


class RationalFunction:
    """Quotient of multivariate polynomials over QQ.

    Always normalized by integer content and common monomial factors, with
    the denominator's leading coefficient scaled to 1.  Full multivariate
    gcd reduction is available behind ``reduce_full`` (or the domain flag);
    equality never needs it (cross-multiplication).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, full: bool = False):
        if den is None:
            den = Polynomial.constant(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.vars != den.vars:
            raise TypeError("numerator/denominator variable mismatch")
        if num.is_zero():
            den = Polynomial.constant(num.vars, 1)
        else:
            # common monomial factor
            mins = [min(e[i] for e in list(num.terms) + list(den.terms))
                    for i in range(len(num.vars))]
            if any(mins):
                shift = lambda t: {tuple(a - b for a, b in zip(e, mins)): c for e, c in t.items()}
                num = Polynomial(num.vars, shift(num.terms))
                den = Polynomial(den.vars, shift(den.terms))
            if full:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = _poly_divmod(num, g)
                    den = _poly_divmod(den, g)
            _, lc = den.leading()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "RationalFunction":
        return cls(Polynomial.constant(variables, c))

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "RationalFunction":
        return cls(Polynomial.variable(variables, name))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.vars, other)
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction.constant(self.vars, 1) / self) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def inverse(self) -> "RationalFunction":
        return RationalFunction.constant(self.vars, 1) / self

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        r = self.reduce_full()
        return hash((r.num, r.den))

    def reduce_full(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den, full=True)

    def evaluate(self, point: Sequence):
        den = self.den.evaluate(point)
        num = self.num.evaluate(point)
        try:
            bad = den == 0 or (hasattr(den, "is_zero") and den.is_zero())
        except TypeError:
            bad = False
        if bad:
            raise PoleError(f"denominator vanishes at {tuple(point)}")
        return num / den

    def __repr__(self) -> str:
        if self.den == Polynomial.constant(self.vars, 1):
            return repr(self.num)
        return f"({self.num})/({self.den})"


def specialize(rf: RationalFunction, point: Sequence):
    """Evaluate a rational function at an exact point; raises PoleError on
    vanishing denominator so callers can resample."""
    return rf.evaluate(point)


class FunctionField(Domain):
    """Field of rational functions in a fixed variable tuple over QQ."""

    name = "function"

    def __init__(self, variables: Sequence[str] = ("y1", "y2", "y3"), full_reduce: bool = False):
        self.vars = tuple(variables)
        self.full_reduce = full_reduce

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction.constant(self.vars, 0)

    @property
    def one(self) -> RationalFunction:
        return RationalFunction.constant(self.vars, 1)

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction.constant(self.vars, n)

    def gen(self, name: str) -> RationalFunction:
        return RationalFunction.variable(self.vars, name)

    def gens(self) -> tuple[RationalFunction, ...]:
        return tuple(self.gen(v) for v in self.vars)

    def mul(self, a, b):
        r = a * b
        return r.reduce_full() if self.full_reduce else r

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def random(self, rng: random.Random) -> RationalFunction:
        p = Polynomial(self.vars)
        for _ in range(rng.randint(1, 3)):
            e = tuple(rng.randint(0, 2) for _ in self.vars)
            p = p + Polynomial(self.vars, {e: Fraction(rng.randint(-5, 5))})
        q = Polynomial.constant(self.vars, rng.randint(1, 4))
        e = tuple(rng.randint(0, 1) for _ in self.vars)
        q = q + Polynomial(self.vars, {e: Fraction(rng.randint(0, 3))})
        if q.is_zero():
            q = Polynomial.constant(self.vars, 1)
        return RationalFunction(p, q)

    def parse(self, s: str) -> RationalFunction:
        return parse_rational_function(s, self.vars)

    def to_json(self, a: RationalFunction):
        enc = lambda p: {",".join(map(str, e)): str(c) for e, c in sorted(p.terms.items())}
        return {"num": enc(a.num), "den": enc(a.den)}

    def from_json(self, obj) -> RationalFunction:
        dec = lambda d: Polynomial(self.vars, {
            tuple(int(x) for x in k.split(",")): Fraction(v) for k, v in d.items()})
        return RationalFunction(dec(obj["num"]), dec(obj["den"]))

    def __repr__(self) -> str:
        return f"QQ({','.join(self.vars)})"

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.vars == self.vars

    def __hash__(self):
        return hash(("FF", self.vars))


# ---------------------------------------------------------------------------
# Expression parser (polynomials / rational functions in named variables)
# ---------------------------------------------------------------------------

def _tokenize(s: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            out.append(s[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            out.append(s[i:j])
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r} in expression")
    return out


def parse_rational_function(s: str, variables: Sequence[str]) -> RationalFunction:
    """Recursive-descent parser for +, -, *, /, ^, parentheses, integers and
    the given variable names."""
    tokens = _tokenize(s)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of expression")
        t = tokens[pos]
        if expected is not None and t != expected:
            raise ValueError(f"expected {expected!r}, got {t!r}")
        pos += 1
        return t

    def atom() -> RationalFunction:
        t = peek()
        if t == "(":
            take("(")
            e = expr()
            take(")")
        elif t is None:
            raise ValueError("unexpected end of expression")
        elif t.isdigit():
            e = RationalFunction.constant(variables, int(take()))
        elif t in variables:
            e = RationalFunction.variable(variables, take())
        else:
            raise ValueError(f"unknown symbol {t!r}")
        if peek() == "^":
            take("^")
            n = int(take())
            e = e**n
        return e

    def unary() -> RationalFunction:
        if peek() == "-":
            take("-")
            return -unary()
        if peek() == "+":
            take("+")
            return unary()
        return atom()

    def product() -> RationalFunction:
        e = unary()
        while peek() in ("*", "/"):
            if take() == "*":
                e = e * unary()
            else:
                e = e / unary()
        return e

    def expr() -> RationalFunction:
        e = product()
        while peek() in ("+", "-"):
            if take() == "+":
                e = e + product()
            else:
                e = e - product()
        return e

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens {tokens[pos:]}")
    return result


# ---------------------------------------------------------------------------
# Univariate polynomials over an arbitrary domain
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over a Domain; raw coefficients, no
    trailing zeros (the zero polynomial has an empty list)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Domain, coeffs: Iterable):
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def from_ints(cls, field: Domain, ints: Iterable[int]) -> "UniPoly":
        return cls(field, [field.from_int(n) for n in ints])

    @classmethod
    def x(cls, field: Domain) -> "UniPoly":
        return cls(field, [field.zero, field.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.field.eq(self.leading(), self.field.one)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.field.inv(self.leading())
        return UniPoly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def __add__(self, other: "UniPoly") -> "UniPoly":
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        cs = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else f.zero
            b = other.coeffs[i] if i < len(other.coeffs) else f.zero
            cs.append(f.add(a, b))
        return UniPoly(f, cs)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        f = self.field
        if not isinstance(other, UniPoly):
            return UniPoly(f, [f.mul(c, other) for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly(f, [])
        cs = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                cs[i + j] = f.add(cs[i + j], f.mul(a, b))
        return UniPoly(f, cs)

    def scale(self, c) -> "UniPoly":
        f = self.field
        return UniPoly(f, [f.mul(a, c) for a in self.coeffs])

    def shift(self, k: int) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(self.field, [self.field.zero] * k + self.coeffs)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = UniPoly(f, [])
        r = self
        inv_lead = f.inv(other.leading())
        while not r.is_zero() and r.degree >= other.degree:
            c = f.mul(r.leading(), inv_lead)
            k = r.degree - other.degree
            t = UniPoly(f, [f.zero] * k + [c])
            q = q + t
            r = r - other.scale(c).shift(k)
        return q, r

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.field.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(tuple(map(self.field.fmt, self.coeffs)))

    def evaluate(self, x):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def derivative(self) -> "UniPoly":
        f = self.field
        return UniPoly(f, [f.mul(c, f.from_int(i)) for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if self.field.is_zero(c):
                continue
            cs = self.field.fmt(c)
            if i == 0:
                parts.append(cs)
            else:
                x = "z" if i == 1 else f"z^{i}"
                parts.append(x if cs == "1" else f"{cs}*{x}")
        return " + ".join(parts)


def gcd_univariate(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by Euclid's algorithm over a field; gcd(0,0) = 0."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Extended Euclid for univariate polynomials: (d, s, t), s*f + t*g = d monic."""
    field = f.field
    zero = UniPoly(field, [])
    one = UniPoly(field, [field.one])
    old_r, r = f, g
    old_s, s = one, zero
    old_t, t = zero, one
    while not r.is_zero():
        q, rem = old_r.divmod(r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r.is_zero():
        return old_r, old_s, old_t
    inv = field.inv(old_r.leading())
    return old_r.scale(inv), old_s.scale(inv), old_t.scale(inv)


def sylvester_resultant(f: UniPoly, g: UniPoly):
    """Resultant via the Sylvester matrix with the f-rows placed first.

    Works over any integral domain via fraction-free (Bareiss) elimination,
    so it also serves polynomial-coefficient elimination.  Convention is
    fixed: Res(z - a, z - b) = a - b.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    field = f.field
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        # resultant with a zero polynomial: zero unless the other is constant
        other = g if f.is_zero() else f
        return field.one if other.degree == 0 else field.zero
    if m == 0 and n == 0:
        return field.one
    if m == 0:
        return _ring_pow(field, f.coeffs[0], n)
    if n == 0:
        return _ring_pow(field, g.coeffs[0], m)
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([field.zero] * i + fc + [field.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([field.zero] * i + gc + [field.zero] * (size - n - 1 - i))
    return bareiss_determinant(field, rows)


def _ring_pow(field: Domain, a, n: int):
    out = field.one
    for _ in range(n):
        out = field.mul(out, a)
    return out


def bareiss_determinant(field: Domain, rows: list[list]):
    """Fraction-free determinant; exact over any integral domain whose exact
    divisions the Domain can perform (division is always by a previous pivot)."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if field.is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not field.is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return field.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = field.sub(field.mul(a[i][j], a[k][k]),
                                field.mul(a[i][k], a[k][j]))
                a[i][j] = field.exact_div(num, prev) if hasattr(field, "exact_div") \
                    else field.div(num, prev)
            a[i][k] = field.zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else field.neg(det)


def resultant(f: UniPoly, g: UniPoly):
    """Public resultant entry point (Sylvester convention with f-rows first)."""
    return sylvester_resultant(f, g)


class PolyRingDomain(Domain):
    """Univariate polynomials over a field, viewed as an integral domain;
    used for resultants with polynomial entries (Bareiss needs exact_div)."""

    name = "polyring"

    def __init__(self, base: Domain):
        self.base = base

    @property
    def zero(self) -> UniPoly:
        return UniPoly(self.base, [])

    @property
    def one(self) -> UniPoly:
        return UniPoly(self.base, [self.base.one])

    def from_int(self, n: int) -> UniPoly:
        return UniPoly(self.base, [self.base.from_int(n)])

    def is_zero(self, a: UniPoly) -> bool:
        return a.is_zero()

    def eq(self, a: UniPoly, b: UniPoly) -> bool:
        return a == b

    def exact_div(self, a: UniPoly, b: UniPoly) -> UniPoly:
        q, r = a.divmod(b)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division in Bareiss step")
        return q

    div = exact_div

    def fmt(self, a: UniPoly) -> str:
        return repr(a)


# ---------------------------------------------------------------------------
# Extension fields
# ---------------------------------------------------------------------------

class ExtensionField(Domain):
    """base[t]/(f) for a monic irreducible f; raw values are UniPoly residues
    of degree < deg f over the base domain."""

    name = "extension"

    def __init__(self, base: Domain, modulus: UniPoly, check_irreducible: bool = True):
        if modulus.field is not base and modulus.field != base:
            raise TypeError("modulus must live over the base domain")
        if not modulus.is_monic():
            raise ValueError("modulus must be monic")
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        if check_irreducible and modulus.degree in (2, 3):
            if _has_root(base, modulus):
                raise ValueError("modulus has a root in the base field; not irreducible")
        self.base = base
        self.modulus = modulus

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def zero(self) -> UniPoly:
        return UniPoly(self.base, [])

    @property
    def one(self) -> UniPoly:
        return UniPoly(self.base, [self.base.one])

    def from_int(self, n: int) -> UniPoly:
        return UniPoly(self.base, [self.base.from_int(n)])

    def from_base(self, c) -> UniPoly:
        return UniPoly(self.base, [c])

    def gen(self) -> UniPoly:
        return UniPoly.x(self.base) % self.modulus

    def add(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a + b

    def sub(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a - b

    def neg(self, a: UniPoly) -> UniPoly:
        return -a

    def mul(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return (a * b) % self.modulus

    def inv(self, a: UniPoly) -> UniPoly:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in extension field")
        d, s, _ = poly_xgcd(a, self.modulus)
        if d.degree != 0:
            raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
        return s.scale(self.base.inv(d.coeffs[0])) % self.modulus

    def div(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return self.mul(a, self.inv(b))

    def eq(self, a: UniPoly, b: UniPoly) -> bool:
        return a == b

    def is_zero(self, a: UniPoly) -> bool:
        return a.is_zero()

    def random(self, rng: random.Random) -> UniPoly:
        return UniPoly(self.base, [self.base.random(rng) for _ in range(self.degree)])

    def fmt(self, a: UniPoly) -> str:
        if a.is_zero():
            return "0"
        parts = []
        for i in range(a.degree, -1, -1):
            c = a.coeffs[i]
            if self.base.is_zero(c):
                continue
            cs = self.base.fmt(c)
            if i == 0:
                parts.append(cs)
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if cs == "1" else f"({cs})*{t}")
        return " + ".join(parts)

    def parse(self, s: str) -> UniPoly:
        rf = parse_rational_function(s, ("t",))
        den = rf.den
        if not den.is_constant():
            raise ValueError("extension elements parse as polynomials in t")
        coeffs = {}
        for (e,), c in rf.num.terms.items():
            coeffs[e] = c / den.constant_value()
        cs = [self._base_from_fraction(coeffs.get(i, Fraction(0)))
              for i in range(max(coeffs, default=0) + 1)]
        return UniPoly(self.base, cs) % self.modulus

    def _base_from_fraction(self, q: Fraction):
        if isinstance(self.base, PrimeField):
            return self.base.from_fraction(q)
        if isinstance(self.base, RationalField):
            return q
        raise TypeError("cannot parse extension element over this base")

    def to_json(self, a: UniPoly):
        return [self.base.fmt(c) for c in a.coeffs]

    def from_json(self, obj) -> UniPoly:
        return UniPoly(self.base, [self.base.parse(c) for c in obj])

    def __repr__(self) -> str:
        return f"{self.base!r}[t]/({self.modulus!r})"


def _has_root(base: Domain, f: UniPoly) -> bool:
    if isinstance(base, RationalField):
        return rational_roots(f) != []
    if isinstance(base, PrimeField):
        return len(prime_field_roots(base, f)) > 0
    return False


class ExtensionElement:
    """Operator-arithmetic wrapper over an ExtensionField residue."""

    __slots__ = ("field", "residue")

    def __init__(self, residue: UniPoly, field: ExtensionField):
        self.field = field
        self.residue = residue % field.modulus

    def _coerce(self, other) -> "ExtensionElement":
        if isinstance(other, ExtensionElement):
            return other
        if isinstance(other, int):
            return ExtensionElement(self.field.from_int(other), self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return ExtensionElement(self.field.add(self.residue, other.residue), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return ExtensionElement(self.field.sub(self.residue, other.residue), self.field)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return ExtensionElement(self.field.mul(self.residue, other.residue), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return ExtensionElement(self.field.div(self.residue, other.residue), self.field)

    def __neg__(self):
        return ExtensionElement(self.field.neg(self.residue), self.field)

    def inverse(self) -> "ExtensionElement":
        return ExtensionElement(self.field.inv(self.residue), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.residue == self.field.from_int(other)
        return isinstance(other, ExtensionElement) and self.residue == other.residue

    def __hash__(self) -> int:
        return hash(self.field.fmt(self.residue))

    def __repr__(self) -> str:
        return self.field.fmt(self.residue)


# ---------------------------------------------------------------------------
# Root finding over QQ and GF(p)
# ---------------------------------------------------------------------------

def rational_roots(f: UniPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial over QQ (rational root test)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    coeffs = [Fraction(c) for c in f.coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // __import__("math").gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out z; z=0 handled below
    roots = []
    if f.coeffs and f.field.is_zero(f.evaluate(Fraction(0))):
        roots.append(Fraction(0))
    if not ints:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> list[int]:
        ds = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                ds.append(d)
                ds.append(n // d)
            d += 1
        return sorted(set(ds))

    for p in divisors(a0) if a0 else [0]:
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and f.evaluate(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def prime_field_roots(field: PrimeField, f: UniPoly) -> list[int]:
    """All roots of f in GF(p) via gcd with z^p - z and Cantor-Zassenhaus
    splitting; fine for the small degrees used here."""
    p = field.p
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    # z^p mod f by square-and-multiply
    xp = _powmod_x(field, p, f)
    lin = gcd_univariate(xp - UniPoly.x(field), f)
    roots: list[int] = []
    stack = [lin]
    rng = random.Random(0x5EED ^ p)
    while stack:
        g = stack.pop()
        if g.degree <= 0:
            continue
        if g.degree == 1:
            roots.append(field.neg(g.coeffs[0]))
            continue
        while True:
            c = field.random(rng)
            shifted = UniPoly(field, [c, field.one])
            h = _poly_powmod(field, shifted, (p - 1) // 2, g) - UniPoly(field, [field.one])
            d = gcd_univariate(h, g)
            if 0 < d.degree < g.degree:
                stack.append(d)
                stack.append(g.divmod(d)[0])
                break
    return sorted(roots)


def _powmod_x(field: Domain, e: int, mod: UniPoly) -> UniPoly:
    return _poly_powmod(field, UniPoly.x(field), e, mod)


def _poly_powmod(field: Domain, base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    out = UniPoly(field, [field.one])
    b = base % mod
    while e:
        if e & 1:
            out = (out * b) % mod
        b = (b * b) % mod
        e >>= 1
    return out


def factor_cubic(field: Domain, f: UniPoly) -> list[UniPoly]:
    """Monic irreducible factors of a monic polynomial of degree <= 3 over
    QQ or GF(p), with multiplicity."""
    if not f.is_monic() or f.degree > 3:
        raise ValueError("expects a monic polynomial of degree <= 3")
    if isinstance(field, RationalField):
        roots = rational_roots(f)
    elif isinstance(field, PrimeField):
        roots = prime_field_roots(field, f)
    else:
        raise TypeError("factorization supported over QQ and GF(p) only")
    factors: list[UniPoly] = []
    rest = f
    for r in roots:
        lin = UniPoly(field, [field.neg(field.from_int(0) + r), field.one]) \
            if isinstance(field, PrimeField) else UniPoly(field, [-r, Fraction(1)])
        while True:
            q, rem = rest.divmod(lin)
            if rem.is_zero():
                factors.append(lin)
                rest = q
            else:
                break
    if rest.degree > 0:
        factors.append(rest)
    return factors

"""Exact coefficient rings: finite fields GF(p^k), modular integers Z/kZ and
arbitrary-precision rationals.

Scalars are plain Python values: an int in [0, p^k) for a finite field (the
base-p digit string encodes the residue polynomial, constant term first), an
int in [0, k) for Z/kZ, and a ``fractions.Fraction`` for the rationals.  The
ring object carries the operations so that values stay small, hashable and
exact.  Floating point is never used anywhere.

Ring descriptors serialize as the text tokens ``gf:p``, ``gf:p:k``, ``zmod:k``
and ``q``.
"""

from __future__ import annotations

import threading
from fractions import Fraction


class RingError(Exception):
    """Base class for coefficient-ring errors."""


class NonUnit(RingError):
    """Inverting zero, or a non-unit of Z/kZ."""


class RingMismatch(RingError):
    """Two operands (or containers) do not share a ring."""


def is_prime(n: int) -> bool:
    """Trial-division primality check; plenty for the moduli used here."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over GF(p), used for modulus search and the
# large-field fallback.  A polynomial is a list of int coefficients mod p,
# constant term first, with no trailing zeros.


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, m, p):
    f = list(f)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(f) - 1 >= dm and f:
        c = (f[-1] * inv_lead) % p
        shift = len(f) - 1 - dm
        for i, a in enumerate(m):
            f[shift + i] = (f[shift + i] - c * a) % p
        _ptrim(f)
    return f


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _pmod(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [(a * inv) % p for a in f]
    return f


def _ppowmod(f, e, m, p):
    result = [1]
    base = _pmod(f, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_is_irreducible(m, p):
    """Full irreducibility test: x^(p^k) = x mod m and gcd conditions."""
    k = len(m) - 1
    if k < 1:
        return False
    x = [0, 1]
    # x^(p^k) == x (mod m)
    t = _ppowmod(x, p ** k, m, p)
    lhs = _ptrim([(a - b) % p for a, b in zip(t + [0] * 2, x + [0] * len(t))])
    if lhs:
        return False
    # gcd(x^(p^(k/t)) - x, m) == 1 for every prime t | k
    kk, t = k, 2
    primes = set()
    while t * t <= kk:
        while kk % t == 0:
            primes.add(t)
            kk //= t
        t += 1
    if kk > 1:
        primes.add(kk)
    for t in primes:
        u = _ppowmod(x, p ** (k // t), m, p)
        diff = [0] * max(len(u), 2)
        for i, a in enumerate(u):
            diff[i] = a
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _ptrim(diff), p)) != 1:
            return False
    return True


_MODULUS_CACHE: dict = {}
_MODULUS_LOCK = threading.Lock()


def modulus_polynomial(p: int, k: int) -> tuple:
    """The fixed degree-k irreducible modulus over GF(p).

    Chosen as the smallest monic irreducible in the base-p encoding of the
    low coefficients, so every descriptor with equal (p, k) agrees bit for
    bit.  Cached after first use.
    """
    with _MODULUS_LOCK:
        key = (p, k)
        if key in _MODULUS_CACHE:
            return _MODULUS_CACHE[key]
        for code in range(p ** k):
            coeffs = []
            c = code
            for _ in range(k):
                coeffs.append(c % p)
                c //= p
            m = coeffs + [1]
            if _poly_is_irreducible(m, p):
                result = tuple(m)
                _MODULUS_CACHE[key] = result
                return result
        raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


_TABLE_CAP = 256  # largest field size for which full op tables are built


class FiniteField:
    """GF(p^k).  Elements are ints in [0, p^k), base-p digits = coefficients."""

    kind = "finite_field"
    is_field = True

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("k must be positive")
        self.p = p
        self.k = k
        self.size = p ** k
        self.modulus = modulus_polynomial(p, k) if k > 1 else (0, 1)
        self._mul_table = None
        self._add_table = None
        self._inv_table = None
        if k > 1 and self.size <= _TABLE_CAP:
            self._build_tables()

    # -- encoding helpers

    def _digits(self, a):
        p, k = self.p, self.k
        out = []
        for _ in range(k):
            out.append(a % p)
            a //= p
        return out

    def _encode(self, coeffs):
        p = self.p
        val = 0
        for c in reversed(coeffs):
            val = val * p + (c % p)
        return val

    def _build_tables(self):
        n = self.size
        add = [[0] * n for _ in range(n)]
        mul = [[0] * n for _ in range(n)]
        for a in range(n):
            da = self._digits(a)
            for b in range(a, n):
                db = self._digits(b)
                s = self._encode([(x + y) % self.p for x, y in zip(da, db)])
                add[a][b] = s
                add[b][a] = s
                pr = self._encode(
                    _pmod(_pmul(_ptrim(list(da)), _ptrim(list(db)), self.p),
                          list(self.modulus), self.p) + [0] * self.k)
                mul[a][b] = pr
                mul[b][a] = pr
        inv = [0] * n
        for a in range(1, n):
            for b in range(1, n):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._add_table = add
        self._mul_table = mul
        self._inv_table = inv

    # -- ring operations

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self._encode([(-c) % self.p for c in self._digits(a)])

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        f = _pmul(_ptrim(self._digits(a)), _ptrim(self._digits(b)), self.p)
        return self._encode(_pmod(f, list(self.modulus), self.p) + [0] * self.k)

    def inv(self, a):
        if a == 0:
            raise NonUnit("division by zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.size - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a):
        return a != 0

    def from_int(self, n: int):
        return n % self.p  # image of the integer n under Z -> GF(p^k)

    def elements(self):
        return range(self.size)

    def rand(self, rng):
        return rng.randrange(self.size)

    @property
    def characteristic(self):
        return self.p

    # -- text forms

    def token(self) -> str:
        return f"gf:{self.p}" if self.k == 1 else f"gf:{self.p}:{self.k}"

    def format_scalar(self, a) -> str:
        if self.k == 1:
            return str(a)
        digits = self._digits(a)
        terms = []
        for i, c in enumerate(digits):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return "+".join(terms) if terms else "0"

    def parse_scalar(self, text: str):
        text = text.strip()
        if self.k == 1:
            return int(text) % self.p
        coeffs = [0] * self.k
        if text == "0":
            return 0
        for term in text.split("+"):
            term = term.strip()
            if "*" in term:
                c_str, x_str = term.split("*", 1)
                c = int(c_str)
                if x_str == "x":
                    e = 1
                elif x_str.startswith("x^"):
                    e = int(x_str[2:])
                else:
                    raise ValueError(f"bad field literal {text!r}")
            else:
                c, e = int(term), 0
            if e >= self.k:
                raise ValueError(f"exponent too large in {text!r}")
            coeffs[e] = (coeffs[e] + c) % self.p
        return self._encode(coeffs)

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and other.p == self.p and other.k == self.k)

    def __hash__(self):
        return hash(("gf", self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


class ModularInt:
    """Z/kZ for k >= 2.  Construction and action evaluation only; the
    identification pipeline requires a field."""

    kind = "modular_int"
    is_field = False

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("modulus must be at least 2")
        self.k = k
        self.size = k

    def zero(self):
        return 0

    def one(self):
        return 1 % self.k

    def add(self, a, b):
        return (a + b) % self.k

    def sub(self, a, b):
        return (a - b) % self.k

    def neg(self, a):
        return (-a) % self.k

    def mul(self, a, b):
        return (a * b) % self.k

    def inv(self, a):
        try:
            return pow(a, -1, self.k)
        except ValueError:
            raise NonUnit(f"{a} is not a unit mod {self.k}") from None

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.k)
        return pow(a, e, self.k)

    def is_unit(self, a):
        import math
        return math.gcd(a, self.k) == 1

    def from_int(self, n):
        return n % self.k

    def elements(self):
        return range(self.k)

    def rand(self, rng):
        return rng.randrange(self.k)

    @property
    def characteristic(self):
        # p when k is prime; otherwise there is no well-defined characteristic
        return self.k if is_prime(self.k) else None

    def token(self):
        return f"zmod:{self.k}"

    def format_scalar(self, a):
        return str(a)

    def parse_scalar(self, text):
        return int(text) % self.k

    def __eq__(self, other):
        return isinstance(other, ModularInt) and other.k == self.k

    def __hash__(self):
        return hash(("zmod", self.k))

    def __repr__(self):
        return f"Z/{self.k}Z"


class Rational:
    """The rational field with arbitrary-precision Fraction scalars."""

    kind = "rational"
    is_field = True
    size = None

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise NonUnit("division by zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise NonUnit("division by zero")
        return a / b

    def pow(self, a, e):
        if e < 0 and a == 0:
            raise NonUnit("division by zero")
        return a ** e

    def is_unit(self, a):
        return a != 0

    def from_int(self, n):
        return Fraction(n)

    def elements(self):
        raise RingError("the rationals are infinite")

    def rand(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    @property
    def characteristic(self):
        return 0

    def token(self):
        return "q"

    def format_scalar(self, a):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse_scalar(self, text):
        return Fraction(text)

    def __eq__(self, other):
        return isinstance(other, Rational)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "Q"


QQ = Rational()


def GF(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def Zmod(k: int) -> ModularInt:
    return ModularInt(k)


def characteristic_of(ring):
    """p for GF(p^k) and prime Z/pZ, 0 for Q, None when undefined (Z/kZ
    composite, e.g. Z/6Z)."""
    return ring.characteristic


def parse_ring(token: str):
    """Inverse of ``ring.token()``."""
    parts = token.strip().lower().split(":")
    if parts == ["q"]:
        return QQ
    if parts[0] == "gf":
        if len(parts) == 2:
            return FiniteField(int(parts[1]))
        if len(parts) == 3:
            return FiniteField(int(parts[1]), int(parts[2]))
    if parts[0] == "zmod" and len(parts) == 2:
        return ModularInt(int(parts[1]))
    raise ValueError(f"unrecognized ring token {token!r}")

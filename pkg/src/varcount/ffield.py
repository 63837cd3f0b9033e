"""Arithmetic in F_q for odd prime powers q = p^n.

Elements are encoded as integers in ``[0, q)``: the element
``a0 + a1*t + ... + a_{n-1}*t^{n-1}`` (polynomial basis modulo the field's
monic modulus) has code ``a0 + a1*p + ... + a_{n-1}*p^{n-1}``.  For prime
fields the code is just the residue.  Multiplication goes through
precomputed exponential / index tables built from a primitive element.
"""

from __future__ import annotations

import re
from math import gcd
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    EvenCharacteristic,
    NotPrime,
    NotPrimitive,
    ParseError,
    ReducibleModulus,
    ZeroHasNoIndex,
)

__all__ = [
    "FiniteField",
    "make_field",
    "find_primitive_element",
    "index_of",
    "is_prime",
    "prime_factors",
    "parse_poly_string",
]

_ADD_TABLE_LIMIT = 243


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists, lowest degree first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    # Rabin-style: no factor of degree <= n/2 means gcd(x^(p^i) - x, f) = 1.
    n = len(f) - 1
    if n <= 1:
        return n == 1
    x = [0, 1]
    xp = x
    for _ in range(n // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(list(f), _trim(diff), p)) > 1:
            return False
    return True


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    # monic candidates x^n + c_{n-1} x^{n-1} + ... + c_0, ascending lexicographic
    # order on (c_{n-1}, ..., c_0)
    for code in range(p**n):
        high_first = []
        for _ in range(n):
            high_first.append(code % p)
            code //= p
        high_first.reverse()
        f = list(reversed(high_first)) + [1]
        if f[0] != 0 and _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*(?:\*\s*)?)?(?:([A-Za-z])\s*(?:\^\s*(\d+))?)?\s*"
)


def parse_poly_string(text: str, var: str) -> dict[int, int]:
    """Parse ``"2+t^2"``-style strings into ``{degree: coefficient}``.

    Integer coefficients may be negative; they are not reduced here.
    """
    s = text.strip()
    if not s:
        raise ParseError(f"empty polynomial string {text!r}")
    out: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign, coef, name, exp = m.groups()
        if coef is None and name is None:
            raise ParseError(f"cannot parse polynomial {text!r} at offset {pos}")
        if sign is None and not first:
            raise ParseError(f"missing '+' or '-' in polynomial {text!r}")
        if name is not None and name != var:
            raise ParseError(f"unexpected variable {name!r} in {text!r}, expected {var!r}")
        if coef is not None and name is None and exp is not None:
            raise ParseError(f"cannot parse polynomial {text!r}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        deg = 0 if name is None else (int(exp) if exp is not None else 1)
        out[deg] = out.get(deg, 0) + c
        pos = m.end()
        first = False
    return out


class FiniteField:
    """The field F_q with a designated primitive element ``alpha``.

    The object is immutable after construction; the index table is built
    eagerly, so construction costs O(q).
    """

    def __init__(self, p: int, n: int = 1, modulus=None, primitive=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if n < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {n}")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = self._resolve_modulus(modulus)
        if n > 1:
            self._pw = [p**i for i in range(n)]
        self._add_table = None
        self.enable_add_table()
        if primitive is None:
            alpha = self._search_generator()
        else:
            alpha = self.element(primitive)
            if not self._raw_is_generator(alpha):
                raise NotPrimitive(
                    f"{self.format_element(alpha)} does not generate F_{self.q}^*"
                )
        self.alpha = alpha
        self._build_tables()

    # -- construction helpers ---------------------------------------------

    def _resolve_modulus(self, modulus):
        p, n = self.p, self.n
        if modulus is None:
            return None if n == 1 else _first_irreducible(p, n)
        if isinstance(modulus, str):
            terms = parse_poly_string(modulus, "x")
            deg = max(terms)
            coeffs = [0] * (deg + 1)
            for d, c in terms.items():
                coeffs[d] = c % p
        else:
            coeffs = [int(c) % p for c in modulus]
        coeffs = _trim(coeffs)
        if len(coeffs) - 1 != n:
            raise DegreeMismatch(
                f"modulus has degree {len(coeffs) - 1}, extension degree is {n}"
            )
        if coeffs[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not _is_irreducible(coeffs, p):
            raise ReducibleModulus(f"modulus {modulus!r} is reducible over F_{p}")
        return None if n == 1 else tuple(coeffs)

    def _raw_mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        prod = _pmul(self.to_vector(a), self.to_vector(b), self.p)
        return self.from_vector(_pmod(prod, self.modulus, self.p))

    def _raw_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    def _raw_is_generator(self, g: int) -> bool:
        if g == 0:
            return False
        order = self.q - 1
        if self._raw_pow(g, order) != 1:
            return False
        return all(self._raw_pow(g, order // f) != 1 for f in prime_factors(order))

    def _search_generator(self) -> int:
        for g in range(1, self.q):
            if self._raw_is_generator(g):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _build_tables(self):
        q = self.q
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self._raw_mul(x, self.alpha)
        if x != 1 or -1 in log[1:]:
            raise AssertionError("alpha is not primitive")
        self._exp = exp
        self._log = log

    # -- element conversion -------------------------------------------------

    def to_vector(self, a: int) -> list[int]:
        """Coefficient vector (length n, lowest degree first) of code ``a``."""
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return out

    def from_vector(self, coeffs: Iterable[int]) -> int:
        code = 0
        scale = 1
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            if any(c % self.p for c in coeffs[self.n:]):
                raise DegreeMismatch("coefficient vector longer than extension degree")
            coeffs = coeffs[: self.n]
        for c in coeffs:
            code += (c % self.p) * scale
            scale *= self.p
        return code

    def element(self, value) -> int:
        """Coerce an int, a ``"a0+a1*t"`` string or a coefficient vector."""
        if isinstance(value, (bool, np.bool_)):
            raise TypeError("booleans are not field elements")
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        if isinstance(value, str):
            terms = parse_poly_string(value, "t")
            coeffs = [0] * (max(terms) + 1)
            for d, c in terms.items():
                coeffs[d] = c
            if len(coeffs) > self.n:
                if self.modulus is None:
                    raise ParseError(f"{value!r} is not an element of the prime field F_{self.p}")
                coeffs = _pmod(coeffs, self.modulus, self.p)
            return self.from_vector(coeffs)
        return self.from_vector(value)

    def format_element(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        parts = []
        for d, c in enumerate(self.to_vector(a)):
            if c == 0:
                continue
            if d == 0:
                parts.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        out = 0
        for w in self._pw:
            out += ((a // w + b // w) % p) * w
        return out

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        return self.from_vector([-c for c in self.to_vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """``a**e`` by repeated squaring; ``0**0 == 1``."""
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 0 if e > 0 else 1
        e %= self.q - 1
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def alpha_pow(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def index_of(self, beta: int) -> int:
        """Discrete log of ``beta`` to base ``alpha``, in ``[0, q-2]``."""
        if beta == 0:
            raise ZeroHasNoIndex("0 has no index")
        return self._log[beta]

    @property
    def index_table(self) -> dict[int, int]:
        return {b: self._log[b] for b in range(1, self.q)}

    # -- enumeration ------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def is_generator(self, g: int) -> bool:
        return g != 0 and self.order(g) == self.q - 1

    def generators(self) -> list[int]:
        return [g for g in self.nonzero() if self.is_generator(g)]

    def with_primitive(self, g) -> "FiniteField":
        """Same field, other generator; ints are element codes here."""
        if isinstance(g, int):
            g = self.format_element(g)
        return FiniteField(self.p, self.n, self.modulus, primitive=g)

    def enable_add_table(self):
        if self.n > 1 and self._add_table is None and self.q <= _ADD_TABLE_LIMIT:
            p = self.p
            table = []
            for a in range(self.q):
                row = []
                for b in range(self.q):
                    out = 0
                    for w in self._pw:
                        out += ((a // w + b // w) % p) * w
                    row.append(out)
                table.append(row)
            self._add_table = table

    # -- numpy views used by the vectorised oracle ---------------------------

    @cached_property
    def exp_array(self) -> np.ndarray:
        return np.asarray(self._exp, dtype=np.int64)

    @cached_property
    def log_array(self) -> np.ndarray:
        """Index of each element; the entry for 0 is 0 and must be masked."""
        arr = np.asarray(self._log, dtype=np.int64)
        arr[0] = 0
        return arr

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros_like(a)
        for w in self._pw:
            out += ((a // w + b // w) % p) * w
        return out

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.n, self.modulus, self.alpha) == (
            other.p,
            other.n,
            other.modulus,
            other.alpha,
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus, self.alpha))

    def __repr__(self):
        mod = ""
        if self.modulus is not None:
            mod = f", modulus={self.modulus_string()!r}"
        return f"FiniteField(p={self.p}, n={self.n}{mod}, alpha={self.format_element(self.alpha)!r})"

    def modulus_string(self) -> str | None:
        if self.modulus is None:
            return None
        parts = []
        for d in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[d]
            if c == 0:
                continue
            if d == 0:
                parts.append(str(c))
            else:
                mono = "x" if d == 1 else f"x^{d}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)


def make_field(p: int, n: int = 1, modulus=None, primitive=None) -> FiniteField:
    """Build F_{p^n}; without a modulus the first irreducible is used."""
    return FiniteField(p, n, modulus, primitive)


def find_primitive_element(field: FiniteField) -> int:
    """First generator of F_q^* in ascending code order."""
    return field._search_generator()


def index_of(field: FiniteField, beta: int) -> int:
    return field.index_of(beta)

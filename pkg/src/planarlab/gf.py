"""Finite fields F_{p^n} of odd characteristic with table-driven arithmetic.

Elements are plain integer codes in [0, q): the code of an element with
coordinate vector (c_0, ..., c_{n-1}) in the power basis of the modulus
root is sum(c_i * p^i).  All arithmetic is exact; multiplication goes
through log/exp tables for a fixed generator whenever q is below the
table limit (default 2^20, override via PLANARLAB_TABLE_LIMIT), and falls
back to polynomial reduction otherwise.

Vectorized variants (vadd, vmul, ...) accept numpy integer arrays of
codes and are the workhorses of the O(q^2) oracles.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    EvenCharacteristic,
    NotPrime,
    OddDegree,
    ReduciblePolynomial,
    ZeroElement,
)

HARD_Q_CAP = 1 << 24


def _table_limit_default() -> int:
    env = os.environ.get("PLANARLAB_TABLE_LIMIT")
    return int(env) if env else 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- dense polynomial helpers over F_p (coefficient lists, low degree first) --

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - c * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(coeffs, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = [(code // p**i) % p for i in range(d)] + [1]
            if not _poly_mod(coeffs, div, p):
                return False
    return True


def minimal_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n whose non-leading coefficient vector,
    read as a base-p integer, is minimal."""
    if n == 1:
        return (0, 1)
    for code in range(p**n):
        coeffs = [(code // p**i) % p for i in range(n)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ReduciblePolynomial(f"no irreducible of degree {n} over F_{p}")  # pragma: no cover


@dataclass(eq=False)
class FieldCtx:
    """Immutable description of F_{p^n}.  Safe to share across workers."""

    p: int
    n: int
    q: int
    modulus: tuple[int, ...]
    generator: int
    exp: np.ndarray | None  # exp[e] = generator^e, length q-1
    log: np.ndarray | None  # log[x] for x != 0
    frob: np.ndarray        # frob[x] = x^p

    # -- scalar code arithmetic --

    def add(self, a: int, b: int) -> int:
        out, w = 0, 1
        p = self.p
        for _ in range(self.n):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        out, w = 0, 1
        p = self.p
        for _ in range(self.n):
            out += ((-a) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.exp is not None:
            return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])
        return self._mul_codes(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.exp is not None:
            return int(self.exp[(-int(self.log[a])) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        e %= self.q - 1
        if self.exp is not None:
            return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])
        out, base = 1, a
        while e:
            if e & 1:
                out = self._mul_codes(out, base)
            base = self._mul_codes(base, base)
            e >>= 1
        return out

    def _mul_codes(self, a: int, b: int) -> int:
        p = self.p
        pa = [(a // p**i) % p for i in range(self.n)]
        pb = [(b // p**i) % p for i in range(self.n)]
        prod = _poly_mod(_poly_mul(_poly_trim(pa), _poly_trim(pb), p), list(self.modulus), p)
        return sum(c * p**i for i, c in enumerate(prod))

    # -- Frobenius, trace, subgroup predicates --

    @cached_property
    def frob_pows(self) -> list[np.ndarray]:
        """frob_pows[j][x] = x^(p^j) for 0 <= j < n."""
        tables = [np.arange(self.q, dtype=np.int64)]
        for _ in range(1, self.n):
            tables.append(self.frob[tables[-1]])
        return tables

    def frobenius_pow(self, a: int, j: int) -> int:
        return int(self.frob_pows[j % self.n][a])

    def rel_trace(self, a: int) -> int:
        r = self._half_degree()
        return self.add(a, self.frobenius_pow(a, r))

    def in_subfield(self, a: int) -> bool:
        r = self._half_degree()
        return self.frobenius_pow(a, r) == a

    def in_G(self, a: int) -> bool:
        """Membership in the subgroup G = {x : x^(p^r - 1) = +-1}."""
        r = self._half_degree()
        if a == 0:
            raise ZeroElement("in_G undefined at 0")
        t = self.pow(a, self.p**r - 1)
        return t == 1 or t == self.neg(1)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("mult_order undefined at 0")
        if self.log is not None:
            la = int(self.log[a])
            from math import gcd

            return (self.q - 1) // gcd(self.q - 1, la)
        k, x = 1, a
        while x != 1:
            x = self._mul_codes(x, a)
            k += 1
        return k

    def _half_degree(self) -> int:
        if self.n % 2:
            raise OddDegree(f"n = {self.n} is odd, no quadratic subfield")
        return self.n // 2

    @cached_property
    def subfield_points(self) -> np.ndarray:
        """Sorted codes of the fixed points of Frobenius^(n/2)."""
        r = self._half_degree()
        xs = np.arange(self.q, dtype=np.int64)
        return xs[self.frob_pows[r] == xs]

    # -- vectorized code arithmetic --

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        p, w = self.p, 1
        for i in range(self.n):
            out += (((a // w) % p + (b // w) % p) % p) * w
            w *= p
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        xs = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q, dtype=np.int64)
        p, w = self.p, 1
        for i in range(self.n):
            out += ((-(xs // w)) % p) * w
            w *= p
        return out

    def vneg(self, a):
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.neg_table[np.asarray(b, dtype=np.int64)])

    def vmul(self, a, b):
        if self.exp is None:
            raise DegreeTooLarge("vectorized mul needs log/exp tables")
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.exp[(self.log[a[nz]] + self.log[b[nz]]) % (self.q - 1)]
        return out

    def vpow(self, a, e: int):
        """x^e elementwise (e a fixed integer exponent)."""
        if self.exp is None:
            raise DegreeTooLarge("vectorized pow needs log/exp tables")
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        if e == 0:
            out[:] = 1
            return out
        nz = a != 0
        out[nz] = self.exp[(self.log[a[nz]] * (e % (self.q - 1))) % (self.q - 1)]
        return out

    def vfrob_pow(self, a, j: int):
        return self.frob_pows[j % self.n][np.asarray(a, dtype=np.int64)]

    def monomial_table(self, e: int) -> np.ndarray:
        """Value table of x^e over the whole field."""
        out = self.vpow(np.arange(self.q, dtype=np.int64), e)
        if e == 0:
            out[0] = 1
        else:
            out[0] = 0
        return out

    # -- element <-> digit vectors (F_p coordinates) --

    @cached_property
    def digits(self) -> np.ndarray:
        """(q, n) array: row x holds the base-p digits of code x."""
        xs = np.arange(self.q, dtype=np.int64)
        return np.stack([(xs // self.p**i) % self.p for i in range(self.n)], axis=1)

    def code_of_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        weights = self.p ** np.arange(self.n, dtype=np.int64)
        return d @ weights

    # -- serialization --

    def descriptor(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldCtx(p={self.p}, n={self.n}, q={self.q})"


def _find_generator(F: FieldCtx) -> tuple[int, list[int]]:
    """Smallest-code generator of F*, plus its full power sequence."""
    q = F.q
    for g in range(2, q):
        powers = [1]
        x = g
        while x != 1:
            powers.append(x)
            x = F._mul_codes(x, g)
            if len(powers) > q:  # pragma: no cover - defensive
                raise RuntimeError("power loop ran away")
        if len(powers) == q - 1:
            return g, powers
    raise RuntimeError("no generator found")  # pragma: no cover


def field_new(p: int, n: int, modulus=None, table_limit: int | None = None) -> FieldCtx:
    """Construct F_{p^n}.

    With modulus=None the monic irreducible of degree n with minimal
    base-p coefficient code is selected, so construction is deterministic.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("planar functions need odd characteristic")
    if n < 1:
        raise DegreeTooLarge("extension degree must be >= 1")
    q = p**n
    if q > HARD_Q_CAP:
        raise DegreeTooLarge(f"q = {q} exceeds hard cap {HARD_Q_CAP}")
    if modulus is None:
        modulus = minimal_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ReduciblePolynomial("explicit modulus must be monic of degree n")
        if not _is_irreducible(list(modulus), p):
            raise ReduciblePolynomial(f"modulus {modulus} is reducible over F_{p}")

    F = FieldCtx(p=p, n=n, q=q, modulus=modulus, generator=0,
                 exp=None, log=None, frob=np.empty(0))

    limit = table_limit if table_limit is not None else _table_limit_default()
    if q <= limit:
        g, powers = _find_generator(F)
        exp = np.array(powers, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        F.generator = g
        F.exp = exp
        F.log = log
        frob = np.zeros(q, dtype=np.int64)
        frob[exp] = exp[(np.arange(q - 1, dtype=np.int64) * p) % (q - 1)]
        F.frob = frob
    else:
        frob = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            frob[x] = F.pow(x, p)
        F.frob = frob

    # construction-time sanity: Frobenius^n is the identity
    t = np.arange(q, dtype=np.int64)
    for _ in range(n):
        t = F.frob[t]
    assert np.array_equal(t, np.arange(q)), "Frobenius table is inconsistent"
    return F


def field_from_descriptor(d: dict) -> FieldCtx:
    return field_new(int(d["p"]), int(d["n"]), modulus=d.get("modulus"))

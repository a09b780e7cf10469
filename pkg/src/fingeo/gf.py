"""Finite field arithmetic for GF(p^e).

Elements are plain integers in ``[0, q)``.  The integer ``sum(a_i * p**i)``
encodes the polynomial ``sum(a_i * x**i)`` reduced modulo the field's
defining polynomial, so ``0`` and ``1`` are the additive and multiplicative
identities and the prime subfield is exactly ``range(p)``.

All scalar operations have vectorized counterparts (prefixed ``v``) that
accept numpy integer arrays; the geometry code relies on those.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

DEFAULT_MAX_ORDER = 2**16
TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


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


def primes_excluding(excluded: int, count: int, congruent_one_mod: int | None = None) -> list[int]:
    """Smallest ``count`` primes different from ``excluded``.

    With ``congruent_one_mod=m`` only primes with ``l % m == 1`` qualify.
    """
    out = []
    n = 2
    while len(out) < count:
        if is_prime(n) and n != excluded and (congruent_one_mod is None or n % congruent_one_mod == 1):
            out.append(n)
        n += 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, e)`` with ``q == p**e``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low degree first

def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..deg//2``."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``e`` minimal in low-degree-first order.

    Candidates ``c_0 + c_1 x + ... + x^e`` are visited in increasing order
    of the tuple ``(c_0, c_1, ..., c_{e-1})``.
    """
    if e == 1:
        return (0, 1)
    for low in product(range(p), repeat=e):
        coeffs = list(low)
        if coeffs[0] == 0:
            continue  # divisible by x
        poly = coeffs + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")  # unreachable


class Field:
    """GF(p^e) with a fixed defining polynomial and log/exp tables."""

    def __init__(self, p: int, e: int = 1, max_order: int = DEFAULT_MAX_ORDER):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"exponent must be positive, got {e}")
        q = p**e
        if q > max_order:
            raise FieldError(f"GF({p}^{e}) has order {q} > budget {max_order}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = smallest_irreducible(p, e)
        self._powers = p ** np.arange(e, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = (idx[:, None] // self._powers[None, :]) % p
        self._add_table = None
        self._mul_table = None
        self._build_tables()

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    # -- construction ------------------------------------------------------

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return (digits % self.p) @ self._powers

    def _mulx(self, digits: np.ndarray) -> np.ndarray:
        p, e = self.p, self.e
        top = digits[:, e - 1:e]
        shifted = np.concatenate([np.zeros_like(top), digits[:, : e - 1]], axis=1)
        low = np.array(self.modulus[:e], dtype=np.int64)
        return (shifted - top * low[None, :]) % p

    def _times_table(self, g: int) -> np.ndarray:
        """Index table of ``a -> g*a`` computed by polynomial arithmetic."""
        acc = np.zeros_like(self.digits)
        cur = self.digits.copy()
        for c in self.digits[g]:
            acc = (acc + c * cur) % self.p
            cur = self._mulx(cur)
        return self._encode(acc)

    def _build_tables(self):
        q = self.q
        self.exp = np.zeros(2 * (q - 1), dtype=np.int64)
        self.log = np.full(q, -1, dtype=np.int64)
        for g in range(2, q) if q > 2 else [1]:
            times = self._times_table(g)
            x = 1
            seq = []
            for _ in range(q - 1):
                seq.append(x)
                x = int(times[x])
                if x == 1:
                    break
            if len(seq) == q - 1:
                self.generator = g
                break
        else:
            self.generator = 1
            seq = [1]
        self.exp[: q - 1] = seq
        self.exp[q - 1:] = seq
        self.log[np.array(seq)] = np.arange(q - 1)
        tr = np.zeros(q, dtype=np.int64)
        frob = np.arange(q, dtype=np.int64)
        for _ in range(self.e):
            tr = self.vadd(tr, frob)
            frob = self.vpow(frob, self.p)
        self.trace_table = tr

    # -- scalar API ----------------------------------------------------------

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        return int(self.vadd(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.vsub(a, b))

    def neg(self, a: int) -> int:
        return int(self.vneg(a))

    def mul(self, a: int, b: int) -> int:
        return int(self.vmul(a, b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        return int(self.vpow(a, k))

    def trace(self, a: int) -> int:
        """Absolute trace onto the prime field, returned as an integer in ``[0, p)``."""
        return int(self.trace_table[a])

    def from_int(self, n: int) -> int:
        """Image of an integer under the canonical ring map Z -> GF(p) inside GF(q)."""
        return n % self.p

    def to_poly(self, a: int) -> list[int]:
        return [int(c) for c in self.digits[a]]

    def from_poly(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.e - len(coeffs))
        if len(coeffs) > self.e:
            raise FieldError("polynomial degree exceeds field degree")
        return int(self._encode(np.array(coeffs, dtype=np.int64)))

    def elements(self) -> range:
        return range(self.q)

    # -- vectorized API --------------------------------------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._encode(self.digits[a] + self.digits[b])

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self._encode(-self.digits[a])

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a, b]
        r = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        r = self.exp[(self.log[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def vtrace(self, a):
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def use_tables(self):
        """Precompute full addition/multiplication tables (small fields only)."""
        if self.q <= TABLE_LIMIT and self._add_table is None:
            i = np.arange(self.q)
            add = self.vadd(i[:, None], i[None, :])
            mul = self.vmul(i[:, None], i[None, :])
            self._add_table, self._mul_table = add, mul
        return self

    def dot(self, A, B):
        """Matrix product over GF(q): ``A`` is (m, k), ``B`` is (k, r)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.e == 1:
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for i in range(A.shape[1]):
            out = self.vadd(out, self.vmul(A[:, i:i + 1], B[i:i + 1, :]))
        return out


@lru_cache(maxsize=None)
def field_create(p: int, e: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> Field:
    """Return the (cached) field GF(p^e)."""
    return Field(p, e, max_order).use_tables()


def gf(q: int) -> Field:
    p, e = prime_power(q)
    return field_create(p, e)


_OPS = {
    "add": (2, Field.add),
    "sub": (2, Field.sub),
    "mul": (2, Field.mul),
    "inv": (1, Field.inv),
    "neg": (1, Field.neg),
}


def field_arith(fld: Field, op: str, *operands: int) -> int:
    """Dispatch a named field operation; ``pow`` takes ``(a, k)`` with integer ``k``."""
    if op == "pow":
        a, k = operands
        return fld.pow(fld.check(a), int(k))
    try:
        arity, fn = _OPS[op]
    except KeyError:
        raise FieldError(f"unknown field operation {op!r}") from None
    if len(operands) != arity:
        raise FieldError(f"{op} takes {arity} operand(s), got {len(operands)}")
    return fn(fld, *(fld.check(a) for a in operands))


def trace(fld: Field, x: int) -> int:
    return fld.trace(fld.check(x))


def row_reduce(fld: Field, rows) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q); returns (nonzero rows, pivot columns)."""
    A = np.array(rows, dtype=np.int64).reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), np.int64)
    m, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = fld.vmul(A[r], fld.inv(int(A[r, c])))
        for j in range(m):
            if j != r and A[j, c]:
                A[j] = fld.vsub(A[j], fld.vmul(A[r], A[j, c]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(fld: Field, rows) -> int:
    return len(row_reduce(fld, rows)[1])

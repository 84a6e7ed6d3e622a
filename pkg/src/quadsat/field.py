"""Arithmetic in GF(p^h) with elements encoded as integers.

An element ``a`` in ``[0, q)`` stands for the polynomial ``sum(a_i x^i)``
where ``a_i`` are the base-``p`` digits of ``a``.  Multiplication goes
through log/antilog tables built once per field; every operation accepts
plain ints or integer numpy arrays.
"""

from __future__ import annotations

from itertools import product

import numpy as np

MAX_DEGREE = 7
MAX_ORDER = 1 << 16
# full q x q add/mul tables below this order; digit arithmetic above
_FULL_TABLE_LIMIT = 1024


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


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, h)`` with ``q == p**h`` or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    h, m = 0, q
    while m % p == 0:
        m //= p
        h += 1
    return (p, h) if m == 1 else None


# --- plain polynomial arithmetic over GF(p), coefficient lists constant-first ---

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _is_irreducible(monic: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(monic) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(monic, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, h: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree h over GF(p).

    Ordering is by ``(c_{h-1}, ..., c_0)`` ascending; the result is returned
    constant term first with the leading 1 dropped.
    """
    if h == 1:
        return (0,)
    for high_first in product(range(p), repeat=h):
        low = list(reversed(high_first))
        if low[0] == 0:
            continue  # divisible by x
        if _is_irreducible(low + [1], p):
            return tuple(low)
    raise FieldError(f"no irreducible polynomial of degree {h} over GF({p})")


class FieldSpec:
    """The field GF(p^h) together with its lookup tables.

    Immutable after construction.  Elements are ints (``FieldElement`` in the
    docs is just such an int); 0 and 1 are the additive and multiplicative
    identities.
    """

    def __init__(self, p: int, h: int):
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise FieldError(f"characteristic {p} is not prime")
        if not 1 <= h <= MAX_DEGREE:
            raise FieldError(f"extension degree {h} outside 1..{MAX_DEGREE}")
        q = int(p) ** h
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.h, self.q = int(p), h, q
        self.modulus = smallest_irreducible(self.p, h)

        digits = np.zeros((q, h), dtype=np.int64)
        r = np.arange(q)
        for i in range(h):
            digits[:, i] = r % p
            r //= p
        self._digits = digits
        self._weights = self.p ** np.arange(h, dtype=np.int64)

        self.generator, self._exp, self._log = self._build_log_tables()
        if q <= _FULL_TABLE_LIMIT:
            a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
            self._add_tab = self._digit_add(a, b).astype(np.int32)
            self._mul_tab = self._log_mul(a, b).astype(np.int32)
        else:
            self._add_tab = self._mul_tab = None
        neg = (-digits) % p
        self._neg = (neg @ self._weights).astype(np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self._exp[(q - 1 - self._log[1:]) % (q - 1)]
        self._inv = inv

    # -- construction helpers --
    def _poly_mul_int(self, a: int, b: int) -> int:
        return poly_mul(self, a, b)

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        for g in (range(2, q) if q > 2 else [1]):
            exp = np.empty(2 * order, dtype=np.int64)
            x = 1
            seen_one_early = False
            for k in range(order):
                exp[k] = x
                x = self._poly_mul_int(x, g)
                if x == 1 and k < order - 1:
                    seen_one_early = True
                    break
            if seen_one_early:
                continue
            exp[order:] = exp[:order]
            log = np.zeros(q, dtype=np.int64)
            log[exp[:order]] = np.arange(order)
            return g, exp, log
        raise FieldError("no primitive element found")  # pragma: no cover

    def _digit_add(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._weights

    def _log_mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- arithmetic --
    def add(self, a, b):
        if self._add_tab is not None:
            r = self._add_tab[a, b]
        elif self.h == 1:
            r = (np.asarray(a) + b) % self.p
        else:
            r = self._digit_add(a, b)
        return int(r) if np.ndim(r) == 0 else r

    def neg(self, a):
        r = self._neg[a]
        return int(r) if np.ndim(r) == 0 else r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul_tab is not None:
            r = self._mul_tab[a, b]
        else:
            r = self._log_mul(a, b)
        return int(r) if np.ndim(r) == 0 else r

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        r = self._inv[a]
        return int(r) if np.ndim(r) == 0 else r

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def dot(self, A, B):
        """Row-wise inner product of two integer arrays along the last axis."""
        A = np.asarray(A)
        B = np.asarray(B)
        prod = self.mul(A, B)
        acc = prod[..., 0]
        for i in range(1, prod.shape[-1]):
            acc = self.add(acc, prod[..., i])
        return acc

    def elements(self) -> range:
        return range(self.q)

    def header(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"q {self.q} p {self.p} h {self.h} modulus {mod}"

    def __repr__(self) -> str:
        return f"FieldSpec({self.header()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.h, self.modulus) == (
            other.p,
            other.h,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.h, self.modulus))


def poly_mul(F: FieldSpec, a: int, b: int) -> int:
    """Schoolbook product of two encoded elements reduced by F.modulus.

    Independent of the log tables; used to build them and to cross-check them.
    """
    p, h = F.p, F.h
    da = [(a // p**i) % p for i in range(h)]
    db = [(b // p**i) % p for i in range(h)]
    prod = [0] * (2 * h - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    red = _poly_mod(prod, list(F.modulus) + [1], p)
    return sum(c * p**i for i, c in enumerate(red))


_FIELDS: dict[tuple[int, int], FieldSpec] = {}


def build_field(p: int, h: int = 1) -> FieldSpec:
    """Return GF(p^h) with the deterministic smallest irreducible modulus.

    Fields are cached; they are immutable so sharing is safe.
    """
    key = (p, h)
    if key not in _FIELDS:
        _FIELDS[key] = FieldSpec(p, h)
    return _FIELDS[key]


def field_of_order(q: int) -> FieldSpec:
    pp = prime_power(q)
    if pp is None:
        raise FieldError(f"{q} is not a prime power")
    return build_field(*pp)


def parse_header(line: str) -> FieldSpec:
    """Inverse of :meth:`FieldSpec.header`; checks the modulus matches."""
    tok = line.split()
    if len(tok) != 8 or tok[0::2] != ["q", "p", "h", "modulus"]:
        raise FieldError(f"malformed field line: {line!r}")
    q, p, h = int(tok[1]), int(tok[3]), int(tok[5])
    modulus = tuple(int(c) for c in tok[7].split(","))
    F = build_field(p, h)
    if F.q != q or F.modulus != modulus:
        raise FieldError(f"field line {line!r} does not match {F.header()!r}")
    return F

"""GF(2^t) arithmetic for 1 <= t <= 63.

Field elements are plain Python ints in [0, 2^t); an element only has
meaning relative to the `GF2Field` it belongs to.  Addition is XOR.
Multiplication is carry-less multiply followed by reduction modulo a
fixed irreducible polynomial; for t <= 16 exp/log tables over a
multiplicative generator are built once and used for mul/inv/pow.

The modulus for each degree is the lexicographically smallest
irreducible polynomial of that degree over GF(2) (constant term 1, all
lower-order candidates tested first), so every run of the library, on
any machine, works in the same concrete field.  For t <= 16 the choice
is re-verified at construction by exhaustive trial division.
"""

from __future__ import annotations

import numpy as np

# Lexicographically smallest irreducible polynomial per degree.  Bit i is
# the coefficient of x^i; bit t is always set.
IRREDUCIBLE_POLY = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
    17: 0x20009,
    18: 0x40009,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
    23: 0x800021,
    24: 0x100001B,
    25: 0x2000009,
    26: 0x400001B,
    27: 0x8000027,
    28: 0x10000003,
    29: 0x20000005,
    30: 0x40000003,
    31: 0x80000009,
    32: 0x10000008D,
    33: 0x20000004B,
    34: 0x40000001B,
    35: 0x800000005,
    36: 0x1000000035,
    37: 0x200000003F,
    38: 0x4000000063,
    39: 0x8000000011,
    40: 0x10000000039,
    41: 0x20000000009,
    42: 0x40000000027,
    43: 0x80000000059,
    44: 0x100000000021,
    45: 0x20000000001B,
    46: 0x400000000003,
    47: 0x800000000021,
    48: 0x100000000002D,
    49: 0x2000000000071,
    50: 0x400000000001D,
    51: 0x800000000004B,
    52: 0x10000000000009,
    53: 0x20000000000047,
    54: 0x4000000000007D,
    55: 0x80000000000047,
    56: 0x100000000000095,
    57: 0x200000000000011,
    58: 0x400000000000063,
    59: 0x80000000000007B,
    60: 0x1000000000000003,
    61: 0x2000000000000027,
    62: 0x4000000000000069,
    63: 0x8000000000000003,
}

_TABLE_MAX_T = 16  # exp/log tables above this would need >64k entries


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


def _clmul_mod(a: int, b: int, modulus: int, t: int) -> int:
    """Carry-less multiply of a and b, reduced mod the degree-t modulus."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> t) & 1:
            a ^= modulus
    return r


def _poly_divides(d: int, f: int) -> bool:
    """True if polynomial d divides f over GF(2)."""
    r = f
    dl = d.bit_length()
    while r.bit_length() >= dl and r:
        r ^= d << (r.bit_length() - dl)
    return r == 0


class GF2Field:
    """Arithmetic context for GF(2^t).

    Attributes:
        t: extension degree.
        q: field size 2^t.
        modulus: irreducible polynomial, bits 0..t.
    """

    def __init__(self, t: int, modulus: int | None = None):
        if not 1 <= t <= 63:
            raise ValueError(f"extension degree must be in [1, 63], got {t}")
        self.t = t
        self.q = 1 << t
        self.modulus = IRREDUCIBLE_POLY[t] if modulus is None else modulus
        if (self.modulus >> t) != 1:
            raise ValueError(f"modulus 0x{self.modulus:X} does not have degree {t}")
        if t <= _TABLE_MAX_T:
            self._check_irreducible_exhaustive()
            self._build_tables()
        else:
            self.exp = None
            self.log = None

    def _check_irreducible_exhaustive(self) -> None:
        # trial division by every polynomial of degree 1..t//2
        for d in range(2, 1 << (self.t // 2 + 1)):
            if d.bit_length() - 1 >= 1 and _poly_divides(d, self.modulus):
                raise ValueError(
                    f"modulus 0x{self.modulus:X} is divisible by 0x{d:X}, not irreducible"
                )

    def _build_tables(self) -> None:
        # exp/log over a multiplicative generator (the modulus need not be
        # primitive, so search for the smallest generator).
        q = self.q
        order_target = q - 1
        factors = _prime_factors(order_target)
        g = None
        for cand in range(2, q):
            if all(
                self._pow_nomemo(cand, order_target // p) != 1 for p in factors
            ):
                g = cand
                break
        if g is None:  # q == 2
            g = 1
        exp = np.zeros(2 * max(order_target, 1), dtype=np.uint16)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order_target):
            exp[i] = x
            log[x] = i
            x = _clmul_mod(x, g, self.modulus, self.t)
        exp[order_target: 2 * order_target] = exp[:order_target]
        self.generator = g
        self.exp = exp
        self.log = log

    def _pow_nomemo(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _clmul_mod(r, a, self.modulus, self.t)
            a = _clmul_mod(a, a, self.modulus, self.t)
            e >>= 1
        return r

    # -- element ops -------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldMismatchError(f"{a} is not an element of GF(2^{self.t})")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.exp is not None:
            return int(self.exp[self.log[a] + self.log[b]])
        return _clmul_mod(a, b, self.modulus, self.t)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.exp is not None:
            return int(self.exp[(self.q - 1) - self.log[a]])
        return self._euclid_inv(a)

    def _euclid_inv(self, a: int) -> int:
        # extended Euclid over GF(2)[x]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1 != 0:
            # divide r0 by r1
            q_poly = 0
            r = r0
            dl = r1.bit_length()
            while r and r.bit_length() >= dl:
                shift = r.bit_length() - dl
                q_poly ^= 1 << shift
                r ^= r1 << shift
            r0, r1 = r1, r
            # s_next = s0 + q_poly * s1 (carry-less, unreduced degree stays small)
            prod = 0
            qq = q_poly
            ss = s1
            while qq:
                if qq & 1:
                    prod ^= ss
                qq >>= 1
                ss <<= 1
            s0, s1 = s1, s0 ^ prod
        # r0 is the gcd, must be 1 for irreducible modulus
        return self._reduce(s0)

    def _reduce(self, a: int) -> int:
        t = self.t
        while a.bit_length() > t:
            a ^= self.modulus << (a.bit_length() - 1 - t)
        return a

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self.exp is not None:
            return int(self.exp[(self.log[a] * e) % (self.q - 1)])
        return self._pow_nomemo(a, e)

    # -- vectorized ops over numpy arrays of elements ------------------

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of two element arrays (t <= 16 only)."""
        if self.exp is None:
            raise NotImplementedError("vectorized ops need exp/log tables (t <= 16)")
        a = np.asarray(a)
        b = np.asarray(b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.uint16)
        nz = (a != 0) & (b != 0)
        la = self.log[np.broadcast_to(a, out.shape)[nz]]
        lb = self.log[np.broadcast_to(b, out.shape)[nz]]
        out[nz] = self.exp[la + lb]
        return out

    # -- binary representation ----------------------------------------

    def binary_encode(self, a: int) -> np.ndarray:
        """Little-endian bits of the element value, length t."""
        self.check(a)
        return (a >> np.arange(self.t)) & 1

    def binary_decode(self, bits) -> int:
        bits = np.asarray(bits)
        if bits.shape != (self.t,):
            raise ValueError(f"expected {self.t} bits, got shape {bits.shape}")
        return int((bits.astype(np.uint64) << np.arange(self.t, dtype=np.uint64)).sum())

    def decode_columns(self, bits: np.ndarray) -> np.ndarray:
        """Decode a (t, N) bit matrix column-by-column into N element values."""
        if bits.shape[0] != self.t:
            raise ValueError(f"expected {self.t}-bit rows, got {bits.shape[0]}")
        weights = (1 << np.arange(self.t, dtype=np.int64))[:, None]
        return (bits.astype(np.int64) * weights).sum(axis=0)

    def __repr__(self):
        return f"GF2Field(t={self.t}, q={self.q}, modulus=0x{self.modulus:X})"

    def __eq__(self, other):
        return (
            isinstance(other, GF2Field)
            and other.t == self.t
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.t, self.modulus))


def _prime_factors(n: int) -> set[int]:
    fs, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            fs.add(d)
            n //= d
        d += 1
    if n > 1:
        fs.add(n)
    return fs


_field_cache: dict[int, GF2Field] = {}


def make_field(t: int) -> GF2Field:
    """Field for GF(2^t) with the fixed modulus table; cached per degree."""
    if t not in _field_cache:
        _field_cache[t] = GF2Field(t)
    return _field_cache[t]


def field_for_q(q: int) -> GF2Field:
    """Field whose size is exactly q (q must be a power of two >= 2)."""
    t = q.bit_length() - 1
    if q != (1 << t) or q < 2:
        raise ValueError(f"q must be a power of two >= 2, got {q}")
    return make_field(t)

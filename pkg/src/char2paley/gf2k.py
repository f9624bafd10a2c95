"""Arithmetic in the binary fields GF(2^k).

Field elements are plain ints: the binary digits of an element are the
coordinates in the polynomial basis, least-significant bit = constant
term.  Zero and one are therefore literally 0 and 1, and addition is the
xor operator.  All other operations live on a FieldCtx object that holds
the extension degree k and the degree-k irreducible reduction polynomial
(also an int, with bit k set).

Default reduction polynomials (the numerically smallest irreducible
polynomial of each degree, verified at import against an exhaustive
factor search in the test suite):

    k=2  : z^2+z+1            0x7
    k=4  : z^4+z+1            0x13
    k=8  : z^8+z^4+z^3+z+1    0x11b
    k=12 : z^12+z^3+1         0x1009
    ...

For q <= 2^16 a FieldCtx lazily builds exp/log, trace, and inverse
tables; multiplication, division, and trace then cost one or two list
lookups, which is what the graph-construction inner loops run on.
Above that, operations fall back to shift-and-xor / extended-gcd code
paths that need no tables.

Elements are printed in lowercase hex (e.g. 0x13 is z^4+z+1) everywhere
the package does I/O.
"""

from __future__ import annotations

K_MAX = 20

# Numerically smallest irreducible polynomial of each degree over F_2.
DEFAULT_POLYS = {
    2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83,
    8: 0x11B, 9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009,
    13: 0x201B, 14: 0x4021, 15: 0x8003, 16: 0x1002B,
    17: 0x20009, 18: 0x40009, 19: 0x80027, 20: 0x100009,
}

_TABLE_LIMIT = 1 << 16  # build lookup tables only for q up to this


def poly_degree(p: int) -> int:
    """Degree of a bit-polynomial (-1 for the zero polynomial)."""
    return p.bit_length() - 1


def poly_mod(p: int, m: int) -> int:
    """Remainder of bit-polynomial p modulo nonzero m."""
    dm = poly_degree(m)
    dp = poly_degree(p)
    while dp >= dm:
        p ^= m << (dp - dm)
        dp = poly_degree(p)
    return p


def is_irreducible(p: int) -> bool:
    """Exhaustive trial division by every polynomial of degree <= deg(p)/2."""
    k = poly_degree(p)
    if k < 1:
        return False
    if k == 1:
        return True  # z and z+1
    if p & 1 == 0:
        return False  # divisible by z
    for d in range(1, k // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            if poly_mod(p, g) == 0:
                return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FieldCtx:
    """The field GF(2^k) for a fixed reduction polynomial.

    Immutable after construction (the lazy lookup tables are an
    internal cache and do not change observable behaviour), so a
    context can be shared freely across threads.
    """

    def __init__(self, k: int, poly: int | None = None):
        if not 2 <= k <= K_MAX:
            raise ValueError(f"k must be between 2 and {K_MAX}, got {k}")
        if poly is None:
            poly = DEFAULT_POLYS[k]
        if poly_degree(poly) != k:
            raise ValueError(
                f"reduction polynomial {poly:#x} has degree {poly_degree(poly)}, want {k}")
        if not is_irreducible(poly):
            raise ValueError(f"reduction polynomial {poly:#x} is reducible")
        self.k = k
        self.q = 1 << k
        self.poly = poly
        self._exp2: list[int] | None = None   # doubled exp table, length 2(q-1)
        self._log: list[int] | None = None
        self._trace: list[int] | None = None
        self._inv: list[int] | None = None
        self._as_rows: list[tuple[int, int, int]] | None = None
        self._generator: int | None = None

    def __repr__(self) -> str:
        return f"FieldCtx(k={self.k}, poly={self.poly:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.k, self.poly) == (other.k, other.poly)

    def __hash__(self) -> int:
        return hash((self.k, self.poly))

    def elements(self) -> range:
        return range(self.q)

    def check_elem(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x:#x} is not an element of GF(2^{self.k})")
        return x

    # -- arithmetic --------------------------------------------------

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def _mul_raw(self, x: int, y: int) -> int:
        """Carry-less multiply with interleaved reduction; no tables."""
        p = 0
        poly = self.poly
        top = self.q
        while y:
            if y & 1:
                p ^= x
            y >>= 1
            x <<= 1
            if x & top:
                x ^= poly
        return p

    def mul(self, x: int, y: int) -> int:
        if self.q <= _TABLE_LIMIT:
            if x == 0 or y == 0:
                return 0
            self._ensure_tables()
            return self._exp2[self._log[x] + self._log[y]]
        return self._mul_raw(x, y)

    def sqr(self, x: int) -> int:
        return self.mul(x, x)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.q <= _TABLE_LIMIT:
            self._ensure_tables()
            return self._inv[x]
        return self._inv_raw(x)

    def _inv_raw(self, x: int) -> int:
        """Inverse by the binary extended gcd on bit-polynomials."""
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        t1, t2 = 0, 1
        r1, r2 = self.poly, x
        r1l, r2l = self.k + 1, r2.bit_length()
        while r2:
            sh = r1l - r2l
            r1 ^= r2 << sh
            t1 ^= t2 << sh
            r1l = r1.bit_length()
            if r1 < r2:
                r1, r2, r1l, r2l = r2, r1, r2l, r1l
                t1, t2 = t2, t1
        return t1

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    # -- trace and the additive quadratic ----------------------------

    def trace(self, x: int) -> int:
        """tr(x) = x + x^2 + x^4 + ... + x^(q/2), an element of F_2."""
        if self.q <= _TABLE_LIMIT:
            self._ensure_tables()
            return self._trace[x]
        t = x
        s = x
        for _ in range(self.k - 1):
            s = self._mul_raw(s, s)
            t ^= s
        return t

    def trace_partition(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(T0, T1): the trace-0 and trace-1 halves of the field, ascending."""
        t0, t1 = [], []
        for x in range(self.q):
            (t1 if self.trace(x) else t0).append(x)
        return tuple(t0), tuple(t1)

    def solve_artin_schreier(self, c: int) -> tuple[int, int]:
        """The two solutions (b, b+1) of x^2 + x = c, smallest first.

        Solvable exactly when tr(c) = 0; raises ValueError otherwise.
        Solving uses the echelonized F_2-linear system for x -> x^2 + x,
        built once per context.
        """
        self.check_elem(c)
        if self._as_rows is None:
            self._build_as_rows()
        r = c
        x = 0
        for pivot, val, pre in self._as_rows:
            if r >> pivot & 1:
                r ^= val
                x ^= pre
        if r != 0:
            raise ValueError(f"x^2 + x = {c:#x} has no solution: tr({c:#x}) = 1")
        return (x, x ^ 1) if x < (x ^ 1) else (x ^ 1, x)

    def _build_as_rows(self) -> None:
        # Echelonize the images of the basis under x -> x^2 + x, keeping
        # preimages; kernel is {0, 1} so exactly k-1 pivots survive.
        basis: dict[int, tuple[int, int]] = {}  # pivot bit -> (value, preimage)
        for j in range(self.k):
            e = 1 << j
            val = self._mul_raw(e, e) ^ e
            pre = e
            while val:
                pivot = poly_degree(val)
                if pivot not in basis:
                    basis[pivot] = (val, pre)
                    break
                bval, bpre = basis[pivot]
                val ^= bval
                pre ^= bpre
        self._as_rows = sorted(
            ((p, v, pre) for p, (v, pre) in basis.items()), reverse=True)

    # -- multiplicative structure -------------------------------------

    def generator(self) -> int:
        """A fixed multiplicative generator of the nonzero elements."""
        if self._generator is None:
            n = self.q - 1
            primes = list(factorize(n))
            g = 2
            while True:
                if all(self._pow_raw(g, n // p) != 1 for p in primes):
                    break
                g += 1
            self._generator = g
        return self._generator

    def _pow_raw(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, x)
            x = self._mul_raw(x, x)
            e >>= 1
        return r

    def _ensure_tables(self) -> None:
        if self._exp2 is not None:
            return
        q1 = self.q - 1
        g = self.generator()
        exp2 = [0] * (2 * q1)
        log = [0] * self.q
        v = 1
        for i in range(q1):
            exp2[i] = v
            exp2[i + q1] = v
            log[v] = i
            v = self._mul_raw(v, g)
        if v != 1:
            raise AssertionError("generator order check failed")
        tr = [0] * self.q
        for x in range(self.q):
            t = x
            s = x
            for _ in range(self.k - 1):
                s = exp2[2 * log[s]] if s else 0
                t ^= s
            tr[x] = t
        inv = [0] * self.q
        for x in range(1, self.q):
            inv[x] = exp2[q1 - log[x]]
        self._exp2, self._log, self._trace, self._inv = exp2, log, tr, inv


def field_new(k: int, poly: int | None = None) -> FieldCtx:
    """Construct GF(2^k), with the default reduction polynomial if none given."""
    return FieldCtx(k, poly)

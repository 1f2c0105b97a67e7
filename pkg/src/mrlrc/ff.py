"""Exact arithmetic in prime fields and two-level towers GF(p) <= GF(q) <= GF(q^m).

Field elements are canonical integers: the polynomial
c_0 + c_1 X + ... + c_{e-1} X^{e-1} over GF(p) is encoded as the base-p
value c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  The same encoding is used in
every file format, so matrices are diffable and round-trip bit-exactly.

Every choice is deterministic, so two runs (or two machines) build
identical fields and identical matrices:

  * modulus: the monic irreducible polynomial of the required degree
    whose coefficient vector, read as a base-p integer, is smallest;
  * primitive element: the smallest element (in integer encoding) of
    multiplicative order p^e - 1;
  * subfield embedding: the base-field generator X goes to the smallest
    root of the base modulus inside the top field.

Fields up to order 2^40 work through generic polynomial arithmetic.
Fields of order at most 2^16 additionally get exp/log/Zech tables, which
is what makes the exhaustive verification sweeps fast.  Irreducibility is
tested by trial division against all monic polynomials of degree <= e/2;
this is fine for the desk-scale degrees (e <= 12) this library targets.
"""

from __future__ import annotations

import functools
import itertools

ORDER_LIMIT = 1 << 40
LOG_TABLE_LIMIT = 1 << 16


class NotPrime(ValueError):
    """Raised when a composite number is passed as a field characteristic."""


class DegreeOverflow(ValueError):
    """Raised when the requested field order exceeds ORDER_LIMIT."""


class DivisionByZero(ZeroDivisionError):
    """Raised on inversion of the zero element."""


class ZeroNorm(ValueError):
    """Raised when the relative norm of zero is requested."""


class TooManyBlocks(ValueError):
    """Raised when more norm-distinct units are requested than exist (q - 1)."""


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^40 order limit."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
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
    """Distinct prime factors by trial division (n <= 2^40, so sqrt(n) <= 2^20)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with p prime and p^e == n, or None."""
    if n < 2:
        return None
    fs = prime_factors(n)
    if len(fs) != 1:
        return None
    p = fs[0]
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def next_prime_power(n: int) -> int:
    """Smallest prime power >= n."""
    v = max(n, 2)
    while is_prime_power(v) is None:
        v += 1
    return v


# ---------------------------------------------------------------------------
# polynomials over GF(p): tuples of ints in [0, p), low degree first, trimmed


def _trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(tuple(out))


def _poly_mod(a: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _trim(tuple(a))


def _monic_polys(p: int, deg: int):
    """All monic polynomials of the given degree, in canonical integer order."""
    for lower in itertools.product(range(p), repeat=deg):
        yield tuple(reversed(lower)) + (1,)


def is_irreducible(cofs: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(cofs) - 1
    if deg < 1 or cofs[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _poly_mod(cofs, div, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """The monic irreducible of degree e with the smallest integer encoding."""
    for cand in _monic_polys(p, e):
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {e} over GF({p})")


# ---------------------------------------------------------------------------
# single field context


class FieldCtx:
    """The field GF(p^e) with the canonical (lexicographically least) modulus.

    Elements are ints in [0, p^e).  All operations are pure; instances are
    immutable after construction and safe to share across threads.
    """

    __slots__ = (
        "p", "e", "order", "modulus",
        "_exp", "_log", "_zech", "_neg", "_primitive",
    )

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be positive, got {e}")
        if p ** e > ORDER_LIMIT:
            raise DegreeOverflow(f"p^e = {p}^{e} exceeds the {ORDER_LIMIT} limit")
        self.p = p
        self.e = e
        self.order = p ** e
        self.modulus = least_irreducible(p, e) if modulus is None else modulus
        if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        self._exp = self._log = self._zech = self._neg = None
        self._primitive = None
        if self.order <= LOG_TABLE_LIMIT:
            self._build_tables()

    # -- representation helpers

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digits of a, low degree first, padded to length e."""
        p = self.p
        out = []
        for _ in range(self.e):
            a, c = divmod(a, p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cofs) -> int:
        v = 0
        for c in reversed(tuple(cofs)):
            v = v * self.p + c % self.p
        return v

    def elements(self) -> range:
        return range(self.order)

    def is_element(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    # -- generic arithmetic (works up to ORDER_LIMIT)

    def _g_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, shift = 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * shift
            shift *= p
        return out

    def _g_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out, shift = 0, 1
        while a:
            a, c = divmod(a, p)
            out += (-c % p) * shift
            shift *= p
        return out

    def _g_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        return self.from_coeffs(_poly_mod(prod, self.modulus, self.p) + (0,) * self.e)

    # -- public arithmetic

    def add(self, a: int, b: int) -> int:
        if self._zech is None:
            return self._g_add(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        log, om1 = self._log, self.order - 1
        la, lb = log[a], log[b]
        d = lb - la
        if d < 0:
            d += om1
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self._neg is not None:
            return self._neg[a]
        return self._g_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._g_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """a^n by square-and-multiply; n must be a non-negative integer."""
        if n < 0:
            raise ValueError("exponent must be non-negative")
        if a == 0:
            return 1 if n == 0 else 0
        if self._exp is not None:
            return self._exp[self._log[a] * n % (self.order - 1)]
        result, base = 1, a
        while n:
            if n & 1:
                result = self._g_mul(result, base)
            base = self._g_mul(base, base)
            n >>= 1
        return result

    # -- multiplicative structure

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.order - 1
        for f in prime_factors(n) if n > 1 else []:
            while n % f == 0 and self.pow(a, n // f) == 1:
                n //= f
        return n

    @property
    def primitive(self) -> int:
        """Smallest element (integer encoding) of multiplicative order p^e - 1."""
        if self._primitive is None:
            target = self.order - 1
            for a in range(1, self.order):
                if self.mult_order(a) == target:
                    self._primitive = a
                    break
        return self._primitive

    def _build_tables(self):
        # exp is doubled so mul needs no modular reduction of log sums
        om1 = self.order - 1
        gamma = self.primitive
        exp = [1] * (2 * om1)
        log = [0] * self.order
        x = 1
        for i in range(om1):
            exp[i] = exp[i + om1] = x
            log[x] = i
            x = self._g_mul(x, gamma)
        if x != 1:
            raise AssertionError("primitive element has wrong order")
        # Zech logarithms: zech[i] = log(1 + gamma^i), -1 when 1 + gamma^i = 0
        zech = [0] * om1
        for i in range(om1):
            y = self._g_add(1, exp[i])
            zech[i] = log[y] if y else -1
        self._exp, self._log, self._zech = exp, log, zech
        if self.p != 2:
            self._neg = [self._g_neg(a) for a in range(self.order)]

    # -- identity

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"


@functools.lru_cache(maxsize=None)
def field_ctx(p: int, e: int = 1) -> FieldCtx:
    """Shared, cached context for GF(p^e) with the canonical modulus."""
    return FieldCtx(p, e)


# ---------------------------------------------------------------------------
# tower GF(p) <= GF(q) <= GF(q^m)


class FieldTower:
    """The pair GF(q) <= GF(q^m), q = p^s, both realized over GF(p).

    The top field is GF(p)[X]/(M) for the canonical modulus M of degree s*m.
    The base field GF(q) has its own canonical modulus of degree s and is
    embedded by sending its generator to the smallest root of that modulus
    inside the top field.  Immutable and safe to share across threads.
    """

    __slots__ = (
        "base", "top", "s", "m", "q",
        "_root_powers", "_embed_cache", "_embed_inv",
        "_coord_solver", "_coords_cache",
    )

    def __init__(self, p: int, s: int, m: int):
        if s < 1 or m < 1:
            raise ValueError("extension degrees must be positive")
        self.base = field_ctx(p, s)
        self.top = field_ctx(p, s * m)
        self.s = s
        self.m = m
        self.q = self.base.order
        if s == 1:
            root = 0
        elif m == 1:
            root = self.top.p  # base modulus = top modulus, X is a root
        else:
            root = self._least_subfield_root()
        top = self.top
        powers = [1]
        for _ in range(s - 1):
            powers.append(top.mul(powers[-1], root))
        self._root_powers = tuple(powers)
        self._embed_cache: dict[int, int] = {}
        self._embed_inv: dict[int, int] | None = None
        self._coord_solver = None
        self._coords_cache: dict[int, tuple[int, ...]] = {}

    # -- embedding

    def _least_subfield_root(self) -> int:
        """Smallest root of the base modulus in the top field."""
        base_mod = self.base.modulus
        top = self.top
        if top.order <= LOG_TABLE_LIMIT:
            candidates = top.elements()
        else:
            candidates = sorted(self._subfield_elements())
        for x in candidates:
            # Horner; base-modulus coefficients are GF(p) scalars, which
            # encode identically in the top field.
            acc = 0
            for c in reversed(base_mod):
                acc = top.add(top.mul(acc, x), c)
            if acc == 0:
                return x
        raise AssertionError("base modulus has no root in the top field")

    def _subfield_elements(self) -> list[int]:
        """All elements fixed by x -> x^q, via the Frobenius fixed space over GF(p)."""
        top, p, n = self.top, self.top.p, self.top.e
        # columns of (Frob^s - I) on the GF(p)-basis 1, X, ..., X^(n-1)
        cols = []
        for j in range(n):
            img = top.pow(p ** j if j else 1, self.q)
            diff = top.sub(img, p ** j if j else 1)
            cols.append(top.coeffs(diff))
        basis = _gfp_kernel_basis(cols, p, n)
        out = []
        for combo in itertools.product(range(p), repeat=len(basis)):
            v = [0] * n
            for c, vec in zip(combo, basis):
                if c:
                    for i in range(n):
                        v[i] = (v[i] + c * vec[i]) % p
            out.append(top.from_coeffs(v))
        return out

    def embed(self, a: int) -> int:
        """Field homomorphism GF(q) -> GF(q^m)."""
        if self.s == 1 or self.top is self.base:
            return a
        cached = self._embed_cache.get(a)
        if cached is not None:
            return cached
        top = self.top
        out = 0
        for c, rp in zip(self.base.coeffs(a), self._root_powers):
            if c:
                out = top.add(out, top.mul(c, rp))
        self._embed_cache[a] = out
        return out

    def embed_inv(self, x: int) -> int:
        """Inverse of embed; raises ValueError if x is not in the subfield."""
        if self.s == 1 or self.top is self.base:
            if not self.base.is_element(x):
                raise ValueError(f"{x} not in the base field")
            return x
        if self._embed_inv is None:
            self._embed_inv = {self.embed(a): a for a in self.base.elements()}
        try:
            return self._embed_inv[x]
        except KeyError:
            raise ValueError(f"{x} is not in the embedded subfield") from None

    # -- tower operations

    def frobenius(self, x: int, i: int = 1) -> int:
        """x^(q^i), the i-th power of the relative Frobenius."""
        if i < 0:
            raise ValueError("Frobenius power must be non-negative")
        if x == 0 or i == 0:
            return x
        om1 = self.top.order - 1
        return self.top.pow(x, pow(self.q, i, om1))

    def rel_norm(self, x: int) -> int:
        """Norm from GF(q^m) to GF(q): x^((q^m-1)/(q-1)), as a base-field element."""
        if x == 0:
            raise ZeroNorm("norm of zero is excluded")
        exp = (self.top.order - 1) // (self.q - 1) if self.q > 1 else 1
        return self.embed_inv(self.top.pow(x, exp))

    def distinct_norm_elements(self, g: int) -> tuple[int, ...]:
        """g top-field units with pairwise distinct relative norms: 1, y, ..., y^(g-1)."""
        if g < 1:
            raise ValueError("need at least one block")
        if g > self.q - 1:
            raise TooManyBlocks(f"g = {g} exceeds q - 1 = {self.q - 1} norm values")
        gamma = self.top.primitive
        out = [1]
        for _ in range(g - 1):
            out.append(self.top.mul(out[-1], gamma))
        norms = {self.rel_norm(a) for a in out}
        if len(norms) != g:
            raise AssertionError("norms of primitive powers collided")
        return tuple(out)

    # -- GF(q)-linear structure of the top field

    @property
    def polynomial_basis(self) -> tuple[int, ...]:
        """The canonical GF(q)-basis 1, X, X^2, ..., X^(m-1) of GF(q^m)."""
        t = self.top
        out = [1]
        x = self.top.p if self.top.e > 1 else 1
        for _ in range(self.m - 1):
            out.append(t.mul(out[-1], x))
        return tuple(out)

    def base_coords(self, y: int) -> tuple[int, ...]:
        """Coordinates of y over the canonical GF(q)-basis, as base-field elements."""
        cached = self._coords_cache.get(y)
        if cached is not None:
            return cached
        if self.m == 1:
            out = (self.embed_inv(y),)
            self._coords_cache[y] = out
            return out
        if self._coord_solver is None:
            self._build_coord_solver()
        p, n = self.top.p, self.top.e
        digits = self.top.coeffs(y)
        sol = [0] * n
        for i, row in enumerate(self._coord_solver):
            acc = 0
            for d, c in zip(digits, row):
                acc += d * c
            sol[i] = acc % p
        out = tuple(
            self.base.from_coeffs(sol[j * self.s:(j + 1) * self.s])
            for j in range(self.m)
        )
        self._coords_cache[y] = out
        return out

    def from_base_coords(self, cofs) -> int:
        """Inverse of base_coords: sum of embed(c_j) * X^j."""
        t = self.top
        out = 0
        for c, b in zip(cofs, self.polynomial_basis):
            if c:
                out = t.add(out, t.mul(self.embed(c), b))
        return out

    def _build_coord_solver(self):
        # invert the GF(p)-matrix taking (c_0, ..., c_{m-1}) in GF(q)^m to
        # sum embed(c_j) X^j; column (j, u) is embed(B^u) X^j where B is the
        # base-field generator
        top, p, n = self.top, self.top.p, self.top.e
        basis = self.polynomial_basis
        cols = []
        for j in range(self.m):
            for u in range(self.s):
                elt = top.mul(self.embed(self.base.p ** u if u else 1), basis[j])
                cols.append(top.coeffs(elt))
        self._coord_solver = _gfp_invert_columns(cols, p, n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldTower)
            and self.base == other.base
            and self.top == other.top
        )

    def __hash__(self) -> int:
        return hash((self.base, self.top))

    def __repr__(self) -> str:
        return f"Tower({self.base!r} <= {self.top!r})"


@functools.lru_cache(maxsize=None)
def make_tower(p: int, s: int, m: int) -> FieldTower:
    """Cached tower GF(p^s) <= GF(p^(s*m)) with all canonical choices."""
    return FieldTower(p, s, m)


# ---------------------------------------------------------------------------
# tiny GF(p) elimination, local to this module to keep layering one-way


def _gfp_kernel_basis(cols, p: int, n: int) -> list[list[int]]:
    """Kernel basis of the n x len(cols) matrix whose columns are given."""
    ncols = len(cols)
    rows = [[cols[j][i] for j in range(ncols)] for i in range(n)]
    pivots, free = [], []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            free.append(c)
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-rows[i][fc]) % p
        basis.append(vec)
    return basis


def _gfp_invert_columns(cols, p: int, n: int) -> list[list[int]]:
    """Inverse of the n x n matrix whose columns are given, as a row list."""
    if len(cols) != n:
        raise ValueError("matrix must be square")
    aug = [[cols[j][i] for j in range(n)] + [int(i == k) for k in range(n)]
           for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c]), None)
        if pr is None:
            raise ValueError("matrix is singular")
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = pow(aug[c][c], p - 2, p)
        aug[c] = [(v * inv) % p for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]

"""Array engine behind the Temperley-Lieb module.

Diagrams of a profile (nb, nt) are stored as partner arrays in layer indexing
(bottom points 0..nb-1, then top points nb..nb+nt-1, both left to right).  The
canonical key of a diagram is the bitmask of "opener" positions when the
boundary is read cyclically: bottom left to right, then top right to left.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numba
import numpy as np

from .arith import GF, is_prime


# ----------------------------------------------------------------- layout

@lru_cache(maxsize=None)
def cyclic_maps(nb: int, nt: int):
    """(layer -> cyclic position, cyclic position -> layer) as int64 arrays."""
    n = nb + nt
    l2c = np.empty(n, dtype=np.int64)
    for i in range(nb):
        l2c[i] = i
    for j in range(nt):
        l2c[nb + j] = nb + (nt - 1 - j)
    c2l = np.empty(n, dtype=np.int64)
    c2l[l2c] = np.arange(n)
    return l2c, c2l


@numba.njit(cache=True)
def _codes_from_partners(P, l2c):
    m, n = P.shape
    out = np.zeros(m, dtype=np.int64)
    for r in range(m):
        code = 0
        for l in range(n):
            c = l2c[l]
            if l2c[P[r, l]] > c:
                code |= np.int64(1) << c
        out[r] = code
    return out


def codes_from_partners(P: np.ndarray, nb: int, nt: int) -> np.ndarray:
    l2c, _ = cyclic_maps(nb, nt)
    return _codes_from_partners(np.ascontiguousarray(P, dtype=np.int8), l2c)


@numba.njit(cache=True)
def _partners_from_codes(codes, n, c2l):
    m = codes.shape[0]
    P = np.empty((m, n), dtype=np.int8)
    stack = np.empty(n, dtype=np.int64)
    for r in range(m):
        code = codes[r]
        top = 0
        for c in range(n):
            if (code >> c) & 1:
                stack[top] = c
                top += 1
            else:
                top -= 1
                o = stack[top]
                a = c2l[o]
                b = c2l[c]
                P[r, a] = b
                P[r, b] = a
    return P


def partners_from_codes(codes: np.ndarray, nb: int, nt: int) -> np.ndarray:
    _, c2l = cyclic_maps(nb, nt)
    return _partners_from_codes(np.asarray(codes, dtype=np.int64), nb + nt, c2l)


def _dyck_codes(n: int) -> np.ndarray:
    codes = np.zeros(1, dtype=np.int64)
    depth = np.zeros(1, dtype=np.int64)
    for t in range(n):
        remaining = n - t
        can_open = depth + 1 <= remaining - 1
        can_close = depth > 0
        oc = codes[can_open] | (np.int64(1) << t)
        od = depth[can_open] + 1
        cc = codes[can_close]
        cd = depth[can_close] - 1
        codes = np.concatenate([oc, cc])
        depth = np.concatenate([od, cd])
    return np.sort(codes)


class Basis:
    """All crossingless matchings of one boundary profile."""

    def __init__(self, nb: int, nt: int):
        self.nb, self.nt = nb, nt
        self.codes = _dyck_codes(nb + nt)
        self.partners = partners_from_codes(self.codes, nb, nt)

    def __len__(self):
        return len(self.codes)

    def index(self, codes: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.codes, codes)
        return idx

    def partners_of(self, codes: np.ndarray) -> np.ndarray:
        return self.partners[self.index(codes)]


@lru_cache(maxsize=32)
def basis(nb: int, nt: int) -> Basis:
    return Basis(nb, nt)


# ------------------------------------------------------------ composition

@numba.njit(cache=True)
def _compose(PX, ix, PY, iy, a, b, c, l2c):
    """Stack PY[iy[r]] (b -> c) on top of PX[ix[r]] (a -> b)."""
    m = ix.shape[0]
    n = a + c
    codes = np.zeros(m, dtype=np.int64)
    loops = np.zeros(m, dtype=np.int32)
    res = np.empty(n, dtype=np.int64)
    vis = np.empty(b, dtype=np.uint8)
    for r in range(m):
        px = PX[ix[r]]
        py = PY[iy[r]]
        for k in range(n):
            res[k] = -1
        for k in range(b):
            vis[k] = 0
        for start in range(n):
            if res[start] >= 0:
                continue
            if start < a:
                in_x = True
                pt = start
            else:
                in_x = False
                pt = b + (start - a)
            end = -1
            while True:
                if in_x:
                    q = px[pt]
                    if q < a:
                        end = q
                        break
                    mm = q - a
                    vis[mm] = 1
                    in_x = False
                    pt = mm
                else:
                    q = py[pt]
                    if q >= b:
                        end = a + (q - b)
                        break
                    vis[q] = 1
                    in_x = True
                    pt = a + q
            res[start] = end
            res[end] = start
        nl = 0
        for k in range(b):
            if vis[k]:
                continue
            nl += 1
            mm = k
            while True:
                vis[mm] = 1
                q = py[mm]
                vis[q] = 1
                mm = px[a + q] - a
                if mm == k:
                    break
        code = 0
        for l in range(n):
            cc = l2c[l]
            if l2c[res[l]] > cc:
                code |= np.int64(1) << cc
        codes[r] = code
        loops[r] = nl
    return codes, loops


def compose(PX, ix, PY, iy, a: int, b: int, c: int):
    l2c, _ = cyclic_maps(a, c)
    return _compose(np.ascontiguousarray(PX, dtype=np.int8), np.asarray(ix, dtype=np.int64),
                    np.ascontiguousarray(PY, dtype=np.int8), np.asarray(iy, dtype=np.int64),
                    a, b, c, l2c)


@numba.njit(cache=True)
def _partial_trace(P, n, k, l2c):
    """Close the last k strands of square diagrams on n strands."""
    m = P.shape[0]
    r = n - k
    codes = np.zeros(m, dtype=np.int64)
    loops = np.zeros(m, dtype=np.int32)
    res = np.empty(2 * r, dtype=np.int64)
    vis = np.empty(2 * n, dtype=np.uint8)
    for row in range(m):
        p = P[row]
        for i in range(2 * n):
            vis[i] = 0
        for i in range(2 * r):
            res[i] = -1
        for s in range(2 * r):
            if res[s] >= 0:
                continue
            # open points: bottom 0..r-1 (layer i), top 0..r-1 (layer n+i)
            pt = s if s < r else n + (s - r)
            vis[pt] = 1
            while True:
                q = p[pt]
                vis[q] = 1
                if q < r:
                    e = q
                    break
                if n <= q < n + r:
                    e = r + (q - n)
                    break
                # closed point: bottom j <-> top j
                if q < n:
                    pt = n + q
                else:
                    pt = q - n
                vis[pt] = 1
            res[s] = e
            res[e] = s
        nl = 0
        for j in range(r, n):
            if vis[j]:
                continue
            nl += 1
            pt = j
            while True:
                vis[pt] = 1
                q = p[pt]
                vis[q] = 1
                pt = n + q if q < n else q - n
                if vis[pt]:
                    break
        code = 0
        for l in range(2 * r):
            cc = l2c[l]
            if l2c[res[l]] > cc:
                code |= np.int64(1) << cc
        codes[row] = code
        loops[row] = nl
    return codes, loops


def partial_trace(P, n: int, k: int):
    l2c, _ = cyclic_maps(n - k, n - k)
    return _partial_trace(np.ascontiguousarray(P, dtype=np.int8), n, k, l2c)


# ------------------------------------------------------------------ rings

def _primes_below(bound: int, count: int):
    out = []
    q = bound - 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q -= 1
    return tuple(out)


CHAR0_PRIMES = _primes_below(2 ** 31, 5)
SERIES_PRIMES = _primes_below(2 ** 23, 12)


def rational_reconstruct(a: int, m: int):
    """Smallest-height rational congruent to a mod m, or None."""
    a %= m
    bound = int((m // 2) ** 0.5)
    while bound * bound > m // 2:
        bound -= 1
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def crt(residues, moduli):
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        r = int(r)
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    return x, m


class ModRing:
    """δ = 0 coefficients as residues modulo one or more primes, shape (M, K)."""

    generic = False

    def __init__(self, characteristic: int):
        self.characteristic = characteristic
        if characteristic == 0:
            self.moduli = np.array(CHAR0_PRIMES, dtype=np.int64)
        else:
            self.moduli = np.array([characteristic], dtype=np.int64)
        self.width = len(self.moduli)

    def __eq__(self, other):
        return isinstance(other, ModRing) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("mod", self.characteristic))

    def zeros(self, m: int):
        return np.zeros((m, self.width), dtype=np.int64)

    def ones(self, m: int):
        return np.ones((m, self.width), dtype=np.int64)

    def mul(self, a, b):
        return (a * b) % self.moduli

    def add(self, a, b):
        return (a + b) % self.moduli

    def neg(self, a):
        return (-a) % self.moduli

    def reduce(self, a):
        return a % self.moduli

    def loop_factor(self, coeffs, loops):
        out = coeffs.copy()
        out[loops > 0] = 0
        return out

    def nonzero(self, a):
        return np.any(a != 0, axis=1)

    def concat(self, parts):
        return np.concatenate(parts, axis=0)

    def take(self, a, idx):
        return a[idx]

    def segment_sum(self, a, starts):
        return np.add.reduceat(a, starts, axis=0) % self.moduli

    def from_scalar(self, x):
        if isinstance(x, GF):
            if self.characteristic != x.p:
                raise ValueError("scalar from a different prime field")
            return np.array([x.v], dtype=np.int64)
        if isinstance(x, np.ndarray):
            return x
        x = Fraction(x)
        out = []
        for p in self.moduli.tolist():
            if x.denominator % p == 0:
                from .errors import NonIntegralAtP
                raise NonIntegralAtP(f"{x} is not integral at {p}")
            out.append(x.numerator * pow(x.denominator, -1, p) % p)
        return np.array(out, dtype=np.int64)

    def from_scalars(self, xs):
        """Vectorized conversion through the distinct values."""
        xs = list(xs)
        cache = {}
        rows = np.empty((len(xs), self.width), dtype=np.int64)
        for i, x in enumerate(xs):
            r = cache.get(x)
            if r is None:
                r = cache[x] = self.from_scalar(x)
            rows[i] = r
        return rows

    def to_scalars(self, a):
        if len(a) == 0:
            return []
        uniq, inv = np.unique(a, axis=0, return_inverse=True)
        vals = [self._to_scalar(row) for row in uniq]
        return [vals[i] for i in np.asarray(inv).reshape(-1)]

    def _to_scalar(self, row):
        if self.characteristic:
            return GF(int(row[0]), self.characteristic)
        mods = self.moduli.tolist()
        x, m = crt(row[:-1], mods[:-1])
        q = rational_reconstruct(x, m)
        if q is None or Fraction(q.numerator % mods[-1]) != Fraction(
                (int(row[-1]) * q.denominator) % mods[-1]):
            raise ArithmeticError("rational reconstruction failed; coefficient too large")
        return q

    def scalar_delta_zero(self) -> bool:
        return True


class ObjectRing:
    """Coefficients as Python scalars (used for exact ℚ(δ))."""

    generic = True

    def __init__(self, delta, one):
        self.delta = delta
        self.one = one
        self.characteristic = 0

    def __eq__(self, other):
        return isinstance(other, ObjectRing) and other.delta == self.delta

    def __hash__(self):
        return hash(("obj", str(self.delta)))

    def zeros(self, m):
        return np.array([self.one * 0] * m + [None], dtype=object)[:-1]

    def ones(self, m):
        return np.array([self.one] * m + [None], dtype=object)[:-1]

    def _arr(self, xs):
        arr = np.empty(len(xs), dtype=object)
        for i, x in enumerate(xs):
            arr[i] = x
        return arr

    def mul(self, a, b):
        return self._arr([x * y for x, y in zip(a, b)])

    def add(self, a, b):
        return self._arr([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self._arr([-x for x in a])

    def reduce(self, a):
        return a

    def loop_factor(self, coeffs, loops):
        pw = {}
        out = []
        for x, l in zip(coeffs, loops.tolist()):
            if l:
                if l not in pw:
                    pw[l] = self.delta ** l
                x = x * pw[l]
            out.append(x)
        return self._arr(out)

    def nonzero(self, a):
        return np.array([bool(x) for x in a], dtype=bool)

    def concat(self, parts):
        return self._arr([x for p in parts for x in p])

    def take(self, a, idx):
        return self._arr([a[i] for i in np.asarray(idx).tolist()])

    def segment_sum(self, a, starts):
        bounds = list(starts.tolist()) + [len(a)]
        out = []
        for s, e in zip(bounds[:-1], bounds[1:]):
            tot = a[s]
            for j in range(s + 1, e):
                tot = tot + a[j]
            out.append(tot)
        return self._arr(out)

    def from_scalar(self, x):
        return self.one * x

    def from_scalars(self, xs):
        return self._arr([self.one * x for x in xs])

    def to_scalars(self, a):
        return list(a)

    def scalar_delta_zero(self) -> bool:
        return not self.delta


class SeriesRing:
    """Truncated Laurent series in δ over GF(p), exponents in [-offset, length-offset)."""

    generic = True

    def __init__(self, p: int, length: int, offset: int):
        self.p, self.L, self.o = p, length, offset
        self.characteristic = p

    def zeros(self, m):
        return np.zeros((m, self.L), dtype=np.int64)

    def ones(self, m):
        z = self.zeros(m)
        z[:, self.o] = 1
        return z

    def mul(self, a, b):
        if b.shape[0] == 1:
            return self.mul_const(a, b[0])
        if a.shape[0] == 1:
            return self.mul_const(b, a[0])
        out = np.zeros_like(a)
        L, o, p = self.L, self.o, self.p
        for i in range(L):
            ai = a[:, i:i + 1]
            # exponent (i-o)+(j-o) -> index i+j-o
            jlo = max(0, o - i)
            jhi = min(L, L + o - i)
            if jlo >= jhi:
                continue
            out[:, i + jlo - o:i + jhi - o] += (ai * b[:, jlo:jhi]) % p
        return out % p

    def toeplitz(self, s):
        L, o = self.L, self.o
        T = np.zeros((L, L), dtype=np.float64)
        for i in range(L):
            for k in range(L):
                j = k - i + o
                if 0 <= j < L:
                    T[i, k] = s[j]
        return T

    def mul_const(self, a, s):
        T = self.toeplitz(s)
        out = a.astype(np.float64) @ T
        return np.fmod(out, self.p).astype(np.int64)

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def reduce(self, a):
        return a % self.p

    def loop_factor(self, coeffs, loops):
        out = np.zeros_like(coeffs)
        for l in np.unique(loops).tolist():
            sel = loops == l
            if l == 0:
                out[sel] = coeffs[sel]
            elif l < self.L:
                out[sel, l:] = coeffs[sel, :self.L - l]
        return out

    def nonzero(self, a):
        return np.any(a != 0, axis=1)

    def concat(self, parts):
        return np.concatenate(parts, axis=0)

    def take(self, a, idx):
        return a[idx]

    def segment_sum(self, a, starts):
        return np.add.reduceat(a, starts, axis=0) % self.p

    def from_scalar(self, x):
        """Embed a rational constant or a DeltaRational."""
        from .arith import DeltaRational, DeltaPoly
        row = np.zeros(self.L, dtype=np.int64)
        if isinstance(x, (DeltaRational, DeltaPoly)):
            return self.from_delta_rational(x if isinstance(x, DeltaRational) else DeltaRational(x))
        x = Fraction(x)
        row[self.o] = x.numerator * pow(x.denominator, -1, self.p) % self.p
        return row

    def from_scalars(self, xs):
        return np.array([self.from_scalar(x) for x in xs], dtype=np.int64).reshape(-1, self.L)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and (other.p, other.L, other.o) == (self.p, self.L, self.o)

    def __hash__(self):
        return hash(("series", self.p, self.L, self.o))

    def poly_series(self, coeffs, shift: int = 0):
        """Series of δ^shift · Σ coeffs[i] δ^i."""
        row = np.zeros(self.L, dtype=np.int64)
        for i, c in enumerate(coeffs):
            k = i + shift + self.o
            if 0 <= k < self.L:
                row[k] = c % self.p
        return row

    def from_delta_rational(self, x):
        num, den = x.num.c, x.den.c
        v = next(i for i, c in enumerate(den) if c)
        u = den[v:]
        p = self.p
        inv0 = pow(u[0] % p, -1, p)
        # power series inverse of u up to length L
        inv = [0] * self.L
        inv[0] = inv0
        for k in range(1, self.L):
            acc = 0
            for j in range(1, min(k, len(u) - 1) + 1):
                acc += u[j] * inv[k - j]
            inv[k] = (-acc * inv0) % p
        nrow = self.poly_series(num, -v)
        irow = self.poly_series(inv)
        return self.mul(nrow[None, :], irow[None, :])[0]

    def valuation(self, a) -> int:
        cols = np.nonzero(np.any(a != 0, axis=0))[0]
        if len(cols) == 0:
            return 10 ** 9
        return int(cols[0]) - self.o

    def scalar_delta_zero(self) -> bool:
        return False

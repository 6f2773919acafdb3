"""Exact arithmetic over GF(p^m), truncated Laurent polynomials in u, and
dense linear algebra over the resulting fields.

Field elements are encoded as integers in ``[0, p^m)``: the base-p digits
of the integer are the coefficients (constant term first) of a polynomial
reduced modulo the field's fixed irreducible modulus.  Prime-field
elements are therefore literally the residues ``0..p-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DegreeTooLarge, NotPrime, WindowOverflow

MAX_DEGREE = 12
_LOG_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Polynomials over GF(p) as coefficient lists, constant term first, no
# trailing zeros (the zero polynomial is []).

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
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


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = list(a)
    _trim(a)
    inv_lead = pow(f[-1], p - 2, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for k, fk in enumerate(f):
            a[shift + k] = (a[shift + k] - c * fk) % p
        _trim(a)
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0)) % p for k in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    f = _trim(list(coeffs))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, f, p), x, p):
        return False
    for q in prime_factors(m):
        h = _psub(_ppowmod(x, p ** (m // q), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over GF(p).

    Candidates are ordered by their non-leading coefficients read from the
    x^(m-1) coefficient down to the constant term.
    """
    for n in range(p**m):
        coeffs = [(n // p**k) % p for k in range(m)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True)
class FieldCtx:
    p: int
    m: int
    modulus: tuple[int, ...]
    _exp: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)
    _log: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)
    _zech: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.m > 1 and self.q <= _LOG_TABLE_LIMIT:
            self._build_tables()

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    def embed(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def to_coeffs(self, x: int) -> list[int]:
        p = self.p
        return [(x // p**k) % p for k in range(self.m)]

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        cs = _pmod(list(coeffs), self.modulus, self.p)
        return sum((c % self.p) * self.p**k for k, c in enumerate(cs))

    def _poly_mul(self, x: int, y: int) -> int:
        prod = _pmul(_trim(self.to_coeffs(x)), _trim(self.to_coeffs(y)), self.p)
        return self.from_coeffs(_pmod(prod, self.modulus, self.p))

    def _digit_add(self, x: int, y: int) -> int:
        p = self.p
        out, scale = 0, 1
        while x or y:
            out += ((x % p + y % p) % p) * scale
            x //= p
            y //= p
            scale *= p
        return out

    def _digit_neg(self, x: int) -> int:
        p = self.p
        out, scale = 0, 1
        while x:
            out += ((-(x % p)) % p) * scale
            x //= p
            scale *= p
        return out

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = prime_factors(order)
        g = next(
            g for g in range(2, q)
            if all(self._slow_pow(g, order // r) != 1 for r in factors)
        )
        exp = [0] * order
        log = [0] * q
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._poly_mul(x, g)
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0.
        zech = [-1] * order
        for k in range(order):
            s = self._digit_add(1, exp[k])
            zech[k] = log[s] if s else -1
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", tuple(log))
        object.__setattr__(self, "_zech", tuple(zech))

    def _slow_pow(self, x: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._poly_mul(result, x)
            x = self._poly_mul(x, x)
            n >>= 1
        return result

    def add(self, x: int, y: int) -> int:
        if self.m == 1:
            return (x + y) % self.p
        if not x:
            return y
        if not y:
            return x
        if self._log:
            lx, ly = self._log[x], self._log[y]
            z = self._zech[(ly - lx) % (self.q - 1)]
            if z < 0:
                return 0
            return self._exp[(lx + z) % (self.q - 1)]
        return self._digit_add(x, y)

    def neg(self, x: int) -> int:
        if self.m == 1:
            return -x % self.p
        return self._digit_neg(x)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.m == 1:
            return x * y % self.p
        if not x or not y:
            return 0
        if self._log:
            return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]
        return self._poly_mul(x, y)

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(x), -n)
        if self.m == 1:
            return pow(x, n, self.p)
        if not x:
            return 1 if n == 0 else 0
        if self._log:
            return self._exp[self._log[x] * n % (self.q - 1)]
        return self._slow_pow(x, n)

    def inv(self, x: int) -> int:
        if not x % self.q:
            raise ZeroDivisionError("zero has no inverse")
        if self.m == 1:
            return pow(x, self.p - 2, self.p)
        if self._log:
            return self._exp[-self._log[x] % (self.q - 1)]
        return self._slow_pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def primitive_element(self) -> int:
        if self._exp:
            return self._exp[1]
        order = self.q - 1
        factors = prime_factors(order)
        return next(
            g for g in range(1, self.q)
            if all(self.pow(g, order // r) != 1 for r in factors)
        ) if order > 1 else 1

    def validate(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.q:
            raise ValueError(f"{x!r} is not an element of GF({self.p}^{self.m})")
        return x


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise NotPrime("p must be odd")
    if not 1 <= m <= MAX_DEGREE:
        raise DegreeTooLarge(f"extension degree {m} outside 1..{MAX_DEGREE}")
    return FieldCtx(p, m, least_irreducible(p, m))


@dataclass(frozen=True)
class TruncLaurent:
    """A Laurent polynomial sum_{k} coeffs[k] u^(lo+k) over ``field``.

    ``window`` (inclusive degree bounds) is the range of degrees callers
    promise to track; producing a term outside it raises WindowOverflow.
    Representations are normalized: no zero coefficients at either end, and
    the zero element has ``lo == 0`` and no coefficients.
    """

    field: FieldCtx
    lo: int
    coeffs: tuple[int, ...]
    window: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        cs = list(self.coeffs)
        lo = self.lo
        while cs and cs[-1] == 0:
            cs.pop()
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = cs[start:]
        lo = lo + start if cs else 0
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "lo", lo)
        if cs and self.window is not None:
            wlo, whi = self.window
            if lo < wlo or self.hi > whi:
                raise WindowOverflow(
                    f"degrees [{lo}, {self.hi}] exceed window [{wlo}, {whi}]"
                )

    @classmethod
    def from_terms(
        cls,
        fld: FieldCtx,
        terms: Mapping[int, int],
        window: tuple[int, int] | None = None,
    ) -> TruncLaurent:
        live = {d: c for d, c in terms.items() if c}
        if not live:
            return cls(fld, 0, (), window)
        lo, hi = min(live), max(live)
        return cls(fld, lo, tuple(live.get(d, 0) for d in range(lo, hi + 1)), window)

    @classmethod
    def monomial(cls, fld: FieldCtx, deg: int, coeff: int = 1,
                 window: tuple[int, int] | None = None) -> TruncLaurent:
        return cls.from_terms(fld, {deg: coeff}, window)

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, deg: int) -> int:
        k = deg - self.lo
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def terms(self) -> Iterator[tuple[int, int]]:
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.lo + k, c

    def _combine(self, other: TruncLaurent, sign: int) -> TruncLaurent:
        fld = self.field
        out = dict(self.terms())
        for d, c in other.terms():
            c = c if sign > 0 else fld.neg(c)
            out[d] = fld.add(out.get(d, 0), c)
        return TruncLaurent.from_terms(fld, out, self.window)

    def __add__(self, other: TruncLaurent) -> TruncLaurent:
        return self._combine(other, 1)

    def __sub__(self, other: TruncLaurent) -> TruncLaurent:
        return self._combine(other, -1)

    def __neg__(self) -> TruncLaurent:
        return TruncLaurent.from_terms(
            self.field, {d: self.field.neg(c) for d, c in self.terms()}, self.window
        )

    def scale(self, c: int) -> TruncLaurent:
        return TruncLaurent.from_terms(
            self.field, {d: self.field.mul(c, x) for d, x in self.terms()}, self.window
        )

    def shift(self, k: int) -> TruncLaurent:
        """Multiply by u^k."""
        return TruncLaurent.from_terms(
            self.field, {d + k: c for d, c in self.terms()}, self.window
        )

    def __mul__(self, other: TruncLaurent) -> TruncLaurent:
        fld = self.field
        out: dict[int, int] = {}
        for d1, c1 in self.terms():
            for d2, c2 in other.terms():
                out[d1 + d2] = fld.add(out.get(d1 + d2, 0), fld.mul(c1, c2))
        return TruncLaurent.from_terms(fld, out, self.window)

    def polar_part(self) -> TruncLaurent:
        """Image in F((u))/F[[u]], represented by the negative-degree terms."""
        return TruncLaurent.from_terms(
            self.field, {d: c for d, c in self.terms() if d < 0}, self.window
        )

    def truncate(self, top: int) -> TruncLaurent:
        """Drop every term of degree >= top."""
        return TruncLaurent.from_terms(
            self.field, {d: c for d, c in self.terms() if d < top}, self.window
        )


def frobenius_substitute(x: TruncLaurent, p: int) -> TruncLaurent:
    """u -> u^p with coefficients fixed."""
    if x.window is not None and x.coeffs:
        wlo, whi = x.window
        if p * x.hi > whi or p * x.lo < wlo:
            raise WindowOverflow(
                f"u^{p} substitution leaves window [{wlo}, {whi}]"
            )
    return TruncLaurent.from_terms(x.field, {p * d: c for d, c in x.terms()}, x.window)


@dataclass(frozen=True)
class MatrixGF:
    field: FieldCtx
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("rows*cols must equal the number of entries")

    @classmethod
    def from_rows(cls, fld: FieldCtx, rows: Sequence[Sequence[int]], cols: int | None = None) -> MatrixGF:
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        flat: list[int] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            flat.extend(x % fld.p if fld.m == 1 else fld.validate(x) for x in row)
        return cls(fld, len(rows), ncols, tuple(flat))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def transpose(self) -> MatrixGF:
        return MatrixGF(
            self.field, self.cols, self.rows,
            tuple(x for j in range(self.cols) for x in self.column(j)),
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        fld = self.field
        out = []
        for i in range(self.rows):
            acc = 0
            for a, x in zip(self.row(i), v):
                if a and x:
                    acc = fld.add(acc, fld.mul(a, x))
            out.append(acc)
        return tuple(out)


def _row_reduce(fld: FieldCtx, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        found = next((i for i in range(r, nrows) if rows[i][col]), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        inv = fld.inv(rows[r][col])
        rows[r] = [fld.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [fld.sub(x, fld.mul(c, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def rank_and_kernel(mat: MatrixGF) -> tuple[int, list[tuple[int, ...]]]:
    fld = mat.field
    rows = [list(mat.row(i)) for i in range(mat.rows)]
    pivots = _row_reduce(fld, rows, mat.cols)
    free = [j for j in range(mat.cols) if j not in set(pivots)]
    kernel = []
    for fcol in free:
        v = [0] * mat.cols
        v[fcol] = 1
        for r, pcol in enumerate(pivots):
            v[pcol] = fld.neg(rows[r][fcol])
        kernel.append(tuple(v))
    return len(pivots), kernel


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of F^dim.

    Used to compute ranks of growing column sets: after inserting the
    columns of A, ``rank`` is rank(A); inserting more columns then gives the
    rank of the augmented matrix without redoing the first elimination.
    """

    def __init__(self, fld: FieldCtx, dim: int) -> None:
        self.field = fld
        self.dim = dim
        self._rows: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        fld = self.field
        v = list(vec)
        if fld.m == 1:
            p = fld.p
            for col, row in self._rows:
                c = v[col]
                if c:
                    v = [(x - c * y) % p for x, y in zip(v, row)]
            return v
        for col, row in self._rows:
            c = v[col]
            if c:
                v = [fld.sub(x, fld.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def insert(self, vec: Sequence[int]) -> bool:
        """Add vec to the span; True iff it was independent."""
        v = self.reduce(vec)
        col = next((k for k, x in enumerate(v) if x), None)
        if col is None:
            return False
        fld = self.field
        inv = fld.inv(v[col])
        if fld.m == 1:
            p = fld.p
            self._rows.append((col, [inv * x % p for x in v]))
        else:
            self._rows.append((col, [fld.mul(inv, x) for x in v]))
        return True

    def pivot_columns(self) -> list[int]:
        return [col for col, _ in self._rows]

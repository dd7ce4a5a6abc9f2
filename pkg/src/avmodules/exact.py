"""Exact arithmetic over the Gaussian rationals, and exact linear algebra.

Everything in this package computes over Q(i), the complex numbers with
rational real and imaginary part.  A :class:`Scalar` stores an integer
triple ``(a, b, d)`` representing ``(a + b*i)/d`` with ``d > 0`` and
``gcd(a, b, d) == 1``.  Keeping one common denominator turns every field
operation into plain integer arithmetic plus a single gcd, which is much
faster than a pair of Fractions and matters for the larger verification
sweeps.  Nothing here ever rounds: results are exact or an exception is
raised.

Matrices are dense lists of Scalars.  Elimination is rational Gaussian
elimination with a smallest-denominator pivoting heuristic (correctness
over speed; exactness makes pivot growth a cost concern, not a stability
one).  :class:`RowReducer` provides incremental row reduction over sparse
vectors with arbitrary orderable coordinate keys; the symbolic modules use
it for rank, membership, and radical computations.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd

from .errors import DimensionError, DomainError, ScalarParseError


def _mk(a, b, d):
    # Internal constructor: normalizes sign and gcd, skips coercion.
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    s = object.__new__(Scalar)
    s.a = a
    s.b = b
    s.d = d
    return s


class Scalar:
    """An element of Q(i), stored as (a + b*i)/d in lowest terms, d > 0.

    Text format: ``"a/b+c/d*i"`` with omissible zero parts, e.g. ``"2"``,
    ``"-1/3*i"``, ``"1/2+3*i"``, ``"i"``.  ``parse`` and ``str`` round-trip
    bit-exactly.
    """

    __slots__ = ("a", "b", "d")

    def __new__(cls, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise ValueError("cannot add an imaginary part to a Scalar")
            return re
        re = Fraction(re)
        im = Fraction(im)
        rd, id_ = re.denominator, im.denominator
        d = rd // gcd(rd, id_) * id_
        return _mk(re.numerator * (d // rd), im.numerator * (d // id_), d)

    @classmethod
    def parse(cls, text):
        s = text.replace(" ", "")
        if not s:
            raise ScalarParseError("empty scalar")
        re_part = None
        im_part = None
        for chunk in _re.findall(r"[+-]?[^+-]+", s):
            if chunk.endswith("i"):
                body = chunk[:-1].rstrip("*")
                if body in ("", "+"):
                    val = Fraction(1)
                elif body == "-":
                    val = Fraction(-1)
                else:
                    try:
                        val = Fraction(body)
                    except ValueError:
                        raise ScalarParseError(f"bad scalar {text!r}") from None
                if im_part is not None:
                    raise ScalarParseError(f"two imaginary parts in {text!r}")
                im_part = val
            else:
                try:
                    val = Fraction(chunk)
                except ValueError:
                    raise ScalarParseError(f"bad scalar {text!r}") from None
                if re_part is not None:
                    raise ScalarParseError(f"two real parts in {text!r}")
                re_part = val
        return cls(re_part or 0, im_part or 0)

    @property
    def re(self):
        return Fraction(self.a, self.d)

    @property
    def im(self):
        return Fraction(self.b, self.d)

    def is_real(self):
        return self.b == 0

    def is_integer(self):
        return self.b == 0 and self.d == 1

    def is_nonneg_integer(self):
        return self.b == 0 and self.d == 1 and self.a >= 0

    def inv(self):
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return _mk(self.d * self.a, -self.d * self.b, n)

    def __add__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        return _mk(self.a * o.d + o.a * self.d,
                   self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __sub__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        return _mk(self.a * o.d - o.a * self.d,
                   self.b * o.d - o.b * self.d, self.d * o.d)

    def __rsub__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        a, b, oa, ob = self.a, self.b, o.a, o.b
        return _mk(a * oa - b * ob, a * ob + b * oa, self.d * o.d)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inv()
            n = -n
        out = ONE
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return _mk(-self.a, -self.b, self.d)

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, o):
        o = _coerce(o)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __str__(self):
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return _frac_str(Fraction(a, d))
        im = Fraction(b, d)
        if im.numerator in (1, -1) and im.denominator == 1:
            istr = "i"
        else:
            istr = _frac_str(Fraction(abs(im.numerator), im.denominator)) + "*i"
        sign = "-" if im < 0 else ""
        if a == 0:
            return sign + istr
        return _frac_str(Fraction(a, d)) + ("-" if im < 0 else "+") + istr

    __repr__ = __str__


def _frac_str(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return _mk(x, 0, 1)
    if isinstance(x, Fraction):
        return _mk(x.numerator, 0, x.denominator)
    return None


def as_scalar(x):
    """Coerce an int, Fraction, str, or Scalar to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        return Scalar.parse(x)
    raise TypeError(f"cannot convert {x!r} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
HALF = Scalar(Fraction(1, 2))


def _pivot_key(s):
    # smallest denominator first, then smallest numerators
    return (s.d, abs(s.a) + abs(s.b))


class Matrix:
    """Dense exact matrix over Q(i)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [[as_scalar(x) for x in row] for row in data]
        if not data:
            raise DimensionError("empty matrix")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise DimensionError("ragged rows")
        self.rows = len(data)
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def _copy(self):
        return [row[:] for row in self.data]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.data)
        return f"Matrix[{body}]"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        return Matrix([[sum((self.data[i][k] * other.data[k][j]
                             for k in range(self.cols)), ZERO)
                        for j in range(other.cols)] for i in range(self.rows)])

    def rank(self):
        work = self._copy()
        return len(_rref(work, self.cols))

    def det(self):
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        a = self._copy()
        n = self.rows
        out = ONE
        for col in range(n):
            best = None
            for r in range(col, n):
                v = a[r][col]
                if v:
                    k = _pivot_key(v)
                    if best is None or k < best[0]:
                        best = (k, r)
            if best is None:
                return ZERO
            r = best[1]
            if r != col:
                a[col], a[r] = a[r], a[col]
                out = -out
            piv = a[col][col]
            out = out * piv
            pivinv = piv.inv()
            for rr in range(col + 1, n):
                f = a[rr][col]
                if f:
                    f = f * pivinv
                    a[rr] = [x - f * y for x, y in zip(a[rr], a[col])]
        return out

    def solve(self, rhs):
        """Solve M x = rhs exactly.  Returns a solution (free variables set
        to zero) or None when the system is inconsistent."""
        rhs = [as_scalar(x) for x in rhs]
        if len(rhs) != self.rows:
            raise DimensionError("right-hand side has wrong length")
        work = [self.data[i][:] + [rhs[i]] for i in range(self.rows)]
        pivots = _rref(work, self.cols)
        for r in range(len(pivots), self.rows):
            if work[r][self.cols]:
                return None
        x = [ZERO] * self.cols
        for r, c in enumerate(pivots):
            x[c] = work[r][self.cols]
        return x

    def nullspace(self):
        """Basis of the exact kernel, as a list of column vectors."""
        work = self._copy()
        pivots = _rref(work, self.cols)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [ZERO] * self.cols
            vec[free] = ONE
            for r, c in enumerate(pivots):
                vec[c] = -work[r][free]
            basis.append(vec)
        return basis

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        work = [self.data[i][:] + [ONE if i == j else ZERO for j in range(n)]
                for i in range(n)]
        pivots = _rref(work, n)
        if len(pivots) != n:
            raise DomainError("matrix is singular")
        return Matrix([row[n:] for row in work])


def _rref(work, ncols):
    """In-place reduced row echelon form over the first ncols columns
    (extra columns ride along).  Returns the pivot column list."""
    nrows = len(work)
    prow = 0
    pivots = []
    for col in range(ncols):
        best = None
        for r in range(prow, nrows):
            v = work[r][col]
            if v:
                k = _pivot_key(v)
                if best is None or k < best[0]:
                    best = (k, r)
        if best is None:
            continue
        r = best[1]
        if r != prow:
            work[prow], work[r] = work[r], work[prow]
        inv = work[prow][col].inv()
        work[prow] = [x * inv for x in work[prow]]
        lead = work[prow]
        for rr in range(nrows):
            if rr != prow:
                f = work[rr][col]
                if f:
                    work[rr] = [x - f * y for x, y in zip(work[rr], lead)]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return pivots


class RowReducer:
    """Incremental exact row reduction over sparse keyed vectors.

    Vectors are dicts mapping orderable coordinate keys to nonzero Scalars.
    Supports rank tracking, membership tests, and residual computation; the
    symbolic modules coordinatize their elements and feed them here.
    """

    def __init__(self):
        self._rows = {}

    @property
    def rank(self):
        return len(self._rows)

    def pivot_keys(self):
        return set(self._rows)

    def residual(self, vec):
        """vec minus its projection onto the current row span."""
        v = dict(vec)
        while True:
            hits = [k for k in v if k in self._rows]
            if not hits:
                return v
            k = max(hits)
            coef = v.pop(k)
            for kk, cc in self._rows[k].items():
                if kk == k:
                    continue
                nv = v.get(kk, ZERO) - coef * cc
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)

    def contains(self, vec):
        return not self.residual(vec)

    def insert(self, vec):
        """Add vec to the span.  Returns True if the rank grew."""
        r = self.residual(vec)
        if not r:
            return False
        pivot = max(r)
        inv = r[pivot].inv()
        self._rows[pivot] = {k: c * inv for k, c in r.items()}
        return True


def rank_of(vectors):
    """Rank of a family of sparse keyed vectors."""
    red = RowReducer()
    for v in vectors:
        red.insert(v)
    return red.rank

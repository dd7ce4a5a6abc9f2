"""The affine-Virasoro algebra of type A1.

The Lie algebra has basis ``{e_i, f_i, h_i, d_i, C | i in Z}`` with one
central element C.  The defining brackets:

    [e_i, f_j] = h_{i+j} + i delta_{i+j,0} C
    [h_i, e_j] = 2 e_{i+j}        [h_i, f_j] = -2 f_{i+j}
    [d_i, d_j] = (j-i) d_{i+j} + delta_{i+j,0} (i^3-i)/12 C
    [d_i, h_j] = j h_{i+j}        [h_i, h_j] = 2i delta_{i+j,0} C
    [d_i, e_j] = j e_{i+j}        [d_i, f_j] = j f_{i+j}
    [e_i, e_j] = [f_i, f_j] = [C, -] = 0

The central term of [h_i, h_j] carries the sign forced by the Jacobi
identity together with [e_i, f_j] = h_{i+j} + i delta C (the invariant
form normalization <e,f> = 1, <h,h> = 2); the test suite certifies the
whole table by exhaustive antisymmetry and Jacobi checks, so the structure
constants are data that the suite re-derives rather than trusted input.

Triangular decomposition: the Cartan subalgebra is spanned by d_0, h_0, C;
the negative part by e_{-i}, f_{-i}, h_{-i}, d_{-i} (i >= 1) together with
f_0; the positive part by the positive modes together with e_0.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ScalarParseError
from .exact import Scalar, ZERO, as_scalar

_KINDS = ("e", "f", "h", "d", "C")
_BLOCK = {"f": 0, "e": 1, "h": 2, "d": 3, "C": 4}

_cache = {}


class Generator:
    """A basis symbol: kind in {e, f, h, d, C} plus an integer mode.

    Instances are interned; the central element C has exactly one instance
    (any mode passed for C is normalized to 0).
    """

    __slots__ = ("kind", "mode", "_hash")

    def __new__(cls, kind, mode=0):
        if kind not in _KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        if kind == "C":
            mode = 0
        key = (kind, mode)
        g = _cache.get(key)
        if g is None:
            g = object.__new__(cls)
            g.kind = kind
            g.mode = mode
            g._hash = hash(key)
            _cache[key] = g
        return g

    @property
    def sort_key(self):
        return (_BLOCK[self.kind], self.mode)

    def __eq__(self, other):
        return self is other or (isinstance(other, Generator)
                                 and self.kind == other.kind
                                 and self.mode == other.mode)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        if self.kind == "C":
            return "C"
        return f"{self.kind}[{self.mode}]"


def e(i):
    return Generator("e", i)


def f(i):
    return Generator("f", i)


def h(i):
    return Generator("h", i)


def d(i):
    return Generator("d", i)


C = Generator("C", 0)


def parse_generator(text):
    """Parse the text format "e[3]", "f[-1]", "C"."""
    s = text.strip()
    if s == "C":
        return C
    if len(s) >= 4 and s[0] in "efhd" and s[1] == "[" and s[-1] == "]":
        try:
            return Generator(s[0], int(s[2:-1]))
        except ValueError:
            pass
    raise ScalarParseError(f"bad generator {text!r}")


def bracket_gen(x, y):
    """[x, y] for basis generators, as a list of (Generator, Scalar) terms."""
    kx, ky = x.kind, y.kind
    if kx == "C" or ky == "C":
        return []
    i, j = x.mode, y.mode
    if kx == ky:
        if kx in ("e", "f"):
            return []
        if kx == "h":
            return [(C, Scalar(2 * i))] if i + j == 0 else []
        # [d_i, d_j]
        out = []
        if j != i:
            out.append((d(i + j), Scalar(j - i)))
        if i + j == 0:
            z = Fraction(i ** 3 - i, 12)
            if z:
                out.append((C, Scalar(z)))
        return out
    if kx == "d":
        if j == 0:
            return []
        return [(Generator(ky, i + j), Scalar(j))]
    if ky == "d":
        return [(g, -c) for g, c in bracket_gen(y, x)]
    if kx == "h":
        two = Scalar(2 if ky == "e" else -2)
        return [(Generator(ky, i + j), two)]
    if ky == "h":
        return [(g, -c) for g, c in bracket_gen(y, x)]
    if kx == "e":  # [e_i, f_j]
        out = [(h(i + j), Scalar(1))]
        if i + j == 0 and i != 0:
            out.append((C, Scalar(i)))
        return out
    # [f_i, e_j]
    return [(g, -c) for g, c in bracket_gen(y, x)]


def triangular_part(g):
    """Classify a generator into "negative", "cartan", or "positive"."""
    if g.kind == "C":
        return "cartan"
    if g.mode < 0:
        return "negative"
    if g.mode > 0:
        return "positive"
    return {"e": "positive", "f": "negative", "h": "cartan", "d": "cartan"}[g.kind]


def anti_involution(g):
    """The Chevalley-type anti-involution: e_i -> f_{-i}, f_i -> e_{-i},
    h_i -> h_{-i}, d_i -> d_{-i}, C -> C.  Extends anti-multiplicatively
    to products (handled by the module code, which reverses words)."""
    k = g.kind
    if k == "C":
        return C
    if k == "e":
        return f(-g.mode)
    if k == "f":
        return e(-g.mode)
    return Generator(k, -g.mode)


class AlgebraElement:
    """A finite linear combination of generators (sparse, no zero terms)."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = {}
        for g, c in (terms.items() if isinstance(terms, dict) else terms):
            c = as_scalar(c)
            if not c:
                continue
            acc = data.get(g)
            c = acc + c if acc is not None else c
            if c:
                data[g] = c
            else:
                del data[g]
        self.terms = data

    @classmethod
    def from_gen(cls, g, coeff=1):
        return cls([(g, as_scalar(coeff))])

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            nc = out.get(g, ZERO) + c
            if nc:
                out[g] = nc
            else:
                out.pop(g, None)
        return _raw_elem(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return _raw_elem({g: -c for g, c in self.terms.items()})

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return AlgebraElement()
        return _raw_elem({g: c * v for g, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*{g}" for g, c in
                 sorted(self.terms.items(), key=lambda t: t[0].sort_key)]
        return " + ".join(parts)

    def coeff(self, g):
        return self.terms.get(g, ZERO)

    def in_cartan(self):
        return all(triangular_part(g) == "cartan" for g in self.terms)


def _raw_elem(data):
    el = object.__new__(AlgebraElement)
    el.terms = data
    return el


def element(*pairs):
    """Convenience constructor: element((gen, coeff), ...)."""
    return AlgebraElement(list(pairs))


def bracket(x, y):
    """Bilinear extension of the defining brackets to linear combinations."""
    if isinstance(x, Generator):
        x = AlgebraElement.from_gen(x)
    if isinstance(y, Generator):
        y = AlgebraElement.from_gen(y)
    out = {}
    for gx, cx in x.terms.items():
        for gy, cy in y.terms.items():
            cxy = cx * cy
            for g, c in bracket_gen(gx, gy):
                nc = out.get(g, ZERO) + cxy * c
                if nc:
                    out[g] = nc
                else:
                    out.pop(g, None)
    return _raw_elem(out)


def anti_involution_elem(x):
    if isinstance(x, Generator):
        x = AlgebraElement.from_gen(x)
    return _raw_elem({anti_involution(g): c for g, c in x.terms.items()})

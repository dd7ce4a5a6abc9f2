"""Rank-one polynomial modules on C[s, t].

For nonzero lam, alpha and arbitrary beta, gamma, the polynomial space in
two variables carries three families of module structures over the
affine-Virasoro algebra of type A1 (these are the modules that are free of
rank one over the enveloping algebra of the Cartan subalgebra):

    Omega(lam, alpha, beta, gamma):
        e_i . g = lam^i alpha g(s-i, t-2)
        f_i . g = -(lam^i/alpha) (t/2-beta)(t/2+beta+1) g(s-i, t+2)
    Delta(lam, alpha, beta, gamma):
        e_i . g = -(lam^i/alpha) (t/2+beta)(t/2-beta-1) g(s-i, t-2)
        f_i . g = lam^i alpha g(s-i, t+2)
    Theta(lam, alpha, beta, gamma):
        e_i . g = lam^i alpha (t/2+beta) g(s-i, t-2)
        f_i . g = -(lam^i/alpha) (t/2-beta) g(s-i, t+2)

and in all three families

        h_i . g = lam^i t g(s-i, t)
        d_i . g = lam^i (s + i gamma) g(s-i, t)
        C . g   = 0.

All prefactors are expanded over Q(i) immediately; there are no deferred
rational functions.  The Theta constraint "2 beta not a nonnegative
integer" is deliberately not enforced here (the classify module owns it),
so reducible Theta modules stay constructible for negative tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DomainError, ScalarParseError
from .exact import HALF, ONE, ZERO, Scalar, as_scalar
from .liealg import AlgebraElement, Generator

OMEGA = "Omega"
DELTA = "Delta"
THETA = "Theta"
FAMILIES = (OMEGA, DELTA, THETA)


class Poly2:
    """A sparse polynomial in s and t: dict (s-exp, t-exp) -> Scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = {}
        for key, c in (terms.items() if isinstance(terms, dict) else terms):
            c = as_scalar(c)
            if not c:
                continue
            acc = data.get(key)
            c = acc + c if acc is not None else c
            if c:
                data[key] = c
            else:
                del data[key]
        self.terms = data

    @classmethod
    def monomial(cls, p, q, coeff=1):
        c = as_scalar(coeff)
        return _raw({(p, q): c}) if c else _raw({})

    @classmethod
    def const(cls, coeff):
        return cls.monomial(0, 0, coeff)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, ZERO) + c
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
        return _raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return _raw({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                k = (p1 + p2, q1 + q2)
                nc = out.get(k, ZERO) + c1 * c2
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
        return _raw(out)

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return _raw({})
        return _raw({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def deg_s(self):
        return max((p for p, _ in self.terms), default=-1)

    def deg_t(self):
        return max((q for _, q in self.terms), default=-1)

    def coeff(self, p, q):
        return self.terms.get((p, q), ZERO)

    def __repr__(self):
        if not self.terms:
            return "0"
        # canonical term ordering: degree-lex, s before t
        keys = sorted(self.terms, key=lambda k: (k[0] + k[1], k[0]), reverse=True)
        parts = []
        for p, q in keys:
            c = self.terms[(p, q)]
            mono = "*".join(
                ([] if p == 0 else [f"s^{p}" if p > 1 else "s"])
                + ([] if q == 0 else [f"t^{q}" if q > 1 else "t"]))
            cs = str(c)
            if mono:
                body = mono if cs == "1" else (f"-{mono}" if cs == "-1"
                                               else f"{cs}*{mono}")
            else:
                body = cs
            if parts and not body.startswith("-"):
                parts.append("+ " + body)
            elif parts:
                parts.append("- " + body[1:])
            else:
                parts.append(body)
        return " ".join(parts)


def _raw(data):
    g = object.__new__(Poly2)
    g.terms = data
    return g


def parse_poly2(text):
    """Parse the canonical text format, e.g. "3*s^2*t - 1/2"."""
    s = text.replace(" ", "")
    if not s:
        raise ScalarParseError("empty polynomial")
    terms = []
    import re as _re
    for chunk in _re.findall(r"[+-]?[^+-]+|[+-](?=[+-])", s):
        if not chunk:
            continue
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        coeff = ONE
        p = q = 0
        for factor in chunk.split("*"):
            if not factor:
                raise ScalarParseError(f"bad polynomial {text!r}")
            if factor[0] == "s":
                p += int(factor[2:]) if factor.startswith("s^") else 1
            elif factor[0] == "t":
                q += int(factor[2:]) if factor.startswith("t^") else 1
            else:
                coeff = coeff * Scalar.parse(factor)
        terms.append(((p, q), coeff * sign))
    return Poly2(terms)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of one rank-one factor: family tag plus (lam, alpha, beta, gamma)."""

    family: str
    lam: Scalar
    alpha: Scalar
    beta: Scalar
    gamma: Scalar

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        for name in ("lam", "alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.lam:
            raise DomainError("lam must be nonzero")
        if not self.alpha:
            raise DomainError("alpha must be nonzero")

    def __str__(self):
        return f"{self.family}({self.lam},{self.alpha},{self.beta},{self.gamma})"


def shift_sub(g, ds, dt):
    """Return g(s + ds, t + dt), by exact binomial expansion."""
    ds = as_scalar(ds)
    dt = as_scalar(dt)
    ps = _power_list(ds, g.deg_s())
    qs = _power_list(dt, g.deg_t())
    out = {}
    for (p, q), c in g.terms.items():
        for x in range(p + 1):
            cs = c * (comb(p, x) * ps[p - x])
            if not cs:
                continue
            for y in range(q + 1):
                cc = cs * (comb(q, y) * qs[q - y])
                if not cc:
                    continue
                k = (x, y)
                nc = out.get(k, ZERO) + cc
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
    return _raw(out)


def _power_list(x, n):
    out = [ONE]
    for _ in range(max(n, 0)):
        out.append(out[-1] * x)
    return out


class _ActionTable:
    """Per-parameter caches for the rank-one action (monomial level)."""

    def __init__(self, params):
        self.params = params
        b = params.beta
        if params.family == OMEGA:
            self.e_pref = None
            self.f_pref = _tpoly({1: HALF, 0: -b}) * _tpoly({1: HALF, 0: b + 1})
        elif params.family == DELTA:
            self.e_pref = _tpoly({1: HALF, 0: b}) * _tpoly({1: HALF, 0: -b - 1})
            self.f_pref = None
        else:
            self.e_pref = _tpoly({1: HALF, 0: b})
            self.f_pref = _tpoly({1: HALF, 0: -b})
        self._lam_pow = {0: ONE, 1: params.lam}
        self._lam_inv = params.lam.inv()
        self._alpha_inv = params.alpha.inv()
        self._cols = {}

    def lam_pow(self, i):
        v = self._lam_pow.get(i)
        if v is None:
            v = (self.params.lam ** i if i > 0 else self._lam_inv ** (-i))
            self._lam_pow[i] = v
        return v

    def col(self, X, p, q):
        """Action of generator X on the monomial s^p t^q, as a term dict."""
        key = (X, p, q)
        out = self._cols.get(key)
        if out is None:
            out = self._compute(X, p, q)
            self._cols[key] = out
        return out

    def _compute(self, X, p, q):
        kind = X.kind
        if kind == "C":
            return {}
        i = X.mode
        P = self.params
        li = self.lam_pow(i)
        neg_i = Scalar(-i)
        spow = [comb(p, x) * (neg_i ** (p - x)) for x in range(p + 1)]
        out = {}
        if kind == "h":
            for x in range(p + 1):
                c = li * spow[x]
                if c:
                    out[(x, q + 1)] = c
            return out
        if kind == "d":
            ig = Scalar(i) * P.gamma
            for x in range(p + 1):
                c = li * spow[x]
                if not c:
                    continue
                k = (x + 1, q)
                out[k] = out.get(k, ZERO) + c
                if ig:
                    c2 = c * ig
                    k2 = (x, q)
                    nc = out.get(k2, ZERO) + c2
                    if nc:
                        out[k2] = nc
                    else:
                        out.pop(k2, None)
            return {k: c for k, c in out.items() if c}
        # e or f: t-shift by -2 / +2, optional t-prefactor, alpha scaling
        if kind == "e":
            pref = self.e_pref
            dt = -2
            scale = (li * P.alpha if P.family in (OMEGA, THETA)
                     else -(li * self._alpha_inv))
        else:
            pref = self.f_pref
            dt = 2
            scale = (li * P.alpha if P.family == DELTA
                     else -(li * self._alpha_inv))
        tpart = _tshift(q, dt)
        if pref is not None:
            tpart = pref * tpart
        for x in range(p + 1):
            c = scale * spow[x]
            if not c:
                continue
            for (_, qq), tc in tpart.terms.items():
                cc = c * tc
                if cc:
                    k = (x, qq)
                    nc = out.get(k, ZERO) + cc
                    if nc:
                        out[k] = nc
                    else:
                        out.pop(k, None)
        return out


def _tpoly(d):
    return Poly2([((0, q), c) for q, c in d.items()])


_tshift_cache = {}


def _tshift(q, dt):
    """(t + dt)^q as a Poly2 in t."""
    key = (q, dt)
    g = _tshift_cache.get(key)
    if g is None:
        g = Poly2([((0, y), comb(q, y) * (Scalar(dt) ** (q - y)))
                   for y in range(q + 1)])
        _tshift_cache[key] = g
    return g


_tables = {}


def action_table(params):
    tab = _tables.get(params)
    if tab is None:
        tab = _ActionTable(params)
        _tables[params] = tab
    return tab


def act_rankone(X, params, g):
    """Action of a Generator or AlgebraElement on a Poly2, per the family
    formulas in the module docstring."""
    if isinstance(X, AlgebraElement):
        out = Poly2()
        for gen, c in sorted(X.terms.items(), key=lambda t: t[0].sort_key):
            out = out + act_rankone(gen, params, g).scale(c)
        return out
    tab = action_table(params)
    out = {}
    for (p, q), c in g.terms.items():
        for k, v in tab.col(X, p, q).items():
            nc = out.get(k, ZERO) + c * v
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    return _raw(out)


def theta_ideal_generator(params):
    """The polynomial prod_{j=0}^{2 beta} (t/2 - beta + j) whose ideal is a
    proper submodule of a reducible Theta module (requires 2 beta to be a
    nonnegative integer)."""
    two_beta = params.beta + params.beta
    if not two_beta.is_nonneg_integer():
        raise DomainError("theta ideal requires 2*beta to be a nonnegative integer")
    n = int(two_beta.re)
    out = Poly2.const(1)
    for j in range(n + 1):
        out = out * _tpoly({1: HALF, 0: Scalar(j) - params.beta})
    return out


def divmod_by_t_poly(g, divisor):
    """Divide g by a polynomial in t alone (nonzero scalar leading
    t-coefficient).  Returns (quotient, remainder), exact."""
    dq = divisor.deg_t()
    if dq < 0 or divisor.deg_s() > 0:
        raise DomainError("divisor must be a nonzero polynomial in t alone")
    lead = divisor.coeff(0, dq)
    lead_inv = lead.inv()
    rem = dict(g.terms)
    quot = {}
    while rem:
        qmax = max(q for _, q in rem)
        if qmax < dq:
            break
        for (p, q) in [k for k in rem if k[1] == qmax]:
            fac = rem[(p, q)] * lead_inv
            quot[(p, q - dq)] = quot.get((p, q - dq), ZERO) + fac
            for (_, qq), dc in divisor.terms.items():
                k = (p, q - dq + qq)
                nc = rem.get(k, ZERO) - fac * dc
                if nc:
                    rem[k] = nc
                else:
                    rem.pop(k, None)
    return _raw({k: c for k, c in quot.items() if c}), _raw(rem)

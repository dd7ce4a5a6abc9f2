"""Tensor products of rank-one modules with a highest-weight module.

An element of M(lam_1,...) (x) ... (x) M(lam_m,...) (x) V is stored as a
sparse map from (exponent vector, PBW word) to Scalar, where the exponent
vector (p_1..p_m, q_1..q_m) records the s- and t-exponents of each
rank-one slot and the word indexes the highest-weight component.  The
algebra acts by the Leibniz rule: one term per rank-one slot plus one term
for the highest-weight factor; C acts by theta (the rank-one factors
contribute zero).

The degree of a nonzero element is the lexicographically maximal exponent
vector in its support (independent of the PBW components), which is the
total order driving all the irreducibility arguments.  I(g) is the minimal
positive mode bound beyond which e_i, f_i, h_i annihilate every
highest-weight component of g.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ScalarParseError
from .exact import ONE, ZERO, as_scalar
from .hwmod import HWParams, format_word, parse_word, word_level
from .liealg import AlgebraElement, e, f, h
from .polymod import FamilyParams, action_table


@dataclass(frozen=True)
class TensorParams:
    """Pure parameter data of a tensor module: ordered rank-one factors
    plus the highest-weight parameters.  Mixed family tags are
    representable here; operational constructors reject them unless
    explicitly allowed."""

    factors: tuple
    hw: HWParams

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise DomainError("at least one rank-one factor is required")
        for p in self.factors:
            if not isinstance(p, FamilyParams):
                raise DomainError("factors must be FamilyParams")

    @property
    def m(self):
        return len(self.factors)

    @property
    def family(self):
        return self.factors[0].family

    def lams(self):
        return [p.lam for p in self.factors]


class TensorModule:
    """Operational tensor module: factor parameters plus a concrete
    highest-weight module object (TruncatedVerma, QuotientModule, or
    TrivialModule)."""

    def __init__(self, factors, hw_module, allow_mixed=False):
        factors = tuple(factors)
        if not factors:
            raise DomainError("at least one rank-one factor is required")
        tags = {p.family for p in factors}
        if len(tags) > 1 and not allow_mixed:
            raise DomainError(
                "mixed family tags %s; pass allow_mixed=True to explore "
                "anyway (no theorem guarantees)" % sorted(tags))
        self.factors = factors
        self.m = len(factors)
        self.hw = hw_module
        self._tables = [action_table(p) for p in factors]
        self._hw_cache = {}

    @property
    def params(self):
        return TensorParams(self.factors, self.hw.params)

    def unit(self, word=()):
        """1 (x) ... (x) 1 (x) (word . vh)."""
        return {((0,) * (2 * self.m), word): ONE}

    def monomial(self, exps, word=(), coeff=1):
        exps = tuple(exps)
        if len(exps) != 2 * self.m:
            raise DomainError("exponent vector has wrong length")
        c = as_scalar(coeff)
        return {(exps, word): c} if c else {}

    def _hw_act(self, X, word):
        key = (X, word)
        out = self._hw_cache.get(key)
        if out is None:
            out = self.hw.act(X, {word: ONE})
            self._hw_cache[key] = out
        return out

    def act(self, X, g):
        """Leibniz action of a generator (or AlgebraElement, extended
        linearly) on a tensor element."""
        if isinstance(X, AlgebraElement):
            out = {}
            for gen, c in sorted(X.terms.items(), key=lambda t: t[0].sort_key):
                _add_scaled(out, self.act(gen, g), c)
            return _prune(out)
        m = self.m
        out = {}
        for (exps, word), c in g.items():
            for k in range(m):
                col = self._tables[k].col(X, exps[k], exps[m + k])
                for (p2, q2), c2 in col.items():
                    nexps = exps[:k] + (p2,) + exps[k + 1:m + k] + (q2,) + exps[m + k + 1:]
                    key = (nexps, word)
                    nc = out.get(key, ZERO) + c * c2
                    if nc:
                        out[key] = nc
                    else:
                        out.pop(key, None)
            for w2, c2 in self._hw_act(X, word).items():
                key = (exps, w2)
                nc = out.get(key, ZERO) + c * c2
                if nc:
                    out[key] = nc
                else:
                    out.pop(key, None)
        return _prune(out)

    def degree(self, g):
        """Lexicographic maximum of the exponent vectors; None for g = 0."""
        if not g:
            return None
        return max(exps for (exps, _) in g)

    def annihilation_bound(self, g):
        """Minimal positive I with e_i, f_i, h_i killing every PBW
        component of g for all i >= I, found by direct action downward
        from (max level)+1."""
        words = {word for (_, word) in g}
        if not words:
            return 1
        bound = max(word_level(w) for w in words) + 1
        while bound > 1:
            i = bound - 1
            if all(not self.hw.act(X, {w: ONE})
                   for w in words for X in (e(i), f(i), h(i))):
                bound = i
            else:
                break
        return max(bound, 1)

    def d_annihilation_bound(self, g):
        """Like annihilation_bound but for the d_i alone (the h/e/f bound
        does not always cover d at the boundary mode)."""
        from .liealg import d
        words = {word for (_, word) in g}
        if not words:
            return 1
        bound = max(word_level(w) for w in words) + 1
        while bound > 1:
            i = bound - 1
            if all(not self.hw.act(d(i), {w: ONE}) for w in words):
                bound = i
            else:
                break
        return max(bound, 1)

    def lam_power(self, k, i):
        """lam_k^i, cached."""
        return self._tables[k].lam_pow(i)

    def mul_s(self, g, k):
        """Multiply by s_k (exponent bump in slot k)."""
        return {(exps[:k] + (exps[k] + 1,) + exps[k + 1:], w): c
                for (exps, w), c in g.items()}

    def mul_t(self, g, k):
        m = self.m
        return {(exps[:m + k] + (exps[m + k] + 1,) + exps[m + k + 1:], w): c
                for (exps, w), c in g.items()}


def _add_scaled(acc, other, c):
    for k, v in other.items():
        nv = acc.get(k, ZERO) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def _prune(d):
    return {k: v for k, v in d.items() if v}


def add(g1, g2):
    out = dict(g1)
    _add_scaled(out, g2, ONE)
    return _prune(out)


def sub(g1, g2):
    out = dict(g1)
    _add_scaled(out, g2, -ONE)
    return _prune(out)


def scale(g, c):
    c = as_scalar(c)
    if not c:
        return {}
    return {k: c * v for k, v in g.items()}


def coords(g):
    """Coordinatize a tensor element for the linear algebra layer."""
    return {(exps, tuple(gen.sort_key for gen in word)): c
            for (exps, word), c in g.items()}


def format_tensor_element(g, m):
    """Text form, one term per line:
    "s1^2*t1 (x) t2^3 (x) [f[0]^1 . vh] : 3/2"."""
    if not g:
        return "0"
    lines = []
    for (exps, word) in sorted(g, reverse=True):
        c = g[(exps, word)]
        slots = []
        for k in range(m):
            p, q = exps[k], exps[m + k]
            factors = []
            if p:
                factors.append(f"s{k + 1}" + (f"^{p}" if p > 1 else ""))
            if q:
                factors.append(f"t{k + 1}" + (f"^{q}" if q > 1 else ""))
            slots.append("*".join(factors) if factors else "1")
        wtxt = "vh" if not word else f"[{format_word(word)}]"
        line = " (x) ".join(slots + [wtxt])
        if c != ONE:
            line += f" : {c}"
        lines.append(line)
    return "\n".join(lines)


def parse_tensor_element(text, m):
    """Parse the text form; terms may be separated by newlines or ';'."""
    out = {}
    for raw_line in text.replace(";", "\n").splitlines():
        line = raw_line.strip()
        if not line or line == "0":
            continue
        coeff = ONE
        if ":" in line:
            body, _, ctxt = line.rpartition(":")
            coeff = as_scalar(ctxt.strip())
            line = body.strip()
        slots = [s.strip() for s in line.split("(x)")]
        if len(slots) != m + 1:
            raise ScalarParseError(
                f"expected {m} factor slots plus a highest-weight slot in {raw_line!r}")
        exps = [0] * (2 * m)
        for k, slot in enumerate(slots[:m]):
            if slot == "1":
                continue
            for factor in slot.split("*"):
                name, _, etxt = factor.partition("^")
                expo = int(etxt) if etxt else 1
                if name == f"s{k + 1}":
                    exps[k] += expo
                elif name == f"t{k + 1}":
                    exps[m + k] += expo
                else:
                    raise ScalarParseError(
                        f"factor {factor!r} does not belong in slot {k + 1}")
        wtxt = slots[m]
        if wtxt.startswith("[") and wtxt.endswith("]"):
            wtxt = wtxt[1:-1].strip()
        word = parse_word(wtxt)
        key = (tuple(exps), word)
        prev = out.get(key, ZERO) + coeff
        if prev:
            out[key] = prev
        else:
            out.pop(key, None)
    return out


def elements_equal(g1, g2):
    return _prune(dict(g1)) == _prune(dict(g2))


# spec-level operation surface


def act_tensor(X, module, g):
    return module.act(X, g)


def degree(module, g):
    return module.degree(g)


def annihilation_bound(module, g):
    return module.annihilation_bound(g)

"""Truncated highest-weight modules with PBW bases.

The Verma module with highest weight (eta, eps, theta) is spanned by
ordered words in the negative-part generators applied to a highest-weight
vector vh:

    f_{-q}^{F_-q} ... f_0^{F_0}  e_{-p}^{E_-p} ... e_{-1}^{E_-1}
    h_{-m}^{H_-m} ... h_{-1}^{H_-1}  d_{-n}^{D_-n} ... d_{-1}^{D_-1}  vh

At the wall, e_0 and all positive-mode generators kill vh; d_0, h_0, C act
by eta, eps, theta.  A word is stored as a sorted tuple of generators;
``level`` is the total negative mode depth and the f_0 exponent is tracked
separately since f_0 preserves level (without a cap on it the level-0
space would already be infinite-dimensional).  Two cutoffs (level N and
f_0 power F) truncate the module; any action whose result leaves the
window raises :class:`TruncationError` rather than dropping terms.

Normal ordering moves an acting generator through a word one adjacent
transposition at a time, emitting commutator words, with a strictly
decreasing (length, inversions) measure; results are exact elements of the
untruncated enveloping algebra, only checked against the window at the
end.

The irreducible quotient is realized as the complement of the radical of
the contravariant form <u, w> = (coefficient of vh in omega(u) w) taken
per (level, h_0-weight) space; invariance of the radical under the algebra
action is the testable form of quotienting by the maximal proper
submodule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ScalarParseError, TruncationError
from .exact import Matrix, ONE, RowReducer, ZERO, as_scalar
from .liealg import (AlgebraElement, C, Generator, anti_involution,
                     bracket_gen, triangular_part)


@dataclass(frozen=True)
class HWParams:
    """Highest weight (eta, eps, theta) plus the truncation window."""

    eta: object
    eps: object
    theta: object
    level_cutoff: int
    f0_cutoff: int

    def __post_init__(self):
        for name in ("eta", "eps", "theta"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.level_cutoff < 0 or self.f0_cutoff < 0:
            raise ValueError("cutoffs must be nonnegative")


def word_level(word):
    return sum(-g.mode for g in word)


def word_f0_count(word):
    return sum(1 for g in word if g.kind == "f" and g.mode == 0)


def word_h0_offset(word):
    """h_0-weight of the word relative to eps: e-letters raise by 2,
    f-letters (including f_0) lower by 2, h and d preserve."""
    off = 0
    for g in word:
        if g.kind == "e":
            off += 2
        elif g.kind == "f":
            off -= 2
    return off


def format_word(word):
    """Text form "f[-2]^1 f[0]^2 h[-1]^1 d[-1]^3 . vh"; the empty word is "vh"."""
    if not word:
        return "vh"
    parts = []
    run = None
    count = 0
    for g in word:
        if g == run:
            count += 1
        else:
            if run is not None:
                parts.append(f"{run}^{count}")
            run, count = g, 1
    parts.append(f"{run}^{count}")
    return " ".join(parts) + " . vh"


def parse_word(text):
    from .liealg import parse_generator
    s = text.strip()
    if s in ("vh", ""):
        return ()
    if s.endswith(". vh"):
        s = s[:-4].strip()
    elif s.endswith(".vh"):
        s = s[:-3].strip()
    letters = []
    for piece in s.split():
        if "^" in piece:
            gtxt, _, etxt = piece.partition("^")
            gen = parse_generator(gtxt)
            letters.extend([gen] * int(etxt))
        else:
            letters.append(parse_generator(piece))
    word = tuple(sorted(letters))
    if tuple(letters) != word:
        raise ScalarParseError(f"word {text!r} is not in PBW order")
    for g in letters:
        if triangular_part(g) != "negative":
            raise ScalarParseError(f"{g} is not a negative-part letter")
    return word


def _letter_key(g):
    # negative-part letters sort first in PBW block order; cartan and
    # positive letters sort after everything so the rewriting pushes them
    # toward the wall where they are evaluated or killed
    if triangular_part(g) == "negative":
        return (0,) + g.sort_key
    return (1,) + g.sort_key


class TruncatedVerma:
    """The Verma module, truncated to level <= N and f_0-power <= F."""

    def __init__(self, params):
        self.params = params
        self._wall = {"d": params.eta, "h": params.eps, "C": params.theta}
        self._norm_cache = {(): {(): ONE}}
        self._basis = None

    def vh(self):
        return {(): ONE}

    # -- normal ordering -------------------------------------------------

    def _normalize(self, word):
        """Expand word . vh in the PBW basis (exact, no truncation)."""
        out = self._norm_cache.get(word)
        if out is not None:
            return out
        out = self._compute(word)
        self._norm_cache[word] = out
        return out

    def _compute(self, word):
        last = word[-1]
        part = triangular_part(last)
        if part == "positive":
            return {}
        if part == "cartan":
            scalar = self._wall[last.kind]
            if not scalar:
                return {}
            rest = self._normalize(word[:-1])
            return {w: c * scalar for w, c in rest.items()}
        # rightmost adjacent inversion
        keys = [_letter_key(g) for g in word]
        for i in range(len(word) - 2, -1, -1):
            if keys[i] > keys[i + 1]:
                out = {}
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                for w, c in self._normalize(swapped).items():
                    out[w] = out.get(w, ZERO) + c
                for g, c in bracket_gen(word[i], word[i + 1]):
                    sub = word[:i] + (g,) + word[i + 2:]
                    for w, cc in self._normalize(sub).items():
                        nc = out.get(w, ZERO) + c * cc
                        if nc:
                            out[w] = nc
                        else:
                            out.pop(w, None)
                return {w: c for w, c in out.items() if c}
        # sorted word whose letters are all negative-part: a basis word
        return {word: ONE}

    def _check_window(self, word):
        N = self.params.level_cutoff
        F = self.params.f0_cutoff
        if word_level(word) > N:
            raise TruncationError(
                f"word {format_word(word)} exceeds level cutoff {N}")
        if word_f0_count(word) > F:
            raise TruncationError(
                f"word {format_word(word)} exceeds f0 cutoff {F}")

    def act(self, X, elem):
        """Act by a single generator on an element (word dict -> Scalar)."""
        out = {}
        for w, c in elem.items():
            for w2, c2 in self._normalize((X,) + w).items():
                nc = out.get(w2, ZERO) + c * c2
                if nc:
                    out[w2] = nc
                else:
                    out.pop(w2, None)
        out = {w: c for w, c in out.items() if c}
        for w in out:
            self._check_window(w)
        return out

    def act_elem(self, x, elem):
        if isinstance(x, Generator):
            return self.act(x, elem)
        out = {}
        for g, c in sorted(x.terms.items(), key=lambda t: t[0].sort_key):
            for w, cc in self.act(g, elem).items():
                nc = out.get(w, ZERO) + c * cc
                if nc:
                    out[w] = nc
                else:
                    out.pop(w, None)
        return out

    # -- basis and weight spaces ----------------------------------------

    def basis_words(self):
        """All PBW words within the cutoffs, grouped lazily."""
        if self._basis is None:
            N = self.params.level_cutoff
            F = self.params.f0_cutoff
            words = []
            for f0 in range(F + 1):
                f0s = (Generator("f", 0),) * f0
                for fpart in _block_words("f", N):
                    lvl_f = word_level(fpart)
                    for epart in _block_words("e", N - lvl_f):
                        lvl_e = lvl_f + word_level(epart)
                        for hpart in _block_words("h", N - lvl_e):
                            lvl_h = lvl_e + word_level(hpart)
                            for dpart in _block_words("d", N - lvl_h):
                                words.append(fpart + f0s + epart + hpart + dpart)
            self._basis = sorted(words, key=lambda w: (word_level(w),
                                                       tuple(g.sort_key for g in w)))
        return self._basis

    def weight_space(self, level, h0wt):
        """Basis words with the given level and absolute h_0-weight."""
        h0wt = as_scalar(h0wt)
        diff = h0wt - self.params.eps
        return [w for w in self.basis_words()
                if word_level(w) == level and as_scalar(word_h0_offset(w)) == diff]

    def weight_space_keys(self):
        keys = []
        seen = set()
        for w in self.basis_words():
            key = (word_level(w), self.params.eps + word_h0_offset(w))
            if key not in seen:
                seen.add(key)
                keys.append(key)
        return keys

    # -- contravariant form ----------------------------------------------

    def pairing_word(self, u, w_elem):
        """<u . vh, w> = coefficient of vh in omega(u) applied to w."""
        v = dict(w_elem)
        for X in u:
            if not v:
                return ZERO
            v = self.act(anti_involution(X), v)
        return v.get((), ZERO)

    def pairing(self, u_elem, w_elem):
        out = ZERO
        for u, c in u_elem.items():
            out = out + c * self.pairing_word(u, w_elem)
        return out

    def gram_matrix(self, level, h0wt):
        """Gram matrix of the contravariant form on one weight space;
        returns (Matrix, basis words)."""
        words = self.weight_space(level, h0wt)
        if not words:
            return None, []
        rows = [[self.pairing_word(u, {w: ONE}) for w in words] for u in words]
        return Matrix(rows), words


def _block_words(kind, budget):
    """All sorted letter tuples of one kind with modes -1..-budget and
    total level <= budget."""
    if budget <= 0:
        return [()]
    mode_list = list(range(-budget, 0))
    out = []

    def rec(idx, remaining, acc):
        if idx == len(mode_list):
            out.append(tuple(acc))
            return
        mode = mode_list[idx]
        cost = -mode
        for expo in range(remaining // cost + 1):
            rec(idx + 1, remaining - expo * cost,
                acc + [Generator(kind, mode)] * expo)

    rec(0, budget, [])
    return out


class QuotientModule:
    """The truncated irreducible quotient: per weight space, the complement
    of the Gram radical, with projection along the radical."""

    def __init__(self, params):
        self.params = params
        self.verma = TruncatedVerma(params)
        self._spaces = {}

    def vh(self):
        return {(): ONE}

    def _space(self, level, h0wt):
        key = (level, h0wt)
        sp = self._spaces.get(key)
        if sp is not None:
            return sp
        gram, words = self.verma.gram_matrix(level, h0wt)
        red = RowReducer()
        radical = []
        if words:
            for vec in gram.nullspace():
                elem = {w: c for w, c in zip(words, vec) if c}
                radical.append(elem)
                red.insert(elem)
        pivot_words = red.pivot_keys()
        quotient_words = [w for w in words if w not in pivot_words]
        sp = {"words": words, "radical": radical, "reducer": red,
              "quotient_words": quotient_words}
        self._spaces[key] = sp
        return sp

    def radical(self, level, h0wt):
        return self._space(level, as_scalar(h0wt))["radical"]

    def quotient_words(self, level, h0wt):
        return self._space(level, as_scalar(h0wt))["quotient_words"]

    def quotient_basis(self):
        """Per-weight-space basis of the truncated irreducible quotient."""
        out = {}
        for key in self.verma.weight_space_keys():
            words = self._space(*key)["quotient_words"]
            out[key] = words
        return out

    def project(self, raw):
        """Reduce a raw Verma element modulo the radical; the result is
        supported on the per-space quotient words."""
        groups = {}
        for w, c in raw.items():
            key = (word_level(w), self.params.eps + word_h0_offset(w))
            groups.setdefault(key, {})[w] = c
        out = {}
        for key, vec in groups.items():
            res = self._space(*key)["reducer"].residual(vec)
            out.update(res)
        return out

    def act(self, X, elem):
        return self.project(self.verma.act(X, elem))

    def act_elem(self, x, elem):
        return self.project(self.verma.act_elem(x, elem))

    def radical_invariant(self, mode_bound):
        """Check that the radical is carried into the radical by every
        generator with |mode| <= mode_bound (within cutoffs).  Returns the
        list of violations (empty when the check passes)."""
        from .liealg import d, e, f, h
        gens = [C]
        for i in range(-mode_bound, mode_bound + 1):
            gens.extend((e(i), f(i), h(i), d(i)))
        violations = []
        for key in self.verma.weight_space_keys():
            for vec in self._space(*key)["radical"]:
                for g in gens:
                    try:
                        image = self.verma.act(g, vec)
                    except TruncationError:
                        continue
                    if self.project(image):
                        violations.append((key, g))
        return violations


class TrivialModule:
    """The one-dimensional trivial module: the irreducible quotient at
    highest weight (0, 0, 0), on which every generator acts by zero.
    Using it directly avoids truncation artifacts when only the trivial
    highest-weight factor is wanted."""

    def __init__(self):
        self.params = HWParams(0, 0, 0, 0, 0)

    def vh(self):
        return {(): ONE}

    def act(self, X, elem):
        return {}

    def act_elem(self, x, elem):
        return {}

    def project(self, raw):
        c = raw.get((), ZERO)
        return {(): c} if c else {}


_module_cache = {}


def verma_module(params):
    mod = _module_cache.get(("verma", params))
    if mod is None:
        mod = TruncatedVerma(params)
        _module_cache[("verma", params)] = mod
    return mod


def quotient_module(params):
    mod = _module_cache.get(("quot", params))
    if mod is None:
        mod = QuotientModule(params)
        _module_cache[("quot", params)] = mod
    return mod


# spec-level operation surface


def act_verma(X, params, elem):
    return verma_module(params).act_elem(X, elem) if isinstance(X, AlgebraElement) \
        else verma_module(params).act(X, elem)


def weight_space(params, level, h0wt):
    return verma_module(params).weight_space(level, h0wt)


def gram_matrix(params, level, h0wt):
    return verma_module(params).gram_matrix(level, h0wt)


def irreducible_quotient_basis(params):
    return quotient_module(params).quotient_basis()

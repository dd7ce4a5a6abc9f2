"""Executable forms of the structural arguments about tensor modules.

The pieces, in the order they feed each other:

* generalized Vandermonde determinants: for distinct nonzero lam_1..lam_m
  and block sizes s_1..s_m, the matrix of samples of the functions
  n^x lam_k^n (x < s_k) over s consecutive integers has the closed-form
  determinant prod_j sf(s_j - 1) lam_j^{s_j (s_j + 2r - 1)/2}
  prod_{i<j} (lam_j - lam_i)^{s_i s_j}, where sf is the superfactorial.
  Nonvanishing is what makes coefficient extraction a rigorous solve.

* coefficient extraction: for i beyond the annihilation bound, h_i, d_i,
  e_i, f_i act on a tensor element g through finitely many coefficient
  elements a_{x,k}, b_{y,k}, c_{z,k} weighted by i^x lam_k^i.  Sampling a
  window of i values and solving the (invertible) Vandermonde system
  recovers the coefficients; each of them lies in any submodule containing
  g.  Notable specializations: a_{0,k} = t_k g, b_{0,k} = s_k g, and
  a_{P_k,k} drops the top s_k-exponent.

* degree reduction: from any element of degree > 0 (with distinct lam's),
  extraction produces a submodule element of strictly smaller degree - via
  a_{P_k,k} while some s-exponent is positive, then via a family-specific
  combination in t.  For Theta the leading coefficient of the combination
  is 2Q(Q - 1 - 2 beta), so reduction can genuinely stall when some
  2 beta_k is a nonnegative integer; that stall is reported as no-progress
  and is exactly the reducible regime.

* the rank invariant R_g: the stabilized rank of {g} together with its
  images under large-mode h/e (Omega), h/f (Delta), or h/e/f (Theta);
  R_g = m+1 precisely on elements of degree 0.

* W_l submodules: with two equal lam's, span{s_1^r (s_1+s_2)^p C[t1,t2],
  r <= l} is a proper submodule; checked by exact membership solves.

* omega operators sum_i binom(r,i)(-1)^{r-i} d_{l-j-i} d_{j+i} and local
  finiteness probes, used to separate these modules from Whittaker-type
  modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import DomainError, WindowError
from .exact import Matrix, ONE, RowReducer, Scalar, ZERO, as_scalar
from .liealg import C, d, e, f, h
from .polymod import DELTA, OMEGA, THETA
from .tensor import TensorModule, add, coords, scale, sub


# -- Lemma-style Vandermonde data ---------------------------------------


def superfactorial(n):
    """sf(n) = n! (n-1)! ... 2! 1!, with sf(0) = 1."""
    out = 1
    fact = 1
    for k in range(1, n + 1):
        fact *= k
        out *= fact
    return out


def _check_lams(lams):
    lams = [as_scalar(x) for x in lams]
    if any(not x for x in lams):
        raise DomainError("lam values must be nonzero")
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            if lams[i] == lams[j]:
                raise DomainError("lam values must be pairwise distinct")
    return lams


def vandermonde_matrix(lams, sizes, r):
    """The s x s sample matrix with columns n^x lam_k^n (x < sizes[k]) and
    rows n = r, r+1, ..., r+s-1."""
    lams = _check_lams(lams)
    if len(sizes) != len(lams) or any(sz < 1 for sz in sizes):
        raise DomainError("need one positive size per lam")
    s = sum(sizes)
    rows = []
    for n in range(r, r + s):
        row = []
        npow = Scalar(n)
        for lam, sz in zip(lams, sizes):
            ln = lam ** n
            acc = ln
            for x in range(sz):
                row.append(acc)
                acc = acc * npow
        rows.append(row)
    return Matrix(rows)


def vandermonde_closed_form(lams, sizes, r):
    """Closed form of det(vandermonde_matrix(lams, sizes, r))."""
    lams = _check_lams(lams)
    if len(sizes) != len(lams) or any(sz < 1 for sz in sizes):
        raise DomainError("need one positive size per lam")
    out = ONE
    for lam, sz in zip(lams, sizes):
        out = out * Scalar(superfactorial(sz - 1))
        out = out * lam ** (sz * (sz + 2 * r - 1) // 2)
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            out = out * (lams[j] - lams[i]) ** (sizes[i] * sizes[j])
    return out


# -- coefficient extraction ----------------------------------------------


@dataclass
class ExtractionResult:
    """Coefficient elements recovered from large-mode actions on g.

    a[(x, k)] come from h_i, x = 0..P_k; b[(y, k)] from d_i, y = 0..P_k+1;
    c_e / c_f from e_i / f_i (whichever the family provides; Theta has
    both).  Slots k are 0-based."""

    family: str
    p_bounds: list
    i_start: int
    a: dict
    b: dict
    c_e: dict = None
    c_f: dict = None

    @property
    def c(self):
        return self.c_f if self.family == DELTA else self.c_e


def _require_single_family(module):
    tags = {p.family for p in module.factors}
    if len(tags) != 1:
        raise DomainError("operation needs a single family tag")
    return tags.pop()


def _require_distinct(module):
    _check_lams([p.lam for p in module.factors])


def _solve_vandermonde(module, g, act_gen, sizes, i_start):
    """Sample X_i(g) for s consecutive i and solve for the coefficient
    elements of i^x lam_k^i; verifies the model on one extra sample."""
    m = module.m
    s = sum(sizes)
    samples = [module.act(act_gen(i), g) for i in range(i_start, i_start + s + 1)]
    rows = []
    for n in range(i_start, i_start + s):
        row = []
        npow = Scalar(n)
        for k in range(m):
            acc = module.lam_power(k, n)
            for x in range(sizes[k]):
                row.append(acc)
                acc = acc * npow
        rows.append(row)
    inv = Matrix(rows).inverse()
    unknowns = []
    for col in range(s):
        u = {}
        for r_idx in range(s):
            carry = inv.data[col][r_idx]
            if carry:
                for key, v in samples[r_idx].items():
                    nv = u.get(key, ZERO) + carry * v
                    if nv:
                        u[key] = nv
                    else:
                        u.pop(key, None)
        unknowns.append(u)
    # verification row: the model must predict the extra sample exactly
    n = i_start + s
    pred = {}
    col = 0
    npow = Scalar(n)
    for k in range(m):
        acc = module.lam_power(k, n)
        for x in range(sizes[k]):
            for key, v in unknowns[col].items():
                nv = pred.get(key, ZERO) + acc * v
                if nv:
                    pred[key] = nv
                else:
                    pred.pop(key, None)
            acc = acc * npow
            col += 1
    if pred != samples[s]:
        raise WindowError("extraction window too small: model fails on the "
                          f"verification sample i={n}")
    out = {}
    col = 0
    for k in range(m):
        for x in range(sizes[k]):
            out[(x, k)] = unknowns[col]
            col += 1
    return out


def extract_coefficients(module, g, i_start=None):
    """Recover the coefficient elements a, b, c of g (Prop.-style
    extraction).  Requires distinct lam's; cross-validates a_{0,k} = t_k g
    and b_{0,k} = s_k g by direct multiplication."""
    family = _require_single_family(module)
    _require_distinct(module)
    if not g:
        raise DomainError("extraction needs a nonzero element")
    m = module.m
    p_bounds = [max(exps[k] for (exps, _) in g) for k in range(m)]
    if i_start is None:
        i_start = max(module.annihilation_bound(g), module.d_annihilation_bound(g))
    sizes_a = [p + 1 for p in p_bounds]
    sizes_b = [p + 2 for p in p_bounds]

    raw_a = _solve_vandermonde(module, g, h, sizes_a, i_start)
    a = {(x, k): scale(u, Scalar((-1) ** x)) for (x, k), u in raw_a.items()}
    raw_b = _solve_vandermonde(module, g, d, sizes_b, i_start)
    b = {(y, k): scale(u, Scalar((-1) ** y)) for (y, k), u in raw_b.items()}

    c_e = c_f = None
    if family in (OMEGA, THETA):
        raw = _solve_vandermonde(module, g, e, sizes_a, i_start)
        c_e = {(z, k): scale(u, Scalar((-1) ** z) * module.factors[k].alpha.inv())
               for (z, k), u in raw.items()}
    if family in (DELTA, THETA):
        raw = _solve_vandermonde(module, g, f, sizes_a, i_start)
        if family == DELTA:
            c_f = {(z, k): scale(u, Scalar((-1) ** z) * module.factors[k].alpha.inv())
                   for (z, k), u in raw.items()}
        else:
            c_f = {(z, k): scale(u, Scalar(-((-1) ** z)) * module.factors[k].alpha)
                   for (z, k), u in raw.items()}

    for k in range(m):
        if a[(0, k)] != module.mul_t(g, k):
            raise WindowError(f"extraction cross-check failed: a[0,{k}] != t_{k + 1} g")
        if b[(0, k)] != module.mul_s(g, k):
            raise WindowError(f"extraction cross-check failed: b[0,{k}] != s_{k + 1} g")
    return ExtractionResult(family, p_bounds, i_start, a, b, c_e, c_f)


# -- degree reduction -----------------------------------------------------


def reduce_degree(module, g):
    """Produce an element of the submodule generated by g with strictly
    smaller degree, or None (no-progress) when the family is Theta and the
    t-combination vanishes at every active slot (possible only when some
    2 beta_k is a nonnegative integer)."""
    deg = module.degree(g)
    if deg is None or not any(deg):
        raise DomainError("degree reduction needs degree > 0")
    family = _require_single_family(module)
    _require_distinct(module)
    m = module.m
    res = extract_coefficients(module, g)
    for k in range(m):
        if res.p_bounds[k] > 0:
            out = res.a[(res.p_bounds[k], k)]
            if not out or not module.degree(out) < deg:
                raise AssertionError("s-exponent kill failed its invariant")
            return out
    q_bounds = [max(exps[m + k] for (exps, _) in g) for k in range(m)]
    active = [j for j in range(m) if q_bounds[j] > 0]
    for j in active:
        if family == OMEGA:
            cand = sub(g, res.c_e[(0, j)])
        elif family == DELTA:
            cand = sub(g, res.c_f[(0, j)])
        else:
            cand = sub(add(res.c_e[(0, j)], res.c_f[(0, j)]), module.mul_t(g, j))
        if cand:
            if not module.degree(cand) < deg:
                raise AssertionError("t-exponent kill failed its invariant")
            return cand
        if family != THETA:
            raise AssertionError("t-combination vanished outside Theta")
    return None


def reduce_to_zero_degree(module, g, max_steps=200):
    """Iterate reduce_degree; returns the list of degrees visited.  Ends
    at the zero degree, or earlier at a no-progress point."""
    degrees = [module.degree(g)]
    cur = g
    for _ in range(max_steps):
        if not any(degrees[-1]):
            break
        nxt = reduce_degree(module, cur)
        if nxt is None:
            break
        cur = nxt
        degrees.append(module.degree(cur))
    return degrees


# -- cyclic closure -------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Explicit finite window: factor exponent bounds, generator mode
    bound, and the highest-weight level allowed for basis words."""

    p_max: int
    q_max: int
    mode_bound: int
    hw_level: int = 0


@dataclass
class ClosureBasis:
    """Linearly independent elements found by a closure search, plus the
    window they were confined to.  ``escaped`` flags op images that left
    the window (the search is then a lower bound, not a certificate of
    stabilization)."""

    elements: list
    window: Window
    escaped: bool
    reducer: RowReducer = field(repr=False, default=None)

    @property
    def dim(self):
        return len(self.elements)

    @property
    def stabilized(self):
        return not self.escaped

    def contains(self, g):
        return self.reducer.contains(coords(g))


def _in_window(module, g, window):
    m = module.m
    from .hwmod import word_level
    for (exps, word) in g:
        if any(exps[k] > window.p_max for k in range(m)):
            return False
        if any(exps[m + k] > window.q_max for k in range(m)):
            return False
        if word_level(word) > window.hw_level:
            return False
    return True


def cyclic_closure(module, seed, window):
    """Grow the span of the seed under t_k, s_k multiplication (the
    extraction-derived operations) and all generator actions with modes up
    to the window bound, keeping what stays inside the window."""
    from .errors import TruncationError
    m = module.m
    ops = []
    for k in range(m):
        ops.append(("t%d*" % (k + 1), lambda gg, kk=k: module.mul_t(gg, kk)))
        ops.append(("s%d*" % (k + 1), lambda gg, kk=k: module.mul_s(gg, kk)))
    for kind_fn in (e, f, h, d):
        for i in range(-window.mode_bound, window.mode_bound + 1):
            gen = kind_fn(i)
            ops.append((str(gen), lambda gg, gn=gen: module.act(gn, gg)))
    reducer = RowReducer()
    elements = []
    escaped = False
    queue = []
    if seed and _in_window(module, seed, window):
        reducer.insert(coords(seed))
        elements.append(seed)
        queue.append(seed)
    elif seed:
        escaped = True
    while queue:
        cur = queue.pop(0)
        for _, op in ops:
            try:
                img = op(cur)
            except TruncationError:
                escaped = True
                continue
            if not img:
                continue
            if not _in_window(module, img, window):
                escaped = True
                continue
            if reducer.insert(coords(img)):
                elements.append(img)
                queue.append(img)
    return ClosureBasis(elements, window, escaped, reducer)


# -- W_l submodules for coinciding lam's ---------------------------------


@dataclass
class WLReport:
    family: str
    l: int
    window: Window
    checks: list
    invariant: bool
    proper: bool
    strict: bool

    @property
    def passed(self):
        return self.invariant and self.proper and self.strict


class _WlSpan:
    """Membership oracle for W_l = span{s1^r (s1+s2)^p C[t1,t2] : r <= l},
    working per t-monomial on the s-part (the t-variables are spectators)."""

    def __init__(self, l, s_cap):
        self.l = l
        self.s_cap = s_cap
        self.reducer = RowReducer()
        for r in range(min(l, s_cap) + 1):
            for p in range(s_cap - r + 1):
                vec = {}
                for jj in range(p + 1):
                    vec[(r + jj, p - jj)] = Scalar(comb(p, jj))
                self.reducer.insert(vec)

    def contains_spart(self, spart):
        return self.reducer.contains(spart)

    def contains(self, g, m=2):
        """Membership for a tensor element over the trivial module."""
        slices = {}
        for (exps, word), c in g.items():
            if word != ():
                return False
            slices.setdefault((exps[m], exps[m + 1]), {})[(exps[0], exps[1])] = c
        return all(self.contains_spart(sp) for sp in slices.values())


def wl_submodule_check(factors, l, window):
    """Verify that W_l is a submodule of the m=2 tensor module with equal
    lam's and trivial highest-weight factor, that it is proper, and that
    W_l is strictly contained in W_{l+1}."""
    from .hwmod import TrivialModule
    if len(factors) != 2:
        raise DomainError("the W_l check needs exactly two factors")
    if factors[0].family != factors[1].family:
        raise DomainError("the W_l check needs one family tag")
    if factors[0].lam != factors[1].lam:
        raise DomainError("the W_l check needs lam1 = lam2")
    module = TensorModule(factors, TrivialModule())
    span = _WlSpan(l, window.p_max + 1)
    gens = [C] + [kind(i) for kind in (e, f, h, d)
                  for i in range(-window.mode_bound, window.mode_bound + 1)]
    checks = []
    invariant = True
    for r in range(min(l, window.p_max) + 1):
        for p in range(window.p_max - r + 1):
            for qa in range(window.q_max + 1):
                for qb in range(window.q_max + 1):
                    elem = {}
                    for jj in range(p + 1):
                        elem[((r + jj, p - jj, qa, qb), ())] = Scalar(comb(p, jj))
                    for gen in gens:
                        img = module.act(gen, elem)
                        ok = span.contains(img)
                        invariant = invariant and ok
                        checks.append({
                            "op": str(gen),
                            "element": f"s1^{r}*(s1+s2)^{p}*t1^{qa}*t2^{qb}",
                            "in_wl": ok})
    proper = not span.contains({((0, l + 1, 0, 0), ()): ONE})
    span_next = _WlSpan(l + 1, l + 2)
    s1_top = {((l + 1, 0, 0, 0), ()): ONE}
    strict = span_next.contains(s1_top) and not _WlSpan(l, l + 2).contains(s1_top)
    return WLReport(factors[0].family, l, window, checks, invariant, proper, strict)


# -- the rank invariant ---------------------------------------------------


def r_invariant(module, g, extra=0):
    """Stabilized rank of {g} with its images under large-mode generators
    (h and e for Omega, h and f for Delta, h, e, f for Theta), sampled
    over i in [I(g), I(g) + D) with D = sum_k (P_k + 2) + m + 1.  The rank
    must stabilize before the window ends."""
    family = _require_single_family(module)
    _require_distinct(module)
    if not g:
        raise DomainError("R_g needs a nonzero element")
    m = module.m
    p_bounds = [max(exps[k] for (exps, _) in g) for k in range(m)]
    D = sum(p + 2 for p in p_bounds) + m + 1 + extra
    i0 = module.annihilation_bound(g)
    kinds = {OMEGA: (h, e), DELTA: (h, f), THETA: (h, e, f)}[family]
    reducer = RowReducer()
    reducer.insert(coords(g))
    last_round_grew = False
    for i in range(i0, i0 + D):
        last_round_grew = False
        for kind in kinds:
            if reducer.insert(coords(module.act(kind(i), g))):
                last_round_grew = True
    if last_round_grew:
        raise WindowError("R_g rank did not stabilize inside the sampling "
                          "window; enlarge it")
    return reducer.rank


# -- omega operators and local finiteness --------------------------------


def finite_difference_sum(r, jexp):
    """sum_{i=0}^{r} binom(r,i) (-1)^{r-i} i^jexp  (0^0 = 1)."""
    return sum(comb(r, i) * (-1) ** (r - i) * i ** jexp for i in range(r + 1))


def omega_operator(module, l, j, r, g):
    """Apply sum_i binom(r,i)(-1)^{r-i} d_{l-j-i} d_{j+i} to g, exactly."""
    out = {}
    for i in range(r + 1):
        coef = Scalar(comb(r, i) * (-1) ** (r - i))
        tmp = module.act(d(j + i), g)
        tmp = module.act(d(l - j - i), tmp)
        for key, v in tmp.items():
            nv = out.get(key, ZERO) + coef * v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


def omega_s1s2_closed_form(lam1, lam2, l, j, r):
    """Closed form of the s1 s2 coefficient of omega_{l,j}^{(r)} applied
    to 1 (x) 1 over the trivial module (m = 2, r > 2):
    (lam1^{l-j-r} lam2^j + (-1)^r lam2^{l-j-r} lam1^j)(lam2 - lam1)^r."""
    lam1 = as_scalar(lam1)
    lam2 = as_scalar(lam2)
    head = lam1 ** (l - j - r) * lam2 ** j \
        + Scalar((-1) ** r) * lam2 ** (l - j - r) * lam1 ** j
    return head * (lam2 - lam1) ** r


def local_finiteness_probe(module, g, i, depth):
    """Ranks of span{g, d_i g, ..., d_i^n g} for n = 0..depth.  A strictly
    increasing sequence certifies that d_i is not locally finite at this
    depth."""
    reducer = RowReducer()
    ranks = []
    cur = g
    reducer.insert(coords(cur))
    ranks.append(reducer.rank)
    gen = d(i)
    for _ in range(depth):
        cur = module.act(gen, cur)
        reducer.insert(coords(cur))
        ranks.append(reducer.rank)
    return ranks

"""Command-line front end.

Each subcommand runs one verification suite or analysis and emits a
deterministic JSON report {command, config, checks, summary} (plus a
``result`` block for value-producing commands).  The full effective
config, including the sampling seed, is embedded in the report, so
re-running a report's config reproduces it byte for byte.

Exit codes: 0 all checks passed, 1 at least one check failed, 2
configuration error (unparseable scalar, inconsistent factor lists,
window too small).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (AlgebraError, DomainError, PreconditionError,
                     ScalarParseError, TruncationError, WindowError)
from .exact import Scalar, as_scalar
from .hwmod import HWParams, QuotientModule, TrivialModule
from .liealg import AlgebraElement, C, bracket, d, e, f, h
from .polymod import FAMILIES, FamilyParams, Poly2, act_rankone
from .tensor import (TensorModule, TensorParams, format_tensor_element,
                     parse_tensor_element)
from .analysis import (Window, cyclic_closure, local_finiteness_probe,
                       omega_operator, omega_s1s2_closed_form, r_invariant,
                       reduce_to_zero_degree, vandermonde_closed_form,
                       vandermonde_matrix, wl_submodule_check)
from .classify import (is_irreducible_rankone, is_irreducible_tensor,
                       iso_rankone, iso_tensor)
from .sampling import ParamSampler


class ConfigError(Exception):
    pass


# -- parameter parsing -----------------------------------------------------


def _parse_params(family, text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"expected 'lam,alpha,beta,gamma', got {text!r}")
    try:
        return FamilyParams(family, *[Scalar.parse(p) for p in parts])
    except (ScalarParseError, DomainError) as exc:
        raise ConfigError(str(exc)) from None


def _parse_factors(family, text):
    factors = tuple(_parse_params(family, part)
                    for part in text.split(";") if part.strip())
    if not factors:
        raise ConfigError("empty factor list")
    return factors


def _parse_hw(text, level, f0):
    if text.strip() == "trivial":
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected 'eta,eps,theta' or 'trivial', got {text!r}")
    try:
        return HWParams(*[Scalar.parse(p) for p in parts],
                        level_cutoff=level, f0_cutoff=f0)
    except ScalarParseError as exc:
        raise ConfigError(str(exc)) from None


def _hw_module(hw_params):
    return TrivialModule() if hw_params is None else QuotientModule(hw_params)


def _build_module(cfg, allow_mixed=False):
    family = cfg["family"]
    if cfg.get("factors"):
        factors = _parse_factors(family, cfg["factors"])
    else:
        sampler = ParamSampler(cfg["seed"])
        factors = sampler.factor_list(family, cfg.get("m") or 1)
        cfg["factors"] = ";".join(
            f"{p.lam},{p.alpha},{p.beta},{p.gamma}" for p in factors)
    hw = _parse_hw(cfg.get("hw", "trivial"), cfg["hw_level"], cfg["f0_max"])
    try:
        return TensorModule(factors, _hw_module(hw), allow_mixed=allow_mixed)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def _parse_element(module, cfg):
    text = cfg.get("seed_element")
    if not text:
        return module.unit()
    try:
        return parse_tensor_element(text, module.m)
    except (ScalarParseError, AlgebraError) as exc:
        raise ConfigError(f"bad element {text!r}: {exc}") from None


def _check(name, inputs, expected, actual, ok):
    return {"name": name, "inputs": inputs, "expected": expected,
            "actual": actual, "pass": bool(ok)}


# -- subcommand implementations --------------------------------------------


def _cmd_classify(cfg):
    checks = []
    result = {}
    family = cfg["family"]
    if cfg.get("factors"):
        t1 = TensorParams(_parse_factors(family, cfg["factors"]),
                          _parse_hw(cfg.get("hw") or "0,0,0",
                                    cfg["hw_level"], cfg["f0_max"])
                          or HWParams(0, 0, 0, cfg["hw_level"], cfg["f0_max"]))
        try:
            verdict = is_irreducible_tensor(t1)
        except PreconditionError as exc:
            raise ConfigError(str(exc)) from None
        result["irreducible"] = verdict
        checks.append(_check("irreducible_tensor",
                             {"factors": cfg["factors"]}, None, verdict, True))
        if cfg.get("factors2"):
            t2 = TensorParams(_parse_factors(family, cfg["factors2"]),
                              _parse_hw(cfg.get("hw2") or "0,0,0",
                                        cfg["hw_level"], cfg["f0_max"])
                              or HWParams(0, 0, 0, cfg["hw_level"], cfg["f0_max"]))
            try:
                verdict = iso_tensor(t1, t2)
            except PreconditionError as exc:
                raise ConfigError(str(exc)) from None
            result["isomorphic"] = verdict.isomorphic
            checks.append(_check("iso_tensor",
                                 {"factors": cfg["factors"],
                                  "factors2": cfg["factors2"]},
                                 None, verdict.to_json(), True))
    elif cfg.get("params"):
        p1 = _parse_params(family, cfg["params"])
        verdict = is_irreducible_rankone(p1)
        result["irreducible"] = verdict
        checks.append(_check("irreducible_rankone",
                             {"family": family, "params": cfg["params"]},
                             None, verdict, True))
        if cfg.get("params2"):
            p2 = _parse_params(cfg.get("family2") or family, cfg["params2"])
            v = iso_rankone(p1, p2)
            result["isomorphic"] = v.isomorphic
            checks.append(_check("iso_rankone",
                                 {"params": cfg["params"],
                                  "params2": cfg["params2"]},
                                 None, v.to_json(), True))
    else:
        raise ConfigError("classify needs --params or --factors")
    return checks, result


def _axiom_failures_rankone(params, mode_bound, pq_max):
    gens = [C] + [k(i) for k in (e, f, h, d)
                  for i in range(-mode_bound, mode_bound + 1)]
    monos = [Poly2.monomial(p, q) for p in range(pq_max + 1)
             for q in range(pq_max + 1)]
    bad = 0
    for xi in range(len(gens)):
        for yi in range(xi + 1, len(gens)):
            X, Y = gens[xi], gens[yi]
            br = bracket(X, Y)
            for g in monos:
                lhs = act_rankone(br, params, g)
                rhs = act_rankone(X, params, act_rankone(Y, params, g)) \
                    - act_rankone(Y, params, act_rankone(X, params, g))
                if lhs != rhs:
                    bad += 1
    return bad


def _axiom_failures_verma(hw, mode_bound):
    from .hwmod import TruncatedVerma
    V = TruncatedVerma(hw)
    gens = [C] + [k(i) for k in (e, f, h, d)
                  for i in range(-mode_bound, mode_bound + 1)]
    bad = 0
    checked = 0
    for w in V.basis_words():
        elem = {w: Scalar(1)}
        for xi in range(len(gens)):
            for yi in range(xi + 1, len(gens)):
                X, Y = gens[xi], gens[yi]
                try:
                    rhs = _sub_elem(V.act(X, V.act(Y, elem)),
                                    V.act(Y, V.act(X, elem)))
                    lhs = V.act_elem(bracket(X, Y), elem)
                except TruncationError:
                    continue
                checked += 1
                if lhs != rhs:
                    bad += 1
    return bad, checked


def _sub_elem(e1, e2):
    out = dict(e1)
    for k, v in e2.items():
        nv = out.get(k, Scalar(0)) - v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _axiom_failures_tensor(module, mode_bound, seeds):
    gens = [C] + [k(i) for k in (e, f, h, d)
                  for i in range(-mode_bound, mode_bound + 1)]
    bad = 0
    checked = 0
    for g in seeds:
        for xi in range(len(gens)):
            for yi in range(xi + 1, len(gens)):
                X, Y = gens[xi], gens[yi]
                try:
                    rhs = _sub_elem(module.act(X, module.act(Y, g)),
                                    module.act(Y, module.act(X, g)))
                    lhs = module.act(bracket(X, Y), g)
                except TruncationError:
                    continue
                checked += 1
                if lhs != rhs:
                    bad += 1
    return bad, checked


def _cmd_verify_axioms(cfg):
    checks = []
    target = cfg["target"]
    mode_bound = cfg["mode_bound"]
    sampler = ParamSampler(cfg["seed"])
    if target in ("lie", "all"):
        gens = [C] + [k(i) for k in (e, f, h, d)
                      for i in range(-mode_bound, mode_bound + 1)]
        anti_bad = sum(1 for x in gens for y in gens
                       if bracket(x, y) + bracket(y, x))
        checks.append(_check("lie_antisymmetry",
                             {"mode_bound": mode_bound},
                             0, anti_bad, anti_bad == 0))
        jac_bad = 0
        for x in gens:
            for y in gens:
                for z in gens:
                    s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) \
                        + bracket(z, bracket(x, y))
                    if s:
                        jac_bad += 1
        checks.append(_check("lie_jacobi", {"mode_bound": mode_bound},
                             0, jac_bad, jac_bad == 0))
    if target in ("rankone", "all"):
        for family in FAMILIES:
            for n in range(cfg["samples"]):
                params = sampler.family_params(family, admissible=False)
                bad = _axiom_failures_rankone(params, mode_bound, cfg["pq_max"])
                checks.append(_check(
                    "module_axiom_rankone",
                    {"family": family, "sample": n, "params": str(params)},
                    0, bad, bad == 0))
    if target in ("verma", "all"):
        for n in range(cfg["samples"]):
            eta, eps, theta = sampler.hw_tuple()
            hw = HWParams(eta, eps, theta, cfg["hw_level"], cfg["f0_max"])
            bad, done = _axiom_failures_verma(hw, mode_bound)
            checks.append(_check(
                "module_axiom_verma",
                {"sample": n, "hw": f"{eta},{eps},{theta}",
                 "level": cfg["hw_level"], "f0": cfg["f0_max"],
                 "checked": done},
                0, bad, bad == 0))
    if target in ("tensor", "all"):
        for family in FAMILIES:
            for n in range(cfg["samples"]):
                factors = sampler.factor_list(family, cfg["m"])
                eta, eps, theta = sampler.hw_tuple()
                hw = HWParams(eta, eps, theta, 2, 1)
                module = TensorModule(factors, QuotientModule(hw))
                seeds = [module.unit(),
                         module.monomial((1,) * (2 * module.m)),
                         module.monomial((0, 1) * module.m)]
                bad, done = _axiom_failures_tensor(module, mode_bound, seeds)
                checks.append(_check(
                    "module_axiom_tensor",
                    {"family": family, "sample": n, "m": cfg["m"],
                     "checked": done},
                    0, bad, bad == 0))
    return checks, None


def _cmd_det_check(cfg):
    checks = []
    sampler = ParamSampler(cfg["seed"])
    size_vectors = []

    def rec(acc, m_left):
        if not m_left:
            size_vectors.append(tuple(acc))
            return
        for s in range(1, cfg["max_size"] + 1):
            rec(acc + [s], m_left - 1)

    for m in range(1, cfg["max_m"] + 1):
        rec([], m)
    for sizes in size_vectors:
        for r in range(cfg["max_r"] + 1):
            for n in range(cfg["samples"]):
                lams = sampler.distinct_nonzero(len(sizes), imaginary=True)
                closed = vandermonde_closed_form(lams, list(sizes), r)
                elim = vandermonde_matrix(lams, list(sizes), r).det()
                checks.append(_check(
                    "vandermonde_det",
                    {"sizes": list(sizes), "r": r, "sample": n,
                     "lams": [str(x) for x in lams]},
                    str(closed), str(elim), closed == elim))
    return checks, None


def _cmd_reduce(cfg):
    module = _build_module(cfg)
    g = _parse_element(module, cfg)
    try:
        degrees = reduce_to_zero_degree(module, g)
    except (DomainError, WindowError) as exc:
        raise ConfigError(str(exc)) from None
    reached = bool(degrees) and not any(degrees[-1])
    try:
        expect_zero = is_irreducible_tensor(module.params)
    except PreconditionError:
        expect_zero = False
    checks = [_check("reduce_to_zero",
                     {"element": format_tensor_element(g, module.m),
                      "factors": cfg["factors"]},
                     "degree 0" if expect_zero else "(no guarantee)",
                     [list(dg) for dg in degrees],
                     reached or not expect_zero)]
    return checks, {"degrees": [list(dg) for dg in degrees],
                    "reached_zero": reached}


def _cmd_closure(cfg):
    module = _build_module(cfg)
    g = _parse_element(module, cfg)
    window = Window(cfg["p_max"], cfg["q_max"], cfg["mode_bound"],
                    cfg["hw_level"] if cfg.get("hw", "trivial") != "trivial" else 0)
    basis = cyclic_closure(module, g, window)
    m = module.m
    hw_words = 1
    if cfg.get("hw", "trivial") != "trivial":
        qb = module.hw.quotient_basis()
        hw_words = sum(len(v) for (lvl, _), v in qb.items()
                       if lvl <= window.hw_level)
    window_dim = ((cfg["p_max"] + 1) ** m) * ((cfg["q_max"] + 1) ** m) * hw_words
    result = {"dim": basis.dim, "escaped": basis.escaped,
              "window_dim": window_dim, "proper": basis.dim < window_dim}
    checks = [_check("cyclic_closure",
                     {"element": format_tensor_element(g, m),
                      "window": [cfg["p_max"], cfg["q_max"],
                                 cfg["mode_bound"], window.hw_level]},
                     None, result, True)]
    return checks, result


def _cmd_rg(cfg):
    module = _build_module(cfg)
    g = _parse_element(module, cfg)
    try:
        value = r_invariant(module, g)
    except (DomainError, WindowError) as exc:
        raise ConfigError(str(exc)) from None
    deg = module.degree(g)
    expected = module.m + 1 if deg is not None and not any(deg) else None
    checks = [_check("r_invariant",
                     {"element": format_tensor_element(g, module.m),
                      "m": module.m},
                     expected, value,
                     value == expected if expected is not None else True)]
    return checks, {"R_g": value}


def _cmd_wl_check(cfg):
    family = cfg["family"]
    if cfg.get("factors"):
        factors = _parse_factors(family, cfg["factors"])
    else:
        sampler = ParamSampler(cfg["seed"])
        lam = sampler.scalar(allow_zero=False)
        factors = (sampler.family_params(family, lam=lam),
                   sampler.family_params(family, lam=lam))
        cfg["factors"] = ";".join(
            f"{p.lam},{p.alpha},{p.beta},{p.gamma}" for p in factors)
    window = Window(cfg["p_max"], cfg["q_max"], cfg["mode_bound"])
    try:
        rep = wl_submodule_check(factors, cfg["l"], window)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    n_bad = sum(1 for c in rep.checks if not c["in_wl"])
    checks = [
        _check("wl_invariant", {"l": cfg["l"], "checked": len(rep.checks)},
               0, n_bad, rep.invariant),
        _check("wl_proper", {"l": cfg["l"], "witness": f"s2^{cfg['l'] + 1}"},
               "not in W_l", "not in W_l" if rep.proper else "in W_l",
               rep.proper),
        _check("wl_strict_inclusion", {"l": cfg["l"]},
               True, rep.strict, rep.strict),
    ]
    return checks, None


def _cmd_omega(cfg):
    module = _build_module(cfg)
    g = _parse_element(module, cfg)
    l, j, r = cfg["l"], cfg["j"], cfg["r"]
    try:
        image = omega_operator(module, l, j, r, g)
    except TruncationError as exc:
        raise ConfigError(str(exc)) from None
    checks = []
    result = {"nonzero": bool(image)}
    trivial_hw = cfg.get("hw", "trivial") == "trivial"
    if module.m == 2 and trivial_hw and r > 2 and g == module.unit():
        coeff = image.get(((1, 1, 0, 0), ()), Scalar(0))
        closed = omega_s1s2_closed_form(module.factors[0].lam,
                                        module.factors[1].lam, l, j, r)
        checks.append(_check("omega_s1s2_coefficient",
                             {"l": l, "j": j, "r": r},
                             str(closed), str(coeff), coeff == closed))
        result["s1s2_coefficient"] = str(coeff)
    else:
        checks.append(_check("omega_applied", {"l": l, "j": j, "r": r},
                             None, {"nonzero": bool(image)}, True))
    return checks, result


def _cmd_locfin(cfg):
    module = _build_module(cfg)
    g = _parse_element(module, cfg)
    i = cfg["i"]
    if i is None:
        i = module.annihilation_bound(g)
        cfg["i"] = i
    try:
        ranks = local_finiteness_probe(module, g, i, cfg["depth"])
    except TruncationError as exc:
        raise ConfigError(str(exc)) from None
    increasing = all(ranks[n] < ranks[n + 1] for n in range(len(ranks) - 1))
    expected = "strictly increasing" if g else "all zero"
    ok = increasing if g else all(x == 0 for x in ranks)
    checks = [_check("local_finiteness_ranks",
                     {"i": i, "depth": cfg["depth"]},
                     expected, ranks, ok)]
    return checks, {"ranks": ranks}


_COMMANDS = {
    "classify": _cmd_classify,
    "verify-axioms": _cmd_verify_axioms,
    "det-check": _cmd_det_check,
    "reduce": _cmd_reduce,
    "closure": _cmd_closure,
    "rg": _cmd_rg,
    "wl-check": _cmd_wl_check,
    "omega": _cmd_omega,
    "locfin": _cmd_locfin,
}

_DEFAULTS = {
    "family": "Omega", "seed": 0, "samples": 3, "mode_bound": 3,
    "pq_max": 3, "hw_level": 2, "f0_max": 2, "m": 1, "target": "all",
    "max_m": 3, "max_size": 3, "max_r": 2, "p_max": 3, "q_max": 3,
    "l": 0, "j": -1, "r": 3, "depth": 4, "i": None,
    "params": None, "params2": None, "family2": None, "factors": None,
    "factors2": None, "hw": "trivial", "hw2": None, "seed_element": None,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="avmodules",
        description="Exact verification toolkit for modules over the "
                    "affine-Virasoro algebra of type A1.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *flags):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--output", help="report file (default: stdout)")
        for flag, kw in flags:
            p.add_argument(flag, **kw)
        return p

    fam = ("--family", dict(choices=FAMILIES))
    fam2 = ("--family2", dict(choices=FAMILIES))
    seed = ("--seed", dict(type=int))
    hwf = ("--hw", dict(help="'eta,eps,theta' or 'trivial'"))
    hwlvl = ("--hw-level", dict(type=int, dest="hw_level"))
    f0max = ("--f0-max", dict(type=int, dest="f0_max"))
    factors = ("--factors", dict(help="'lam,alpha,beta,gamma;...' per slot"))
    elem = ("--seed-element", dict(dest="seed_element",
                                   help="tensor element, e.g. '1(x)vh'"))
    modeb = ("--mode-bound", dict(type=int, dest="mode_bound"))
    pmax = ("--p-max", dict(type=int, dest="p_max"))
    qmax = ("--q-max", dict(type=int, dest="q_max"))

    add("classify", "irreducibility and isomorphism verdicts",
        fam, fam2, ("--params", {}), ("--params2", {}), factors,
        ("--factors2", {}), hwf, ("--hw2", {}), hwlvl, f0max)
    add("verify-axioms", "module-axiom sweeps",
        ("--target", dict(choices=("lie", "rankone", "verma", "tensor", "all"))),
        seed, ("--samples", dict(type=int)), modeb,
        ("--pq-max", dict(type=int, dest="pq_max")), hwlvl, f0max,
        ("--m", dict(type=int)))
    add("det-check", "Vandermonde closed form vs elimination",
        seed, ("--max-m", dict(type=int, dest="max_m")),
        ("--max-size", dict(type=int, dest="max_size")),
        ("--max-r", dict(type=int, dest="max_r")),
        ("--samples", dict(type=int)))
    add("reduce", "iterated degree reduction trace",
        fam, factors, hwf, hwlvl, f0max, elem, seed, ("--m", dict(type=int)))
    add("closure", "cyclic closure inside a window",
        fam, factors, hwf, hwlvl, f0max, elem, seed, pmax, qmax, modeb,
        ("--m", dict(type=int)))
    add("rg", "the rank invariant R_g",
        fam, factors, hwf, hwlvl, f0max, elem, seed, ("--m", dict(type=int)))
    add("wl-check", "W_l submodule verification for equal lam's",
        fam, factors, seed, ("--l", dict(type=int)), modeb, pmax, qmax)
    add("omega", "omega_{l,j}^{(r)} probes",
        fam, factors, hwf, hwlvl, f0max, elem, seed,
        ("--l", dict(type=int)), ("--j", dict(type=int)),
        ("--r", dict(type=int)), ("--m", dict(type=int)))
    add("locfin", "local finiteness rank probe",
        fam, factors, hwf, hwlvl, f0max, elem, seed,
        ("--i", dict(type=int)), ("--depth", dict(type=int)),
        ("--m", dict(type=int)))
    return parser


def _effective_config(args):
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
    for key, value in vars(args).items():
        if key in ("command", "config", "output"):
            continue
        if value is not None:
            cfg[key] = value
    return cfg


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _effective_config(args)
        checks, result = _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (WindowError, TruncationError) as exc:
        print(f"window too small: {exc}", file=sys.stderr)
        return 2
    passed = sum(1 for c in checks if c["pass"])
    report = {
        "command": args.command,
        "config": {k: v for k, v in sorted(cfg.items())},
        "checks": checks,
        "summary": {"total": len(checks), "passed": passed,
                    "failed": len(checks) - passed},
    }
    if result is not None:
        report["result"] = result
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed == len(checks) else 1


def main():
    sys.exit(run())

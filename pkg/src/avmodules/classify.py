"""Parameter-level irreducibility and isomorphism decisions.

Rank-one factors: Omega and Delta modules are irreducible for every
admissible parameter choice; a Theta module is irreducible iff 2*beta is
not a nonnegative integer.  Cross-family modules are never isomorphic;
within Omega (and within Delta) the parameters are determined up to the
mirror beta -> -beta - 1; Theta parameters are determined exactly.

Tensor modules (all factors one family, lam's pairwise distinct, factors
irreducible): two are isomorphic iff the factor counts agree, the
highest-weight parameters agree, and the rank-one factors match slotwise
after the unique permutation aligning the lam multisets.  The
highest-weight comparison is tuple equality of (eta, eps, theta): the
weight of the generating vector is an isomorphism invariant of an
irreducible highest-weight module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError
from .polymod import FamilyParams, THETA
from .tensor import TensorParams


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of an isomorphism test; when isomorphic, the witness gives
    the slot permutation (0-indexed; slot k of the first module matches
    slot perm[k] of the second) and the per-slot parameter relation."""

    isomorphic: bool
    permutation: Optional[tuple] = None
    relations: Optional[tuple] = None

    def to_json(self):
        out = {"isomorphic": self.isomorphic}
        if self.isomorphic:
            out["permutation"] = list(self.permutation)
            out["relations"] = list(self.relations)
        return out


def twice_beta_is_nonneg_int(beta):
    two = beta + beta
    return two.is_nonneg_integer()


def is_irreducible_rankone(params: FamilyParams) -> bool:
    if params.family != THETA:
        return True
    return not twice_beta_is_nonneg_int(params.beta)


def _rankone_relation(p1, p2):
    """The relation making p1 isomorphic to p2, or None."""
    if p1.family != p2.family:
        return None
    if (p1.lam, p1.alpha, p1.gamma) != (p2.lam, p2.alpha, p2.gamma):
        return None
    if p1.beta == p2.beta:
        return "equal"
    if p1.family != THETA and p1.beta == -p2.beta - 1:
        return "beta_mirror"
    return None


def iso_rankone(p1: FamilyParams, p2: FamilyParams) -> IsoVerdict:
    rel = _rankone_relation(p1, p2)
    if rel is None:
        return IsoVerdict(False)
    return IsoVerdict(True, (0,), (rel,))


def is_irreducible_tensor(params: TensorParams) -> bool:
    for k, p in enumerate(params.factors):
        if not is_irreducible_rankone(p):
            raise PreconditionError(
                f"factor {k} ({p}) is reducible; the tensor criterion "
                "assumes irreducible factors")
    lams = params.lams()
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            if lams[i] == lams[j]:
                return False
    return True


def iso_tensor(t1: TensorParams, t2: TensorParams,
               hw_equal: Optional[bool] = None) -> IsoVerdict:
    """Isomorphism test for two irreducible tensor modules.  hw_equal can
    inject an externally known verdict on the highest-weight factors;
    left as None it is decided by (eta, eps, theta) tuple equality."""
    if not is_irreducible_tensor(t1) or not is_irreducible_tensor(t2):
        raise PreconditionError("iso_tensor assumes both tensors irreducible "
                                "(pairwise distinct lam's)")
    if hw_equal is None:
        hw_equal = ((t1.hw.eta, t1.hw.eps, t1.hw.theta)
                    == (t2.hw.eta, t2.hw.eps, t2.hw.theta))
    if t1.m != t2.m or t1.family != t2.family or not hw_equal:
        return IsoVerdict(False)
    # lam's are distinct, so the matching permutation is unique if any
    lookup = {p.lam: j for j, p in enumerate(t2.factors)}
    perm = []
    rels = []
    for p in t1.factors:
        j = lookup.get(p.lam)
        if j is None:
            return IsoVerdict(False)
        rel = _rankone_relation(p, t2.factors[j])
        if rel is None:
            return IsoVerdict(False)
        perm.append(j)
        rels.append(rel)
    return IsoVerdict(True, tuple(perm), tuple(rels))

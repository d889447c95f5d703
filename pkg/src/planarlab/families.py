"""Parameterized generators for the known planar families.

Each family has a validity predicate encoding its side conditions and an
expansion to an exact value table.  Element-valued parameters (alpha,
beta, omega, a) are integer codes; find_params locates the
lexicographically-least valid choices so test specimens are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

import numpy as np

from .errors import InvalidSpec, NotClosed, OddDegree, UnknownFamily
from .fpoly import (
    DOPoly,
    FuncTable,
    poly_add,
    poly_frobenius,
    poly_neg,
    poly_sub,
    reduce_poly,
    to_table,
)
from .gf import FieldCtx, field_new

FAMILY_IDS = (
    "square",
    "dickson",
    "monomial_pm",
    "bier2010_f6",
    "zkw",
    "gen_bh",
    "bierbrauer",
    "f1",
    "f2",
)


@dataclass
class FamilySpec:
    family_id: str
    params: dict[str, int]

    def to_json(self) -> dict:
        return {"family": self.family_id, **{k: int(v) for k, v in self.params.items()}}


@dataclass
class ValidationResult:
    ok: bool
    violated: list[str] = dc_field(default_factory=list)


def field_degree(spec: FamilySpec) -> int:
    fam, pr = spec.family_id, spec.params
    if fam == "square":
        return pr["n"]
    if fam == "monomial_pm":
        return pr["r"]
    if fam in ("dickson", "gen_bh", "f1", "f2"):
        return 2 * pr["r"]
    if fam == "bier2010_f6":
        return 4 * pr["t"]
    if fam == "zkw":
        return 3 * pr["t"]
    if fam == "bierbrauer":
        return 2 * (2 * pr["k"] + 1)
    raise UnknownFamily(spec.family_id)


def field_for(spec: FamilySpec) -> FieldCtx:
    return field_new(spec.params["p"], field_degree(spec))


def _nonsquare_in_subfield(F: FieldCtx, a: int) -> bool:
    r = F.n // 2
    return a != 0 and F.in_subfield(a) and F.pow(a, (F.p**r - 1) // 2) != 1


def _no_solution_z_pow_is_minus_one(F: FieldCtx, e: int) -> bool:
    zs = np.arange(1, F.q, dtype=np.int64)
    return not (F.vpow(zs, e) == F.neg(1)).any()


def monomial_is_planar_arith(p: int, n: int, d: int) -> bool:
    """Lemma-4(iv) arithmetic for x^(p^i + p^k) with d = k - i."""
    return ((p**n - 1) // gcd(p**n - 1, p**d - 1)) % 2 == 1


def validate(spec: FamilySpec, field: FieldCtx | None = None) -> ValidationResult:
    fam, pr = spec.family_id, spec.params
    if fam not in FAMILY_IDS:
        raise UnknownFamily(fam)
    p = pr["p"]
    bad: list[str] = []

    if fam == "square":
        pass

    elif fam == "monomial_pm":
        r, m = pr["r"], pr["m"]
        if not 1 <= m < r:
            bad.append("1 <= m < r")
        elif (r // gcd(r, m)) % 2 == 0:
            bad.append("r/gcd(r,m) odd")

    elif fam == "dickson":
        r, m = pr["r"], pr["m"]
        F = field or field_for(spec)
        if not 0 < m < 2 * r:
            bad.append("0 < m < 2r")
        if not _nonsquare_in_subfield(F, pr["alpha"]):
            bad.append("alpha is a non-square in F_{p^r}")
        if F.in_subfield(pr["beta"]):
            bad.append("beta outside F_{p^r}")

    elif fam == "bier2010_f6":
        t, s, a = pr["t"], pr["s"], pr["a"]
        F = field or field_for(spec)
        if s < 1:
            bad.append("s >= 1")
        if p**s % 4 != 1:
            bad.append("p^s = 1 (mod 4)")
        if p**t % 4 != 1:
            bad.append("p^t = 1 (mod 4)")
        if s >= 1 and (2 * t // gcd(s, 2 * t)) % 2 == 0:
            bad.append("2t/gcd(s,2t) odd")
        if a == 0 or F.frobenius_pow(a, 2 * t) == a:
            bad.append("a outside F_{p^2t}")

    elif fam == "zkw":
        t, s, a = pr["t"], pr["s"], pr["a"]
        F = field or field_for(spec)
        if s < 1:
            bad.append("s >= 1")
        if gcd(3, t) != 1:
            bad.append("gcd(3,t) = 1")
        if (t - s) % 3 != 0:
            bad.append("t - s = 0 (mod 3)")
        if s >= 1 and (3 * t // gcd(s, 3 * t)) % 2 == 0:
            bad.append("3t/gcd(s,3t) odd")
        if a == 0 or F.mult_order(a) != F.q - 1:
            bad.append("a primitive")

    elif fam == "gen_bh":
        r, s, omega, beta = pr["r"], pr["s"], pr["omega"], pr["beta"]
        F = field or field_for(spec)
        if not 0 <= s < 2 * r:
            bad.append("0 <= s < 2r")
        if omega == 0:
            bad.append("omega nonzero (degenerate form)")
        elif F.rel_trace(omega) != 0:
            bad.append("Tr(omega) = 0")
        if beta == 0:
            bad.append("beta nonzero")
        else:
            d = (p**r + 1) // gcd(p**r + 1, p**s + 1)
            if F.pow(beta, (p**r - 1) * d) == 1:
                bad.append("beta^(p^r-1) outside the subgroup of order (p^r+1)/gcd(p^r+1,p^s+1)")
        if not _no_solution_z_pow_is_minus_one(F, (p**s - 1) % (F.q - 1)):
            bad.append("x^(p^s) != -x for all nonzero x")

    elif fam == "bierbrauer":
        if pr["k"] < 1:
            bad.append("k > 0")

    elif fam in ("f1", "f2"):
        r, i, k = pr["r"], pr["i"], pr["k"]
        if not 0 <= i < k < 2 * r:
            bad.append("0 <= i < k < 2r")
        elif not monomial_is_planar_arith(p, 2 * r, k - i):
            bad.append("h planar (Lemma-4(iv) arithmetic)")

    return ValidationResult(ok=not bad, violated=bad)


def seed_polys(spec: FamilySpec, field: FieldCtx | None = None) -> tuple[DOPoly, DOPoly]:
    """The (g, h) seed pair for the families built through the general
    construction f = g + g^(p^r) + h - h^(p^r)."""
    fam, pr = spec.family_id, spec.params
    F = field or field_for(spec)
    p = pr["p"]
    if fam == "f1":
        g = reduce_poly(F, [(2, 1)])
        h = reduce_poly(F, [(p ** pr["i"] + p ** pr["k"], 1)])
        return g, h
    if fam == "f2":
        g = reduce_poly(F, [(p ** pr["i"] + p ** pr["k"], 1)])
        h = reduce_poly(F, [(2, 1)])
        return g, h
    if fam == "bierbrauer":
        k = pr["k"]
        inv2 = F.inv(2)
        neg_inv2 = F.neg(inv2)
        g = reduce_poly(F, [(2, inv2)])
        terms = []
        for i in range(k + 1):
            terms.append(((1 + p**2) * p ** (2 * i), inv2 if i % 2 == 0 else neg_inv2))
        for j in range(k):
            sign = (k + j) % 2
            terms.append(((1 + p**2) * p ** (2 * j + 1), inv2 if sign == 0 else neg_inv2))
        h = reduce_poly(F, terms)
        return g, h
    raise UnknownFamily(f"{fam} has no (g, h) seed form")


def expand_poly(spec: FamilySpec, field: FieldCtx | None = None,
                allow_invalid: bool = False) -> DOPoly:
    """Reduced-spectrum expansion of a family instance."""
    fam, pr = spec.family_id, spec.params
    F = field or field_for(spec)
    if not allow_invalid:
        v = validate(spec, field=F)
        if not v.ok:
            raise InvalidSpec(f"{fam}: violated {v.violated}")
    p = pr["p"]

    if fam == "square":
        return reduce_poly(F, [(2, 1)])

    if fam == "monomial_pm":
        return reduce_poly(F, [(p ** pr["m"] + 1, 1)])

    if fam == "bier2010_f6":
        t, s, a = pr["t"], pr["s"], pr["a"]
        c = F.neg(F.pow(a, p**t - 1))
        return reduce_poly(F, [(p**s + 1, 1), (p ** (3 * t) + p ** (t + s), c)])

    if fam == "zkw":
        t, s, a = pr["t"], pr["s"], pr["a"]
        c = F.neg(F.pow(a, p**t - 1))
        return reduce_poly(F, [(p**s + 1, 1), (p**t + p ** (2 * t + s), c)])

    if fam == "gen_bh":
        r, s, omega, beta = pr["r"], pr["s"], pr["omega"], pr["beta"]
        return reduce_poly(F, [
            (p**r + 1, 1),
            (p**s + 1, F.mul(omega, beta)),
            ((p**s + 1) * p**r, F.mul(omega, F.frobenius_pow(beta, r))),
        ])

    if fam == "dickson":
        r, m = pr["r"], pr["m"]
        alpha, beta = pr["alpha"], pr["beta"]
        gamma = F.sub(F.frobenius_pow(beta, r), beta)
        inv_g = F.inv(gamma)
        neg2 = F.neg(2)
        # alpha * ((x^(p^r) - x) / gamma)^(2 p^m)
        ca = F.mul(alpha, F.pow(inv_g, 2 * p**m))
        # -beta^2 * ((x^(p^r) - x) / gamma)^2
        cb = F.neg(F.mul(F.mul(beta, beta), F.mul(inv_g, inv_g)))
        raw = [(2, 1),
               (2 * p ** (r + m), ca),
               ((p**r + 1) * p**m, F.mul(ca, neg2)),
               (2 * p**m, ca),
               (2 * p**r, cb),
               (p**r + 1, F.mul(cb, neg2)),
               (2, cb)]
        return reduce_poly(F, raw)

    if fam in ("f1", "f2", "bierbrauer"):
        r = F.n // 2
        g, h = seed_polys(spec, field=F)
        f = poly_add(poly_add(g, poly_frobenius(g, r)),
                     poly_sub(h, poly_frobenius(h, r)))
        return f

    raise UnknownFamily(fam)


def expand(spec: FamilySpec, field: FieldCtx | None = None,
           allow_invalid: bool = False) -> FuncTable:
    F = field or field_for(spec)
    return to_table(expand_poly(spec, field=F, allow_invalid=allow_invalid))


@dataclass(eq=False)
class Restriction:
    """A function restricted to the quadratic-subfield fixed points,
    kept in ambient encoding (domain = sorted fixed-point codes)."""

    field: FieldCtx
    domain: np.ndarray
    values: np.ndarray

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Restriction)
            and np.array_equal(self.domain, other.domain)
            and np.array_equal(self.values, other.values)
        )


def restrict_to_subfield(f: FuncTable) -> Restriction:
    F = f.field
    if F.n % 2:
        raise OddDegree("restriction needs an even-degree field")
    dom = F.subfield_points
    vals = f.values[dom]
    r = F.n // 2
    if not (F.vfrob_pow(vals, r) == vals).all():
        raise NotClosed("restriction image leaves the subfield")
    return Restriction(field=F, domain=dom, values=vals)


# -- deterministic parameter search --

def find_params(family_id: str, p: int, **sized) -> FamilySpec:
    """Lexicographically-least element parameters satisfying validate."""
    if family_id == "dickson":
        r = sized["r"]
        F = field_new(p, 2 * r)
        for alpha in range(F.q):
            if not _nonsquare_in_subfield(F, alpha):
                continue
            for beta in range(F.q):
                if F.in_subfield(beta):
                    continue
                for m in range(1, 2 * r):
                    spec = FamilySpec("dickson", {"p": p, "r": r, "m": m,
                                                  "alpha": alpha, "beta": beta})
                    if validate(spec, field=F).ok:
                        return spec
        raise InvalidSpec("no valid dickson parameters")

    if family_id == "gen_bh":
        r = sized["r"]
        F = field_new(p, 2 * r)
        for omega in range(1, F.q):
            if F.rel_trace(omega) != 0:
                continue
            for beta in range(1, F.q):
                for s in range(2 * r):
                    spec = FamilySpec("gen_bh", {"p": p, "r": r, "s": s,
                                                 "omega": omega, "beta": beta})
                    if validate(spec, field=F).ok:
                        return spec
        raise InvalidSpec("no valid gen_bh parameters")

    if family_id == "zkw":
        t, s = sized["t"], sized["s"]
        F = field_new(p, 3 * t)
        for a in range(1, F.q):
            spec = FamilySpec("zkw", {"p": p, "t": t, "s": s, "a": a})
            if validate(spec, field=F).ok:
                return spec
        raise InvalidSpec("no valid zkw parameters")

    if family_id == "bier2010_f6":
        t, s = sized["t"], sized["s"]
        F = field_new(p, 4 * t)
        for a in range(1, F.q):
            spec = FamilySpec("bier2010_f6", {"p": p, "t": t, "s": s, "a": a})
            if validate(spec, field=F).ok:
                return spec
        raise InvalidSpec("no valid bier2010_f6 parameters")

    raise UnknownFamily(f"find_params does not handle {family_id}")

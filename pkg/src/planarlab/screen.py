"""Non-existence filters for the two-seed construction.

Integer-side predicates (factorization identity, difference
divisibility, the parity table) each come with a companion verifier
that re-derives the claim computationally: exact bivariate expansion
over the integers for the factorization identity, root-pair containment
over a concrete field for divisibility, and the direct planarity oracle
on the F_{p^2} restriction for the parity table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadExponents, HypothesisNotEstablished
from .fpoly import DOPoly, FuncTable, reduce_poly, to_table
from .gf import FieldCtx, field_new
from . import planar


# -- Lemma-13 factorization identity -----------------------------------------

def factorization_identity_holds(m: int, n: int) -> bool:
    """x^m + a^m = (x^n + a^n) * alternating-sum factor, iff n | m odd-ratio."""
    if m < 1 or n < 1:
        raise BadExponents("m, n must be positive")
    return m % n == 0 and (m // n) % 2 == 1


def expand_identity_sides(m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense integer-coefficient bivariate expansions of both sides,
    indexed [deg_x, deg_a]; the sum runs to floor(m/n)."""
    lhs = np.zeros((m + 1, m + 1), dtype=np.int64)
    lhs[m, 0] += 1
    lhs[0, m] += 1
    s = m // n
    factor = np.zeros((m + 1, m + 1), dtype=np.int64)
    for k in range(1, s + 1):
        factor[m - k * n, (k - 1) * n] += (-1) ** (k + 1)
    rhs = np.zeros((m + 1, m + 1), dtype=np.int64)
    # (x^n + a^n) * factor
    rhs[n:, :] += factor[: m + 1 - n, :]
    rhs[:, n:] += factor[:, : m + 1 - n]
    return lhs, rhs


def verify_factorization_identity(m: int, n: int):
    """(holds, mismatch): exact symbolic comparison; mismatch is the
    first (deg_x, deg_a, lhs_coeff, rhs_coeff) differing term."""
    lhs, rhs = expand_identity_sides(m, n)
    diff = lhs != rhs
    if not diff.any():
        return True, None
    dx, da = map(int, np.argwhere(diff)[0])
    return False, (dx, da, int(lhs[dx, da]), int(rhs[dx, da]))


# -- Corollary-14 difference divisibility ------------------------------------

def do_divides(i: int, j: int, s: int, t: int) -> bool:
    """Whether D of x^(p^i + p^j) divides D of x^(p^s + p^t).

    Requires i > j and s > t; equal exponents (the x^2-style degenerate
    case) are excluded rather than guessed.
    """
    if i <= j or s <= t:
        raise BadExponents("need i > j and s > t (degenerate equal exponents excluded)")
    return (s - t) % (i - j) == 0 and ((s - t) // (i - j)) % 2 == 1


def root_pairs_contained(field: FieldCtx, divisor: FuncTable, multiple: FuncTable) -> bool:
    """Every root pair (x, a) of D_divisor is a root pair of D_multiple."""
    q = field.q
    xs = np.arange(q, dtype=np.int64)
    for x0 in range(0, q, 64):
        blk = np.arange(x0, min(x0 + 64, q), dtype=np.int64)
        dg = planar.d_f_block(divisor, blk, xs)
        dh = planar.d_f_block(multiple, blk, xs)
        if ((dg == 0) & (dh != 0)).any():
            return False
    return True


@dataclass
class Thm15Result:
    not_planar: bool
    witness: tuple[int, int] | None = None


def thm15_filter(g: DOPoly, h: DOPoly, field: FieldCtx) -> Thm15Result:
    """Non-planarity propagation: with D_h | D_g established, a
    non-planar g forces f = g + g^(p^r) + h - h^(p^r) non-planar."""
    gi, hk = _monomial_exponents(g), _monomial_exponents(h)
    i, j = max(gi), min(gi)
    s, t = max(hk), min(hk)
    # hypothesis: D_h divides D_g
    if not do_divides(s, t, i, j):
        raise HypothesisNotEstablished("D_h does not divide D_g for these exponents")
    verdict = planar.is_planar_do(g)
    if verdict.planar:
        return Thm15Result(not_planar=False)
    return Thm15Result(not_planar=True, witness=verdict.witness)


def _monomial_exponents(poly: DOPoly) -> tuple[int, int]:
    from .fpoly import reduce_exponent

    if len(poly.spectrum) != 1:
        raise BadExponents("filter expects DO monomials")
    (e, _), = poly.spectrum.items()
    p, n, q = poly.field.p, poly.field.n, poly.field.q
    for i in range(n):
        for k in range(i, n):
            if reduce_exponent(p**i + p**k, q) == e:
                return i, k
    raise BadExponents(f"exponent {e} is not of DO monomial form")


# -- parity table ------------------------------------------------------------

_NOT_PLANAR_ROWS = {
    # (r odd, k-i odd, t-s odd) -> row number in the 8-row table
    (True, False, True): 1,
    (True, True, True): 2,
    (False, True, False): 7,
    (False, True, True): 8,
}

_POSSIBLY_ROWS = {
    (True, False, False): 3,
    (True, True, False): 4,
    (False, False, False): 5,
    (False, False, True): 6,
}


@dataclass
class ScreenVerdict:
    possibly_planar: bool
    rule_fired: str | None
    detail: dict

    def to_json(self) -> dict:
        return {
            "possibly_planar": self.possibly_planar,
            "rule_fired": self.rule_fired,
            "parities": self.detail,
        }


def parity_screen(r: int, i: int, k: int, s: int, t: int) -> ScreenVerdict:
    """The 8-row parity table for f = g + g^(p^r) + h - h^(p^r) with
    g = x^(p^i + p^k), h = x^(p^s + p^t): not planar when r is odd and
    t - s is odd, or r is even and k - i is odd."""
    if not (0 <= i <= k < 2 * r and 0 <= s <= t < 2 * r):
        raise BadExponents("need 0 <= i <= k < 2r and 0 <= s <= t < 2r")
    key = (r % 2 == 1, (k - i) % 2 == 1, (t - s) % 2 == 1)
    detail = {"r": "odd" if key[0] else "even",
              "k_minus_i": "odd" if key[1] else "even",
              "t_minus_s": "odd" if key[2] else "even"}
    if key in _NOT_PLANAR_ROWS:
        return ScreenVerdict(possibly_planar=False,
                             rule_fired=f"parity_table_row_{_NOT_PLANAR_ROWS[key]}",
                             detail=detail)
    return ScreenVerdict(possibly_planar=True, rule_fired=None, detail=detail)


def restricted_f_over_p2(p: int, r: int, i: int, k: int, s: int, t: int) -> FuncTable:
    """f restricted to F_{p^2}: exponents and the conjugation collapse
    to their residues mod 2."""
    F = field_new(p, 2)
    rr = r % 2
    g = reduce_poly(F, [(p ** (i % 2) + p ** (k % 2), 1)])
    h = reduce_poly(F, [(p ** (s % 2) + p ** (t % 2), 1)])
    from .fpoly import poly_add, poly_frobenius, poly_sub

    f = poly_add(poly_add(g, poly_frobenius(g, rr)),
                 poly_sub(h, poly_frobenius(h, rr)))
    return to_table(f)


def validate_parity_row(p: int, r: int, i: int, k: int, s: int, t: int) -> bool:
    """Companion oracle check: a 'not planar' parity verdict must be
    confirmed by the direct oracle on the F_{p^2} restriction."""
    verdict = parity_screen(r, i, k, s, t)
    if verdict.possibly_planar:
        return True
    table = restricted_f_over_p2(p, r, i, k, s, t)
    return not planar.is_planar_delta(table).planar

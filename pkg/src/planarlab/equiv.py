"""Linear equivalence by exhaustive search, plus invariant fingerprints.

For planar Dembowski-Ostrom polynomials CCZ, EA and linear equivalence
coincide, and both compared functions fix 0 with no linear terms in
reduced form, so searching pairs (L1, L2) of linear bijections with
L1(f(x)) = g(L2(x)) is complete.  L2 ranges over GL(n, p) acting on
F_p-coordinate vectors, enumerated column-by-column in lexicographic
code order; L1 is then forced on the image of f and extended by
linearity, so each candidate costs a handful of vectorized operations.

Fingerprints are cheap equivalence invariants used where brute force is
out of reach: planarity, the quadratic-subfield restriction class, and
(optionally) the nuclei sizes of the associated semifield.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import FieldMismatch, NotPlanar, OddDegree, SearchSpaceTooLarge
from .fpoly import (
    FuncTable,
    is_permutation,
    linearized_from_coeffs,
    same_field,
    to_table,
)
from .gf import FieldCtx
from . import families, planar

# -- small linear algebra over F_p ------------------------------------------

def modp_rank(mat: np.ndarray, p: int) -> int:
    m = mat.copy() % p
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r, c] % p:
                piv = r
                break
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        m[rank] = (m[rank] * pow(int(m[rank, c]), -1, p)) % p
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] = (m[r] - m[r, c] * m[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def modp_inv(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    aug = np.concatenate([mat.copy() % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r, c] % p)
        aug[[c, piv]] = aug[[piv, c]]
        aug[c] = (aug[c] * pow(int(aug[c, c]), -1, p)) % p
        for r in range(n):
            if r != c and aug[r, c]:
                aug[r] = (aug[r] - aug[r, c] * aug[c]) % p
    return aug[:, n:]


def gl_order(n: int, p: int) -> int:
    return reduce(lambda acc, i: acc * (p**n - p**i), range(n), 1)


def gl_matrices(n: int, p: int):
    """Yield every matrix of GL(n, p), columns chosen in ascending code
    order with incremental-rank filtering; deterministic."""
    weights = p ** np.arange(n, dtype=np.int64)
    vectors = np.stack([(np.arange(p**n, dtype=np.int64) // w) % p for w in weights], axis=1)
    cols: list[np.ndarray] = []

    def rec():
        if len(cols) == n:
            yield np.stack(cols, axis=1)
            return
        have = np.stack(cols, axis=0) if cols else np.zeros((0, n), dtype=np.int64)
        for code in range(1, p**n):
            v = vectors[code]
            cand = np.concatenate([have, v[None, :]], axis=0)
            if modp_rank(cand, p) == len(cols) + 1:
                cols.append(v)
                yield from rec()
                cols.pop()

    yield from rec()


# -- generic linear-equivalence search on value tables ----------------------

@dataclass
class _TablePrep:
    basis_x: np.ndarray      # domain indices whose f-values form an image basis
    B: np.ndarray            # (d, dim) digit matrix of those values
    J: np.ndarray            # pivot columns making B[:, J] invertible
    Minv: np.ndarray         # inverse of B[:, J]
    C: np.ndarray            # (m, d): f(x) = C[x] @ B for every x


def _digits_of(codes: np.ndarray, dim: int, p: int) -> np.ndarray:
    w = p ** np.arange(dim, dtype=np.int64)
    return (np.asarray(codes, dtype=np.int64)[..., None] // w) % p


def _prep_table(fvals: np.ndarray, dim: int, p: int) -> _TablePrep:
    Df = _digits_of(fvals, dim, p)
    basis_x, rows = [], []
    for x in range(len(fvals)):
        cand = np.array(rows + [Df[x]], dtype=np.int64)
        if modp_rank(cand, p) == len(rows) + 1:
            basis_x.append(x)
            rows.append(Df[x])
            if len(rows) == dim:
                break
    B = np.array(rows, dtype=np.int64)
    d = len(rows)
    # pivot columns of B
    J = []
    for c in range(dim):
        if modp_rank(B[:, J + [c]], p) == len(J) + 1:
            J.append(c)
            if len(J) == d:
                break
    J = np.array(J, dtype=np.int64)
    Minv = modp_inv(B[:, J], p)
    C = (Df[:, J] @ Minv) % p
    assert ((C @ B) % p == Df).all(), "image of f does not lie in its own span"
    return _TablePrep(basis_x=np.array(basis_x), B=B, J=J, Minv=Minv, C=C)


def _complete_pair(B: np.ndarray, V: np.ndarray, dim: int, p: int):
    """Extend the forced partial map B -> V to a bijective linear map,
    or return None when V's rows are dependent."""
    d = B.shape[0]
    if modp_rank(V, p) < d:
        return None
    Bx, Vx = B.copy(), V.copy()
    eye = np.eye(dim, dtype=np.int64)
    for v in eye:
        if Bx.shape[0] == dim:
            break
        if modp_rank(np.concatenate([Bx, v[None]]), p) == Bx.shape[0] + 1:
            for wv in eye:
                if modp_rank(np.concatenate([Vx, wv[None]]), p) == Vx.shape[0] + 1:
                    Bx = np.concatenate([Bx, v[None]])
                    Vx = np.concatenate([Vx, wv[None]])
                    break
    # rows: Bx @ L.T = Vx  =>  L.T = Bx^-1 @ Vx
    LT = (modp_inv(Bx, p) @ Vx) % p
    return LT.T % p


def linear_equiv_tables(fvals: np.ndarray, gvals: np.ndarray, dim: int, p: int,
                        max_candidates: int | None = None):
    """Search L2 in GL(dim, p) and a forced L1 with L1(f(x)) = g(L2(x)).

    Returns (L1, L2, tried) matrices acting on base-p digit vectors, or
    (None, None, tried) when the search exhausts.
    """
    m = p**dim
    total = gl_order(dim, p)
    if max_candidates is not None and total > max_candidates:
        raise SearchSpaceTooLarge(f"|GL({dim},{p})| = {total} exceeds budget {max_candidates}")
    prep = _prep_table(fvals, dim, p)
    D = _digits_of(np.arange(m), dim, p)
    weights = p ** np.arange(dim, dtype=np.int64)
    Dg = _digits_of(gvals, dim, p)
    tried = 0
    for M2 in gl_matrices(dim, p):
        tried += 1
        l2codes = ((D @ M2.T) % p) @ weights
        w = gvals[l2codes]
        Dw = _digits_of(w, dim, p)
        V = Dw[prep.basis_x]
        if (((prep.C @ V) % p) != Dw).any():
            continue
        L1 = _complete_pair(prep.B, V, dim, p)
        if L1 is None:
            continue
        return L1, M2, tried
    return None, None, tried


# -- field-level wrapper ----------------------------------------------------

@dataclass
class EquivResult:
    equivalent: bool | str     # True / False / "unknown"
    method: str
    witness: dict | None = None
    candidates_tried: int = 0

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "method": self.method,
            "witness": self.witness,
        }


def matrix_to_linearized(F: FieldCtx, M: np.ndarray) -> list[int]:
    """Coefficients c_j with sum c_j x^(p^j) realizing the digit-space map M.

    Solved from the Moore system on the power basis b_i = code p^i.
    """
    n = F.n
    weights = F.p ** np.arange(n, dtype=np.int64)
    basis = [F.p**i for i in range(n)]
    ys = [int((M[:, i] % F.p) @ weights) for i in range(n)]
    A = [[F.frobenius_pow(basis[i], j) for j in range(n)] for i in range(n)]
    return _field_solve(F, A, ys)


def _field_solve(F: FieldCtx, A, y) -> list[int]:
    n = len(y)
    A = [row[:] for row in A]
    y = list(y)
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        y[c], y[piv] = y[piv], y[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(v, inv) for v in A[c]]
        y[c] = F.mul(y[c], inv)
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [F.sub(v, F.mul(f, w)) for v, w in zip(A[r], A[c])]
                y[r] = F.sub(y[r], F.mul(f, y[c]))
    return y


def verify_witness(f: FuncTable, g: FuncTable, l1_coeffs, l2_coeffs) -> bool:
    F = f.field
    L1 = to_table(linearized_from_coeffs(F, l1_coeffs))
    L2 = to_table(linearized_from_coeffs(F, l2_coeffs))
    if not (is_permutation(L1) and is_permutation(L2)):
        return False
    return bool((L1.values[f.values] == g.values[L2.values]).all())


def linear_equivalent_bruteforce(f: FuncTable, g: FuncTable,
                                 budget: int | None = None) -> EquivResult:
    """Exhaustive linear-equivalence decision: L1 o f = g o L2."""
    F = f.field
    if not same_field(F, g.field):
        raise FieldMismatch("functions live over different fields")
    if budget is None:
        if F.q > 81:
            raise SearchSpaceTooLarge(
                f"q = {F.q} > 81 needs an explicit budget override")
        budget = 10**8
    L1, L2, tried = linear_equiv_tables(f.values, g.values, F.n, F.p,
                                        max_candidates=budget)
    if L1 is None:
        return EquivResult(equivalent=False, method="brute_force",
                           candidates_tried=tried)
    w = {"L1": matrix_to_linearized(F, L1), "L2": matrix_to_linearized(F, L2)}
    assert verify_witness(f, g, w["L1"], w["L2"]), "witness failed re-verification"
    return EquivResult(equivalent=True, method="brute_force", witness=w,
                       candidates_tried=tried)


# -- subfield restriction machinery -----------------------------------------

_CANON_BUDGET = 10_000  # max |GL(r,p)|^2 for full canonicalization


@dataclass
class SubfieldIndex:
    """Coordinates for the quadratic subfield inside the ambient field."""

    field: FieldCtx
    r: int
    basis_codes: list[int]
    code_by_index: np.ndarray   # length p^r
    index_by_code: dict[int, int]


def subfield_index(F: FieldCtx) -> SubfieldIndex:
    if F.n % 2:
        raise OddDegree("no quadratic subfield")
    r = F.n // 2
    pts = F.subfield_points
    rows, basis = [], []
    for c in pts:
        cand = np.array(rows + [F.digits[c]], dtype=np.int64)
        if modp_rank(cand, F.p) == len(rows) + 1:
            rows.append(F.digits[c])
            basis.append(int(c))
            if len(rows) == r:
                break
    SB = np.array(rows, dtype=np.int64)
    coords = _digits_of(np.arange(F.p**r), r, F.p)
    codes = F.code_of_digits((coords @ SB) % F.p)
    index_by_code = {int(c): i for i, c in enumerate(codes)}
    return SubfieldIndex(field=F, r=r, basis_codes=basis,
                         code_by_index=codes, index_by_code=index_by_code)


def restriction_index_table(f: FuncTable, sub: SubfieldIndex) -> np.ndarray:
    rest = families.restrict_to_subfield(f)
    out = np.empty(len(sub.code_by_index), dtype=np.int64)
    vals = {int(d): int(v) for d, v in zip(rest.domain, rest.values)}
    for idx, code in enumerate(sub.code_by_index):
        out[idx] = sub.index_by_code[vals[int(code)]]
    return out


def _canonical_table(T: np.ndarray, r: int, p: int) -> tuple[int, ...]:
    """Minimum of A o T o B over all F_p-linear bijections A, B."""
    m = p**r
    D = _digits_of(np.arange(m), r, p)
    weights = p ** np.arange(r, dtype=np.int64)
    perms = [(((D @ M.T) % p) @ weights) for M in gl_matrices(r, p)]
    best = None
    for pa in perms:
        for pb in perms:
            cand = tuple(int(v) for v in pa[T[pb]])
            if best is None or cand < best:
                best = cand
    return best


# -- fingerprints ------------------------------------------------------------

@dataclass
class Fingerprint:
    is_planar: bool
    restriction: dict | None     # {"canonical": bool, "table": tuple} | None
    nuclei: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        return {
            "is_planar": self.is_planar,
            "restriction": (
                {"canonical": self.restriction["canonical"],
                 "table": list(self.restriction["table"])}
                if self.restriction else None),
            "nuclei": list(self.nuclei) if self.nuclei else None,
        }


def fingerprint(f: FuncTable, *, with_nuclei: bool = False) -> Fingerprint:
    F = f.field
    verdict = planar.is_planar_delta(f)
    restriction = None
    if F.n % 2 == 0:
        sub = subfield_index(F)
        try:
            T = restriction_index_table(f, sub)
        except Exception:
            restriction = {"canonical": True, "table": ("not_closed",)}
        else:
            if gl_order(sub.r, F.p) ** 2 <= _CANON_BUDGET:
                restriction = {"canonical": True,
                               "table": _canonical_table(T, sub.r, F.p)}
            else:
                restriction = {"canonical": False,
                               "table": tuple(int(v) for v in T)}
    nuc = None
    if with_nuclei:
        nuc = nuclei_sizes(f) if verdict.planar else None
    return Fingerprint(is_planar=verdict.planar, restriction=restriction, nuclei=nuc)


def fingerprints_separate(f: FuncTable, g: FuncTable,
                          fp_f: Fingerprint, fp_g: Fingerprint,
                          subfield_budget: int = 2 * 10**4) -> str:
    """'separated' | 'tied' for a fingerprint pair over one field."""
    if fp_f.is_planar != fp_g.is_planar:
        return "separated"
    if fp_f.nuclei is not None and fp_g.nuclei is not None and fp_f.nuclei != fp_g.nuclei:
        return "separated"
    rf, rg = fp_f.restriction, fp_g.restriction
    if rf is None or rg is None:
        return "tied"
    if rf["canonical"] and rg["canonical"]:
        return "separated" if rf["table"] != rg["table"] else "tied"
    if rf["table"] == ("not_closed",) or rg["table"] == ("not_closed",):
        return "separated" if rf["table"] != rg["table"] else "tied"
    # uncanonicalized: decide restriction equivalence by brute force on
    # the subfield when the GL(r, p) space is small enough
    F = f.field
    r = F.n // 2
    if gl_order(r, F.p) <= subfield_budget:
        Tf = np.array(rf["table"], dtype=np.int64)
        Tg = np.array(rg["table"], dtype=np.int64)
        L1, _, _ = linear_equiv_tables(Tf, Tg, r, F.p)
        return "tied" if L1 is not None else "separated"
    return "tied"


# -- nuclei of the associated semifield --------------------------------------

def _presemifield_table(f: FuncTable) -> np.ndarray:
    F = f.field
    q = F.q
    xs = np.arange(q, dtype=np.int64)
    return np.stack([planar.d_f_block(f, np.array([x]), xs)[0] for x in range(q)])


def nuclei_sizes(f: FuncTable, sample: int = 48,
                 rng_seed: int = 7) -> tuple[int, int, int]:
    """(left, middle, right) nucleus sizes of the semifield from
    x * y = D_f(x, y) after the standard unit-fixing transform.

    f must be planar (D_f nonzero off the axes); a commutative
    presemifield gives equal left and right nuclei.  Candidates are
    pre-screened on a random (x, y) sample before the full O(q^2) check.
    """
    F = f.field
    q = F.q
    P = _presemifield_table(f)
    L = P[:, 1]
    if np.bincount(L, minlength=q).max() != 1:
        raise NotPlanar("x * 1 is not a bijection; f is not planar")
    Linv = np.empty(q, dtype=np.int64)
    Linv[L] = np.arange(q)
    mul = P[np.ix_(Linv, Linv)]

    rng = np.random.default_rng(rng_seed)
    sx = rng.integers(0, q, size=sample)
    sy = rng.integers(0, q, size=sample)

    def count(assoc_full, assoc_sample) -> int:
        hits = 0
        for a in range(q):
            if not assoc_sample(a):
                continue
            if assoc_full(a):
                hits += 1
        return hits

    def left_full(a):
        Ra = mul[a]
        return bool((mul[Ra, :] == Ra[mul]).all())

    def left_sample(a):
        Ra = mul[a]
        return bool((mul[Ra[sx], sy] == Ra[mul[sx, sy]]).all())

    def mid_full(a):
        Ca = mul[:, a]
        Ra = mul[a]
        return bool((mul[Ca, :] == mul[:, Ra]).all())

    def mid_sample(a):
        Ca = mul[:, a]
        Ra = mul[a]
        return bool((mul[Ca[sx], sy] == mul[sx, Ra[sy]]).all())

    left = count(left_full, left_sample)
    middle = count(mid_full, mid_sample)
    return (left, middle, left)


# -- Theorem-5 style pairwise separation inside family f1 --------------------

@dataclass
class SeparationReport:
    in_theorem: bool
    pairs: dict[tuple[int, int], str]
    diagnostics: list[str]


def separate_family_f1(field: FieldCtx, k_list: list[int],
                       bruteforce_budget: int = 10**5) -> SeparationReport:
    """Pairwise separation status for f1 instances x^2 + x^(2p^r) +
    x^(1+p^k) - x^((1+p^k)p^r) over one field."""
    if field.n % 2:
        raise OddDegree("f1 lives on even-degree fields")
    r = field.n // 2
    in_theorem = (r % 2 == 1) and (field.p % 4 == 3)
    valid = []
    for k in k_list:
        spec = families.FamilySpec("f1", {"p": field.p, "r": r, "i": 0, "k": k})
        if families.validate(spec, field=field).ok:
            valid.append(k)
    pairs: dict[tuple[int, int], str] = {}
    diagnostics: list[str] = []
    tables = {k: families.expand(
        families.FamilySpec("f1", {"p": field.p, "r": r, "i": 0, "k": k}),
        field=field) for k in valid}
    for a_i, j in enumerate(valid):
        for k in valid[a_i:]:
            if j == k:
                pairs[(j, k)] = "equivalent"  # identity witness
                continue
            u, v = tables[j], tables[k]
            fu, fv = fingerprint(u), fingerprint(v)
            status = fingerprints_separate(u, v, fu, fv)
            if status == "separated":
                pairs[(j, k)] = "separated"
                continue
            if gl_order(field.n, field.p) <= bruteforce_budget:
                res = linear_equivalent_bruteforce(u, v, budget=bruteforce_budget)
                if res.equivalent is True:
                    pairs[(j, k)] = "equivalent"
                    if in_theorem:
                        msg = (f"CONTRADICTION: verified equivalence witness for "
                               f"f1 pair (k={j}, k={k}) under the theorem's hypotheses")
                        diagnostics.append(msg)
                        print(msg, file=sys.stderr)
                else:
                    pairs[(j, k)] = "separated"
            else:
                pairs[(j, k)] = "unknown"
    return SeparationReport(in_theorem=in_theorem, pairs=pairs,
                            diagnostics=diagnostics)

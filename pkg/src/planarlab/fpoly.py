"""Functions on F_{p^n} as value tables and as reduced polynomials.

The two representations are deliberately kept separate: oracles consume
FuncTable (O(1) evaluation), symbolic claims (Dembowski-Ostrom shape,
exponent arithmetic) run on the DOPoly spectrum.  Conversion is explicit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch
from .gf import FieldCtx


@dataclass(eq=False)
class FuncTable:
    """A function F_q -> F_q as a full value table, index = input code."""

    field: FieldCtx
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        assert self.values.shape == (self.field.q,)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FuncTable)
            and same_field(self.field, other.field)
            and np.array_equal(self.values, other.values)
        )

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def to_json(self) -> dict:
        return {"field": self.field.descriptor(), "values": [int(v) for v in self.values]}


def same_field(F: FieldCtx, G: FieldCtx) -> bool:
    return F is G or (F.p == G.p and F.n == G.n and F.modulus == G.modulus)


def _require_same_field(a: FuncTable, b: FuncTable):
    if not same_field(a.field, b.field):
        raise FieldMismatch("tables live over different fields")


def reduce_exponent(e: int, q: int) -> int:
    """x^e as a function on F_q: e = 0 stays 0, else 1 + (e-1) mod (q-1)."""
    if e == 0:
        return 0
    return 1 + (e - 1) % (q - 1)


def _is_p_power(e: int, p: int) -> bool:
    while e % p == 0:
        e //= p
    return e == 1


def do_exponents(field: FieldCtx) -> set[int]:
    """All reduced exponents of the form p^i + p^j, 0 <= i, j < n."""
    out = set()
    for i in range(field.n):
        for j in range(field.n):
            out.add(reduce_exponent(field.p**i + field.p**j, field.q))
    return out


@dataclass(eq=False)
class DOPoly:
    """Reduced polynomial as an exponent -> coefficient spectrum.

    shape flags:  is_DO -- every exponent of the form p^i + p^j;
    is_linearized -- every exponent a power of p;  is_affine --
    linearized up to a constant term.
    """

    field: FieldCtx
    spectrum: dict[int, int]
    is_DO: bool
    is_linearized: bool
    is_affine: bool

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DOPoly)
            and same_field(self.field, other.field)
            and self.spectrum == other.spectrum
        )

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "terms": [{"e": e, "c": c} for e, c in sorted(self.spectrum.items())],
        }


def _make_poly(field: FieldCtx, spectrum: dict[int, int]) -> DOPoly:
    do_set = do_exponents(field)
    exps = list(spectrum)
    is_do = all(e in do_set for e in exps)
    is_lin = all(_is_p_power(e, field.p) for e in exps)
    is_aff = all(e == 0 or _is_p_power(e, field.p) for e in exps)
    return DOPoly(field=field, spectrum=spectrum, is_DO=is_do,
                  is_linearized=is_lin, is_affine=is_aff)


def reduce_poly(field: FieldCtx, raw) -> DOPoly:
    """Reduce a list of (exponent, coeff) terms modulo x^q - x.

    Colliding exponents are summed in the field; zero coefficients are
    dropped.  The reduced polynomial induces the same function.
    """
    spectrum: dict[int, int] = {}
    for e, c in raw:
        e = reduce_exponent(int(e), field.q)
        c = int(c)
        if not 0 <= c < field.q:
            raise ValueError(f"coefficient {c} is not a code in [0, {field.q})")
        acc = spectrum.get(e, 0)
        acc = field.add(acc, c)
        if acc:
            spectrum[e] = acc
        else:
            spectrum.pop(e, None)
    return _make_poly(field, spectrum)


def monomial(field: FieldCtx, e: int, c: int = 1) -> DOPoly:
    return reduce_poly(field, [(e, c)])


def do_monomial(field: FieldCtx, i: int, k: int, c: int = 1) -> DOPoly:
    """c * x^(p^i + p^k)."""
    return monomial(field, field.p**i + field.p**k, c)


def linearized_from_coeffs(field: FieldCtx, coeffs) -> DOPoly:
    """sum c_j x^(p^j) from a length-n coefficient vector."""
    assert len(coeffs) == field.n
    return reduce_poly(field, [(field.p**j, c) for j, c in enumerate(coeffs)])


def poly_frobenius(poly: DOPoly, j: int) -> DOPoly:
    """The polynomial (f(x))^(p^j) as a reduced spectrum."""
    F = poly.field
    raw = [(e * F.p**j, F.frobenius_pow(c, j)) for e, c in poly.spectrum.items()]
    return reduce_poly(F, raw)


def poly_add(a: DOPoly, b: DOPoly) -> DOPoly:
    terms = list(a.spectrum.items()) + list(b.spectrum.items())
    return reduce_poly(a.field, terms)


def poly_neg(a: DOPoly) -> DOPoly:
    return reduce_poly(a.field, [(e, a.field.neg(c)) for e, c in a.spectrum.items()])


def poly_sub(a: DOPoly, b: DOPoly) -> DOPoly:
    return poly_add(a, poly_neg(b))


def poly_scale(a: DOPoly, c: int) -> DOPoly:
    return reduce_poly(a.field, [(e, a.field.mul(coef, c)) for e, coef in a.spectrum.items()])


def to_table(poly: DOPoly) -> FuncTable:
    F = poly.field
    acc = np.zeros(F.q, dtype=np.int64)
    for e, c in poly.spectrum.items():
        term = F.vmul(F.monomial_table(e), np.full(F.q, c, dtype=np.int64))
        acc = F.vadd(acc, term)
    return FuncTable(field=F, values=acc)


def eval_poly(poly: DOPoly, x: int) -> int:
    F = poly.field
    out = 0
    for e, c in poly.spectrum.items():
        out = F.add(out, F.mul(c, F.pow(x, e) if e else 1))
    return out


# -- table operations --

def is_permutation(t: FuncTable) -> bool:
    counts = np.bincount(t.values, minlength=t.field.q)
    return bool((counts == 1).all())


def compose(outer: FuncTable, inner: FuncTable) -> FuncTable:
    _require_same_field(outer, inner)
    return FuncTable(field=outer.field, values=outer.values[inner.values])


def add_tables(a: FuncTable, b: FuncTable) -> FuncTable:
    _require_same_field(a, b)
    return FuncTable(field=a.field, values=a.field.vadd(a.values, b.values))


def sub_tables(a: FuncTable, b: FuncTable) -> FuncTable:
    _require_same_field(a, b)
    return FuncTable(field=a.field, values=a.field.vsub(a.values, b.values))


def scale_table(t: FuncTable, c: int) -> FuncTable:
    F = t.field
    return FuncTable(field=F, values=F.vmul(t.values, np.full(F.q, c, dtype=np.int64)))


def identity_table(field: FieldCtx) -> FuncTable:
    return FuncTable(field=field, values=np.arange(field.q, dtype=np.int64))


def table_frobenius(t: FuncTable, j: int) -> FuncTable:
    """Pointwise (f(x))^(p^j)."""
    return FuncTable(field=t.field, values=t.field.vfrob_pow(t.values, j))


# -- interpolation --

def lagrange_interpolate(t: FuncTable) -> DOPoly:
    """Recover the unique polynomial of degree < q inducing the table.

    Newton-style incremental construction, O(q^2): maintain the partial
    interpolant P and the node polynomial N = prod (x - x_i).
    """
    F = t.field
    q = F.q
    P = np.zeros(q + 1, dtype=np.int64)
    N = np.zeros(q + 1, dtype=np.int64)
    N[0] = 1
    es = np.arange(q + 1, dtype=np.int64)

    def eval_dense(coeffs, x):
        # sum coeffs[e] * x^e; for x != 0 use x^e = exp[log(x)*e mod (q-1)]
        if x == 0:
            return int(coeffs[0])
        pw = F.exp[(int(F.log[x]) * (es % (q - 1))) % (q - 1)]
        return _sum_field(F, F.vmul(coeffs, pw))

    for xi in range(q):
        pxi = eval_dense(P, xi)
        nxi = eval_dense(N, xi)
        c = F.mul(F.sub(int(t.values[xi]), pxi), F.inv(nxi))
        if c:
            P = F.vadd(P, F.vmul(N, np.full(q + 1, c, dtype=np.int64)))
        # N *= (x - xi)
        shifted = np.zeros(q + 1, dtype=np.int64)
        shifted[1:] = N[:-1]
        N = F.vadd(shifted, F.vmul(N, np.full(q + 1, F.neg(xi), dtype=np.int64)))

    terms = [(e, int(c)) for e, c in enumerate(P) if c]
    return reduce_poly(F, terms)


def _sum_field(F: FieldCtx, arr: np.ndarray) -> int:
    """Field sum of an array of codes (digitwise sum mod p)."""
    d = F.digits[np.asarray(arr, dtype=np.int64)].sum(axis=0) % F.p
    return int(F.code_of_digits(d))

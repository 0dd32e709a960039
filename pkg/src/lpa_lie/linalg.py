"""Exact linear algebra over the prime subfields and over the integers.

Everything here is computed with arbitrary-precision integers, ``Fraction``
rationals, or residues modulo a prime; no floating point is ever involved.
The three pillars are

* span membership / linear solving over Q or GF(p),
* Smith normal form over Z with unimodular certificates U, V, and
* cokernel presentations of square integer matrices (invariant factors and
  the class of the all-ones vector), with element order and p-divisibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "is_prime",
    "prime_factorization",
    "GFElement",
    "FieldSpec",
    "span_membership",
    "rank_over_field",
    "SmithDecomposition",
    "smith_normal_form",
    "K0Presentation",
    "cokernel",
    "class_order",
    "is_p_divisible",
    "identity_matrix",
    "mat_mul",
    "int_det",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test; fine at desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factorization(n: int) -> dict[int, int]:
    """Map each prime factor of ``n >= 1`` to its exponent."""
    if n < 1:
        raise ValueError("prime_factorization expects n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class GFElement:
    """A residue in the field of ``modulus`` elements (``modulus`` prime)."""

    residue: int
    modulus: int

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mixed moduli: GF({self.modulus}) vs GF({other.modulus})"
                )
            return other
        if isinstance(other, int):
            return GFElement(other % self.modulus, self.modulus)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement((self.residue + o.residue) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement((self.residue - o.residue) % self.modulus, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement((self.residue * o.residue) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.residue == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
        inv = pow(o.residue, -1, self.modulus)
        return GFElement((self.residue * inv) % self.modulus, self.modulus)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GFElement((-self.residue) % self.modulus, self.modulus)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __str__(self) -> str:
        return str(self.residue)


@dataclass(frozen=True)
class FieldSpec:
    """The prime subfield to compute over: Q for 0, GF(p) for a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(
                f"characteristic must be 0 or a prime, got {self.characteristic}"
            )

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, value):
        """Map an int, Fraction, or matching field element into this field."""
        p = self.characteristic
        if isinstance(value, bool):
            raise TypeError("booleans are not field scalars")
        if isinstance(value, int):
            return Fraction(value) if p == 0 else GFElement(value % p, p)
        if isinstance(value, Fraction):
            if p == 0:
                return value
            if value.denominator % p == 0:
                raise ValueError(f"denominator of {value} vanishes in GF({p})")
            inv = pow(value.denominator % p, -1, p)
            return GFElement((value.numerator % p) * inv % p, p)
        if isinstance(value, GFElement):
            if p == 0:
                raise ValueError(f"cannot move a GF({value.modulus}) residue into Q")
            if value.modulus != p:
                raise ValueError(f"expected GF({p}) element, got GF({value.modulus})")
            return value
        raise TypeError(f"cannot coerce {type(value).__name__} into {self.name}")

    def parse(self, text: str):
        """Parse ``a`` or ``a/b`` as an element of this field."""
        try:
            return self.coerce(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {text!r} as an element of {self.name}: {exc}") from None


def _coerce_vector(vec, field: FieldSpec) -> list:
    return [field.coerce(x) for x in vec]


def span_membership(vectors, target, field: FieldSpec):
    """Exact coefficients expressing ``target`` in the span of ``vectors``.

    Solves ``sum_j c_j * vectors[j] = target`` over the prime subfield by
    Gauss-Jordan elimination and returns the coefficient list (free
    coefficients set to zero), or ``None`` when the system is inconsistent.

    >>> span_membership([[2]], [1], FieldSpec(0))
    [Fraction(1, 2)]
    >>> span_membership([[2]], [1], FieldSpec(2)) is None
    True
    """
    tgt = _coerce_vector(target, field)
    vecs = [_coerce_vector(v, field) for v in vectors]
    m = len(tgt)
    for v in vecs:
        if len(v) != m:
            raise ValueError(f"dimension mismatch: vector of length {len(v)}, target {m}")
    n = len(vecs)
    # columns are the candidate vectors, last column is the target
    aug = [[vecs[j][i] for j in range(n)] + [tgt[i]] for i in range(m)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        sel = next((r for r in range(row, m) if aug[r][col]), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = field.one() / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
    for r in range(row, m):
        if aug[r][n]:
            return None
    solution = [field.zero()] * n
    for r, c in pivots:
        solution[c] = aug[r][n]
    return solution


def rank_over_field(rows, field: FieldSpec) -> int:
    """Rank of a matrix (given as a list of rows) over the prime subfield."""
    mat = [_coerce_vector(r, field) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        sel = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = field.one() / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """Certificate ``u @ original @ v == d`` with ``u``, ``v`` unimodular.

    ``d`` is diagonal with non-negative entries, zeros last, and each nonzero
    entry dividing the next.
    """

    u: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]))))


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def int_det(mat) -> int:
    """Exact determinant of a square integer matrix (fraction-free not needed)."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        sel = next((r for r in range(col, n) if a[r][col]), None)
        if sel is None:
            return 0
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return det.numerator


def _min_abs_position(a, t: int, rows: int, cols: int) -> tuple[int, int] | None:
    best = None
    pos = None
    for i in range(t, rows):
        for j in range(t, cols):
            x = a[i][j]
            if x:
                x = -x if x < 0 else x
                if best is None or x < best:
                    best = x
                    pos = (i, j)
    return pos


def smith_normal_form(mat) -> SmithDecomposition:
    """Smith normal form of an integer matrix with transformation certificates.

    The pivot at each stage is the entry of smallest nonzero absolute value in
    the working submatrix (ties broken in row-major order), which bounds entry
    growth and makes the output deterministic.  Row operations accumulate into
    ``u`` and column operations into ``v``; only swaps, adding an integer
    multiple of one row/column to another, and column negations are used, so
    both certificates are unimodular.
    """
    rows = len(mat)
    if rows == 0 or len(mat[0]) == 0:
        raise ValueError("smith_normal_form expects a non-empty matrix")
    cols = len(mat[0])
    a: list[list[int]] = []
    for r in mat:
        if len(r) != cols:
            raise ValueError("matrix rows must all have the same length")
        row = []
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError("matrix entries must be integers")
            row.append(x)
        a.append(row)
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_sub(m, i, k, q):  # m[i] -= q * m[k]
        mi, mk = m[i], m[k]
        for j in range(len(mi)):
            mi[j] -= q * mk[j]

    def col_sub(m, j, k, q):  # col j -= q * col k
        for r in m:
            r[j] -= q * r[k]

    for t in range(min(rows, cols)):
        if _min_abs_position(a, t, rows, cols) is None:
            break
        while True:
            pi, pj = _min_abs_position(a, t, rows, cols)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for r in a:
                    r[t], r[pj] = r[pj], r[t]
                for r in v:
                    r[t], r[pj] = r[pj], r[t]
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // pivot
                    if q:
                        row_sub(a, i, t, q)
                        row_sub(u, i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // pivot
                    if q:
                        col_sub(a, j, t, q)
                        col_sub(v, j, t, q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into row t so the pivot can shrink
            row_sub(a, t, offender, -1)
            row_sub(u, t, offender, -1)

    for k in range(min(rows, cols)):
        if a[k][k] < 0:
            for r in a:
                r[k] = -r[k]
            for r in v:
                r[k] = -r[k]

    freeze = lambda m: tuple(tuple(r) for r in m)
    return SmithDecomposition(freeze(u), freeze(a), freeze(v))


# ---------------------------------------------------------------------------
# Cokernel presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class K0Presentation:
    """Cokernel of a square integer matrix, with the class of (1, ..., 1).

    ``invariant_factors`` is the full Smith diagonal (1s retained, 0s meaning
    free summands); ``unit_class`` is U @ (1, ..., 1)^t with coordinate i
    reduced modulo the i-th factor whenever that factor is positive.
    """

    invariant_factors: tuple[int, ...]
    unit_class: tuple[int, ...]

    @property
    def nontrivial_factors(self) -> tuple[int, ...]:
        return tuple(a for a in self.invariant_factors if a != 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for a in self.invariant_factors if a == 0)

    @property
    def torsion_order(self) -> int:
        out = 1
        for a in self.invariant_factors:
            if a > 0:
                out *= a
        return out

    def group_description(self) -> str:
        parts = [f"Z_{a}" for a in self.nontrivial_factors if a > 0]
        parts += ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"


def cokernel(mat) -> K0Presentation:
    """Invariant factors of Z^m / Im(mat) and the class of the ones vector."""
    m = len(mat)
    if any(len(r) != m for r in mat):
        raise ValueError("cokernel expects a square matrix")
    dec = smith_normal_form(mat)
    alphas = list(dec.diagonal)
    ones_image = [sum(dec.u[i]) for i in range(m)]
    unit = tuple(
        ones_image[i] % alphas[i] if alphas[i] > 0 else ones_image[i] for i in range(m)
    )
    return K0Presentation(tuple(alphas), unit)


def class_order(pres: K0Presentation) -> int | None:
    """Order of the unit class in the cokernel; ``None`` means infinite."""
    order = 1
    for a, y in zip(pres.invariant_factors, pres.unit_class):
        if a == 0:
            if y != 0:
                return None
        else:
            order = lcm(order, a // gcd(a, y))
    return order


def is_p_divisible(pres: K0Presentation, p: int) -> bool:
    """Whether the unit class equals p times some element of the cokernel.

    Coordinate-wise: ``p * x = y (mod a)`` is solvable iff gcd(p, a) divides
    y, and over a free coordinate iff p divides y.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    for a, y in zip(pres.invariant_factors, pres.unit_class):
        if a == 0:
            if y % p != 0:
                return False
        else:
            if y % gcd(p, a) != 0:
                return False
    return True

"""Exact matrices and the linear-algebra decision procedures.

The three workhorses are

* ``solve_linear(A, B)``    -- an exact solution X of A*X = B, or None,
* ``kernel_gens(A)``        -- canonical generators of {x : A*x = 0},
* ``smith_normal_form(A)``  -- A = U*D*V over the integers or a field.

Over fields everything is Gaussian elimination.  Over the integers the
elimination uses minimal-absolute-value pivots (keeps coefficients small
and is deterministic).  Z/n is handled by lifting to the integers with
n*Id columns adjoined, so the same code is correct for non-fields such
as Z/4.  Product rings go componentwise.

All matrices are immutable and hashable; the solver entry points are
memoized, which the exhaustive differential tests rely on for speed.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DimensionMismatchError, RingMismatchError, UnsupportedRingError
from .rings import (
    IntegerModRing,
    IntegerRing,
    ProductRing,
    Ring,
    RingAut,
    ZZ,
)


class Mat:
    """An immutable rows x cols matrix over an exact ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries):
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise DimensionMismatchError(
                f"entry grid is not {rows}x{cols}: {entries!r}"
            )
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- construction ----------------------------------------------------

    @classmethod
    def from_rows(cls, ring, rows_data):
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        return cls(ring, rows, cols, rows_data)

    @classmethod
    def from_int_rows(cls, ring, rows_data):
        """Build a matrix from an integer template via the ring's of_int."""
        return cls.from_rows(
            ring, [[ring.of_int(c) for c in row] for row in rows_data]
        ) if rows_data else cls(ring, 0, 0, [])

    @classmethod
    def zero(cls, ring, rows, cols):
        z = ring.zero()
        return cls(ring, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    # -- basic queries ----------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self):
        z = self.ring.zero()
        return all(e == z for row in self.entries for e in row)

    def col(self, j):
        return Mat(self.ring, self.rows, 1, [[row[j]] for row in self.entries])

    def column_tuple(self, j):
        return tuple(row[j] for row in self.entries)

    def transpose(self):
        return Mat(
            self.ring,
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def to_lists(self):
        return [list(row) for row in self.entries]

    # -- arithmetic --------------------------------------------------------

    def _check_same_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix addition shape mismatch")
        add = self.ring.add
        return Mat(
            self.ring,
            self.rows,
            self.cols,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.ring.neg
        return Mat(
            self.ring, self.rows, self.cols, [[neg(a) for a in row] for row in self.entries]
        )

    def __mul__(self, other):
        self._check_same_ring(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ring = self.ring
        add, mul, zero = ring.add, ring.mul, ring.zero()
        bt = other.transpose().entries
        out = []
        for row in self.entries:
            out_row = []
            for colv in bt:
                acc = zero
                for a, b in zip(row, colv):
                    acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Mat(ring, self.rows, other.cols, out)

    def scale(self, c):
        mul = self.ring.mul
        return Mat(
            self.ring, self.rows, self.cols, [[mul(c, a) for a in row] for row in self.entries]
        )

    def map_entries(self, fn, ring=None):
        return Mat(
            ring or self.ring,
            self.rows,
            self.cols,
            [[fn(a) for a in row] for row in self.entries],
        )

    def hstack(self, other):
        self._check_same_ring(other)
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack row mismatch")
        return Mat(
            self.ring,
            self.rows,
            self.cols + other.cols,
            [ra + rb for ra, rb in zip(self.entries, other.entries)],
        )

    def vstack(self, other):
        self._check_same_ring(other)
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack column mismatch")
        return Mat(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def block_diag(self, other):
        self._check_same_ring(other)
        z = self.ring.zero()
        top = [row + (z,) * other.cols for row in self.entries]
        bot = [(z,) * self.cols + row for row in other.entries]
        return Mat(self.ring, self.rows + other.rows, self.cols + other.cols, top + bot)

    def submatrix(self, row_idx, col_idx):
        return Mat(
            self.ring,
            len(row_idx),
            len(col_idx),
            [[self.entries[i][j] for j in col_idx] for i in row_idx],
        )

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and other.ring == self.ring
            and other.rows == self.rows
            and other.cols == self.cols
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Mat({self.ring!r},{self.rows}x{self.cols},{self.entries!r})"


def apply_aut(aut: RingAut, a: Mat) -> Mat:
    """Entrywise action of a ring automorphism; realizes the twist on matrices."""
    if a.ring != aut.spec:
        raise RingMismatchError("matrix ring differs from the automorphism's ring")
    if aut.is_identity():
        return a
    return a.map_entries(aut.apply)


def random_mat(ring, rows, cols, rng, bound=3):
    return Mat(
        ring,
        rows,
        cols,
        [[ring.random_element(rng, bound) for _ in range(cols)] for _ in range(rows)],
    )


# ---------------------------------------------------------------------------
# field elimination


def _field_solve(A: Mat, B: Mat):
    """Gaussian elimination on [A | B]; first-nonzero pivots."""
    ring = A.ring
    m, n, k = A.rows, A.cols, B.cols
    aug = [list(ra) + list(rb) for ra, rb in zip(A.entries, B.entries)]
    zero = ring.zero()
    pivots = []  # (row, col)
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != zero), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = ring.inv(aug[r][c])
        aug[r] = [ring.mul(inv, x) for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != zero:
                f = aug[i][c]
                aug[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(aug[i][n + j] != zero for j in range(k)):
            return None  # inconsistent
    X = [[zero] * k for _ in range(n)]
    for pr, pc in pivots:
        for j in range(k):
            X[pc][j] = aug[pr][n + j]
    return Mat(ring, n, k, X)


def _field_kernel(A: Mat) -> Mat:
    """Canonical nullspace basis from the reduced row echelon form."""
    ring = A.ring
    m, n = A.rows, A.cols
    aug = [list(row) for row in A.entries]
    zero, one = ring.zero(), ring.one()
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != zero), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = ring.inv(aug[r][c])
        aug[r] = [ring.mul(inv, x) for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != zero:
                f = aug[i][c]
                aug[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    cols = []
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for pr, pc in enumerate(pivots):
            v[pc] = ring.neg(aug[pr][fc])
        cols.append(v)
    return Mat(ring, n, len(cols), [[col[i] for col in cols] for i in range(n)])


# ---------------------------------------------------------------------------
# integer elimination: Hermite and Smith forms


def _xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _hnf_rows(rows):
    """Row Hermite normal form of an integer row lattice.

    Returns the canonical basis: echelon rows, positive pivots, entries
    above each pivot reduced into [0, pivot).  Zero rows are dropped.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    basis = []  # echelon rows, sorted by pivot column
    pivcol = []
    for vec in work:
        vec = list(vec)
        while True:
            j = next((i for i, x in enumerate(vec) if x), None)
            if j is None:
                break
            pos = next((k for k, pc in enumerate(pivcol) if pc >= j), len(pivcol))
            if pos < len(pivcol) and pivcol[pos] == j:
                row = basis[pos]
                a, b = row[j], vec[j]
                if b % a == 0:
                    q = b // a
                    vec = [x - q * y for x, y in zip(vec, row)]
                else:
                    x, y, g = _xgcd(a, b)
                    mbg, ag = -b // g, a // g
                    basis[pos] = [x * u + y * v for u, v in zip(row, vec)]
                    vec = [mbg * u + ag * v for u, v in zip(row, vec)]
            else:
                basis.insert(pos, vec)
                pivcol.insert(pos, j)
                break
    for row in basis:
        j = next(i for i, x in enumerate(row) if x)
        if row[j] < 0:
            row[:] = [-x for x in row]
    for idx in range(len(basis) - 1, -1, -1):
        j = pivcol[idx]
        p = basis[idx][j]
        for above in basis[:idx]:
            q = above[j] // p
            if q:
                above[:] = [x - q * y for x, y in zip(above, basis[idx])]
    return basis


def hermite_column_basis(A: Mat) -> Mat:
    """Canonical basis of the integer column lattice of A (column HNF)."""
    if not isinstance(A.ring, IntegerRing):
        raise UnsupportedRingError("Hermite form needs integer entries")
    rows = _hnf_rows([A.column_tuple(j) for j in range(A.cols)])
    return Mat(ZZ, A.rows, len(rows), [[r[i] for r in rows] for i in range(A.rows)])


class _Transformed:
    """Mutable D with row/col transforms tracked on both sides.

    Maintains L*A*R == D together with Linv, Rinv, so callers get
    A = Linv * D * Rinv without any matrix inversion at the end.
    """

    def __init__(self, A: Mat):
        self.m, self.n = A.rows, A.cols
        self.D = [list(r) for r in A.entries]
        self.L = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.Linv = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.R = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        self.Rinv = [[int(i == j) for j in range(self.n)] for i in range(self.n)]

    def swap_rows(self, i, j):
        if i == j:
            return
        self.D[i], self.D[j] = self.D[j], self.D[i]
        self.L[i], self.L[j] = self.L[j], self.L[i]
        for row in self.Linv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.D:
            row[i], row[j] = row[j], row[i]
        for row in self.R:
            row[i], row[j] = row[j], row[i]
        self.Rinv[i], self.Rinv[j] = self.Rinv[j], self.Rinv[i]

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        self.L[i] = [-x for x in self.L[i]]
        for row in self.Linv:
            row[i] = -row[i]

    def add_row(self, dst, src, q):
        # row dst += q * row src;  Linv col src -= q * Linv col dst
        if q == 0:
            return
        self.D[dst] = [x + q * y for x, y in zip(self.D[dst], self.D[src])]
        self.L[dst] = [x + q * y for x, y in zip(self.L[dst], self.L[src])]
        for row in self.Linv:
            row[src] -= q * row[dst]

    def add_col(self, dst, src, q):
        if q == 0:
            return
        for row in self.D:
            row[dst] += q * row[src]
        for row in self.R:
            row[dst] += q * row[src]
        self.Rinv[src] = [x - q * y for x, y in zip(self.Rinv[src], self.Rinv[dst])]


def _smith_integers(A: Mat):
    t = _Transformed(A)
    m, n = t.m, t.n
    for s in range(min(m, n)):
        while True:
            # minimal |entry| pivot in the trailing block (determinism)
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    v = abs(t.D[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, bi, bj = best
            t.swap_rows(s, bi)
            t.swap_cols(s, bj)
            if t.D[s][s] < 0:
                t.negate_row(s)
            p = t.D[s][s]
            dirty = False
            for i in range(s + 1, m):
                if t.D[i][s]:
                    t.add_row(i, s, -(t.D[i][s] // p))
                    if t.D[i][s]:
                        dirty = True
            for j in range(s + 1, n):
                if t.D[s][j]:
                    t.add_col(j, s, -(t.D[s][j] // p))
                    if t.D[s][j]:
                        dirty = True
            if dirty:
                continue
            # row and column are clear; enforce divisibility on the block
            p = t.D[s][s]
            offender = next(
                (
                    (i, j)
                    for i in range(s + 1, m)
                    for j in range(s + 1, n)
                    if t.D[i][j] % p
                ),
                None,
            )
            if offender is None:
                break
            t.add_row(s, offender[0], 1)
        if s < min(m, n) and t.D[s][s] < 0:
            t.negate_row(s)
    return t


def _smith_field(A: Mat):
    ring = A.ring
    m, n = A.rows, A.cols
    D = [list(r) for r in A.entries]
    L = Mat.identity(ring, m).to_lists()
    R = Mat.identity(ring, n).to_lists()
    zero = ring.zero()
    s = 0
    for _ in range(min(m, n)):
        piv = next(
            ((i, j) for j in range(s, n) for i in range(s, m) if D[i][j] != zero), None
        )
        if piv is None:
            break
        bi, bj = piv
        if bi != s:
            D[s], D[bi] = D[bi], D[s]
            L[s], L[bi] = L[bi], L[s]
        if bj != s:
            for row in D:
                row[s], row[bj] = row[bj], row[s]
            for row in R:
                row[s], row[bj] = row[bj], row[s]
        inv = ring.inv(D[s][s])
        D[s] = [ring.mul(inv, x) for x in D[s]]
        L[s] = [ring.mul(inv, x) for x in L[s]]
        for i in range(m):
            if i != s and D[i][s] != zero:
                f = D[i][s]
                D[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(D[i], D[s])]
                L[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(L[i], L[s])]
        for j in range(n):
            if j != s and D[s][j] != zero:
                f = D[s][j]
                for row in D:
                    row[j] = ring.sub(row[j], ring.mul(f, row[s]))
                for row in R:
                    row[j] = ring.sub(row[j], ring.mul(f, row[s]))
        s += 1
    L_mat = Mat(ring, m, m, L)
    R_mat = Mat(ring, n, n, R)
    eye_m = Mat.identity(ring, m)
    eye_n = Mat.identity(ring, n)
    return (
        L_mat,
        _field_solve(L_mat, eye_m),
        Mat(ring, m, n, D),
        R_mat,
        _field_solve(R_mat, eye_n),
    )


@lru_cache(maxsize=None)
def _snf_transforms(A: Mat):
    """(L, Linv, D, R, Rinv) with L*A*R = D and A = Linv*D*Rinv."""
    if isinstance(A.ring, IntegerRing):
        t = _smith_integers(A)
        mk = lambda data, r, c: Mat(ZZ, r, c, data)
        return (
            mk(t.L, t.m, t.m),
            mk(t.Linv, t.m, t.m),
            mk(t.D, t.m, t.n),
            mk(t.R, t.n, t.n),
            mk(t.Rinv, t.n, t.n),
        )
    if A.ring.is_field:
        return _smith_field(A)
    raise UnsupportedRingError(f"Smith normal form over {A.ring!r}")


def smith_normal_form(A: Mat):
    """A = U*D*V with U, V invertible; d_i | d_{i+1} over Z, d_i in {0,1} over fields."""
    L, Linv, D, R, Rinv = _snf_transforms(A)
    return Linv, D, Rinv


def invert(A: Mat) -> Mat:
    """Inverse of a square matrix known to be invertible over its ring."""
    X = solve_linear(A, Mat.identity(A.ring, A.rows))
    if X is None or A.rows != A.cols:
        raise DimensionMismatchError("matrix is not invertible over its ring")
    return X


# ---------------------------------------------------------------------------
# solve / kernel dispatch


def _solve_integers(A: Mat, B: Mat):
    L, Linv, D, R, Rinv = _snf_transforms(A)
    C = L * B  # D * (Rinv X) = L B
    n, k = A.cols, B.cols
    Y = [[0] * k for _ in range(n)]
    for i in range(min(A.rows, n)):
        d = D[i, i]
        for j in range(k):
            c = C[i, j]
            if d == 0:
                if c != 0:
                    return None
            else:
                if c % d != 0:
                    return None
                Y[i][j] = c // d
    for i in range(min(A.rows, n), A.rows):
        for j in range(k):
            if C[i, j] != 0:
                return None
    return R * Mat(ZZ, n, k, Y)


def _lift_to_integers(A: Mat) -> Mat:
    return A.map_entries(lambda a: int(a), ring=ZZ)


def _solve_mod(A: Mat, B: Mat):
    ring = A.ring
    n_mod = ring.n
    A_lift = _lift_to_integers(A)
    B_lift = _lift_to_integers(B)
    # adjoin n*Id so integer solutions mod n are exactly the Z/n solutions
    ext = A_lift.hstack(Mat.identity(ZZ, A.rows).scale(n_mod))
    X = solve_linear(ext, B_lift)
    if X is None:
        return None
    top = X.submatrix(range(A.cols), range(B.cols))
    return top.map_entries(lambda a: a % n_mod, ring=ring)


def _split_product(A: Mat):
    base, w = A.ring.base, A.ring.width
    return [A.map_entries(lambda a, c=c: a[c], ring=base) for c in range(w)]


def _join_product(ring, comps):
    rows, cols = comps[0].rows, comps[0].cols
    return Mat(
        ring,
        rows,
        cols,
        [
            [tuple(comp.entries[i][j] for comp in comps) for j in range(cols)]
            for i in range(rows)
        ],
    )


@lru_cache(maxsize=None)
def solve_linear(A: Mat, B: Mat):
    """Exact X with A*X = B, or None when no solution exists over the ring."""
    if A.ring != B.ring:
        raise RingMismatchError("solve_linear operands over different rings")
    if A.rows != B.rows:
        raise DimensionMismatchError("solve_linear row mismatch")
    ring = A.ring
    if ring.is_field:
        return _field_solve(A, B)
    if isinstance(ring, IntegerRing):
        return _solve_integers(A, B)
    if isinstance(ring, IntegerModRing):
        return _solve_mod(A, B)
    if isinstance(ring, ProductRing):
        comps = [
            solve_linear(Ac, Bc)
            for Ac, Bc in zip(_split_product(A), _split_product(B))
        ]
        if any(c is None for c in comps):
            return None
        return _join_product(ring, comps)
    raise UnsupportedRingError(f"solve_linear over {ring!r}")


def _kernel_integers(A: Mat) -> Mat:
    L, Linv, D, R, Rinv = _snf_transforms(A)
    n = A.cols
    ker_idx = [j for j in range(n) if j >= A.rows or D[j, j] == 0]
    cols = [R.column_tuple(j) for j in ker_idx]
    basis = _hnf_rows(cols)
    return Mat(ZZ, n, len(basis), [[r[i] for r in basis] for i in range(n)])


def _kernel_mod(A: Mat) -> Mat:
    ring = A.ring
    n_mod, n = ring.n, A.cols
    ext = _lift_to_integers(A).hstack(Mat.identity(ZZ, A.rows).scale(n_mod))
    K = _kernel_integers(ext)
    gens = [K.column_tuple(j)[:n] for j in range(K.cols)]
    # canonicalize the lattice spanned mod n: HNF of gens together with n*e_i
    gens += [tuple(n_mod if i == j else 0 for i in range(n)) for j in range(n)]
    basis = _hnf_rows(gens)
    cols = []
    for r in basis:
        col = tuple(x % n_mod for x in r)
        if any(col):
            cols.append(col)
    return Mat(ring, n, len(cols), [[c[i] for c in cols] for i in range(n)])


@lru_cache(maxsize=None)
def kernel_gens(A: Mat) -> Mat:
    """Columns generating {x : A*x = 0}; a basis over fields and Z."""
    ring = A.ring
    if ring.is_field:
        return _field_kernel(A)
    if isinstance(ring, IntegerRing):
        return _kernel_integers(A)
    if isinstance(ring, IntegerModRing):
        return _kernel_mod(A)
    if isinstance(ring, ProductRing):
        comps = [kernel_gens(Ac) for Ac in _split_product(A)]
        base = ring.base
        n = A.cols
        cols = []
        for c, Kc in enumerate(comps):
            for j in range(Kc.cols):
                col = []
                for i in range(n):
                    elem = tuple(
                        Kc.entries[i][j] if cc == c else base.zero()
                        for cc in range(ring.width)
                    )
                    col.append(elem)
                cols.append(col)
        return Mat(ring, n, len(cols), [[c[i] for c in cols] for i in range(n)])
    raise UnsupportedRingError(f"kernel_gens over {ring!r}")


def column_space_basis(A: Mat) -> Mat:
    """Canonical basis of the column space / column lattice (fields or Z)."""
    ring = A.ring
    if isinstance(ring, IntegerRing):
        return hermite_column_basis(A)
    if ring.is_field:
        # reduced column echelon: RREF of the transpose, transposed back
        rref = _rref_rows(A.transpose())
        return Mat(ring, A.rows, len(rref), [[r[i] for r in rref] for i in range(A.rows)])
    raise UnsupportedRingError(f"column_space_basis over {ring!r}")


def _rref_rows(A: Mat):
    """Nonzero rows of the reduced row echelon form (fields)."""
    ring = A.ring
    m, n = A.rows, A.cols
    work = [list(r) for r in A.entries]
    zero = ring.zero()
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if work[i][c] != zero), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = ring.inv(work[r][c])
        work[r] = [ring.mul(inv, x) for x in work[r]]
        for i in range(m):
            if i != r and work[i][c] != zero:
                f = work[i][c]
                work[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(work[i], work[r])]
        r += 1
        if r == m:
            break
    return [row for row in work if any(x != zero for x in row)]

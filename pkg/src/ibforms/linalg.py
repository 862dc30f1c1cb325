"""Dense exact matrices and the normal-form kernels everything reduces to.

Vectors are plain lists of Scalars.  Row-vector conventions are used for
module elements: a presented module lives in R^g with relations given as
rows, and x*M is the image of x under the map with matrix M.
"""

from __future__ import annotations

from .domains import Scalar, is_unit
from .errors import UnsupportedDomain


class Matrix:
    """A dense matrix over a single domain."""

    def __init__(self, domain, rows, ncols=None):
        self.domain = domain
        self.a = [list(r) for r in rows]
        self.nrows = len(self.a)
        self.ncols = len(self.a[0]) if self.a else (ncols or 0)
        for r in self.a:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, domain, int_rows):
        """Build from rows of ints / payload JSON values / Scalars."""
        return cls(domain, [[domain(v) for v in row] for row in int_rows])

    @classmethod
    def identity(cls, domain, n):
        z, o = domain.zero_scalar(), domain.one_scalar()
        return cls(domain, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, domain, nrows, ncols):
        z = domain.zero_scalar()
        return cls(domain, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    def copy(self):
        return Matrix(self.domain, self.a)

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def row(self, i):
        return list(self.a[i])

    def col(self, j):
        return [self.a[i][j] for i in range(self.nrows)]

    def rows(self):
        return [list(r) for r in self.a]

    def transpose(self):
        return Matrix(self.domain, [[self.a[i][j] for i in range(self.nrows)]
                                    for j in range(self.ncols)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            z = self.domain.zero_scalar()
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    s = z
                    for k in range(self.ncols):
                        s = s + self.a[i][k] * other.a[k][j]
                    row.append(s)
                out.append(row)
            return Matrix(self.domain, out)
        return NotImplemented

    def __add__(self, other):
        return Matrix(self.domain, [[self.a[i][j] + other.a[i][j]
                                     for j in range(self.ncols)]
                                    for i in range(self.nrows)])

    def __sub__(self, other):
        return Matrix(self.domain, [[self.a[i][j] - other.a[i][j]
                                     for j in range(self.ncols)]
                                    for i in range(self.nrows)])

    def __neg__(self):
        return Matrix(self.domain, [[-v for v in r] for r in self.a])

    def scale(self, s):
        return Matrix(self.domain, [[s * v for v in r] for r in self.a])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.domain == other.domain and self.nrows == other.nrows
                and self.ncols == other.ncols
                and all(self.a[i][j] == other.a[i][j]
                        for i in range(self.nrows) for j in range(self.ncols)))

    def __hash__(self):
        return hash((self.domain.name, self.key()))

    def key(self):
        return tuple(tuple(v.key() for v in r) for r in self.a)

    def is_zero(self):
        return all(not v for r in self.a for v in r)

    def map(self, ring_map):
        """Apply a ring map entrywise; the result lives over the target."""
        return Matrix(ring_map.dst, [[ring_map(v) for v in r] for r in self.a])

    def det(self):
        """Determinant by the division-free Berkowitz method.

        Works over every commutative ring, including Z/n and split
        quadratic extensions.
        """
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        dom = self.domain
        zero, one = dom.zero_scalar(), dom.one_scalar()
        if n == 0:
            return one
        # iteratively build the characteristic polynomial coefficient vector
        coeffs = [one, -self.a[0][0]]
        for k in range(1, n):
            # principal k+1 x k+1 block data
            R = [self.a[k][j] for j in range(k)]        # row strip
            C = [self.a[i][k] for i in range(k)]        # column strip
            akk = self.a[k][k]
            # Toeplitz column: akk, R*C, R*A*C, R*A^2*C, ...
            toep = [one, -akk]
            vec = C
            for _ in range(k):
                s = zero
                for j in range(k):
                    s = s + R[j] * vec[j]
                toep.append(-s)
                vec = [sum((self.a[i][j] * vec[j] for j in range(k)), start=zero)
                       for i in range(k)]
            new = []
            for i in range(k + 2):
                s = zero
                for j in range(min(i, len(coeffs) - 1) + 1):
                    if i - j < len(toep):
                        s = s + toep[i - j] * coeffs[j]
                new.append(s)
            coeffs = new
        d = coeffs[n]
        return d if n % 2 == 0 else -d

    def __repr__(self):
        return "[" + "; ".join(" ".join(repr(v) for v in r) for r in self.a) + "]"


def vec(domain, values):
    return [domain(v) for v in values]

def zero_vec(domain, n):
    return [domain.zero_scalar()] * n

def unit_vec(domain, n, i):
    v = zero_vec(domain, n)
    v[i] = domain.one_scalar()
    return v

def vec_add(x, y):
    return [a + b for a, b in zip(x, y)]

def vec_sub(x, y):
    return [a - b for a, b in zip(x, y)]

def vec_scale(s, x):
    return [s * a for a in x]

def vec_dot(x, y):
    out = None
    acc = None
    for a, b in zip(x, y):
        if out is None:
            out = a.domain.zero_scalar()
        if a and b:
            acc = a * b if acc is None else acc + a * b
    return out if acc is None else acc

def vec_is_zero(x):
    return all(not a for a in x)

def vec_eq(x, y):
    return len(x) == len(y) and all(a == b for a, b in zip(x, y))

def vec_key(x):
    return tuple(a.key() for a in x)

def row_times_matrix(x, M):
    # accumulate scaled rows; linear in the number of nonzero entries of x
    out = zero_vec(M.domain, M.ncols)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = M.a[i]
        for j in range(M.ncols):
            if row[j]:
                out[j] = out[j] + xi * row[j]
    return out

def matrix_times_col(M, x):
    return [vec_dot(M.row(i), x) for i in range(M.nrows)]


# ---------------------------------------------------------------------------
# Echelon forms, rank and kernels
# ---------------------------------------------------------------------------

def rref(M):
    """Reduced row echelon form over a field: (rows, pivot_columns).

    Pivots land on the lexicographically smallest possible columns, which
    makes representative choices downstream deterministic.
    """
    if not M.domain.is_field:
        raise UnsupportedDomain(f"rref needs a field, got {M.domain}")
    rows = [list(r) for r in M.a]
    pivots = []
    r = 0
    for c in range(M.ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * v for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [rows[i][j] - f * rows[r][j] for j in range(M.ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [rows[i] for i in range(r)], pivots


def echelon(M):
    """Fraction-free (Bareiss) row echelon form over an integral domain.

    Returns (rows, pivot_columns); every division performed is exact.
    """
    if not M.domain.is_integral:
        raise UnsupportedDomain(f"echelon needs an integral domain, got {M.domain}")
    if M.domain.is_field:
        return rref(M)
    rows = [list(r) for r in M.a]
    pivots = []
    prev = M.domain.one_scalar()
    r = 0
    for c in range(M.ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            fi = rows[i][c]
            big = [piv * rows[i][j] - fi * rows[r][j] for j in range(M.ncols)]
            # Bareiss division: exact for untouched rows; if a pivot skip broke
            # the pattern, keeping the undivided row only rescales it
            div = [v.exact_div(prev) for v in big]
            rows[i] = big if any(q is None for q in div) else div
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [rows[i] for i in range(r)], pivots


def _kernel_from_echelon(domain, rows, pivots, ncols):
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = zero_vec(domain, ncols)
        x[f] = domain.one_scalar()
        # back-substitute, staying in the domain by cross-multiplication
        for i in reversed(range(len(rows))):
            p = pivots[i]
            rhs = domain.zero_scalar()
            for j in range(p + 1, ncols):
                if rows[i][j] and x[j]:
                    rhs = rhs + rows[i][j] * x[j]
            piv = rows[i][p]
            if domain.is_field:
                x[p] = -(piv.inverse() * rhs)
            else:
                x = [piv * v for v in x]
                x[p] = -rhs
        basis.append(_normalize_vector(domain, x))
    return basis


def _normalize_vector(domain, x):
    lead = next((v for v in x if v), None)
    if lead is None:
        return x
    if domain.kind == "Z":
        from math import gcd
        g = 0
        for v in x:
            g = gcd(g, v.payload)
        if g > 1:
            x = [Scalar(domain, v.payload // g) for v in x]
        lead = next(v for v in x if v)
    u = Scalar(domain, domain.canonical_unit(lead.payload))
    return [u * v for v in x]


def kernel_and_rank(M):
    """A spanning set of ker(x -> M*x) over the fraction field, and the rank.

    The kernel vectors are cleared of denominators (they live in the domain)
    and rank + len(basis) == ncols.  Z/n with composite n is rejected.
    """
    if not M.domain.is_integral:
        raise UnsupportedDomain(
            f"kernel/rank needs an integral domain, got {M.domain}")
    rows, pivots = echelon(M)
    basis = _kernel_from_echelon(M.domain, rows, pivots, M.ncols)
    return basis, len(pivots)


def rank(M):
    return len(echelon(M)[1])


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(M):
    """U*M*V = D over Z or a Laurent ring, with d1 | d2 | ... on the diagonal.

    U and V are square and invertible over the domain (unit determinant).
    Over Z the diagonal is nonnegative; over a Laurent ring each nonzero
    entry is shifted to valuation zero and made monic.
    """
    U, D, V, _ = smith_with_transforms(M)
    return U, D, V


def smith_with_transforms(M):
    """Smith normal form plus the inverse of the right transform.

    Pivots are chosen by minimal Euclidean size (absolute value over Z,
    width over a Laurent ring) to limit entry growth.
    """
    dom = M.domain
    if not dom.is_pid:
        raise UnsupportedDomain(f"Smith normal form needs Z or a Laurent ring, got {dom}")
    m, n = M.nrows, M.ncols
    A = [list(r) for r in M.a]
    U = Matrix.identity(dom, m).a
    V = Matrix.identity(dom, n).a
    Vinv = Matrix.identity(dom, n).a

    def row_sub(i, j, q):  # row_i -= q*row_j
        A[i] = [A[i][c] - q * A[j][c] for c in range(n)]
        U[i] = [U[i][c] - q * U[j][c] for c in range(m)]

    def col_sub(j, i, q):  # col_j -= q*col_i; Vinv absorbs the inverse row op
        for r_ in range(m):
            A[r_][j] = A[r_][j] - q * A[r_][i]
        for r_ in range(n):
            V[r_][j] = V[r_][j] - q * V[r_][i]
        Vinv[i] = [Vinv[i][c] + q * Vinv[j][c] for c in range(n)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r_ in range(m):
            A[r_][i], A[r_][j] = A[r_][j], A[r_][i]
        for r_ in range(n):
            V[r_][i], V[r_][j] = V[r_][j], V[r_][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def scale_row(i, u):  # u a unit scalar
        A[i] = [u * v for v in A[i]]
        U[i] = [u * v for v in U[i]]

    def size(s):
        return dom.euclid_size(s.payload)

    s = 0
    while True:
        # locate the smallest nonzero entry in the trailing block
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if A[i][j]:
                    if best is None or size(A[i][j]) < size(A[best[0]][best[1]]):
                        best = (i, j)
        if best is None:
            break
        row_swap(s, best[0])
        col_swap(s, best[1])
        while True:
            # clear the edging by Euclidean division
            dirty = False
            for i in range(s + 1, m):
                if A[i][s]:
                    q, _ = dom.euclid_divmod(A[i][s].payload, A[s][s].payload)
                    row_sub(i, s, Scalar(dom, q))
                    if A[i][s]:
                        dirty = True
            for j in range(s + 1, n):
                if A[s][j]:
                    q, _ = dom.euclid_divmod(A[s][j].payload, A[s][s].payload)
                    col_sub(j, s, Scalar(dom, q))
                    if A[s][j]:
                        dirty = True
            if not dirty:
                break
            # pull the smallest remainder into the pivot position
            best = (s, s)
            for i in range(s, m):
                for j in range(s, n):
                    if A[i][j] and size(A[i][j]) < size(A[best[0]][best[1]]):
                        best = (i, j)
            if best != (s, s):
                row_swap(s, best[0])
                col_swap(s, best[1])
        # enforce divisibility of the remaining block by the pivot
        fix = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if A[i][j] and A[i][j].exact_div(A[s][s]) is None:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            row_sub(s, fix, Scalar(dom, dom.neg(dom.one)))  # add row fix to row s
            continue
        s += 1
        if s == min(m, n):
            break
    # normalize the diagonal by units
    for i in range(min(m, n)):
        if A[i][i]:
            u = Scalar(dom, dom.canonical_unit(A[i][i].payload))
            if u != dom.one_scalar():
                scale_row(i, u)
    return (Matrix(dom, U), Matrix(dom, A), Matrix(dom, V), Matrix(dom, Vinv))


def pid_column_kernel(M):
    """A basis of {x : M*x = 0} over a PID (saturated lattice of solutions)."""
    U, D, V, _ = smith_with_transforms(M)
    r = sum(1 for i in range(min(D.nrows, D.ncols)) if D[i, i])
    return [V.col(j) for j in range(r, M.ncols)]


def solution_lattice(M):
    """Basis of the solution lattice / space of M*x = 0 in the right category."""
    if M.domain.is_field:
        basis, _ = kernel_and_rank(M)
        return basis
    if M.domain.is_pid:
        return pid_column_kernel(M)
    raise UnsupportedDomain(f"cannot solve over {M.domain}")


# ---------------------------------------------------------------------------
# Row-span membership and solving
# ---------------------------------------------------------------------------

class RowSpan:
    """The row span of a matrix with precomputed normal forms, so that many
    membership/solve queries against the same span stay cheap.

    Over a field the span is held in reduced row echelon form; over Z or a
    Laurent ring the Smith transforms answer lattice membership by
    divisibility; over Z/n rows are lifted to Z together with n*e_i.
    """

    def __init__(self, M):
        self.M = M
        self.domain = M.domain
        dom = M.domain
        if dom.is_field:
            self._rows, self._pivots = rref(M)
            self._mode = "field"
        elif dom.is_pid:
            if M.nrows == 0:
                self._U = Matrix.identity(dom, 0)
                self._D = Matrix.zeros(dom, 0, M.ncols)
                self._V = Matrix.identity(dom, M.ncols)
            else:
                self._U, self._D, self._V, _ = smith_with_transforms(M)
            self._mode = "pid"
        elif dom.kind in ("Zmod", "GF"):
            from .domains import ZZ
            n = dom.n
            lifted = [[ZZ(v.payload) for v in row] for row in M.a]
            for i in range(M.ncols):
                lifted.append([ZZ(n if j == i else 0) for j in range(M.ncols)])
            self._lifted = RowSpan(Matrix(ZZ, lifted, ncols=M.ncols))
            self._mode = "lift"
        else:
            raise UnsupportedDomain(f"membership not decidable over {dom}")

    def contains(self, target):
        if self._mode == "field":
            v = list(target)
            for i, p in enumerate(self._pivots):
                if v[p]:
                    f = v[p]
                    row = self._rows[i]
                    v = [v[j] - f * row[j] for j in range(len(v))]
            return vec_is_zero(v)
        if self._mode == "lift":
            from .domains import ZZ
            return self._lifted.contains([ZZ(v.payload) for v in target])
        return self.solve(target) is not None

    def solve(self, target):
        """Some y with y*M = target, or None."""
        dom = self.domain
        if self._mode == "field":
            # reduce and record the coefficients against the original rows
            aug = Matrix(dom, [self.M.row(i) for i in range(self.M.nrows)],
                         ncols=self.M.ncols)
            return _solve_left_field(aug, target)
        if self._mode == "lift":
            raise UnsupportedDomain("solving not supported over Z/n")
        U, D, V = self._U, self._D, self._V
        w = row_times_matrix(target, V)
        z = zero_vec(dom, self.M.nrows)
        k = min(D.nrows, D.ncols)
        for j in range(self.M.ncols):
            dj = D[j, j] if j < k else dom.zero_scalar()
            if dj:
                q = w[j].exact_div(dj)
                if q is None:
                    return None
                if j < self.M.nrows:
                    z[j] = q
            elif w[j]:
                return None
        return row_times_matrix(z, U)


def _solve_left_field(M, target):
    dom = M.domain
    Mt = M.transpose()
    aug = Matrix(dom, [Mt.row(i) + [target[i]] for i in range(Mt.nrows)],
                 ncols=M.nrows + 1)
    rows, pivots = rref(aug)
    if M.nrows in pivots:
        return None
    y = zero_vec(dom, M.nrows)
    for i, p in enumerate(pivots):
        y[p] = rows[i][M.nrows]
    return y


def solve_left(M, target):
    """Some y with y*M = target, or None.  Exact over fields, Z and Laurent."""
    dom = M.domain
    if dom.is_field:
        return _solve_left_field(M, target)
    if dom.is_pid:
        return RowSpan(M).solve(target)
    raise UnsupportedDomain(f"cannot solve over {M.domain}")


def row_span_contains(M, target):
    """Is target in the row span of M over M's domain?

    Over Z/n membership is decided by lifting to Z and adjoining n*e_i rows.
    Callers with many queries against one span should hold a RowSpan.
    """
    return RowSpan(M).contains(target)


def spans_equal(A, B):
    """Mutual row-span inclusion of two matrices over the same domain."""
    sa, sb = RowSpan(A), RowSpan(B)
    return (all(sb.contains(r) for r in A.a)
            and all(sa.contains(r) for r in B.a))


def dedup_rows(M):
    """Drop zero rows and duplicates (keeping first occurrences)."""
    seen = set()
    rows = []
    for r in M.a:
        if vec_is_zero(r):
            continue
        k = vec_key(r)
        if k in seen:
            continue
        seen.add(k)
        rows.append(r)
    return Matrix(M.domain, rows, ncols=M.ncols)


def invert_field_matrix(M):
    """Inverse of a square matrix over a field (None when singular)."""
    dom = M.domain
    n = M.nrows
    aug = Matrix(dom, [M.a[i] + Matrix.identity(dom, n).a[i] for i in range(n)])
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return Matrix(dom, [r[n:] for r in rows[:n]])

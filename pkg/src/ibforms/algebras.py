"""Structure-constant algebras over exact domains, and their named models.

An algebra is a free module of finite rank with a sparse multiplication
table b_i * b_j = sum_k c_{ijk} b_k.  No identities are assumed; Lie,
associative and unital flags are verified on demand and cached.
"""

from __future__ import annotations

from .domains import Scalar, domain_from_json
from .errors import BadSpec, NotLie, NotUnital, UnsupportedDomain
from .linalg import (Matrix, unit_vec, vec_add, vec_is_zero, vec_scale,
                     vec_sub, zero_vec)
from .modules import PresentedModule


class Algebra:

    def __init__(self, domain, rank, basis, table, unit_coords=None, name=""):
        self.domain = domain
        self.n = rank
        self.basis = list(basis)
        self.table = table            # dict[(i, j)] -> dict[k] -> Scalar
        self.unit_coords = unit_coords
        self.name = name or "algebra"
        self._flags = {}

    # -- multiplication --------------------------------------------------------
    def mul_basis(self, i, j):
        out = zero_vec(self.domain, self.n)
        for k, c in self.table.get((i, j), {}).items():
            out[k] = out[k] + c
        return out

    def mul_vec(self, x, y):
        out = zero_vec(self.domain, self.n)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = out[k] + f * c
        return out

    def left_mult_matrix(self, i):
        """L with L*coords(y) = coords(b_i * y) (column convention)."""
        M = Matrix.zeros(self.domain, self.n, self.n)
        for m in range(self.n):
            col = self.mul_basis(i, m)
            for k in range(self.n):
                M.a[k][m] = col[k]
        return M

    def right_mult_matrix(self, j):
        """R with R*coords(x) = coords(x * b_j)."""
        M = Matrix.zeros(self.domain, self.n, self.n)
        for m in range(self.n):
            col = self.mul_basis(m, j)
            for k in range(self.n):
                M.a[k][m] = col[k]
        return M

    ad_matrix = left_mult_matrix  # adjoint action, for Lie algebras

    # -- verified flags ----------------------------------------------------------
    def is_lie(self):
        if "lie" not in self._flags:
            self._flags["lie"] = self._check_lie() is None
        return self._flags["lie"]

    def _check_lie(self):
        for i in range(self.n):
            if not vec_is_zero(self.mul_basis(i, i)):
                return ("square", i)
            for j in range(i + 1, self.n):
                if not vec_is_zero(vec_add(self.mul_basis(i, j), self.mul_basis(j, i))):
                    return ("antisymmetry", i, j)
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    s = self.mul_vec(self.mul_basis(i, j), unit_vec(self.domain, self.n, k))
                    s = vec_add(s, self.mul_vec(self.mul_basis(j, k), unit_vec(self.domain, self.n, i)))
                    s = vec_add(s, self.mul_vec(self.mul_basis(k, i), unit_vec(self.domain, self.n, j)))
                    if not vec_is_zero(s):
                        return ("jacobi", i, j, k)
        return None

    def is_unital(self):
        if "unital" not in self._flags:
            ok = False
            if self.unit_coords is not None:
                ok = all(
                    self.mul_vec(self.unit_coords, unit_vec(self.domain, self.n, i))
                    == unit_vec(self.domain, self.n, i)
                    and self.mul_vec(unit_vec(self.domain, self.n, i), self.unit_coords)
                    == unit_vec(self.domain, self.n, i)
                    for i in range(self.n))
            self._flags["unital"] = ok
        return self._flags["unital"]

    def is_associative(self):
        if "associative" not in self._flags:
            ok = True
            for i in range(self.n):
                for j in range(self.n):
                    for k in range(self.n):
                        lhs = self.mul_vec(self.mul_basis(i, j), unit_vec(self.domain, self.n, k))
                        rhs = self.mul_vec(unit_vec(self.domain, self.n, i), self.mul_basis(j, k))
                        if lhs != rhs:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            self._flags["associative"] = ok
        return self._flags["associative"]

    def require_lie(self):
        if not self.is_lie():
            raise NotLie(f"{self.name}: {self._check_lie()}")

    def require_unital(self):
        if not self.is_unital():
            raise NotUnital(f"{self.name} has no verified identity element")

    # -- spans -----------------------------------------------------------------
    def derived_rows(self):
        return [self.mul_basis(i, j) for i in range(self.n) for j in range(self.n)]

    def derived_span(self):
        return Matrix(self.domain, self.derived_rows()) if self.n else Matrix.zeros(self.domain, 0, 0)

    def commutator_rows(self):
        return [vec_sub(self.mul_basis(i, j), self.mul_basis(j, i))
                for i in range(self.n) for j in range(self.n)]

    def associator_rows(self):
        rows = []
        for i in range(self.n):
            for j in range(self.n):
                ij = self.mul_basis(i, j)
                for k in range(self.n):
                    lhs = self.mul_vec(ij, unit_vec(self.domain, self.n, k))
                    rhs = self.mul_vec(unit_vec(self.domain, self.n, i), self.mul_basis(j, k))
                    rows.append(vec_sub(lhs, rhs))
        return rows

    def ac_rows(self):
        return self.associator_rows() + self.commutator_rows()

    def is_perfect(self):
        """True iff products of basis pairs span the whole module."""
        q = PresentedModule(self.domain, self.n, Matrix(self.domain, self.derived_rows()))
        return q.is_zero_module()

    # -- wire format --------------------------------------------------------------
    def to_spec(self):
        mul = []
        for (i, j) in sorted(self.table):
            for k in sorted(self.table[(i, j)]):
                c = self.table[(i, j)][k]
                if c:
                    mul.append([i, j, k, self.domain.to_json(c.payload)])
        spec = {"ring": self.domain.ring_json(), "rank": self.n,
                "basis": list(self.basis), "mul": mul}
        if self.unit_coords is not None:
            spec["unit"] = [self.domain.to_json(c.payload) for c in self.unit_coords]
        return spec

    def __repr__(self):
        return f"{self.name} over {self.domain} (rank {self.n})"


def from_table(spec, name=""):
    """Build an algebra from the JSON wire format, validating everything."""
    if not isinstance(spec, dict):
        raise BadSpec("algebra spec must be an object")
    for key in ("ring", "rank", "mul"):
        if key not in spec:
            raise BadSpec(f"algebra spec missing {key!r}")
    domain = domain_from_json(spec["ring"])
    n = spec["rank"]
    if not isinstance(n, int) or n < 1:
        raise BadSpec("rank must be a positive integer")
    basis = spec.get("basis") or [f"b{i}" for i in range(n)]
    if len(basis) != n:
        raise BadSpec("basis name count does not match rank")
    table = {}
    seen = set()
    for entry in spec["mul"]:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise BadSpec(f"bad mul entry {entry!r}")
        i, j, k, raw = entry
        if not all(isinstance(v, int) and 0 <= v < n for v in (i, j, k)):
            raise BadSpec(f"mul indices out of range in {entry!r}")
        if (i, j, k) in seen:
            raise BadSpec(f"duplicate mul entry for ({i},{j},{k})")
        seen.add((i, j, k))
        c = raw if isinstance(raw, Scalar) else Scalar(domain, domain.from_json(raw))
        if c:
            table.setdefault((i, j), {})[k] = c
    unit = None
    if spec.get("unit") is not None:
        if len(spec["unit"]) != n:
            raise BadSpec("unit vector has wrong length")
        unit = [Scalar(domain, domain.from_json(v)) for v in spec["unit"]]
    return Algebra(domain, n, basis, table, unit, name or spec.get("name", ""))


def zero_algebra(n, domain):
    return Algebra(domain, n, [f"b{i}" for i in range(n)], {}, name=f"zero{n}")


def _table_from_products(domain, mats, coords, bracket):
    """Structure constants for a basis of square matrices."""
    n = len(mats)
    size = len(mats[0])

    def mat_mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(size)),
                     start=domain.zero_scalar()) for j in range(size)]
                for i in range(size)]

    table = {}
    for i in range(n):
        for j in range(n):
            P = mat_mul(mats[i], mats[j])
            if bracket:
                Q = mat_mul(mats[j], mats[i])
                P = [[P[r][c] - Q[r][c] for c in range(size)] for r in range(size)]
            cvec = coords(P)
            entry = {k: c for k, c in enumerate(cvec) if c}
            if entry:
                table[(i, j)] = entry
    return table


def sl(n, domain, name=None):
    """Trace-zero n x n matrices as a Lie algebra.

    For n = 2 the basis is the standard (e, h, f); in general the order is
    the above-diagonal E_ij, then H_i = E_ii - E_{i+1,i+1}, then the
    below-diagonal E_ij.
    """
    if n < 2:
        raise BadSpec("sl(n) needs n >= 2")
    z, o = domain.zero_scalar(), domain.one_scalar()

    def E(i, j):
        return [[o if (r, c) == (i, j) else z for c in range(n)] for r in range(n)]

    mats, names = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(E(i, j))
            names.append(f"E{i+1}{j+1}")
    for i in range(n - 1):
        H = E(i, i)
        H[i + 1][i + 1] = -o
        mats.append(H)
        names.append(f"H{i+1}")
    for j in range(n):
        for i in range(j + 1, n):
            mats.append(E(i, j))
            names.append(f"E{i+1}{j+1}")
    if n == 2:
        names = ["e", "h", "f"]

    index = {}
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            index[(i, j)] = pos
            pos += 1
    h0 = pos
    pos += n - 1
    for j in range(n):
        for i in range(j + 1, n):
            index[(i, j)] = pos
            pos += 1

    def coords(P):
        out = zero_vec(domain, len(mats))
        for (i, j), k in index.items():
            out[k] = P[i][j]
        acc = domain.zero_scalar()
        for i in range(n - 1):
            acc = acc + P[i][i]
            out[h0 + i] = acc
        return out

    table = _table_from_products(domain, mats, coords, bracket=True)
    A = Algebra(domain, len(mats), names, table, name=name or f"sl{n}")
    A.require_lie()
    return A


def mat(n, domain, name=None):
    """The full matrix algebra M_n with basis E_ij in row-major order."""
    if n < 1:
        raise BadSpec("mat(n) needs n >= 1")
    rank = n * n
    names = [f"E{i+1}{j+1}" for i in range(n) for j in range(n)]
    table = {}
    one = domain.one_scalar()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        table[(i * n + j, k * n + l)] = {i * n + l: one}
    unit = zero_vec(domain, rank)
    for i in range(n):
        unit[i * n + i] = one
    A = Algebra(domain, rank, names, table, unit, name=name or f"mat{n}")
    A.require_unital()
    return A


def zorn(domain, name=None):
    """Zorn vector matrices: the split octonions in 2 x 2 block form.

    Basis (e1, e2, u1, u2, u3, x1, x2, x3) for [[a1, u], [x, a2]]; the
    product combines scalar products and cross products of the R^3 blocks.
    """
    names = ["e1", "e2", "u1", "u2", "u3", "x1", "x2", "x3"]
    z, o = domain.zero_scalar(), domain.one_scalar()

    def elem(k):
        a1 = o if k == 0 else z
        a2 = o if k == 1 else z
        u = [o if k == 2 + t else z for t in range(3)]
        x = [o if k == 5 + t else z for t in range(3)]
        return (a1, u, x, a2)

    def dot(p, q):
        return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]

    def cross(p, q):
        return [p[1] * q[2] - p[2] * q[1],
                p[2] * q[0] - p[0] * q[2],
                p[0] * q[1] - p[1] * q[0]]

    def product(A, B):
        a1, u, x, a2 = A
        b1, v, y, b2 = B
        c1 = a1 * b1 - dot(u, y)
        c2 = -dot(x, v) + a2 * b2
        top = [a1 * v[t] + b2 * u[t] for t in range(3)]
        xy = cross(x, y)
        top = [top[t] + xy[t] for t in range(3)]
        bot = [b1 * x[t] + a2 * y[t] for t in range(3)]
        uv = cross(u, v)
        bot = [bot[t] + uv[t] for t in range(3)]
        return (c1, top, bot, c2)

    table = {}
    for i in range(8):
        for j in range(8):
            c1, top, bot, c2 = product(elem(i), elem(j))
            cvec = [c1, c2] + top + bot
            entry = {k: c for k, c in enumerate(cvec) if c}
            if entry:
                table[(i, j)] = entry
    unit = [o, o, z, z, z, z, z, z]
    A = Algebra(domain, 8, names, table, unit, name=name or "zorn")
    A.require_unital()
    return A


def direct_sum(A, B, name=None):
    """A boxplus B: products across the summands vanish."""
    if A.domain != B.domain:
        raise UnsupportedDomain("direct sum needs a common coefficient ring")
    n = A.n + B.n
    table = {}
    for (i, j), entry in A.table.items():
        table[(i, j)] = dict(entry)
    for (i, j), entry in B.table.items():
        table[(A.n + i, A.n + j)] = {A.n + k: c for k, c in entry.items()}
    unit = None
    if A.unit_coords is not None and B.unit_coords is not None:
        unit = list(A.unit_coords) + list(B.unit_coords)
    basis = [f"l.{b}" for b in A.basis] + [f"r.{b}" for b in B.basis]
    return Algebra(A.domain, n, basis, table, unit,
                   name=name or f"{A.name}(+){B.name}")


def base_change_algebra(B, ring_map, name=None):
    """The algebra B tensor S along a supported ring map R -> S."""
    table = {}
    for (i, j), entry in B.table.items():
        new = {}
        for k, c in entry.items():
            v = ring_map(c)
            if v:
                new[k] = v
        if new:
            table[(i, j)] = new
    unit = None
    if B.unit_coords is not None:
        unit = [ring_map(c) for c in B.unit_coords]
    return Algebra(ring_map.dst, B.n, list(B.basis), table, unit,
                   name=name or f"{B.name}@{ring_map.dst.name}")


def ac_module(B):
    """(relation rows spanning ac(B), the quotient module AC(B) = B/ac(B))."""
    rows = B.ac_rows()
    rel = Matrix(B.domain, rows) if rows else Matrix.zeros(B.domain, 0, B.n)
    return rel, PresentedModule(B.domain, B.n, rel)


def commutator_span(B):
    rows = B.commutator_rows()
    return Matrix(B.domain, rows) if rows else Matrix.zeros(B.domain, 0, B.n)


def associator_span(B):
    rows = B.associator_rows()
    return Matrix(B.domain, rows) if rows else Matrix.zeros(B.domain, 0, B.n)

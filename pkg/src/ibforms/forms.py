"""Bilinear forms on structure-constant algebras: Gram matrices with
invariance, symmetry, nondegeneracy and nonsingularity certificates."""

from __future__ import annotations

from .domains import ZZ, Scalar
from .errors import UnsupportedDomain
from .linalg import (Matrix, matrix_times_col, smith_normal_form, unit_vec,
                     vec_dot, zero_vec)


class BilinearForm:
    """A form on an algebra, stored as the Gram matrix G[i][j] = beta(b_i, b_j).

    The flags are tri-state caches (absent / True / False), each reproducible
    by the corresponding checker.  Forms with values in a smaller ring k are
    represented elsewhere as linear functionals composed with R-valued forms,
    so the Gram entries always live in the algebra's own domain.
    """

    def __init__(self, algebra, gram, name=""):
        if gram.nrows != algebra.n or gram.ncols != algebra.n:
            raise ValueError("Gram matrix does not match the algebra rank")
        if gram.domain != algebra.domain:
            raise UnsupportedDomain("Gram matrix domain differs from the algebra's")
        self.algebra = algebra
        self.gram = gram
        self.name = name or "form"
        self._flags = {}

    @classmethod
    def from_rows(cls, algebra, int_rows, name=""):
        return cls(algebra, Matrix.from_rows(algebra.domain, int_rows), name)

    def value(self, x, y):
        return vec_dot(x, matrix_times_col(self.gram, y))

    def gram_vector(self):
        """The Gram matrix flattened row-major, as a functional on B (x) B."""
        return [self.gram[i, j] for i in range(self.algebra.n)
                for j in range(self.algebra.n)]

    # -- predicates ---------------------------------------------------------------
    def is_symmetric(self):
        if "symmetric" not in self._flags:
            n = self.algebra.n
            self._flags["symmetric"] = all(
                self.gram[i, j] == self.gram[j, i]
                for i in range(n) for j in range(i + 1, n))
        return self._flags["symmetric"]

    def invariance_violation(self):
        """None, or (which_identity, i, j, k) for the first failing triple.

        Checks beta(ab, c) = beta(a, bc) = beta(b, ca) on ordered basis
        triples; by bilinearity this is exhaustive.
        """
        A = self.algebra
        for i in range(A.n):
            for j in range(A.n):
                ij = A.mul_basis(i, j)
                for k in range(A.n):
                    ek = unit_vec(A.domain, A.n, k)
                    left = self.value(ij, ek)
                    mid = self.value(unit_vec(A.domain, A.n, i), A.mul_basis(j, k))
                    if left != mid:
                        return ("b(ab,c)=b(a,bc)", i, j, k)
                    right = self.value(unit_vec(A.domain, A.n, j), A.mul_basis(k, i))
                    if left != right:
                        return ("b(ab,c)=b(b,ca)", i, j, k)
        return None

    def is_invariant(self):
        if "invariant" not in self._flags:
            self._flags["invariant"] = self.invariance_violation() is None
        return self._flags["invariant"]

    def is_nondegenerate(self):
        """Left nondegeneracy: beta(b, M) = 0 implies b = 0."""
        if "nondegenerate" not in self._flags:
            dom = self.algebra.domain
            if dom.is_integral:
                self._flags["nondegenerate"] = bool(self.gram.det())
            elif dom.kind in ("Zmod", "GF"):
                self._flags["nondegenerate"] = _residue_kernel_trivial(self.gram)
            else:
                raise UnsupportedDomain(f"nondegeneracy not decidable over {dom}")
        return self._flags["nondegenerate"]

    def is_nonsingular(self):
        if "nonsingular" not in self._flags:
            self._flags["nonsingular"] = self.gram.det().is_unit()
        return self._flags["nonsingular"]

    def flags(self):
        return {
            "symmetric": self.is_symmetric(),
            "invariant": self.is_invariant(),
            "nondegenerate": self.is_nondegenerate(),
            "nonsingular": self.is_nonsingular(),
        }

    # -- functoriality -----------------------------------------------------------
    def base_change(self, ring_map, target_algebra=None):
        """The form on B (x) S with Gram entries mapped along R -> S."""
        from .algebras import base_change_algebra
        B = target_algebra or base_change_algebra(self.algebra, ring_map)
        return BilinearForm(B, self.gram.map(ring_map),
                            name=f"{self.name}@{ring_map.dst.name}")

    def pullback(self, F, name=""):
        """f^*(beta)(x, y) = beta(f x, f y) for a linear map with matrix F.

        F's columns are the images of the basis vectors, so the pulled-back
        Gram matrix is F^T * G * F.
        """
        G = F.transpose() * self.gram * F
        return BilinearForm(self.algebra, G, name or f"{self.name}^*")

    def scaled(self, s):
        return BilinearForm(self.algebra, self.gram.scale(s), f"{s}*{self.name}")

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"{self.name} on {self.algebra.name}: {self.gram!r}"


def _residue_kernel_trivial(G):
    """Injectivity of x -> G x over Z/n via the integer Smith form."""
    from math import gcd
    n = G.domain.n
    lifted = Matrix.from_rows(ZZ, [[v.payload for v in row] for row in G.a])
    _, D, _ = smith_normal_form(lifted)
    k = min(D.nrows, D.ncols)
    for j in range(G.ncols):
        d = D[j, j].payload if j < k else 0
        if gcd(d, n) != 1:
            return False
    return True


def proportionality_constant(beta, gamma):
    """c with beta = c*gamma entrywise, or None (gamma must be nonzero)."""
    n = beta.algebra.n
    c = None
    for i in range(n):
        for j in range(n):
            g = gamma.gram[i, j]
            b = beta.gram[i, j]
            if not g:
                if b:
                    return None
                continue
            q = b.exact_div(g)
            if q is None:
                return None
            if c is None:
                c = q
            elif c != q:
                return None
    return c if c is not None else beta.algebra.domain.zero_scalar()

"""Centroids with values in the regular and dual dimodules, centrality,
and the bridge between dual-valued centroids and invariant forms."""

from __future__ import annotations

from .errors import UnsupportedDomain
from .forms import BilinearForm
from .ibf import ibf_module, invariant_form_space
from .linalg import (Matrix, dedup_rows, row_span_contains, solution_lattice,
                     spans_equal, zero_vec)


class CentroidResult:

    def __init__(self, algebra, target, basis, contains_identity):
        self.algebra = algebra
        self.target = target                  # "regular" or "dual"
        self.basis = basis                    # list of n x n matrices
        self.contains_identity = contains_identity

    def rank(self):
        return len(self.basis)

    def __repr__(self):
        return (f"Cent({self.algebra.name}, {self.target}): "
                f"rank {self.rank()}")


def _centroid_system(B, target):
    """Rows of the linear system in the n^2 unknowns chi[m][k] (index m*n+k).

    regular:  chi(b_i b_j) = b_i * chi(b_j) = chi(b_i) * b_j
    dual:     the same identities for maps into B^* with the actions
              (b . phi)(c) = phi(c b) and (phi . b)(c) = phi(b c).
    """
    n = B.n
    dom = B.domain
    rows = []

    def c(i, j, k):
        return B.table.get((i, j), {}).get(k)

    for i in range(n):
        for j in range(n):
            prod = B.table.get((i, j), {})
            for r in range(n):
                eq1 = zero_vec(dom, n * n)
                eq2 = zero_vec(dom, n * n)
                for k, ck in prod.items():
                    eq1[r * n + k] = eq1[r * n + k] + ck
                    eq2[r * n + k] = eq2[r * n + k] + ck
                for m in range(n):
                    if target == "regular":
                        a1 = c(i, m, r)       # b_i * chi(b_j), coordinate r
                        a2 = c(m, j, r)       # chi(b_i) * b_j, coordinate r
                    else:
                        a1 = c(r, i, m)       # chi(b_j)(b_r b_i)
                        a2 = c(j, r, m)       # chi(b_i)(b_j b_r)
                    if a1:
                        eq1[m * n + j] = eq1[m * n + j] - a1
                    if a2:
                        eq2[m * n + i] = eq2[m * n + i] - a2
                rows.append(eq1)
                rows.append(eq2)
    return Matrix(dom, rows, ncols=n * n)


def centroid(B, target="regular"):
    """Solve the centroidal identities; over Z the result is a lattice basis."""
    if target not in ("regular", "dual"):
        raise ValueError("target must be 'regular' or 'dual'")
    dom = B.domain
    if not (dom.is_field or dom.is_pid):
        raise UnsupportedDomain(f"centroid needs a field or PID, got {dom}")
    n = B.n
    system = dedup_rows(_centroid_system(B, target))
    if system.nrows == 0:
        vecs = []
        for idx in range(n * n):
            v = zero_vec(dom, n * n)
            v[idx] = dom.one_scalar()
            vecs.append(v)
    else:
        vecs = solution_lattice(system)
    mats = [Matrix(dom, [[v[m * n + k] for k in range(n)] for m in range(n)])
            for v in vecs]
    ident = Matrix.identity(dom, n)
    id_vec = [ident[m, k] for m in range(n) for k in range(n)]
    if vecs:
        span = Matrix(dom, vecs, ncols=n * n)
        has_id = row_span_contains(span, id_vec)
    else:
        has_id = False
    return CentroidResult(B, target, mats, has_id)


def is_central(B):
    """True iff the centroid is exactly the scalar multiples of the identity."""
    cent = centroid(B, "regular")
    n = B.n
    dom = B.domain
    ident = Matrix.identity(dom, n)
    id_vec = [ident[m, k] for m in range(n) for k in range(n)]
    if len(cent.basis) != 1:
        return False
    sol = cent.basis[0]
    sol_vec = [sol[m, k] for m in range(n) for k in range(n)]
    id_span = Matrix(dom, [id_vec])
    sol_span = Matrix(dom, [sol_vec])
    return spans_equal(id_span, sol_span)


def centroid_ibf_bridge(B):
    """Match dual-valued centroid elements with invariant forms.

    chi corresponds to beta via beta(b1, b2) = chi(b1)(b2), i.e. the Gram
    matrix is the transpose of the solution matrix.  The certificate checks
    both solution spaces/lattices coincide under that matching and that the
    common rank equals the rank of Hom(IBF_R(B), R).
    """
    dual = centroid(B, "dual")
    forms = invariant_form_space(B)
    n = B.n
    dom = B.domain
    ibf = ibf_module(B)
    hom_rank = ibf.hom_rank()

    chi_grams = [Y.transpose() for Y in dual.basis]
    chi_vec = [[G[i, j] for i in range(n) for j in range(n)] for G in chi_grams]
    form_vec = [[f.gram[i, j] for i in range(n) for j in range(n)] for f in forms]
    if chi_vec or form_vec:
        A = Matrix(dom, chi_vec, ncols=n * n)
        Bm = Matrix(dom, form_vec, ncols=n * n)
        matched = spans_equal(A, Bm)
    else:
        matched = True
    matched_forms = [BilinearForm(B, G, name="from_dual_centroid")
                     for G in chi_grams]
    all_invariant = all(f.is_invariant() for f in matched_forms)
    cert = {
        "algebra": B.name,
        "dual_centroid_rank": dual.rank(),
        "invariant_form_rank": len(forms),
        "hom_ibf_rank": hom_rank,
        "ranks_equal": dual.rank() == len(forms) == hom_rank,
        "matching_bijective": matched and all_invariant,
        "ok": (dual.rank() == len(forms) == hom_rank) and matched and all_invariant,
    }
    return cert, matched_forms

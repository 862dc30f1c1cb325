"""The universal module of invariant bilinear forms.

For an algebra B with basis b_1..b_n, the tensor square R^(n^2) is divided
by the span of the invariance defects

    coords(b_i b_j (x) b_k) - coords(b_i (x) b_j b_k)
    coords(b_i b_j (x) b_k) - coords(b_j (x) b_k b_i)

over all ordered basis triples.  Linear functionals on the quotient
correspond exactly to invariant bilinear functions on B; a single form whose
induced functional is an isomorphism onto R pins down every invariant form.
"""

from __future__ import annotations

from .errors import BadComplement, NotInvariant, NotUnital, UnsupportedDomain
from .forms import BilinearForm
from .linalg import (Matrix, RowSpan, dedup_rows, rank, matrix_times_col,
                     solution_lattice, unit_vec, vec_dot, zero_vec)
from .modules import (ModuleMap, PresentedModule, TargetModule,
                      map_is_isomorphism)


def ibf_relations(B):
    """The 2*n^3 defect rows in R^(n^2), duplicates retained.

    Row 2*(i*n^2 + j*n + k) comes from the identity b(ab,c) = b(a,bc) at
    (b_i, b_j, b_k); the following row from b(ab,c) = b(b,ca).
    """
    n = B.n
    dom = B.domain
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rowA = zero_vec(dom, n * n)
                rowB = zero_vec(dom, n * n)
                for m, c in B.table.get((i, j), {}).items():
                    rowA[m * n + k] = rowA[m * n + k] + c
                    rowB[m * n + k] = rowB[m * n + k] + c
                for m, c in B.table.get((j, k), {}).items():
                    rowA[i * n + m] = rowA[i * n + m] - c
                for m, c in B.table.get((k, i), {}).items():
                    rowB[j * n + m] = rowB[j * n + m] - c
                rows.append(rowA)
                rows.append(rowB)
    return Matrix(dom, rows) if rows else Matrix.zeros(dom, 0, n * n)


def relation_triple(B, row_index):
    """(identity, i, j, k) that produced the given relation row."""
    n = B.n
    which, t = row_index % 2, row_index // 2
    i, rest = divmod(t, n * n)
    j, k = divmod(rest, n)
    ident = "b(ab,c)=b(a,bc)" if which == 0 else "b(ab,c)=b(b,ca)"
    return ident, i, j, k


class IBFModule(PresentedModule):
    """The quotient of the tensor square by the invariance defects."""

    def __init__(self, algebra):
        super().__init__(algebra.domain, algebra.n * algebra.n,
                         ibf_relations(algebra))
        self.algebra = algebra

    def gen_index(self, i, j):
        return i * self.algebra.n + j

    def gen_name(self, idx):
        i, j = divmod(idx, self.algebra.n)
        return f"{self.algebra.basis[i]}(x){self.algebra.basis[j]}"

    def describe(self):
        d = super().describe()
        if d.get("basis_classes") is not None:
            d["basis_classes"] = [self.gen_name(c) for c in d["basis_classes"]]
        return d


def ibf_module(B):
    return IBFModule(B)


def induced_map(beta, ibf=None):
    """The functional IBF_R(B) -> R sending class(a (x) b) to beta(a, b).

    Well defined exactly when beta is invariant; otherwise NotInvariant is
    raised, reporting a violating basis triple.
    """
    B = beta.algebra
    ibf = ibf if ibf is not None else ibf_module(B)
    g = beta.gram_vector()
    rel = ibf_relations(B)
    for idx, row in enumerate(rel.a):
        if vec_dot(row, g):
            ident, i, j, k = relation_triple(B, idx)
            raise NotInvariant(
                f"{beta.name} violates {ident} at basis triple "
                f"({B.basis[i]}, {B.basis[j]}, {B.basis[k]})",
                triple=(i, j, k))
    target = PresentedModule(B.domain, 1)
    return ModuleMap(ibf, target, Matrix(B.domain, [[v] for v in g]))


def forms_from_functional(B, values, ibf=None):
    """The invariant bilinear function attached to a functional on IBF.

    ``values`` lists the images of the n^2 tensor generators; the result is
    the form with Gram[i][j] = values[i*n+j].  Composing with induced_map in
    either order is the identity.
    """
    n = B.n
    if len(values) != n * n:
        raise ValueError("functional must assign a value to every generator")
    gram = Matrix(B.domain, [[values[i * n + j] for j in range(n)] for i in range(n)])
    return BilinearForm(B, gram, name="from_functional")


def invariant_form_space(B):
    """A basis of the space/lattice of invariant Gram matrices on B.

    This is the brute-force oracle: solve "the Gram vector annihilates every
    relation row" in the n^2 unknowns directly.
    """
    rel = dedup_rows(ibf_relations(B))
    if rel.nrows == 0:
        basis = [unit_vec(B.domain, B.n * B.n, i) for i in range(B.n * B.n)]
    else:
        basis = solution_lattice(rel)
    return [forms_from_functional(B, v) for v in basis]


def check_ibf_principle(B, beta):
    """Does beta induce an isomorphism IBF_R(B) -> R?

    Returns a certificate: on success the image of the free generator and
    the preimage of 1; on failure the kernel (torsion plus surplus free
    rank) and the cokernel R/(image ideal).
    """
    ibf = ibf_module(B)
    bar = induced_map(beta, ibf)       # raises NotInvariant when ill-defined
    dom = B.domain
    g = beta.gram_vector()
    c = ibf.classify()
    cert = {"form": beta.name, "algebra": B.name, "ibf": ibf.describe()}
    if c["kind"] == "field":
        free = c["basis_classes"]
        images = [g[f] for f in free]
        torsion = []
    else:
        gprime = matrix_times_col(c["_Vinv"], g)
        diag = c["_diag"]
        images = [gprime[j] for j in range(ibf.ngens) if j >= len(diag)]
        torsion = c["invariant_factors"]
    unit_images = [v for v in images if v.is_unit()]
    holds = (not torsion) and len(images) == 1 and bool(unit_images)
    cert["holds"] = holds
    cert["free_generator_images"] = [dom.fmt(v.payload) for v in images]
    if holds:
        u = images[0]
        if c["kind"] == "field":
            pre = zero_vec(dom, ibf.ngens)
            pre[c["basis_classes"][0]] = u.inverse()
        else:
            j = len(c["_diag"])
            pre = [u.inverse() * v for v in c["_Vinv"].row(j)]
        cert["preimage_of_one"] = [dom.fmt(v.payload) for v in pre]
        cert["_preimage"] = pre
    else:
        ker_free = len(images) - (1 if any(bool(v) for v in images) else 0)
        cert["kernel"] = {
            "invariant_factors": [dom.fmt(d.payload) for d in torsion],
            "free_rank": ker_free,
        }
        cert["cokernel"] = _image_cokernel(dom, g)
    return cert


def _image_cokernel(dom, g):
    """R modulo the ideal generated by the Gram entries, as a string."""
    nonzero = [v for v in g if v]
    if not nonzero:
        return "R"
    if any(v.is_unit() for v in nonzero):
        return "0"
    if dom.kind == "Z":
        from math import gcd
        d = 0
        for v in nonzero:
            d = gcd(d, v.payload)
        return "0" if d == 1 else f"Z/{d}"
    if dom.is_field:
        return "0"
    return "R/(gram entries)"


def unital_ac_isomorphism(B):
    """The mutually inverse maps IBF_R(B) <-> AC(B) = B/ac(B).

    mu sends class(a (x) b) to class(ab); nu sends class(a) to
    class(1 (x) a).  Both are certified well defined and inverse to each
    other modulo the presentations.
    """
    from .algebras import ac_module
    B.require_unital()
    _, AC = ac_module(B)
    ibf = ibf_module(B)
    n = B.n
    mu_rows = [B.mul_basis(i, j) for i in range(n) for j in range(n)]
    mu = ModuleMap(ibf, AC, Matrix(B.domain, mu_rows))
    nu_rows = []
    for a in range(n):
        row = zero_vec(B.domain, n * n)
        for u, cu in enumerate(B.unit_coords):
            if cu:
                row[u * n + a] = cu
        nu_rows.append(row)
    nu = ModuleMap(AC, ibf, Matrix(B.domain, nu_rows))
    if not mu.well_defined():
        raise NotUnital(f"multiplication map ill-defined on IBF({B.name})")
    if not nu.well_defined():
        raise NotUnital(f"unit section ill-defined on AC({B.name})")
    assert mu.then(nu).is_identity_mod_relations()
    assert nu.then(mu).is_identity_mod_relations()
    return mu, nu


def unital_projection_form(B, b0):
    """The form beta0(a, b) = pi(ab) for a decomposition B = R*b0 (+) ac(B).

    BadComplement is raised unless b0's class generates AC(B) freely and the
    span of b0 together with ac(B) is all of B.
    """
    from .algebras import ac_module
    B.require_unital()
    rel, AC = ac_module(B)
    dom = B.domain
    stacked = Matrix(dom, [list(b0)] + rel.rows())
    # direct sum test: b0 + ac spans B, and ac alone has corank exactly 1
    full = PresentedModule(dom, B.n, stacked)
    if not full.is_zero_module():
        raise BadComplement(f"R*b0 + ac does not span {B.name}")
    if rank(rel) != B.n - 1:
        raise BadComplement(f"ac({B.name}) does not have corank 1")
    span = RowSpan(dedup_rows(stacked))
    pi = []
    for i in range(B.n):
        y = span.solve(unit_vec(dom, B.n, i))
        if y is None:
            raise BadComplement(f"basis vector {B.basis[i]} not reachable")
        pi.append(y[0])
    n = B.n
    gram = Matrix(dom, [[vec_dot(B.mul_basis(i, j), pi) for j in range(n)]
                        for i in range(n)])
    beta0 = BilinearForm(B, gram, name="projection_form")
    if not beta0.is_invariant():
        raise BadComplement("projection form failed its invariance certificate")
    return beta0

"""Finitely presented modules and maps between them.

A presented module is R^g modulo the row span of a relation matrix.  Over a
field the classification is a dimension plus representative generator
classes; over Z or a Laurent ring it is the list of nontrivial invariant
factors plus the free rank; over other rings only the raw presentation is
kept and membership tests are still available.
"""

from __future__ import annotations

from .errors import UnsupportedDomain
from .linalg import (Matrix, RowSpan, dedup_rows, rref, row_times_matrix,
                     smith_with_transforms, unit_vec, zero_vec)


class PresentedModule:

    def __init__(self, domain, ngens, relations=None):
        self.domain = domain
        self.ngens = ngens
        if relations is None:
            relations = Matrix.zeros(domain, 0, ngens)
        if relations.ncols != ngens:
            raise ValueError("relation width does not match generator count")
        self.relations = relations
        self._clean = None     # deduplicated relation matrix
        self._span = None      # cached RowSpan of the relations
        self._classified = None

    # -- presentation plumbing ------------------------------------------------
    def clean_relations(self):
        if self._clean is None:
            self._clean = dedup_rows(self.relations)
        return self._clean

    def relation_span(self):
        if self._span is None:
            self._span = RowSpan(self.clean_relations())
        return self._span

    def contains(self, x):
        """Is the row vector x zero in the quotient?"""
        return self.relation_span().contains(x)

    def elements_equal(self, x, y):
        return self.contains([a - b for a, b in zip(x, y)])

    # -- classification --------------------------------------------------------
    def classify(self):
        """Canonical description of the quotient (memoized).

        field:  {"kind": "field", "dimension", "basis_classes", "pivots"}
        pid:    {"kind": "pid", "invariant_factors", "free_rank"}
        other:  raises UnsupportedDomain.
        """
        if self._classified is not None:
            return self._classified
        dom = self.domain
        rel = self.clean_relations()
        if dom.is_field:
            rows, pivots = rref(rel)
            free = [c for c in range(self.ngens) if c not in pivots]
            self._classified = {
                "kind": "field",
                "dimension": len(free),
                "basis_classes": free,
                "pivots": pivots,
                "_rref": rows,
            }
        elif dom.is_pid:
            if rel.nrows == 0:
                U = Matrix.identity(dom, 0)
                D = Matrix.zeros(dom, 0, self.ngens)
                V = Vinv = Matrix.identity(dom, self.ngens)
            else:
                U, D, V, Vinv = smith_with_transforms(rel)
            k = min(D.nrows, D.ncols)
            diag = [D[i, i] for i in range(k) if D[i, i]]
            torsion = [d for d in diag if not d.is_unit()]
            self._classified = {
                "kind": "pid",
                "invariant_factors": torsion,
                "free_rank": self.ngens - len(diag),
                "_diag": diag,
                "_V": V,
                "_Vinv": Vinv,
            }
        else:
            raise UnsupportedDomain(
                f"no classification over {dom}; the raw presentation still works")
        return self._classified

    def dimension(self):
        c = self.classify()
        if c["kind"] != "field":
            raise UnsupportedDomain("dimension is a field-side notion")
        return c["dimension"]

    def invariant_factors(self):
        return list(self.classify()["invariant_factors"])

    def free_rank(self):
        c = self.classify()
        return c["dimension"] if c["kind"] == "field" else c["free_rank"]

    def hom_rank(self):
        """Rank of Hom(M, R): torsion dies into a domain, free part survives."""
        return self.free_rank()

    def is_zero_module(self):
        dom = self.domain
        if dom.is_field or dom.is_pid:
            c = self.classify()
            if c["kind"] == "field":
                return c["dimension"] == 0
            return c["free_rank"] == 0 and not c["invariant_factors"]
        # raw presentations: every generator must lie in the relation span
        return all(self.contains(unit_vec(dom, self.ngens, i))
                   for i in range(self.ngens))

    def canonical_coords(self, x):
        """Coordinates of the class of x in the classified decomposition.

        Over a field: the coefficients on the representative basis classes.
        Over a PID: (torsion_coords reduced mod d_i, free_coords).
        """
        c = self.classify()
        if c["kind"] == "field":
            # reduce x against the rref rows, read off the free coordinates
            rows, pivots = c["_rref"], c["pivots"]
            y = list(x)
            for i, p in enumerate(pivots):
                if y[p]:
                    f = y[p]
                    y = [y[j] - f * rows[i][j] for j in range(self.ngens)]
            return [y[j] for j in c["basis_classes"]]
        y = row_times_matrix(x, c["_V"])
        diag = c["_diag"]
        tor, free = [], []
        for j in range(self.ngens):
            if j < len(diag):
                d = diag[j]
                if d.is_unit():
                    continue
                _, r = self.domain.euclid_divmod(y[j].payload, d.payload)
                tor.append(self.domain.scalar(r))
            else:
                free.append(y[j])
        return tor, free

    def describe(self):
        """JSON-friendly classification summary."""
        dom = self.domain
        try:
            c = self.classify()
        except UnsupportedDomain:
            return {"kind": "presentation", "generators": self.ngens,
                    "relations": self.clean_relations().nrows}
        if c["kind"] == "field":
            return {"kind": "field", "dimension": c["dimension"],
                    "basis_classes": list(c["basis_classes"])}
        return {"kind": "pid",
                "invariant_factors": [dom.fmt(d.payload) for d in c["invariant_factors"]],
                "free_rank": c["free_rank"]}

    def tensor(self, ring_map):
        """Base change of the presentation along a ring map."""
        return PresentedModule(ring_map.dst, self.ngens,
                               self.relations.map(ring_map))

    def __repr__(self):
        return f"PresentedModule({self.domain}, g={self.ngens}, " \
               f"rel={self.relations.nrows})"


class TargetModule:
    """A free value module for bilinear functions (the paper's V over k)."""

    def __init__(self, domain, rank=1):
        self.domain = domain
        self.rank = rank

    def __repr__(self):
        return f"TargetModule({self.domain}, rank={self.rank})"


def free_module(domain, n):
    return PresentedModule(domain, n)


class ModuleMap:
    """A map of presented modules given by a matrix on generators.

    Row-vector convention: the image of x is x * matrix.  ``semilinear``
    optionally tags the ring map applied to scalars first (for semilinear
    module homomorphisms).
    """

    def __init__(self, source, target, matrix, semilinear=None):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.semilinear = semilinear
        if matrix.nrows != source.ngens or matrix.ncols != target.ngens:
            raise ValueError("matrix shape does not match generator counts")

    def apply(self, x):
        if self.semilinear is not None:
            x = [self.semilinear(v) for v in x]
        return row_times_matrix(x, self.matrix)

    def well_defined(self):
        """Each source relation must map into the target relation span."""
        for r in self.source.clean_relations().a:
            if not self.target.contains(self.apply(r)):
                return False
        return True

    def violation(self):
        for idx, r in enumerate(self.source.clean_relations().a):
            if not self.target.contains(self.apply(r)):
                return idx, r
        return None

    def then(self, other):
        if self.semilinear is not None or other.semilinear is not None:
            raise UnsupportedDomain("composition of semilinear maps not tracked")
        return ModuleMap(self.source, other.target, self.matrix * other.matrix)

    def is_identity_mod_relations(self):
        n = self.source.ngens
        if self.target.ngens != n:
            return False
        for i in range(n):
            img = self.apply(unit_vec(self.source.domain, n, i))
            img[i] = img[i] - self.source.domain.one_scalar()
            if not self.target.contains(img):
                return False
        return True


def map_is_isomorphism(mm: ModuleMap):
    """Decide whether a map of classified modules is bijective.

    Strategy: it must be well defined, carry the source onto the target
    (every target generator lies in the image span together with the target
    relations), and have zero kernel, checked via matching classifications
    plus surjectivity in both directions where available.
    """
    if not mm.well_defined():
        return False
    src, tgt = mm.source, mm.target
    dom = src.domain
    # surjectivity: target generators lie in image + target relations
    image_rows = [mm.apply(unit_vec(dom, src.ngens, i)) for i in range(src.ngens)]
    span = RowSpan(Matrix(dom, image_rows + tgt.clean_relations().rows(),
                          ncols=tgt.ngens))
    for j in range(tgt.ngens):
        if not span.contains(unit_vec(dom, tgt.ngens, j)):
            return False
    # injectivity via classification invariants (valid for f.g. modules over
    # a field or PID: a surjection between isomorphic classified modules of
    # the same invariants is bijective)
    cs, ct = src.classify(), tgt.classify()
    if cs["kind"] != ct["kind"]:
        return False
    if cs["kind"] == "field":
        return cs["dimension"] == ct["dimension"]
    return (cs["free_rank"] == ct["free_rank"]
            and len(cs["invariant_factors"]) == len(ct["invariant_factors"])
            and all(a == b for a, b in zip(cs["invariant_factors"],
                                           ct["invariant_factors"])))

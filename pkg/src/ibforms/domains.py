"""Exact arithmetic over the supported coefficient rings.

Every scalar is a ``Scalar`` wrapping a domain tag and an immutable payload:
arbitrary-precision ``int`` for the integers, ``Fraction`` for the rationals,
a residue in ``[0, n)`` for ``Z/n`` and prime fields, a degree->coefficient
map for one-variable Laurent polynomials, and an ``(a, b)`` pair meaning
``a + b*x`` with ``x**2 = d`` for quadratic extensions.  All values are
immutable after construction and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadSpec, UnsupportedDomain, UnsupportedMap


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin for the 64-bit range
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Domain:
    """A computable commutative unital ring with exact arithmetic."""

    kind = "?"
    is_field = False
    is_pid = False        # supports Smith normal form (Euclidean division)
    is_integral = True
    char = 0

    # --- payload arithmetic -------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def exact_div(self, a, b):
        """Return c with a = b*c, or None when b does not divide a."""
        raise NotImplementedError

    # --- Euclidean structure (PIDs only) ------------------------------------
    def euclid_size(self, a):
        raise UnsupportedDomain(f"{self} has no Euclidean size function")

    def euclid_divmod(self, a, b):
        raise UnsupportedDomain(f"{self} has no Euclidean division")

    def canonical_unit(self, a):
        """A unit u such that u*a is in canonical form (1 for a = 0)."""
        return self.one

    # --- encoding ------------------------------------------------------------
    def hash_key(self, a):
        return a

    def fmt(self, a):
        return str(a)

    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, v):
        raise NotImplementedError

    def ring_json(self):
        raise NotImplementedError

    # --- conveniences ---------------------------------------------------------
    def __call__(self, value):
        """Coerce an int, Fraction or payload-shaped JSON value to a Scalar."""
        if isinstance(value, Scalar):
            if value.domain != self:
                raise UnsupportedDomain(f"scalar of {value.domain} used in {self}")
            return value
        if isinstance(value, int):
            return Scalar(self, self.from_int(value))
        return Scalar(self, self.from_json(value))

    def scalar(self, payload):
        return Scalar(self, payload)

    def zero_scalar(self):
        return Scalar(self, self.zero)

    def one_scalar(self):
        return Scalar(self, self.one)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Domain) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class IntegerRing(Domain):
    kind = "Z"
    name = "Z"
    is_pid = True

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    zero = 0
    one = 1

    def from_int(self, n):
        return n

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ArithmeticError(f"{a} is not a unit in Z")

    def exact_div(self, a, b):
        if b == 0:
            return None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def euclid_size(self, a):
        return abs(a)

    def euclid_divmod(self, a, b):
        # nearest-integer quotient keeps remainders small during SNF;
        # Python's floor divmod gives r the sign of b, so r - b shrinks it
        q, r = divmod(a, b)
        if 2 * abs(r) > abs(b):
            q, r = q + 1, r - b
        return q, r

    def canonical_unit(self, a):
        return -1 if a < 0 else 1

    def to_json(self, a):
        return a

    def from_json(self, v):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise BadSpec(f"not an integer scalar: {v!r}")
        return int(v)

    def ring_json(self):
        return {"kind": "Z"}


class RationalField(Domain):
    kind = "Q"
    name = "Q"
    is_field = True

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ArithmeticError("division by zero in Q")
        return 1 / a

    def exact_div(self, a, b):
        if b == 0:
            return None
        return a / b

    def canonical_unit(self, a):
        return 1 / a if a else Fraction(1)

    def fmt(self, a):
        return str(a)

    def to_json(self, a):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def from_json(self, v):
        if isinstance(v, bool):
            raise BadSpec(f"not a rational scalar: {v!r}")
        if isinstance(v, (int, str, Fraction)):
            return Fraction(v)
        raise BadSpec(f"not a rational scalar: {v!r}")

    def ring_json(self):
        return {"kind": "Q"}


class ResidueRing(Domain):
    """Z/n with residues in [0, n).  A field iff n is prime."""

    def __init__(self, n, prime):
        if n < 2:
            raise BadSpec("modulus must be >= 2")
        self.n = n
        self.is_field = prime
        self.is_integral = prime
        self.char = n
        self.kind = "GF" if prime else "Zmod"
        self.name = f"GF({n})" if prime else f"Z/{n}"

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, m):
        return m % self.n

    def is_unit(self, a):
        from math import gcd
        return gcd(a, self.n) == 1

    def inv(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise ArithmeticError(f"{a} is not a unit mod {self.n}")

    def exact_div(self, a, b):
        if self.is_unit(b):
            return self.mul(a, self.inv(b))
        # b a zero divisor: may still divide, scan is fine at residue scale
        for c in range(self.n):
            if self.mul(b, c) == a:
                return c
        return None

    def canonical_unit(self, a):
        return self.inv(a) if self.is_field and a else 1

    def to_json(self, a):
        return a

    def from_json(self, v):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise BadSpec(f"not a residue scalar: {v!r}")
        return int(v) % self.n

    def ring_json(self):
        key = "p" if self.is_field else "n"
        return {"kind": self.kind, key: self.n}


def PrimeField(p):
    if not _is_prime(p):
        raise BadSpec(f"{p} is not prime")
    return ResidueRing(p, prime=True)


def IntegersMod(n):
    return ResidueRing(n, prime=_is_prime(n))


class LaurentRing(Domain):
    """k[t, t^-1] for a field k, as a Euclidean domain.

    Payloads are dicts degree -> nonzero base-field payload.  The Euclidean
    size is the width (max degree - min degree); the units are exactly the
    monomials c*t^k with c != 0.
    """

    is_pid = True

    def __init__(self, base):
        if not base.is_field:
            raise UnsupportedDomain("Laurent coefficients must form a field")
        self.base = base
        self.char = base.char
        self.kind = "Laurent"
        self.name = f"{base.name}[t,t^-1]"

    def _trim(self, d):
        return {e: c for e, c in d.items() if not self.base.is_zero(c)}

    def add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            out[e] = self.base.add(out.get(e, self.base.zero), c)
        return self._trim(out)

    def neg(self, a):
        return {e: self.base.neg(c) for e, c in a.items()}

    def mul(self, a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                out[e] = self.base.add(out.get(e, self.base.zero), self.base.mul(c1, c2))
        return self._trim(out)

    @property
    def zero(self):
        return {}

    @property
    def one(self):
        return {0: self.base.one}

    def from_int(self, n):
        c = self.base.from_int(n)
        return {} if self.base.is_zero(c) else {0: c}

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def is_unit(self, a):
        return len(a) == 1

    def inv(self, a):
        if len(a) != 1:
            raise ArithmeticError("only monomials are units in a Laurent ring")
        ((e, c),) = a.items()
        return {-e: self.base.inv(c)}

    def val(self, a):
        return min(a) if a else 0

    def deg(self, a):
        return max(a) if a else 0

    def euclid_size(self, a):
        return self.deg(a) - self.val(a)

    def euclid_divmod(self, a, b):
        """a = q*b + r with width(r) < width(b) or r = 0.

        Shift both arguments to valuation 0 and run ordinary polynomial
        division there; the remainder keeps width below width(b) because
        its degree does.
        """
        if not b:
            raise ZeroDivisionError("Laurent division by zero")
        if not a:
            return {}, {}
        va, vb = self.val(a), self.val(b)
        ra = {e - va: c for e, c in a.items()}          # valuation 0
        rb = {e - vb: c for e, c in b.items()}
        db = max(rb)
        lead_inv = self.base.inv(rb[db])
        q = {}
        while ra and max(ra) >= db:
            da = max(ra)
            coef = self.base.mul(ra[da], lead_inv)
            q[da - db] = coef
            for e, c in rb.items():
                v = self.base.sub(ra.get(e + da - db, self.base.zero), self.base.mul(coef, c))
                if self.base.is_zero(v):
                    ra.pop(e + da - db, None)
                else:
                    ra[e + da - db] = v
        shift = va - vb
        q = {e + shift: c for e, c in q.items()}
        r = {e + va: c for e, c in ra.items()}
        return q, r

    def exact_div(self, a, b):
        if not b:
            return None
        q, r = self.euclid_divmod(a, b)
        return q if not r else None

    def canonical_unit(self, a):
        # normalize to valuation 0 with monic leading coefficient
        if not a:
            return self.one
        return {-self.val(a): self.base.inv(a[max(a)])}

    def hash_key(self, a):
        return tuple(sorted((e, self.base.hash_key(c)) for e, c in a.items()))

    def fmt(self, a):
        if not a:
            return "0"
        parts = []
        for e in sorted(a):
            c = self.base.fmt(a[e])
            if e == 0:
                parts.append(c)
            else:
                tp = "t" if e == 1 else f"t^{e}"
                parts.append(tp if c == "1" else f"{c}*{tp}")
        return " + ".join(parts)

    def to_json(self, a):
        return {str(e): self.base.to_json(c) for e, c in sorted(a.items())}

    def from_json(self, v):
        if isinstance(v, (int, str)):
            return self.from_int(int(v))
        if not isinstance(v, dict):
            raise BadSpec(f"not a Laurent scalar: {v!r}")
        out = {}
        for e, c in v.items():
            out[int(e)] = self.base.from_json(c)
        return self._trim(out)

    def ring_json(self):
        return {"kind": "Laurent", "base": self.base.ring_json()}

    def t(self, e=1):
        return Scalar(self, {e: self.base.one})


class QuadExtRing(Domain):
    """R[x]/(x^2 - d): pairs (a, b) meaning a + b*x, sigma(a + b*x) = a - b*x.

    Free of rank 2 over the base, hence faithfully flat.  Not required to be
    a field: when d is a square the extension is split and has zero divisors.
    """

    def __init__(self, base, d):
        if base.is_zero(d):
            raise BadSpec("quadratic extension parameter must be nonzero")
        self.base = base
        self.d = d
        self.char = base.char
        self.kind = "QuadExt"
        self.split = base_sqrt(base, d) is not None
        self.is_field = base.is_field and not self.split
        self.is_integral = base.is_integral and not self.split
        self.name = f"{base.name}[x]/(x^2-{base.fmt(d)})"

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        a0, a1 = a
        b0, b1 = b
        B = self.base
        return (
            B.add(B.mul(a0, b0), B.mul(self.d, B.mul(a1, b1))),
            B.add(B.mul(a0, b1), B.mul(a1, b0)),
        )

    @property
    def zero(self):
        return (self.base.zero, self.base.zero)

    @property
    def one(self):
        return (self.base.one, self.base.zero)

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def eq(self, a, b):
        return self.base.eq(a[0], b[0]) and self.base.eq(a[1], b[1])

    def norm(self, a):
        # a * sigma(a) = a0^2 - d*a1^2, lies in the base ring
        B = self.base
        return B.sub(B.mul(a[0], a[0]), B.mul(self.d, B.mul(a[1], a[1])))

    def conj(self, a):
        return (a[0], self.base.neg(a[1]))

    def is_unit(self, a):
        return self.base.is_unit(self.norm(a))

    def inv(self, a):
        n = self.norm(a)
        if not self.base.is_unit(n):
            raise ArithmeticError("not a unit in the quadratic extension")
        ninv = self.base.inv(n)
        return (self.base.mul(a[0], ninv), self.base.neg(self.base.mul(a[1], ninv)))

    def exact_div(self, a, b):
        if self.is_unit(b):
            return self.mul(a, self.inv(b))
        n = self.norm(b)
        # a/b = a*conj(b)/norm(b) when the base division is exact
        num = self.mul(a, self.conj(b))
        c0 = self.base.exact_div(num[0], n)
        c1 = self.base.exact_div(num[1], n)
        if c0 is None or c1 is None:
            return None
        return (c0, c1)

    def canonical_unit(self, a):
        if self.is_field and not self.is_zero(a):
            return self.inv(a)
        return self.one

    def hash_key(self, a):
        return (self.base.hash_key(a[0]), self.base.hash_key(a[1]))

    def fmt(self, a):
        if self.base.is_zero(a[1]):
            return self.base.fmt(a[0])
        s = f"{self.base.fmt(a[0])} + {self.base.fmt(a[1])}*x"
        return s

    def to_json(self, a):
        return [self.base.to_json(a[0]), self.base.to_json(a[1])]

    def from_json(self, v):
        if isinstance(v, (int, str)):
            return self.from_int(int(v))
        if not (isinstance(v, list) and len(v) == 2):
            raise BadSpec(f"not a quadratic-extension scalar: {v!r}")
        return (self.base.from_json(v[0]), self.base.from_json(v[1]))

    def ring_json(self):
        return {"kind": "QuadExt", "base": self.base.ring_json(),
                "d": self.base.to_json(self.d)}

    def x(self):
        return Scalar(self, (self.base.zero, self.base.one))


def base_sqrt(domain, a):
    """A payload s with s*s = a, or None.  Supports Z, Q and prime fields."""
    if domain.is_zero(a):
        return domain.zero
    if isinstance(domain, IntegerRing):
        if a < 0:
            return None
        from math import isqrt
        s = isqrt(a)
        return s if s * s == a else None
    if isinstance(domain, RationalField):
        if a < 0:
            return None
        from math import isqrt
        sn, sd = isqrt(a.numerator), isqrt(a.denominator)
        if sn * sn == a.numerator and sd * sd == a.denominator:
            return Fraction(sn, sd)
        return None
    if isinstance(domain, ResidueRing) and domain.is_field:
        p = domain.n
        if p == 2:
            return a  # every element is a square in GF(2)
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        for s in range(p):  # residue fields here are tiny
            if s * s % p == a:
                return s
        return None
    return None


ZZ = IntegerRing()
QQ = RationalField()


def Laurent(base):
    return LaurentRing(base)


def QuadExt(base, d):
    if isinstance(d, Scalar):
        d = d.payload
    elif isinstance(d, int):
        d = base.from_int(d)
    return QuadExtRing(base, d)


def domain_from_json(spec):
    """Rebuild a domain from its ``ring_json`` description."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise BadSpec(f"not a ring description: {spec!r}")
    kind = spec["kind"]
    if kind == "Z":
        return ZZ
    if kind == "Q":
        return QQ
    if kind == "GF":
        return PrimeField(int(spec["p"]))
    if kind == "Zmod":
        return IntegersMod(int(spec["n"]))
    if kind == "Laurent":
        return Laurent(domain_from_json(spec["base"]))
    if kind == "QuadExt":
        base = domain_from_json(spec["base"])
        return QuadExtRing(base, base.from_json(spec["d"]))
    raise BadSpec(f"unknown ring kind {kind!r}")


class Scalar:
    """An element of a domain: a tag plus an immutable payload."""

    __slots__ = ("domain", "payload")

    def __init__(self, domain, payload):
        self.domain = domain
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise UnsupportedDomain(
                    f"mixed domains {self.domain} and {other.domain}")
            return other
        if isinstance(other, int):
            return Scalar(self.domain, self.domain.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.domain, self.domain.add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.domain, self.domain.sub(self.payload, other.payload))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.domain, self.domain.mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.domain, self.domain.neg(self.payload))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(self.domain, self.domain.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return not self.domain.is_zero(self.payload)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar(self.domain, self.domain.from_int(other))
        if not isinstance(other, Scalar) or other.domain != self.domain:
            return NotImplemented
        return self.domain.eq(self.payload, other.payload)

    def __hash__(self):
        return hash((self.domain.name, self.domain.hash_key(self.payload)))

    def is_unit(self):
        return self.domain.is_unit(self.payload)

    def inverse(self):
        return Scalar(self.domain, self.domain.inv(self.payload))

    def exact_div(self, other):
        other = self._coerce(other)
        q = self.domain.exact_div(self.payload, other.payload)
        return None if q is None else Scalar(self.domain, q)

    def key(self):
        return self.domain.hash_key(self.payload)

    def __repr__(self):
        return self.domain.fmt(self.payload)


def is_unit(s: Scalar) -> bool:
    """True iff s has a multiplicative inverse in its domain."""
    return s.is_unit()


class RingMap:
    """A unital ring homomorphism between two supported domains."""

    def __init__(self, src, dst, fn, label):
        self.src = src
        self.dst = dst
        self.fn = fn
        self.label = label

    def __call__(self, s):
        if isinstance(s, Scalar):
            if s.domain != self.src:
                raise UnsupportedMap(f"{self.label}: scalar not in {self.src}")
            return Scalar(self.dst, self.fn(s.payload))
        return Scalar(self.dst, self.fn(s))

    def then(self, other):
        """other composed after self (self first)."""
        if other.src != self.dst:
            raise UnsupportedMap(
                f"cannot compose {self.label} with {other.label}")
        return RingMap(self.src, other.dst,
                       lambda a: other.fn(self.fn(a)),
                       f"{other.label}.{self.label}")

    def is_automorphism(self):
        return self.src == self.dst

    def __repr__(self):
        return f"RingMap({self.label}: {self.src} -> {self.dst})"


def identity_map(domain):
    return RingMap(domain, domain, lambda a: a, "id")


def canonical_map(src, dst):
    """The canonical ring map src -> dst among the supported kinds.

    Supported: identity, Z -> anything, any field into its own Laurent ring
    or quadratic extension, Q -> Q-based rings, and composites of these.
    """
    if src == dst:
        return identity_map(src)
    if isinstance(src, IntegerRing):
        return RingMap(src, dst, dst.from_int, f"Z->{dst.name}")
    if isinstance(dst, LaurentRing) and src == dst.base:
        base = dst.base
        return RingMap(src, dst,
                       lambda a: {} if base.is_zero(a) else {0: a},
                       f"{src.name}->{dst.name}")
    if isinstance(dst, QuadExtRing) and src == dst.base:
        base = dst.base
        return RingMap(src, dst, lambda a: (a, base.zero),
                       f"{src.name}->{dst.name}")
    if isinstance(src, RationalField) and isinstance(dst, (LaurentRing, QuadExtRing)):
        inner = canonical_map(src, dst.base)
        return inner.then(canonical_map(dst.base, dst))
    if isinstance(src, RationalField) and getattr(dst, "char", None) == 0:
        def embed(a):
            return dst.mul(dst.from_int(a.numerator),
                           dst.inv(dst.from_int(a.denominator)))
        return RingMap(src, dst, embed, f"Q->{dst.name}")
    raise UnsupportedMap(f"no canonical map {src} -> {dst}")


def quadext_conjugation(S):
    """The involution sigma(a + b*x) = a - b*x of a quadratic extension."""
    if not isinstance(S, QuadExtRing):
        raise UnsupportedMap("conjugation needs a quadratic extension")
    return RingMap(S, S, S.conj, "sigma")


def quadext_projection(S, sign=1):
    """For split S = R[x]/(x^2 - e^2): the projection x -> +e or x -> -e."""
    if not isinstance(S, QuadExtRing):
        raise UnsupportedMap("projection needs a quadratic extension")
    e = base_sqrt(S.base, S.d)
    if e is None:
        raise UnsupportedMap("projection needs a split extension (d a square)")
    root = e if sign >= 0 else S.base.neg(e)
    B = S.base
    return RingMap(S, B, lambda a: B.add(a[0], B.mul(root, a[1])),
                   f"x->{B.fmt(root)}")


def laurent_substitution(R, c, exponent=1):
    """The automorphism t -> c*t^(+-1) of a Laurent ring (c a nonzero scalar)."""
    if not isinstance(R, LaurentRing):
        raise UnsupportedMap("substitution needs a Laurent ring")
    if isinstance(c, Scalar):
        c = c.payload
    if R.base.is_zero(c):
        raise UnsupportedMap("substitution constant must be a unit")
    if exponent not in (1, -1):
        raise UnsupportedMap("substitution exponent must be +1 or -1")

    def fn(a):
        out = {}
        for e, coef in a.items():
            ce = pow_payload(R.base, c, e)
            out[exponent * e] = R.base.add(out.get(exponent * e, R.base.zero),
                                           R.base.mul(coef, ce))
        return R._trim(out)

    return RingMap(R, R, fn, f"t->{R.base.fmt(c)}*t^{exponent}")


def pow_payload(domain, a, n):
    if n < 0:
        return pow_payload(domain, domain.inv(a), -n)
    out = domain.one
    while n:
        if n & 1:
            out = domain.mul(out, a)
        a = domain.mul(a, a)
        n >>= 1
    return out

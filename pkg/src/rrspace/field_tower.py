"""Finite prime fields, explicit extension towers, and univariate
polynomial arithmetic/factorization over any field in a tower.

Fields are small context objects passed alongside plain-data elements:
an element of ``PrimeField(p)`` is an int in ``{0..p-1}``, an element of
``ExtensionField`` is a tuple of base-field elements of length equal to
the extension degree.  Polynomials over a field ``F`` are Python lists of
elements, low degree first, with no trailing zeros (the zero polynomial
is ``[]``).  This keeps hot paths free of per-element object overhead and
mirrors how the rest of the package treats k[t].

Factorization is squarefree decomposition + distinct-degree splitting +
Cantor-Zassenhaus equal-degree splitting, driven by a seeded RNG so that
the output is reproducible; factors are returned sorted by (degree,
lexicographic coefficient order with 0..p-1 representatives).
"""

import random
from fractions import Fraction

from .errors import InvalidInput

# Default seed of the equal-degree-splitting RNG; override per call.
DEFAULT_FACTOR_SEED = 20240809


def _is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p, p prime.  Elements are ints reduced mod p."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not _is_prime(p):
            raise InvalidInput(f"characteristic {p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F{self.p}"

    @property
    def char(self):
        return self.p

    @property
    def order(self):
        return self.p

    @property
    def degree_abs(self):
        return 1

    @property
    def prime_field(self):
        return self

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, m):
        return m % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def pth_root(self, a):
        # Frobenius is the identity on F_p.
        return a % self.p

    def rand(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def key(self, a):
        """Total-order key using the 0..p-1 representative."""
        return (a % self.p,)


class ExtensionField:
    """One step of a tower: base[z]/(modulus), modulus monic irreducible.

    Elements are tuples of ``degree`` base elements (coefficients of
    1, z, ..., z^(degree-1)).
    """

    __slots__ = ("base", "modulus", "degree", "_red")

    def __init__(self, base, modulus, check=True):
        modulus = pnormalize(base, list(modulus))
        if len(modulus) < 2:
            raise InvalidInput("extension modulus must have positive degree")
        if modulus[-1] != base.one:
            raise InvalidInput("extension modulus must be monic")
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        # negated non-leading coefficients, used by reduction
        self._red = tuple(base.neg(c) for c in modulus[:-1])
        if check and not is_irreducible(base, list(modulus)):
            raise InvalidInput("extension modulus is reducible")

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ExtensionField", self.base, self.modulus))

    def __repr__(self):
        return f"{self.base!r}[z]/deg{self.degree}"

    @property
    def char(self):
        return self.base.char

    @property
    def order(self):
        return self.base.order ** self.degree

    @property
    def degree_abs(self):
        return self.base.degree_abs * self.degree

    @property
    def prime_field(self):
        return self.base.prime_field

    @property
    def zero(self):
        return (self.base.zero,) * self.degree

    @property
    def one(self):
        b = self.base
        return (b.one,) + (b.zero,) * (self.degree - 1)

    @property
    def gen(self):
        b = self.base
        if self.degree == 1:
            # z = -modulus[0]
            return (b.neg(self.modulus[0]),)
        return tuple(b.one if i == 1 else b.zero for i in range(self.degree))

    def from_int(self, m):
        b = self.base
        return (b.from_int(m),) + (b.zero,) * (self.degree - 1)

    def embed_base(self, a):
        b = self.base
        return (a,) + (b.zero,) * (self.degree - 1)

    def add(self, a, b):
        bb = self.base
        return tuple(bb.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        bb = self.base
        return tuple(bb.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        bb = self.base
        return tuple(bb.neg(x) for x in a)

    def mul(self, a, b):
        bb = self.base
        d = self.degree
        prod = [bb.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if bb.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = bb.add(prod[i + j], bb.mul(x, y))
        # reduce z^k for k >= d using z^d = _red
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if bb.is_zero(c):
                continue
            prod[k] = bb.zero
            for j, r in enumerate(self._red):
                prod[k - d + j] = bb.add(prod[k - d + j], bb.mul(c, r))
        return tuple(prod[:d])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = pext_gcd(self.base, list(a), list(self.modulus))
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible")
        c = self.base.inv(g[0])
        s = [self.base.mul(c, x) for x in s]
        s += [self.base.zero] * (self.degree - len(s))
        return tuple(s[:self.degree])

    def is_zero(self, a):
        bb = self.base
        return all(bb.is_zero(x) for x in a)

    def pth_root(self, a):
        # a^(q/p) where q is the field order: the inverse of Frobenius.
        return field_pow(self, a, self.order // self.char)

    def rand(self, rng):
        bb = self.base
        return tuple(bb.rand(rng) for _ in range(self.degree))

    def elements(self):
        def rec(i):
            if i == 0:
                yield ()
                return
            for rest in rec(i - 1):
                for c in self.base.elements():
                    yield rest + (c,)
        for tup in rec(self.degree):
            yield tup

    def key(self, a):
        return tuple(self.base.key(x) for x in a)


def field_pow(F, a, m):
    r = F.one
    b = a
    while m:
        if m & 1:
            r = F.mul(r, b)
        b = F.mul(b, b)
        m >>= 1
    return r


# ----------------------------------------------------------------------
# dense univariate polynomials over a field context
# ----------------------------------------------------------------------

def pnormalize(F, a):
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def pdeg(a):
    return len(a) - 1


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return pnormalize(F, out)


def psub(F, a, b):
    out = list(a) + [F.zero] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return pnormalize(F, out)


def pneg(F, a):
    return [F.neg(c) for c in a]


def pscale(F, c, a):
    if F.is_zero(c):
        return []
    return pnormalize(F, [F.mul(c, x) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return pnormalize(F, out)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = pdeg(b), b[-1]
    ilb = F.inv(lb)
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = F.mul(a[-1], ilb)
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] = F.sub(a[k + i], F.mul(c, x))
        a.pop()
        pnormalize(F, a)
        if pdeg(a) < db:
            break
    return pnormalize(F, q), pnormalize(F, a)


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return a
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pext_gcd(F, a, b):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if r0:
        c = F.inv(r0[-1])
        r0, s0, t0 = pscale(F, c, r0), pscale(F, c, s0), pscale(F, c, t0)
    return r0, s0, t0


def ppow_mod(F, a, m, mod):
    r = [F.one]
    b = pmod(F, a, mod)
    while m:
        if m & 1:
            r = pmod(F, pmul(F, r, b), mod)
        b = pmod(F, pmul(F, b, b), mod)
        m >>= 1
    return r


def pdiff(F, a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        m = i % F.char
        out.append(F.mul(F.from_int(m), c))
    return pnormalize(F, out)


def peval(F, a, x):
    r = F.zero
    for c in reversed(a):
        r = F.add(F.mul(r, x), c)
    return r


def pkey(F, a):
    """Sort key: (degree, coefficient keys low-to-high)."""
    return (len(a),) + tuple(F.key(c) for c in a)


# ----------------------------------------------------------------------
# factorization
# ----------------------------------------------------------------------

def _squarefree_decomposition(F, g):
    """Yield (squarefree factor, multiplicity) with product = g (g monic)."""
    p = F.char
    out = []

    def rec(g, mult):
        if pdeg(g) < 1:
            return
        d = pdiff(F, g)
        if not d:
            # g = h(X^p); take p-th roots of the coefficients
            h = [F.pth_root(g[i]) for i in range(0, len(g), p)]
            rec(pnormalize(F, h), mult * p)
            return
        c = pgcd(F, g, d)
        w = pdivmod(F, g, c)[0]          # squarefree part
        k = 1
        while pdeg(w) >= 1:
            y = pgcd(F, w, c)
            z = pdivmod(F, w, y)[0]      # product of factors of multiplicity exactly k
            if pdeg(z) >= 1:
                out.append((z, mult * k))
            w = y
            c = pdivmod(F, c, y)[0]
            k += 1
        if pdeg(c) >= 1:
            rec(c, mult)

    rec(g, 1)
    return out


def _distinct_degree(F, g):
    """g monic squarefree; yield (product of degree-d factors, d)."""
    q = F.order
    out = []
    x = [F.zero, F.one]
    h = list(x)
    d = 0
    while pdeg(g) > 0:
        d += 1
        if 2 * d > pdeg(g):
            out.append((g, pdeg(g)))
            break
        h = ppow_mod(F, h, q, g)
        gd = pgcd(F, g, psub(F, h, x))
        if pdeg(gd) > 0:
            out.append((gd, d))
            g = pdivmod(F, g, gd)[0]
            h = pmod(F, h, g)
    return out


def _equal_degree(F, g, d, rng):
    """Split monic squarefree g, all of whose factors have degree d."""
    if pdeg(g) == d:
        return [g]
    q = F.order
    while True:
        r = pnormalize(F, [F.rand(rng) for _ in range(pdeg(g))])
        if pdeg(r) < 1:
            continue
        if F.char == 2:
            # trace map over F_2: r + r^2 + r^4 + ... (q^d terms halved)
            t = list(r)
            acc = list(r)
            bits = (q ** d).bit_length() - 1
            for _ in range(bits - 1):
                acc = pmod(F, pmul(F, acc, acc), g)
                t = padd(F, t, acc)
            h = pgcd(F, g, t)
        else:
            e = ppow_mod(F, r, (q ** d - 1) // 2, g)
            h = pgcd(F, g, psub(F, e, [F.one]))
        if 0 < pdeg(h) < pdeg(g):
            g2 = pdivmod(F, g, h)[0]
            return _equal_degree(F, h, d, rng) + _equal_degree(F, g2, d, rng)


def factor_univariate(F, g, seed=None):
    """Factor g over F into monic irreducibles: [(factor, multiplicity)].

    Deterministic: the equal-degree splitting RNG is seeded (module
    default, overridable) and the output is sorted by (degree,
    coefficient order).
    """
    if not g:
        raise InvalidInput("cannot factor the zero polynomial")
    rng = random.Random(DEFAULT_FACTOR_SEED if seed is None else seed)
    if isinstance(F, ExtensionField) and F.degree_abs > 1:
        return _factor_over_tower(F, g, rng)
    g = pmonic(F, list(g))
    out = []
    for sf, mult in _squarefree_decomposition(F, g):
        for gd, d in _distinct_degree(F, sf):
            for irr in _equal_degree(F, gd, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: pkey(F, fm[0]))
    return out


def is_irreducible(F, g):
    g = pmonic(F, list(g))
    if pdeg(g) < 1:
        return False
    if pdeg(g) == 1:
        return True
    fac = factor_univariate(F, g)
    return len(fac) == 1 and fac[0][1] == 1 and pdeg(fac[0][0]) == pdeg(g)


def _factor_over_tower(F, g, rng):
    """Factor over a proper tower by flattening to a single step first."""
    flat, embed, section = flatten_tower(F)
    gf = [embed(c) for c in g]
    if flat is F:
        gm = pmonic(F, list(g))
        out = []
        for sf, mult in _squarefree_decomposition(F, gm):
            for gd, d in _distinct_degree(F, sf):
                for irr in _equal_degree(F, gd, d, rng):
                    out.append((irr, mult))
        out.sort(key=lambda fm: pkey(F, fm[0]))
        return out
    fac = factor_univariate(flat, gf)
    out = [([section(c) for c in h], mult) for h, mult in fac]
    out.sort(key=lambda fm: pkey(F, fm[0]))
    return out


# ----------------------------------------------------------------------
# tower flattening
# ----------------------------------------------------------------------

_flatten_cache = {}


def _coords_over_prime(F, a):
    """Coordinates of element a in the F_p-basis of F (list of ints)."""
    if isinstance(F, PrimeField):
        return [a]
    out = []
    for c in a:
        out.extend(_coords_over_prime(F.base, c))
    return out


def _from_coords(F, coords):
    if isinstance(F, PrimeField):
        return coords[0]
    d = F.base.degree_abs
    return tuple(_from_coords(F.base, coords[i * d:(i + 1) * d])
                 for i in range(F.degree))


def _min_poly_over_prime(F, a):
    """Minimal polynomial of a over F_p, by Krylov linear algebra."""
    p = F.char
    m = F.degree_abs
    rows = []
    pw = F.one
    for k in range(m + 1):
        rows.append(_coords_over_prime(F, pw))
        rel = _linear_relation(p, rows)
        if rel is not None:
            return rel
        pw = F.mul(pw, a)
    raise AssertionError("minimal polynomial search failed")


def _linear_relation(p, rows):
    """If the last row is in the span of the previous ones, return the
    monic dependency coefficients (lowest power first); else None."""
    n = len(rows) - 1
    m = len(rows[0])
    # solve sum_{k<n} x_k rows[k] = rows[n] mod p
    aug = [[rows[k][j] % p for k in range(n)] + [rows[n][j] % p]
           for j in range(m)]
    piv = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] % p), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(v - f * w) % p for v, w in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    for i in range(r, m):
        if aug[i][n] % p:
            return None
    sol = [0] * n
    for i, c in enumerate(piv):
        sol[c] = aug[i][n] % p
    return [(-s) % p for s in sol] + [1]


def flatten_tower(E):
    """Flatten a tower to a single-step extension of its prime field.

    Returns (flat_field, embed, section) where embed: E -> flat and
    section: flat -> E are mutually inverse field isomorphisms.  A field
    that is already flat is returned as-is with identity maps.
    """
    if isinstance(E, PrimeField):
        return E, lambda a: a, lambda a: a
    if isinstance(E.base, PrimeField):
        return E, lambda a: a, lambda a: a
    if E in _flatten_cache:
        return _flatten_cache[E]

    k = E.prime_field
    p = k.p
    m = E.degree_abs
    base_flat, base_embed, base_section = flatten_tower(E.base)
    # generators: a = top-step generator, b = image of the base generator
    a = E.gen
    b = E.embed_base(base_section(base_flat.gen) if isinstance(base_flat, ExtensionField)
                     else E.base.gen)

    def candidates():
        for c in range(p):
            yield E.add(a, E.mul(E.from_int(c), b))
        rng = random.Random(DEFAULT_FACTOR_SEED)
        while True:
            yield E.rand(rng)

    for gamma in candidates():
        mp = _min_poly_over_prime(E, gamma)
        if pdeg(mp) == m:
            break
    flat = ExtensionField(k, mp, check=False)

    # matrix of 1, gamma, ..., gamma^(m-1) in the F_p-basis of E
    cols = []
    pw = E.one
    for _ in range(m):
        cols.append(_coords_over_prime(E, pw))
        pw = E.mul(pw, gamma)
    inv_cols = _invert_matrix_mod_p(p, cols)

    def section(x):
        # evaluate the gamma-polynomial x at gamma inside E
        r = E.zero
        for c in reversed(x):
            r = E.add(E.mul(r, gamma), E.from_int(c))
        return r

    def embed(e):
        coords = _coords_over_prime(E, e)
        out = [sum(inv_cols[i][j] * coords[j] for j in range(m)) % p
               for i in range(m)]
        return tuple(out)

    _flatten_cache[E] = (flat, embed, section)
    return flat, embed, section


def _invert_matrix_mod_p(p, cols):
    """Invert the matrix whose COLUMNS are given (mod p)."""
    m = len(cols)
    aug = [[cols[j][i] % p for j in range(m)] + [1 if k == i else 0 for k in range(m)]
           for i in range(m)]
    for c in range(m):
        pr = next(i for i in range(c, m) if aug[i][c] % p)
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = pow(aug[c][c], p - 2, p)
        aug[c] = [(v * inv) % p for v in aug[c]]
        for i in range(m):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(v - f * w) % p for v, w in zip(aug[i], aug[c])]
    return [row[m:] for row in aug]

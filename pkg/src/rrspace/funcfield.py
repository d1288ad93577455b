"""Arithmetic in A = k[t], K = k(t) and L = K[X]/(f).

Polynomials over k = F_p reuse the dense list-of-ints representation of
``field_tower`` (the prime field's elements are ints), with a numpy
fast path for long multiplications.  Bivariate polynomials in k[t][X]
are dense lists of k[t]-coefficients, low X-degree first.  Resultants
with respect to X go through the subresultant PRS, fraction-free.
"""

import math

import numpy as np

from .errors import InvalidInput
from .field_tower import (
    PrimeField, padd, psub, pneg, pscale, pdivmod, pmod, pmonic, pgcd,
    pnormalize, pdeg, peval, pdiff, factor_univariate,
)

_NUMPY_MUL_CUTOFF = 48


def amul(F, a, b):
    """k[t] product, numpy convolution for long operands."""
    if not a or not b:
        return []
    if len(a) + len(b) >= _NUMPY_MUL_CUTOFF:
        c = np.convolve(np.asarray(a, dtype=np.int64),
                        np.asarray(b, dtype=np.int64)) % F.p
        out = c.tolist()
        while out and not out[-1]:
            out.pop()
        return out
    out = [0] * (len(a) + len(b) - 1)
    p = F.p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    out = [v % p for v in out]
    return pnormalize(F, out)


def ashift(a, k):
    """Multiply by t^k."""
    if not a:
        return []
    return [0] * k + list(a)


def aval(F, a, p):
    """Multiplicity of the irreducible p in a (a != 0); inf for a = 0."""
    if not a:
        return math.inf
    if pdeg(p) == 1 and p[0] == 0:
        # p = t: count trailing zeros
        v = 0
        while not a[v]:
            v += 1
        return v
    v = 0
    while True:
        q, r = pdivmod(F, a, p)
        if r:
            return v
        a = q
        v += 1


def arev(a, m):
    """t^m * a(1/t): coefficient reversal into length m+1 (deg a <= m)."""
    out = [0] * (m + 1)
    for i, c in enumerate(a):
        out[m - i] = c
    while out and not out[-1]:
        out.pop()
    return out


class Rat:
    """Element of k(t): num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("F", "num", "den")

    def __init__(self, F, num, den=None, reduce=True):
        num = pnormalize(F, list(num))
        den = [F.one] if den is None else pnormalize(F, list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if not num:
                den = [F.one]
            else:
                g = pgcd(F, num, den)
                if pdeg(g) > 0:
                    num = pdivmod(F, num, g)[0]
                    den = pdivmod(F, den, g)[0]
                lc = F.inv(den[-1])
                num = pscale(F, lc, num)
                den = pscale(F, lc, den)
        self.F = F
        self.num = num
        self.den = den

    @classmethod
    def int(cls, F, m):
        return cls(F, [F.from_int(m)])

    @classmethod
    def poly(cls, F, a):
        return cls(F, a)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (isinstance(other, Rat) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def __add__(self, other):
        F = self.F
        num = padd(F, amul(F, self.num, other.den), amul(F, other.num, self.den))
        return Rat(F, num, amul(F, self.den, other.den))

    def __sub__(self, other):
        F = self.F
        num = psub(F, amul(F, self.num, other.den), amul(F, other.num, self.den))
        return Rat(F, num, amul(F, self.den, other.den))

    def __neg__(self):
        return Rat(self.F, pneg(self.F, self.num), self.den, reduce=False)

    def __mul__(self, other):
        F = self.F
        return Rat(F, amul(F, self.num, other.num), amul(F, self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        F = self.F
        return Rat(F, amul(F, self.num, other.den), amul(F, self.den, other.num))

    def inv(self):
        return Rat.int(self.F, 1) / self

    @property
    def is_poly(self):
        return self.den == [self.F.one]

    def height(self):
        """h(q) = deg num + deg den (0 for q = 0 by convention deg 0 = 0)."""
        return max(pdeg(self.num), 0) + pdeg(self.den)

    def subst_inverse(self):
        """The same element written in u = 1/t (or back)."""
        F = self.F
        dn, dd = pdeg(self.num), pdeg(self.den)
        if not self.num:
            return Rat(F, [])
        m = max(dn, dd)
        return Rat(F, arev(self.num, m), arev(self.den, m))

    def __repr__(self):
        return f"Rat({self.num}/{self.den})"


class RatField:
    """k(t) wrapped in the field-context interface of field_tower."""

    def __init__(self, F):
        self.F = F

    @property
    def char(self):
        return self.F.p

    @property
    def zero(self):
        return Rat(self.F, [])

    @property
    def one(self):
        return Rat(self.F, [self.F.one])

    def from_int(self, m):
        return Rat.int(self.F, m)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def is_zero(self, a):
        return not a


# ----------------------------------------------------------------------
# bivariate polynomials: dense in X over k[t] (or k[u])
# ----------------------------------------------------------------------

def bi_normalize(bi):
    while bi and not bi[-1]:
        bi.pop()
    return bi


def bi_deg_x(bi):
    return len(bi) - 1


def bi_deg_t(bi):
    return max((pdeg(c) for c in bi if c), default=-1)


def bi_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = [list(c) for c in a]
    for i, c in enumerate(b):
        out[i] = padd(F, out[i], c)
    return bi_normalize(out)


def bi_sub(F, a, b):
    out = [list(c) for c in a] + [[] for _ in range(len(b) - len(a))]
    for i, c in enumerate(b):
        out[i] = psub(F, out[i], c)
    return bi_normalize(out)


def bi_neg(F, a):
    return [pneg(F, c) for c in a]


def bi_mul(F, a, b):
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = padd(F, out[i + j], amul(F, x, y))
    return bi_normalize(out)


def bi_scale(F, c, a):
    """Multiply by c in k[t]."""
    if not c:
        return []
    return bi_normalize([amul(F, c, x) for x in a])


def bi_divmod_monic(F, a, b):
    """Divide by b monic in X (leading coefficient the constant 1)."""
    assert b and b[-1] == [F.one]
    a = [list(c) for c in a]
    q = [[] for _ in range(max(0, len(a) - len(b) + 1))]
    while len(a) >= len(b):
        c = a[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] = psub(F, a[k + i], amul(F, c, x))
        a.pop()
        bi_normalize(a)
    return bi_normalize(q), bi_normalize(a)


def bi_pow_mod(F, a, m, mod):
    r = [[F.one]]
    b = bi_divmod_monic(F, a, mod)[1] if len(a) >= len(mod) else a
    while m:
        if m & 1:
            r = bi_divmod_monic(F, bi_mul(F, r, b), mod)[1]
        b = bi_divmod_monic(F, bi_mul(F, b, b), mod)[1]
        m >>= 1
    return r


def bi_diff_x(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(pscale(F, F.from_int(i), a[i]))
    return bi_normalize(out)


def bi_eval_t(F, a, t0):
    """Specialize t -> t0; returns a k[X]-polynomial (list of ints)."""
    return pnormalize(F, [peval(F, c, t0) for c in a])


def bi_reduce_coeffs(F, a, modulus):
    """Reduce every k[t]-coefficient modulo the k[t]-poly ``modulus``."""
    return bi_normalize([pmod(F, c, modulus) for c in a])


def bi_shift_var(F, a):
    """View a(t, X) with coefficients unchanged; placeholder for clarity."""
    return a


def resultant_in_X(F, h, g):
    """Res_X(h, g) by the subresultant PRS; exact over k[t].

    g must be nonzero of positive X-degree; h of X-degree 0 (or zero)
    is allowed and handled by the closed form.
    """
    h = bi_normalize([list(c) for c in h])
    g = bi_normalize([list(c) for c in g])
    if not g or bi_deg_x(g) < 1:
        if not h or bi_deg_x(h) < 1:
            raise InvalidInput("resultant needs positive X-degree")
        if not g:
            return []
        # Res(h, c) = c^deg(h)
        r = [F.one]
        for _ in range(bi_deg_x(h)):
            r = amul(F, r, g[0])
        return r
    if not h:
        return []
    if bi_deg_x(h) < 1:
        r = [F.one]
        for _ in range(bi_deg_x(g)):
            r = amul(F, r, h[0])
        return r
    return _subresultant_res(F, h, g)


def _prem(F, a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) a rem b."""
    a = [list(c) for c in a]
    lb = b[-1]
    steps = len(a) - len(b) + 1
    count = 0
    while len(a) >= len(b) and a:
        c = a[-1]
        k = len(a) - len(b)
        a = [amul(F, lb, x) for x in a]
        for i, x in enumerate(b):
            a[k + i] = psub(F, a[k + i], amul(F, c, x))
        a.pop()
        bi_normalize(a)
        count += 1
    # scale to the full lc(b)^steps power
    for _ in range(steps - count):
        a = [amul(F, lb, x) for x in a]
    return bi_normalize(a)


def _apow(F, a, m):
    r = [F.one]
    for _ in range(m):
        r = amul(F, r, a)
    return r


def _aexactdiv(F, a, b):
    q, r = pdivmod(F, a, b)
    assert not r, "inexact division in subresultant PRS"
    return q


def _subresultant_res(F, A, B):
    sign = 1
    if bi_deg_x(A) < bi_deg_x(B):
        if (bi_deg_x(A) * bi_deg_x(B)) % 2:
            sign = -sign
        A, B = B, A
    g = [F.one]
    h = [F.one]
    while True:
        dA, dB = bi_deg_x(A), bi_deg_x(B)
        delta = dA - dB
        if dA % 2 and dB % 2:
            sign = -sign
        R = _prem(F, A, B)
        A = B
        if not R:
            return []
        denom = amul(F, g, _apow(F, h, delta))
        B = [_aexactdiv(F, c, denom) for c in R]
        g = A[-1]
        if delta > 0:
            h = _aexactdiv(F, _apow(F, g, delta), _apow(F, h, delta - 1))
        if bi_deg_x(B) < 1:
            dA = bi_deg_x(A)
            # res = s * lc(B)^dA / h^(dA-1)
            num = _apow(F, B[0], dA)
            res = _aexactdiv(F, num, _apow(F, h, dA - 1))
            return pneg(F, res) if sign < 0 else res


def discriminant_in_X(F, f):
    """disc of f monic in X: (-1)^(n(n-1)/2) Res(f, f')."""
    n = bi_deg_x(f)
    d = bi_diff_x(F, f)
    if not d:
        return []
    r = resultant_in_X(F, f, d) if bi_deg_x(d) >= 1 else _apow_res(F, f, d)
    if (n * (n - 1) // 2) % 2:
        r = pneg(F, r)
    return r


def _apow_res(F, f, d):
    # Res(f, const) = const^deg f
    return _apow(F, d[0], bi_deg_x(f))


# ----------------------------------------------------------------------
# curve models and field elements
# ----------------------------------------------------------------------

class CurveModel:
    """L = k(t)[X]/(f) for f in k[t][X] monic of degree n and separable.

    Irreducibility of f over k(t) is assumed, not verified here (a
    reducible f gives undefined results downstream); see
    ``check_irreducible`` for the on-demand exact test.
    """

    def __init__(self, p, f, transform=None):
        self.F = PrimeField(p) if not isinstance(p, PrimeField) else p
        F = self.F
        f = bi_normalize([pnormalize(F, list(c)) for c in f])
        if bi_deg_x(f) < 1:
            raise InvalidInput("curve polynomial must have positive X-degree")
        if f[-1] != [F.one]:
            raise InvalidInput("curve polynomial must be monic in X")
        self.f = f
        self.n = bi_deg_x(f)
        disc = discriminant_in_X(F, f)
        if not disc:
            raise InvalidInput("curve polynomial is not separable in X")
        self.disc = disc
        self.disc_factors = factor_univariate(F, disc)
        sf = [F.one]
        for h, _ in self.disc_factors:
            sf = amul(F, sf, h)
        self.discriminant_sf = sf
        lam = 0
        for i in range(self.n):
            ci = f[i] if i < len(f) else []
            if ci:
                lam = max(lam, -(-pdeg(ci) // (self.n - i)))
        self.lam = lam
        self.f_infinity = self._compute_f_infinity()
        # projective-preparation provenance, if any (see rr_engine.prepare_curve)
        self.transform = transform

    def _compute_f_infinity(self):
        """f_inf(Y) = t^(-n*lam) f(t^lam Y), coefficients in k[u]."""
        F, n, lam = self.F, self.n, self.lam
        out = []
        for i in range(n + 1):
            ci = self.f[i] if i < len(self.f) else []
            m = lam * (n - i)
            # c_i(t) * t^(i*lam - n*lam) = sum a_j u^(m - j)
            coeff = [0] * (m + 1)
            for j, a in enumerate(ci):
                coeff[m - j] = a
            out.append(pnormalize(F, coeff))
        return bi_normalize(out)

    def __repr__(self):
        return f"CurveModel(F{self.F.p}, n={self.n})"

    @property
    def rat_field(self):
        return RatField(self.F)

    def zero(self):
        return FFElement(self, [Rat(self.F, [])] * self.n)

    def one(self):
        return FFElement(self, [Rat.int(self.F, 1)] + [Rat(self.F, [])] * (self.n - 1))

    def x(self):
        coords = [Rat(self.F, [])] * self.n
        if self.n == 1:
            return self.from_bipoly([pneg(self.F, self.f[0])], [self.F.one])
        coords[1] = Rat.int(self.F, 1)
        return FFElement(self, coords)

    def t(self):
        coords = [Rat(self.F, [])] * self.n
        coords[0] = Rat.poly(self.F, [0, 1])
        return FFElement(self, coords)

    def from_bipoly(self, num, den=None):
        """Element (num mod f)/den with num in k[t][X], den in k[t]."""
        F = self.F
        num = bi_divmod_monic(F, bi_normalize([list(c) for c in num]), self.f)[1]
        den = [F.one] if den is None else den
        coords = []
        for i in range(self.n):
            c = num[i] if i < len(num) else []
            coords.append(Rat(F, c, den))
        return FFElement(self, coords)

    def disc_primes(self, min_mult=1):
        return [h for h, m in self.disc_factors if m >= min_mult]


class FFElement:
    """Element of L in coordinates over 1, x, ..., x^(n-1)."""

    __slots__ = ("model", "coords")

    def __init__(self, model, coords):
        if len(coords) != model.n:
            raise InvalidInput("coordinate vector has wrong length")
        self.model = model
        self.coords = list(coords)

    def _check(self, other):
        if other.model is not self.model:
            raise InvalidInput("elements of different curve models")

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        return (isinstance(other, FFElement) and other.model is self.model
                and other.coords == self.coords)

    def __add__(self, other):
        self._check(other)
        return FFElement(self.model, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return FFElement(self.model, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return FFElement(self.model, [-a for a in self.coords])

    def scale(self, r):
        return FFElement(self.model, [a * r for a in self.coords])

    def cleared(self):
        """(N, d): N in k[t][X] with deg_X < n, d in k[t], self = N(x)/d."""
        F = self.model.F
        d = [F.one]
        for c in self.coords:
            g = pgcd(F, d, c.den)
            d = amul(F, d, pdivmod(F, c.den, g)[0])
        num = []
        for c in self.coords:
            num.append(amul(F, c.num, pdivmod(F, d, c.den)[0]))
        return bi_normalize(num), d

    def __mul__(self, other):
        self._check(other)
        F = self.model.F
        n1, d1 = self.cleared()
        n2, d2 = other.cleared()
        prod = bi_divmod_monic(F, bi_mul(F, n1, n2), self.model.f)[1]
        return self.model.from_bipoly(prod, amul(F, d1, d2))

    def inv(self):
        if not self:
            raise ZeroDivisionError("inverting the zero element")
        F = self.model.F
        KF = RatField(F)
        from .field_tower import pext_gcd as _pext
        fK = [Rat(F, c) for c in self.model.f]
        g, s, _ = _pext(KF, self.coords, fK)
        if len(g) != 1:
            raise ZeroDivisionError("element is a zero divisor (f reducible?)")
        c = g[0].inv()
        inv_coords = [x * c for x in s]
        inv_coords += [Rat(F, [])] * (self.model.n - len(inv_coords))
        return FFElement(self.model, inv_coords[:self.model.n])

    def cleared_infinity(self):
        """(N, d): N in k[u][Y] (deg_Y < n), d in k[u], self = N(y)/d.

        Uses x = t^lam * y, so coordinate i picks up t^(i*lam).
        """
        F = self.model.F
        lam = self.model.lam
        ucoords = []
        for i, c in enumerate(self.coords):
            if not c:
                ucoords.append(Rat(F, []))
                continue
            cu = c.subst_inverse()
            # multiply by t^(i lam) = u^(-i lam)
            cu = cu * Rat(F, [F.one], ashift([F.one], i * lam), reduce=False)
            ucoords.append(cu)
        d = [F.one]
        for c in ucoords:
            g = pgcd(F, d, c.den)
            d = amul(F, d, pdivmod(F, c.den, g)[0])
        num = []
        for c in ucoords:
            num.append(amul(F, c.num, pdivmod(F, d, c.den)[0]))
        return bi_normalize(num), d

    def __repr__(self):
        return f"FFElement({self.coords!r})"


def element_mul(a, b):
    return a * b


def check_irreducible(model, exact=False):
    """Irreducibility of f over k(t).

    Heuristic: specialize t at field points where f stays separable; an
    irreducible specialization certifies irreducibility.  With
    ``exact=True``, inconclusive heuristics fall through to an exact
    test: lift the local factors at a separable specialization prime to
    high precision and attempt every proper factor-subset recombination
    within the degree bounds.
    """
    F = model.F
    from .field_tower import is_irreducible as poly_irr
    for t0 in range(F.p):
        spec = bi_eval_t(F, model.f, t0)
        if pdeg(spec) != model.n:
            continue
        if pdeg(pgcd(F, spec, pdiff(F, spec))) > 0:
            continue
        if poly_irr(F, spec):
            return True
        if not exact:
            break
    if not exact:
        return None
    return _exact_irreducible(model)


def _exact_irreducible(model):
    from itertools import combinations

    from . import om_places
    from .field_tower import is_irreducible as poly_irr
    F = model.F
    # pick a prime not dividing the discriminant (degree 1 if possible)
    prime = None
    for t0 in range(F.p):
        cand = [(-t0) % F.p, 1]
        if aval(F, model.disc, cand) == 0:
            prime = cand
            break
    if prime is None:
        # no good degree-1 prime: search degree-2 monic irreducibles
        for a0 in range(F.p):
            for a1 in range(F.p):
                cand = [a0, a1, 1]
                if poly_irr(F, cand) and aval(F, model.disc, cand) == 0:
                    prime = cand
                    break
            if prime:
                break
    assert prime is not None
    bp = om_places.BasePrime.finite(F, prime)
    places = om_places.decompose(model, bp)
    # degree bound on coefficients of a proper monic factor of f
    bound = model.lam * model.n + 1
    N = bound + 2
    facs = [om_places.lift_factor(pl, N).lifted_factor for pl in places]
    if len(facs) == 1:
        return True
    pN = _apow(F, prime, N)
    idx = range(len(facs))
    for r in range(1, len(facs)):
        for sub in combinations(idx, r):
            prod = [[F.one]]
            for i in sub:
                prod = bi_mul(F, prod, facs[i])
            prod = bi_reduce_coeffs(F, prod, pN)
            if bi_deg_t(prod) <= bound:
                q, rem = bi_divmod_monic_general(F, model.f, prod)
                if not rem and q:
                    return False
    return True


def bi_divmod_monic_general(F, a, b):
    """Divide a by b with b monic in X (any k[t] lower coefficients);
    exact only when the quotient is polynomial (returns remainder)."""
    return bi_divmod_monic(F, a, b)

"""Places of L over primes of k[t] (and the prime at infinity) through
the Montes/OM recursion, with single-factor lifting and valuations.

The recursion keeps, per branch, a chain of key polynomials phi_i with
assigned values mu_i (the classical inductive valuations, Q-valued with
v(p) = 1).  Newton polygons are taken of the phi-adic expansion of f
against the previous level's valuation; every principal side yields a
residual polynomial over the branch's residue tower, whose irreducible
factors either terminate (multiplicity one), refine the key polynomial
in place (same degree), or commit a new level.  Residual coefficients
are graded reductions h/M_V against canonical monomials M_V in
(p, phi_1, ..., phi_r); the digit carries between monomials are resolved
into explicit residue-tower units, which keeps the reduction map
consistent across levels.

Valuations of field elements go through resultants against lifted local
factors (the p-adic valuation of Res(h, F_p) divided by the residual
degree), at an adaptive precision that certifies exactness.  Lifting is
a quasi-Newton loop on phi against its cofactor with a Bezout identity,
accepted step by step only when the remainder's Gauss valuation strictly
improves.
"""

import math
from fractions import Fraction

from .errors import InvalidInput, PrecisionCapExceeded
from .field_tower import (
    PrimeField, ExtensionField, factor_univariate, is_irreducible,
    pnormalize, pdeg, pmod, pdivmod, peval, pkey,
    field_pow,
)
from .funcfield import (
    amul, aval, ashift,
    bi_normalize, bi_deg_x, bi_add, bi_sub, bi_mul, bi_scale,
    bi_divmod_monic, bi_reduce_coeffs, resultant_in_X,
)

DEFAULT_PRECISION_CAP = 4096
INF = math.inf


def _coords_over_prime(F, a):
    if isinstance(F, PrimeField):
        return [a]
    out = []
    for c in a:
        out.extend(_coords_over_prime(F.base, c))
    return out


class BasePrime:
    """A prime of k[t] (monic irreducible) or the prime at infinity."""

    __slots__ = ("F", "kind", "poly")

    def __init__(self, F, kind, poly):
        self.F = F
        self.kind = kind
        self.poly = poly

    @classmethod
    def finite(cls, F, poly):
        poly = pnormalize(F, list(poly))
        if pdeg(poly) < 1 or poly[-1] != F.one:
            raise InvalidInput("base prime must be monic of positive degree")
        if not is_irreducible(F, poly):
            raise InvalidInput("base prime polynomial is reducible")
        return cls(F, "finite", poly)

    @classmethod
    def infinity(cls, F):
        # the prime (u) of k[1/t]
        return cls(F, "infinity", [F.zero, F.one])

    @property
    def is_infinite(self):
        return self.kind == "infinity"

    @property
    def deg(self):
        return 1 if self.is_infinite else pdeg(self.poly)

    def __eq__(self, other):
        return (isinstance(other, BasePrime) and other.kind == self.kind
                and other.poly == self.poly and other.F == self.F)

    def __hash__(self):
        return hash((self.kind, tuple(self.poly)))

    def sort_key(self):
        return (1 if self.is_infinite else 0, pkey(self.F, self.poly))

    def __repr__(self):
        return "inf" if self.is_infinite else f"({self.poly})"


class ResidueAdapter:
    """A/(p) presented as a field with reduce/lift maps for k[t]."""

    def __init__(self, F, p):
        self.F = F
        self.p = list(p)
        self.deg = pdeg(p)
        if self.deg == 1:
            self.field = F
            self.root = F.neg(p[0])
        else:
            self.field = ExtensionField(F, p, check=False)
            self.root = None

    def reduce(self, a):
        if self.deg == 1:
            return peval(self.F, a, self.root)
        r = pmod(self.F, a, self.p)
        r = list(r) + [self.F.zero] * (self.deg - len(r))
        return tuple(r[:self.deg])

    def lift(self, e):
        if self.deg == 1:
            return [e] if e else []
        return pnormalize(self.F, list(e))

    def basis_lifts(self):
        """Lifts of an F_p-basis of the residue field: t^j, j < deg."""
        return [ashift([self.F.one], j) for j in range(self.deg)]


class _Level:
    __slots__ = ("phi", "mu", "ehat", "psi", "fdeg")

    def __init__(self, phi, mu, ehat, psi, fdeg):
        self.phi = phi      # committed key polynomial
        self.mu = mu        # assigned value w(phi), Fraction
        self.ehat = ehat    # value-group index of this level
        self.psi = psi      # residual factor over the previous field
        self.fdeg = fdeg    # deg psi


class _Branch:
    """Committed chain + residue tower of one branch of the OM tree."""

    def __init__(self, F, p, rf, psi0):
        self.F = F
        self.p = list(p)
        self.rf = rf
        self.psi0 = list(psi0)
        self.levels = []
        if pdeg(psi0) == 1:
            self.K = rf.field
            self.xclass = rf.field.neg(psi0[0])
        else:
            self.K = ExtensionField(rf.field, psi0, check=False)
            self.xclass = self.K.gen
        self.zs = []            # class of phi_k^{ehat_k}/M per committed level
        self.f_res = pdeg(psi0)  # residual degree accumulated so far

    def clone(self):
        b = _Branch.__new__(_Branch)
        b.F, b.p, b.rf, b.psi0 = self.F, self.p, self.rf, self.psi0
        b.levels = list(self.levels)
        b.K = self.K
        b.xclass = self.xclass
        b.zs = list(self.zs)
        b.f_res = self.f_res
        return b

    # -- value group bookkeeping --

    def group_denom(self, upto=None):
        upto = len(self.levels) if upto is None else upto
        d = 1
        for lvl in self.levels[:upto]:
            d *= lvl.ehat
        return d

    def in_group(self, V, upto):
        return (V * self.group_denom(upto)).denominator == 1

    # -- valuations --

    def gauss_val(self, h):
        if not h:
            return INF
        return min(aval(self.F, c, self.p) for c in h if c)

    def expand(self, h, phi):
        """phi-adic expansion of h (list of BiPoly, low phi-degree first)."""
        out = []
        h = bi_normalize([list(c) for c in h])
        if bi_deg_x(phi) == 0:
            raise InvalidInput("cannot expand in a constant")
        while h:
            q, r = bi_divmod_monic(self.F, h, phi)
            out.append(r)
            h = q
        return out

    def val(self, h, upto=None):
        upto = len(self.levels) if upto is None else upto
        if upto == 0:
            return self.gauss_val(h)
        lvl = self.levels[upto - 1]
        best = INF
        for u, c in enumerate(self.expand(h, lvl.phi)):
            if not c:
                continue
            v = self.val(c, upto - 1)
            if v is not INF:
                v = v + u * lvl.mu
                if v < best:
                    best = v
        return best

    # -- canonical monomials and carry units --

    def mono(self, V, upto):
        """Exponents (a, [b_1..b_upto]) of the canonical monomial of value V."""
        bs = [0] * upto
        for k in range(upto, 0, -1):
            lvl = self.levels[k - 1]
            for b in range(lvl.ehat):
                if self.in_group(V - b * lvl.mu, k - 1):
                    bs[k - 1] = b
                    V = V - b * lvl.mu
                    break
            else:
                raise AssertionError("digit search failed")
        assert V.denominator == 1 if isinstance(V, Fraction) else True
        return (int(V), bs)

    def unit_class(self, a, bs, upto):
        """Residue-tower unit of a value-0 monomial p^a prod phi_k^(b_k)."""
        K = self.K
        out = K.one
        bs = list(bs)
        for k in range(upto, 0, -1):
            lvl = self.levels[k - 1]
            bk = bs[k - 1]
            if bk == 0:
                continue
            assert bk % lvl.ehat == 0, "carry not a Theta multiple"
            c = bk // lvl.ehat
            z = self.zs[k - 1]
            if c > 0:
                out = K.mul(out, field_pow(K, z, c))
            else:
                out = K.mul(out, field_pow(K, K.inv(z), -c))
            da, dbs = self.mono(lvl.ehat * lvl.mu * c, k - 1)
            a += da
            for i in range(k - 1):
                bs[i] += dbs[i]
            bs[k - 1] = 0
        assert a == 0, "value-0 monomial did not resolve"
        return out

    def _kappa(self, V0, step, s, upto):
        """Unit of M_step^s * M_(V0 - s*step) / M_V0 at the given level."""
        a1, b1 = self.mono(step, upto)
        a2, b2 = self.mono(V0 - s * step, upto)
        a3, b3 = self.mono(V0, upto)
        a = s * a1 + a2 - a3
        bs = [s * x + y - z for x, y, z in zip(b1, b2, b3)]
        return self.unit_class(a, bs, upto)

    # -- graded reduction --

    def _red_level0(self, h, V):
        """Reduction at the Gauss level into the depth-0 quotient field."""
        F, rf = self.F, self.rf
        if isinstance(V, Fraction):
            if V.denominator != 1:
                return None
            V = int(V)
        pV = [F.one]
        for _ in range(V):
            pV = amul(F, pV, self.p)
        red_coeffs = []
        for c in h:
            if not c:
                red_coeffs.append(rf.field.zero)
                continue
            q, r = pdivmod(F, c, pV)
            # exact since val(h) >= V bounds every coefficient's v_p
            assert not r, "reduction below the stated value"
            red_coeffs.append(rf.reduce(q))
        Kf = rf.field
        poly = pnormalize(Kf, red_coeffs)
        if pdeg(self.psi0) == 1:
            base_elt = peval(Kf, poly, Kf.neg(self.psi0[0]))
        else:
            r = pmod(Kf, poly, self.psi0)
            r = list(r) + [Kf.zero] * (pdeg(self.psi0) - len(r))
            base_elt = tuple(r[:pdeg(self.psi0)])
        return self._embed_depth0(base_elt)

    def _embed_depth0(self, e):
        """Embed an element of the depth-0 quotient into the current K."""
        steps = []
        Kf = self.K
        for lvl in reversed(self.levels):
            if lvl.fdeg > 1:
                steps.append(Kf)
                Kf = Kf.base
        for Kf in reversed(steps):
            e = Kf.embed_base(e)
        return e

    def red(self, h, V, upto=None):
        """Class of h/M_V in the residue tower; requires val(h) >= V."""
        upto = len(self.levels) if upto is None else upto
        if not h:
            return self.K.zero
        if upto == 0:
            out = self._red_level0(h, V)
            return self.K.zero if out is None else out
        lvl = self.levels[upto - 1]
        K = self.K
        b = None
        for cand in range(lvl.ehat):
            if self.in_group(V - cand * lvl.mu, upto - 1):
                b = cand
                break
        if b is None:
            return K.zero
        exp = self.expand(h, lvl.phi)
        acc = K.zero
        z = self.zs[upto - 1]
        V0 = V - b * lvl.mu
        step = lvl.ehat * lvl.mu
        for u in range(b, len(exp), lvl.ehat):
            c = exp[u]
            if not c:
                continue
            Vu = V - u * lvl.mu
            sub = self.red(c, Vu, upto - 1)
            if K.is_zero(sub):
                continue
            s = (u - b) // lvl.ehat
            kap = self._kappa(V0, step, s, upto - 1)
            term = K.mul(K.mul(sub, kap), field_pow(K, z, s))
            acc = K.add(acc, term)
        return acc

    # -- residual polynomial of a polygon side --

    def residual(self, expansion, j0, V0, j1, beta, ehat):
        K = self.K
        ell = (j1 - j0) // ehat
        step = ehat * beta
        out = []
        for s in range(ell + 1):
            j = j0 + s * ehat
            c = expansion[j] if j < len(expansion) else []
            if not c:
                out.append(K.zero)
                continue
            Vj = V0 - s * step
            r = self.red(c, Vj)
            if K.is_zero(r):
                out.append(K.zero)
                continue
            kap = self._kappa(V0, step, s, len(self.levels))
            out.append(K.mul(r, kap))
        return pnormalize(K, out)

    # -- realization: residue class -> polynomial of prescribed value --

    def _monomial_pool(self, V, deg_bound):
        """Monomials t^j X^i prod phi_k^(c_k) p^a of value V, deg_X < bound."""
        F = self.F
        m1 = pdeg(self.psi0)
        pool = []
        ranges = []
        for lvl in self.levels:
            ranges.append(range(lvl.ehat * lvl.fdeg + 2 * lvl.ehat))

        def rec(k, cvec, valrem, deg):
            if deg >= deg_bound:
                return
            if k == len(self.levels):
                if isinstance(valrem, Fraction):
                    if valrem.denominator != 1:
                        return
                    valrem = int(valrem)
                if valrem < 0:
                    return
                for i in range(m1):
                    if deg + i >= deg_bound:
                        break
                    for tl in self.rf.basis_lifts():
                        base = amul(F, tl, _ppow(F, self.p, valrem))
                        mono = [[]] * i + [base]
                        mm = bi_normalize([list(c) for c in mono])
                        for kk, ck in enumerate(cvec):
                            for _ in range(ck):
                                mm = bi_mul(F, mm, self.levels[kk].phi)
                        pool.append(mm)
                return
            lvl = self.levels[k]
            for ck in ranges[k]:
                nd = deg + ck * bi_deg_x(lvl.phi)
                if nd >= deg_bound:
                    break
                rec(k + 1, cvec + [ck], valrem - ck * lvl.mu, nd)

        rec(0, [], V, 0)
        return pool

    def realize(self, target, V, deg_bound):
        """A BiPoly h with deg_X h < deg_bound, val(h) >= V, red(h, V) = target."""
        K = self.K
        p = self.F.p
        dim = K.degree_abs if isinstance(K, ExtensionField) else 1
        pool = self._monomial_pool(V, deg_bound)
        cols = []
        keep = []
        for mono in pool:
            cls = self.red(mono, V)
            vec = _coords_over_prime(K, cls)
            if any(vec):
                cols.append(vec)
                keep.append(mono)
        tgt = _coords_over_prime(K, target)
        sol = _solve_mod_p(p, cols, tgt)
        if sol is None:
            raise AssertionError("realization failed (graded piece not spanned)")
        h = []
        for lam, mono in zip(sol, keep):
            if lam:
                h = bi_add(self.F, h, bi_scale(self.F, [lam], mono))
        return h

    # -- augmentation --

    def augment(self, phi, beta, ehat, psi):
        """Key polynomial of degree ehat*deg(psi)*deg(phi) whose residual
        along the (beta, ehat) side is psi."""
        K = self.K
        F = self.F
        fdeg = pdeg(psi)
        out = [[F.one]]
        for _ in range(ehat * fdeg):
            out = bi_mul(F, out, phi)
        step = ehat * beta
        Vtop = fdeg * step
        for u in range(fdeg):
            cu = psi[u]
            if K.is_zero(cu):
                continue
            Vu = Vtop - u * step
            kap = self._kappa(Vtop, step, u, len(self.levels))
            target = K.mul(cu, K.inv(kap))
            C = self.realize(target, Vu, bi_deg_x(phi))
            term = C
            for _ in range(ehat * u):
                term = bi_mul(F, term, phi)
            out = bi_add(F, out, term)
        return out

    def commit(self, phi, beta, ehat, psi):
        b = self.clone()
        fdeg = pdeg(psi)
        b.levels = self.levels + [_Level(phi, beta, ehat, list(psi), fdeg)]
        if fdeg > 1:
            b.K = ExtensionField(self.K, psi, check=False)
            b.zs = [b.K.embed_base(z) for z in self.zs] + [b.K.gen]
            b.xclass = b.K.embed_base(self.xclass)
        else:
            z = self.K.neg(psi[0])
            b.zs = list(self.zs) + [z]
        b.f_res = self.f_res * fdeg
        return b


def _ppow(F, a, m):
    r = [F.one]
    for _ in range(m):
        r = amul(F, r, a)
    return r


def _solve_mod_p(p, cols, target):
    """Solve sum_i x_i cols[i] = target (mod p); any solution or None."""
    if not cols:
        return None if any(target) else []
    m = len(target)
    n = len(cols)
    aug = [[cols[j][i] % p for j in range(n)] + [target[i] % p] for i in range(m)]
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
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] % p:
            return None
    sol = [0] * n
    for i, c in enumerate(piv):
        sol[c] = aug[i][n] % p
    return sol


# ----------------------------------------------------------------------
# places
# ----------------------------------------------------------------------

class OMType:
    """[p, phi_1, ..., phi_r, phi_p]: committed key chain + approximation."""

    __slots__ = ("base", "key_chain", "slopes", "approx", "depth")

    def __init__(self, base, key_chain, slopes, approx):
        self.base = base
        self.key_chain = key_chain
        self.slopes = slopes
        self.approx = approx
        self.depth = len(key_chain)


class _LiftBox:
    """Shared, monotonically improving lift of a local factor."""

    __slots__ = ("factor", "quality")

    def __init__(self, factor, quality):
        self.factor = factor
        self.quality = quality


class Place:
    """A prime of B (or B_infinity) with its OM data and lifted factor."""

    __slots__ = ("model", "base", "om", "e", "f", "lifted_factor",
                 "precision", "index", "_box", "_branch")

    def __init__(self, model, base, om, e, f, lifted_factor, precision,
                 box=None, branch=None, index=None):
        self.model = model
        self.base = base
        self.om = om
        self.e = e
        self.f = f
        self.lifted_factor = lifted_factor
        self.precision = precision
        self.index = index
        self._box = box if box is not None else _LiftBox(lifted_factor, 0)
        self._branch = branch

    @property
    def degree(self):
        """Degree of the place over k: f * deg(center)."""
        return self.f * self.base.deg

    @property
    def factor_degree(self):
        return self.e * self.f

    def local_f(self):
        return self.model.f_infinity if self.base.is_infinite else self.model.f

    def sort_key(self):
        chain = list(self.om.key_chain) + [self.om.approx]
        return (self.om.depth,
                tuple(bi_deg_x(c) for c in chain),
                tuple(tuple(tuple(cc) for cc in c) for c in chain))

    def id_pair(self):
        return (self.base, self.index)

    def __repr__(self):
        c = "inf" if self.base.is_infinite else f"{self.base.poly}"
        return f"Place({c};{self.index}, e={self.e}, f={self.f})"


def decompose(model, bp):
    """All places of L above the base prime, in deterministic order."""
    F = model.F
    f_loc = model.f_infinity if bp.is_infinite else model.f
    rf = ResidueAdapter(F, bp.poly)
    fbar = pnormalize(rf.field, [rf.reduce(c) for c in f_loc])
    assert pdeg(fbar) == model.n, "local polynomial must stay monic"
    places = []
    out_raw = []

    for psi0, mult in factor_univariate(rf.field, fbar):
        branch = _Branch(F, bp.poly, rf, psi0)
        phi0 = bi_normalize([rf.lift(x) for x in psi0])
        if mult == 1:
            out_raw.append((branch, [], phi0, 1, pdeg(psi0)))
        else:
            _process_branch(model, branch, phi0, Fraction(0), out_raw, f_loc)

    for branch, chain_data, approx, e, f in out_raw:
        om = OMType(bp, [lvl.phi for lvl in chain_data],
                    [(lvl.mu, lvl.ehat) for lvl in chain_data], approx)
        places.append(Place(model, bp, om, e, f, approx, 0, branch=branch))

    if sum(pl.e * pl.f for pl in places) != model.n:
        raise AssertionError("sum e*f != n: OM recursion lost factors")
    places.sort(key=lambda pl: pl.sort_key())
    for i, pl in enumerate(places):
        pl.index = i
    return places


_MAX_BRANCH_STEPS = 300


def _process_branch(model, branch, phi, thresh, out_raw, f_loc, depth_guard=0):
    if depth_guard > _MAX_BRANCH_STEPS:
        raise PrecisionCapExceeded("OM recursion exceeded step budget")
    F = model.F
    expansion = branch.expand(f_loc, phi)
    pts = []
    for j, c in enumerate(expansion):
        if c:
            v = branch.val(c)
            if v is not INF:
                pts.append((j, v))
    E = branch.group_denom()
    for (j0, V0), (j1, V1) in _hull_sides(pts):
        beta = Fraction(V0 - V1, j1 - j0)
        if beta <= thresh:
            continue
        ehat = (beta * E).denominator
        resid = branch.residual(expansion, j0, V0, j1, beta, ehat)
        assert pdeg(resid) == (j1 - j0) // ehat, "residual degree mismatch"
        for psi, mult in factor_univariate(branch.K, resid):
            if branch.K.is_zero(peval(branch.K, psi, branch.K.zero)):
                # factor z itself: belongs to the vertex, not this side
                continue
            phi_new = branch.augment(phi, beta, ehat, psi)
            if mult == 1:
                e_q = E * ehat
                f_q = branch.f_res * pdeg(psi)
                out_raw.append((branch, list(branch.levels), phi_new, e_q, f_q))
            elif ehat == 1 and pdeg(psi) == 1:
                _process_branch(model, branch, phi_new, beta, out_raw, f_loc,
                                depth_guard + 1)
            else:
                b2 = branch.commit(phi, beta, ehat, psi)
                _process_branch(model, b2, phi_new, ehat * pdeg(psi) * beta,
                                out_raw, f_loc, depth_guard + 1)


def _hull_sides(pts):
    """Sides of the lower convex hull, steepest first."""
    pts = sorted(pts)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return list(zip(hull, hull[1:]))


# ----------------------------------------------------------------------
# lifting
# ----------------------------------------------------------------------

def lift_factor(place, N, cap=DEFAULT_PRECISION_CAP):
    """A copy of the place whose factor is congruent to F_p mod p^N."""
    if N <= place.precision:
        return place
    model = place.model
    F = model.F
    p = place.base.poly
    f_loc = place.local_f()
    dq = place.factor_degree
    discv = _disc_val(model, place.base)
    box = place._box
    if dq == model.n:
        pN = _ppow(F, p, N)
        fac = bi_reduce_coeffs(F, f_loc, pN)
        box.factor, box.quality = fac, N
        return Place(model, place.base, place.om, place.e, place.f, fac, N,
                     box=box, branch=place._branch, index=place.index)
    # remainder-valuation target: slack covers cross-factor resultants
    # and conjugate-root separations (both bounded by v_p(disc))
    target = N + discv + model.n + 2
    phi = box.factor
    M = 2 * target + discv + 4
    guard = 0
    while True:
        guard += 1
        if guard > 400 or M > 64 * (cap + 1):
            raise PrecisionCapExceeded("factor lifting did not converge")
        pM = _ppow(F, p, M)
        phi = bi_reduce_coeffs(F, phi, pM)
        G, R = bi_divmod_monic(F, f_loc, phi)
        q = INF if not R else min(aval(F, c, p) for c in R if c)
        if q >= target:
            break
        W = _solve_mult_padic(F, G, R, phi, p, M)
        phi2 = bi_reduce_coeffs(F, bi_add(F, phi, W), pM)
        _, R2 = bi_divmod_monic(F, f_loc, phi2)
        q2 = INF if not R2 else min(aval(F, c, p) for c in R2 if c)
        if q2 > q:
            phi = phi2
        else:
            M *= 2
    pN = _ppow(F, p, N)
    fac = bi_reduce_coeffs(F, phi, pN)
    if box.quality < N:
        box.factor, box.quality = phi, N
    return Place(model, place.base, place.om, place.e, place.f, fac, N,
                 box=box, branch=place._branch, index=place.index)


def _disc_val(model, bp):
    F = model.F
    if bp.is_infinite:
        if not hasattr(model, "_disc_val_inf"):
            from .funcfield import discriminant_in_X
            d = discriminant_in_X(F, model.f_infinity)
            model._disc_val_inf = aval(F, d, [F.zero, F.one])
        return model._disc_val_inf
    return aval(F, model.disc, bp.poly)


def _solve_mult_padic(F, G, R, phi, p, M):
    """Best-effort W with G*W = R in (A/p^M)[X]/(phi), digit by digit.

    The digit maps are all multiplication by G mod p on the residue
    algebra (A/p)[X]/(phi mod p); unsolvable digits stop the peeling and
    the partial solution is returned (the outer loop only accepts
    strictly improving updates).
    """
    dq = bi_deg_x(phi)
    dp = pdeg(p)
    phi0 = bi_normalize([pmod(F, c, p) for c in phi])
    G0 = bi_normalize([pmod(F, c, p) for c in G])

    def red_bar(h):
        h = bi_normalize([pmod(F, c, p) for c in h])
        return bi_divmod_monic(F, h, phi0)[1] if len(h) > dq else h

    def to_vec(h):
        vec = []
        for i in range(dq):
            c = h[i] if i < len(h) else []
            for j in range(dp):
                vec.append(c[j] if j < len(c) else 0)
        return vec

    basis = []
    for i in range(dq):
        for j in range(dp):
            mono = [[]] * i + [ashift([F.one], j)]
            basis.append(bi_normalize([list(c) for c in mono]))
    cols = [to_vec(red_bar(bi_mul(F, G0, b))) for b in basis]

    W = []
    residual = R
    pM = _ppow(F, p, M)
    guard = 0
    while guard <= M + 2:
        guard += 1
        vk = min((aval(F, c, p) for c in residual if c), default=INF)
        if vk is INF or vk >= M:
            break
        k = vk
        pk = _ppow(F, p, k)
        digit = red_bar([pdivmod(F, c, pk)[0] if c else [] for c in residual])
        sol = _solve_mod_p(F.p, cols, to_vec(digit))
        if sol is None:
            break
        Wk = []
        for idx, lam in enumerate(sol):
            if lam:
                Wk = bi_add(F, Wk, bi_scale(F, [lam], basis[idx]))
        W = bi_add(F, W, bi_scale(F, pk, Wk))
        prod = bi_divmod_monic(F, bi_mul(F, G, W), phi)[1]
        residual = bi_reduce_coeffs(F, bi_sub(F, R, prod), pM)
    return W


# ----------------------------------------------------------------------
# valuations
# ----------------------------------------------------------------------

def valuation(place, b, cap=DEFAULT_PRECISION_CAP):
    """v_P(b) for b in L; +inf for b = 0 (Prop.-style resultant route)."""
    if not b:
        return INF
    model = place.model
    F = model.F
    if place.base.is_infinite:
        num, den = b.cleared_infinity()
        pvar = [F.zero, F.one]
    else:
        num, den = b.cleared()
        pvar = place.base.poly
    vden = aval(F, den, pvar)
    vnum = bipoly_valuation(place, num, cap=cap)
    return vnum - place.e * vden


def bipoly_valuation(place, num, cap=DEFAULT_PRECISION_CAP):
    """v_P(num(x)) for num in k[t][X] (or k[u][Y] at infinity), nonzero."""
    model = place.model
    F = model.F
    pvar = [F.zero, F.one] if place.base.is_infinite else place.base.poly
    num = bi_normalize([list(c) for c in num])
    if not num:
        return INF
    N = max(2 * _disc_val(model, place.base) + 4, 4)
    while True:
        lifted = lift_factor(place, N, cap=cap)
        r = resultant_in_X(F, num, lifted.lifted_factor)
        rv = aval(F, r, pvar)
        if rv is not INF and rv < N - 2:
            break
        if N > cap:
            raise PrecisionCapExceeded("valuation did not stabilize below cap")
        N *= 2
    assert rv % place.f == 0, "resultant valuation not divisible by f"
    return rv // place.f

"""Certified root analysis for growth-function denominators.

Real roots are isolated exactly with Sturm sequences over the rationals.
Complex roots are certified with inclusion disks around numerical
approximations: for approximations z_1..z_n of the roots of a degree-n
polynomial p, the disks

    |z - z_i| <= n * |p(z_i) / (lc(p) * prod_{j != i} (z_i - z_j))|

cover all roots, and a connected union of k disks holds exactly k roots.
Every quantity in that test is evaluated in exact dyadic arithmetic, so a
disjointness certificate does not depend on floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt

import mpmath

from .polyarith import ONE, T_MINUS_1, IntPolynomial, NotDivisibleError, RationalFunction, exact_divide, poly_gcd

PRECISION_START = 64
PRECISION_CAP = 4096


# --- small exact helpers -----------------------------------------------------------

def _sign(x) -> int:
    return (x > 0) - (x < 0)


def eval_sign(p: IntPolynomial, x: Fraction) -> int:
    """Sign of p(x) at a rational point, in integer arithmetic."""
    a, b = x.numerator, x.denominator
    # b^n * p(a/b) = sum c_k a^k b^(n-k), with b > 0
    acc = 0
    bpow = 1
    for c in reversed(p.coeffs):
        acc = acc * a + c * bpow
        bpow *= b
    return _sign(acc)


def sqrt_upper(q: Fraction, bits: int) -> Fraction:
    """Rational upper bound of sqrt(q), within 2^-bits."""
    scaled = (q.numerator << (2 * bits)) // q.denominator
    return Fraction(isqrt(scaled) + 1, 1 << bits)


def sqrt_lower(q: Fraction, bits: int) -> Fraction:
    scaled = (q.numerator << (2 * bits)) // q.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.degree < 1:
        return p
    g = poly_gcd(p, p.derivative())
    return exact_divide(p, g).primitive() if g.degree > 0 else p.primitive()


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """All complex roots lie strictly inside |z| < bound."""
    lc = abs(p.leading)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lc) if p.degree > 0 else Fraction(1)


# --- Sturm sequences ---------------------------------------------------------------

def sturm_chain(p: IntPolynomial) -> list[IntPolynomial]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        _, r, s = a.pseudo_divmod(b)
        if r.is_zero:
            break
        # lc(b)^s * a = q*b + r, so -rem(a, b) is a positive multiple of -sign*r
        if b.leading < 0 and s % 2:
            r = -r
        g = abs(r.content())
        nxt = IntPolynomial(-c // g for c in r.coeffs)
        chain.append(nxt)
    return chain


def _variations(chain: list[IntPolynomial], x: Fraction) -> int:
    signs = [s for s in (eval_sign(q, x) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p: IntPolynomial, lo: Fraction, hi: Fraction, chain=None) -> int:
    """Distinct real roots in (lo, hi]; exact for any rational endpoints."""
    chain = chain or sturm_chain(squarefree_part(p))
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass(frozen=True)
class RootEnclosure:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    is_real: bool = True

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "exact": self.is_exact,
            "multiplicity": self.multiplicity,
            "is_real": self.is_real,
        }


def _rational_candidate(sqf: IntPolynomial, lo: Fraction, hi: Fraction) -> Fraction | None:
    """The only possible rational root in a narrow interval, if it is one.

    Rational roots have denominators dividing lc, so two of them differ by at
    least 1/lc^2; once the interval is narrower than that the rational nearest
    the midpoint with denominator <= |lc| is the sole candidate.
    """
    lc = abs(sqf.leading)
    cand = ((lo + hi) / 2).limit_denominator(lc)
    if lo <= cand <= hi and eval_sign(sqf, cand) == 0:
        return cand
    return None


def refine_simple_root(sqf: IntPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect a sign-changing interval around a simple root.

    Returns a degenerate interval when the root is rational and is met (either
    at a bisection point or by the denominator test).
    """
    for end in (lo, hi):
        if eval_sign(sqf, end) == 0:
            return end, end
    s_lo = eval_sign(sqf, lo)
    if s_lo == eval_sign(sqf, hi):
        raise ValueError("interval does not bracket a sign change")
    lc2 = Fraction(1, sqf.leading ** 2)
    tried_rational = False
    while hi - lo > width:
        if not tried_rational and hi - lo < lc2:
            tried_rational = True
            r = _rational_candidate(sqf, lo, hi)
            if r is not None:
                return r, r
        mid = (lo + hi) / 2
        s = eval_sign(sqf, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    if not tried_rational and hi - lo < lc2:
        r = _rational_candidate(sqf, lo, hi)
        if r is not None:
            return r, r
    return lo, hi


def _multiplicity(p: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Multiplicity of the single distinct root of p inside [lo, hi]."""
    mult = 1
    g = poly_gcd(p, p.derivative())
    while g.degree > 0:
        if lo == hi:
            inside = eval_sign(g, lo) == 0
        else:
            inside = eval_sign(g, lo) == 0 or count_real_roots(g, lo, hi) > 0
        if not inside:
            break
        mult += 1
        g = poly_gcd(g, g.derivative())
    return mult


def sturm_isolate(p: IntPolynomial, exact: bool = True) -> list[RootEnclosure]:
    """Disjoint rational intervals, one per distinct real root, in increasing order.

    With ``exact`` set, each interval is also narrowed far enough to expose a
    rational root, which is then returned as a degenerate interval.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree < 1:
        return []
    sqf = squarefree_part(p)
    chain = sturm_chain(sqf)
    bound = cauchy_bound(sqf)
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(chain, lo) - _variations(chain, hi)
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if eval_sign(sqf, mid) == 0:
            # nudge the split off the root; roots are finitely many
            step = (hi - lo) / 8
            while eval_sign(sqf, mid + step) == 0:
                step /= 2
            mid += step
        stack.append((lo, mid))
        stack.append((mid, hi))
    found.sort()
    out = []
    for lo, hi in found:
        # (lo, hi] holds one root; make both ends sign-definite
        if eval_sign(sqf, hi) == 0:
            lo = hi
        elif exact:
            lo, hi = refine_simple_root(sqf, lo, hi, Fraction(1, 2 * sqf.leading ** 2))
        out.append(RootEnclosure(lo, hi, _multiplicity(p, lo, hi)))
    return out


# --- -1 plus positive terms ----------------------------------------------------

def support_gcd(p: IntPolynomial) -> int:
    g = 0
    for k in range(1, p.degree + 1):
        if p[k]:
            g = gcd(g, k)
    return g


def prop1_applies(p: IntPolynomial) -> bool:
    """Constant term -1, other coefficients >= 0, degree >= 2, support gcd 1."""
    if p.degree < 2 or p[0] != -1:
        return False
    if any(c < 0 for c in p.coeffs[1:]):
        return False
    return support_gcd(p) == 1


# --- complex inclusion disks ------------------------------------------------------------

@dataclass
class DiskCertificate:
    """Exact disk data at the precision that succeeded."""

    bits: int
    centers: list[tuple[Fraction, Fraction]]
    radii: list[Fraction]  # upper bounds
    smallest: int
    modulus_gap: Fraction  # lower bound on (next modulus) - (smallest modulus)

    def to_json(self) -> dict:
        i = self.smallest
        return {
            "method": "inclusion disks",
            "bits": self.bits,
            "disks": len(self.radii),
            "smallest_center": [str(self.centers[i][0]), str(self.centers[i][1])],
            "smallest_radius": str(self.radii[i]),
            "modulus_gap_lower_bound": str(self.modulus_gap),
        }


def _gaussian_mul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _approximate_roots(p: IntPolynomial, bits: int) -> list[tuple[int, int]] | None:
    """Numerical roots rounded to Gaussian integers at scale 2^bits."""
    with mpmath.workprec(bits + 32):
        try:
            roots = mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=50 + 4 * bits, extraprec=bits)
        except mpmath.libmp.NoConvergence:
            return None
        scale = mpmath.mpf(2) ** bits
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            out.append((int(mpmath.nint(z.real * scale)), int(mpmath.nint(z.imag * scale))))
    return out


def certify_disks(p: IntPolynomial, bits: int) -> DiskCertificate | None:
    """Pairwise-disjoint inclusion disks with a strictly smallest one, or None."""
    n = p.degree
    approx = _approximate_roots(p, bits)
    if approx is None or len(set(approx)) < n:
        return None
    lc = p.leading
    radii_sq = []
    for i, zi in enumerate(approx):
        # p(z_i) * 2^(bits*n) as a Gaussian integer
        acc = (lc, 0)
        for k in range(n - 1, -1, -1):
            acc = _gaussian_mul(acc, zi)
            acc = (acc[0] + (p[k] << (bits * (n - k))), acc[1])
        num = acc[0] ** 2 + acc[1] ** 2
        den = lc * lc << (2 * bits)
        for j, zj in enumerate(approx):
            if j != i:
                d = (zi[0] - zj[0], zi[1] - zj[1])
                den *= d[0] ** 2 + d[1] ** 2
        radii_sq.append(Fraction(n * n * num, den))
    sbits = bits + 8
    radii = [sqrt_upper(r, sbits) for r in radii_sq]
    scale = Fraction(1, 1 << bits)
    centers = [(a * scale, b * scale) for a, b in approx]
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = centers[i][0] - centers[j][0], centers[i][1] - centers[j][1]
            if sqrt_lower(dx * dx + dy * dy, sbits) <= radii[i] + radii[j]:
                return None
    mod_lo = [sqrt_lower(x * x + y * y, sbits) - r for (x, y), r in zip(centers, radii)]
    mod_hi = [sqrt_upper(x * x + y * y, sbits) + r for (x, y), r in zip(centers, radii)]
    smallest = min(range(n), key=lambda i: mod_hi[i])
    others = [mod_lo[j] for j in range(n) if j != smallest]
    gap = (min(others) - mod_hi[smallest]) if others else Fraction(1)
    if gap <= 0:
        return None
    return DiskCertificate(bits, centers, radii, smallest, gap)


def precision_schedule(cap: int = PRECISION_CAP) -> list[int]:
    out, b = [], PRECISION_START
    while b <= cap:
        out.append(b)
        b *= 2
    return out


# --- smallest-modulus root ----------------------------------------------------------------

class RootStatus(Enum):
    CERTIFIED = "Certified"
    NOT_CERTIFIED = "NotCertified"


@dataclass
class SmallestRoot:
    status: RootStatus
    method: str
    enclosure: RootEnclosure | None = None
    certificate: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status is RootStatus.CERTIFIED

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "method": self.method,
            "enclosure": None if self.enclosure is None else self.enclosure.to_json(),
            "certificate": self.certificate,
            "reason": self.reason,
        }


def _width_for(precision: int) -> Fraction:
    return Fraction(1, 1 << precision)


def smallest_modulus_root(p: IntPolynomial, precision: int = 128, cap: int = PRECISION_CAP) -> SmallestRoot:
    """Certify the root of p of least modulus and enclose it to width 2^-precision.

    The result is NotCertified (never wrong) when the disks cannot separate the
    smallest root from the rest by the precision cap, when it is a multiple
    root, or when several roots share the least modulus.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if p[0] == 0:
        raise ValueError("p(0) = 0: divide out the factor t first")
    if p.degree == 1:
        r = Fraction(-p[0], p[1])
        return SmallestRoot(RootStatus.CERTIFIED, "Linear", RootEnclosure(r, r), {"method": "linear"})
    if prop1_applies(p) or prop1_applies(-p):
        return _prop1_root(p if p[0] == -1 else -p, precision, cap)
    return _general_root(p, precision, cap)


def _prop1_root(p: IntPolynomial, precision: int, cap: int) -> SmallestRoot:
    # strictly increasing on (0, inf), p(0) = -1 < 0 < p(1)
    lo, hi = refine_simple_root(p, Fraction(0), Fraction(1), _width_for(precision))
    enc = RootEnclosure(lo, hi)
    # real roots of modulus <= hi: only r0 itself
    real_in_disk = count_real_roots(p, -hi, hi) + (eval_sign(p, -hi) == 0)
    cert = {"method": "Prop1", "real_roots_within_modulus": real_in_disk}
    # numerical separation of the complex roots, as an extra certificate
    sqf = squarefree_part(p)
    disk = None
    for bits in precision_schedule(min(cap, 1024)):
        disk = certify_disks(sqf, bits)
        if disk is not None:
            break
    cert["disk_separation"] = None if disk is None else disk.to_json()
    return SmallestRoot(RootStatus.CERTIFIED, "Prop1", enc, cert)


def _general_root(p: IntPolynomial, precision: int, cap: int) -> SmallestRoot:
    sqf = squarefree_part(p)
    if sqf.degree == 1:
        r = Fraction(-sqf[0], sqf[1])
        mult = _multiplicity(p, r, r)
        enc = RootEnclosure(r, r, mult)
        if mult > 1:
            return SmallestRoot(RootStatus.NOT_CERTIFIED, "GeneralCertification", enc, reason="smallest root is multiple")
        return SmallestRoot(RootStatus.CERTIFIED, "GeneralCertification", enc, {"method": "linear"})
    disk = None
    for bits in precision_schedule(cap):
        disk = certify_disks(sqf, bits)
        if disk is not None:
            break
    if disk is None:
        return SmallestRoot(
            RootStatus.NOT_CERTIFIED,
            "GeneralCertification",
            reason=f"no separating disks up to {cap} bits (roots of equal modulus or too clustered)",
        )
    # a strictly smallest root of a real polynomial is real
    cx = disk.centers[disk.smallest][0]
    rad = disk.radii[disk.smallest]
    lo, hi = cx - rad, cx + rad
    if eval_sign(sqf, lo) == 0:
        lo = hi = lo
    elif eval_sign(sqf, hi) == 0:
        lo = hi
    else:
        lo, hi = refine_simple_root(sqf, lo, hi, _width_for(precision))
    # keep narrowing until the sign of the root is settled
    while lo < 0 < hi:
        lo, hi = refine_simple_root(sqf, lo, hi, (hi - lo) / 4)
    mult = _multiplicity(p, lo, hi)
    enc = RootEnclosure(lo, hi, mult)
    if mult > 1:
        return SmallestRoot(RootStatus.NOT_CERTIFIED, "GeneralCertification", enc, disk.to_json(), "smallest root is multiple")
    return SmallestRoot(RootStatus.CERTIFIED, "GeneralCertification", enc, disk.to_json())


# --- growth rate -----------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthRate:
    """Either a rational enclosure [lo, hi] of tau or the Finite outcome."""

    finite: bool
    lo: Fraction | None = None
    hi: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return not self.finite and self.lo == self.hi

    def to_json(self) -> dict:
        if self.finite:
            return {"outcome": "Finite"}
        return {"outcome": "Rate", "lo": str(self.lo), "hi": str(self.hi), "exact": self.is_exact}


def _smallest_positive_root(q: IntPolynomial, rel: Fraction) -> tuple[Fraction, Fraction] | None:
    """Smallest root of q in (0, 1], narrowed until (hi - lo) <= rel * lo."""
    sqf = squarefree_part(q)
    if sqf.degree < 1:
        return None
    chain = sturm_chain(sqf)
    if _variations(chain, Fraction(0)) - _variations(chain, Fraction(1)) == 0:
        return None
    if eval_sign(sqf, Fraction(0)) == 0:
        raise ValueError("denominator vanishes at 0")
    lo, hi = Fraction(0), Fraction(1)
    # shrink hi until (lo, hi] holds exactly one root, keeping the smallest
    while _variations(chain, lo) - _variations(chain, hi) > 1:
        mid = (lo + hi) / 2
        if _variations(chain, lo) - _variations(chain, mid) >= 1:
            hi = mid
        else:
            lo = mid
    if eval_sign(sqf, hi) == 0:
        return hi, hi
    # one simple root in (lo, hi), neither end a root; refine until relative width holds
    while True:
        lo2, hi2 = refine_simple_root(sqf, lo, hi, (hi - lo) / 2)
        if lo2 == hi2 or hi2 - lo2 <= rel * lo2:
            return lo2, hi2
        lo, hi = lo2, hi2


def growth_rate(growth: RationalFunction, precision: int = 128) -> GrowthRate:
    """tau = 1/R with R the smallest positive pole; width <= 2^(1-precision) * tau."""
    den = growth.den
    if den.degree < 1:
        return GrowthRate(True)
    found = _smallest_positive_root(den, Fraction(2, 1 << precision))
    if found is None:
        return GrowthRate(True)
    lo, hi = found
    return GrowthRate(False, 1 / hi, 1 / lo)


# --- cyclotomic stripping and the Perron verdict ---------------------------------------------

def cyclotomic(n: int) -> IntPolynomial:
    """Phi_n by exact division of t^n - 1 by Phi_d for the proper divisors d."""
    p = IntPolynomial.monomial(n) - ONE
    for d in range(1, n):
        if n % d == 0:
            p = exact_divide(p, cyclotomic(d))
    return p


CYCLOTOMIC_ALPHABET = tuple(cyclotomic(n) for n in range(1, 11))


def strip_cyclotomic(q: IntPolynomial) -> tuple[IntPolynomial, dict[int, int]]:
    """Divide out Phi_1..Phi_10 (the factors of (t-1) and [2]..[10]) to a fixed point."""
    removed: dict[int, int] = {}
    core = q
    changed = True
    while changed and core.degree > 0:
        changed = False
        for n, phi in enumerate(CYCLOTOMIC_ALPHABET, start=1):
            try:
                core = exact_divide(core, phi)
            except NotDivisibleError:
                continue
            removed[n] = removed.get(n, 0) + 1
            changed = True
    return core, removed


class PerronStatus(Enum):
    PERRON = "Perron"
    NOT_CERTIFIED = "NotCertified"
    NOT_APPLICABLE = "NotApplicable"


@dataclass
class PerronVerdict:
    status: PerronStatus
    method: str | None
    tau_lo: Fraction | None = None
    tau_hi: Fraction | None = None
    core: IntPolynomial | None = None
    stripped: dict[int, int] = field(default_factory=dict)
    root: SmallestRoot | None = None
    reason: str = ""

    @property
    def tau_exact(self) -> bool:
        return self.tau_lo is not None and self.tau_lo == self.tau_hi

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "method": self.method,
            "tau": None if self.tau_lo is None else {"lo": str(self.tau_lo), "hi": str(self.tau_hi), "exact": self.tau_exact},
            "core": None if self.core is None else str(self.core),
            "stripped_cyclotomic": {f"Phi{n}": k for n, k in sorted(self.stripped.items())},
            "root": None if self.root is None else self.root.to_json(),
            "reason": self.reason,
        }


def perron_check(growth: RationalFunction | IntPolynomial, precision: int = 128, cap: int = PRECISION_CAP) -> PerronVerdict:
    """Is 1/R a Perron number, certified through the growth denominator?

    A bare polynomial is read as the denominator of the growth function.
    """
    den = growth if isinstance(growth, IntPolynomial) else growth.den
    if den.degree < 1:
        return PerronVerdict(PerronStatus.NOT_APPLICABLE, None, reason="polynomial growth function: finite group")
    if den[0] == 0:
        raise ValueError("denominator vanishes at 0; not a growth function")
    core, stripped = strip_cyclotomic(den)
    if core.degree < 1:
        return PerronVerdict(
            PerronStatus.NOT_APPLICABLE, None, Fraction(1), Fraction(1), core, stripped,
            reason="every pole lies on the unit circle: tau = 1",
        )
    res = smallest_modulus_root(core, precision, cap)
    method = "Prop1" if res.method in ("Prop1", "Linear") else "GeneralCertification"
    if not res.certified:
        return PerronVerdict(PerronStatus.NOT_CERTIFIED, method, core=core, stripped=stripped, root=res, reason=res.reason)
    enc = res.enclosure
    if enc.hi < 0:
        return PerronVerdict(PerronStatus.NOT_APPLICABLE, method, core=core, stripped=stripped, root=res,
                             reason="the least-modulus pole is negative")
    # the core has no root at 1 (Phi_1 was stripped), so the interval can be pulled off 1
    sqf = squarefree_part(core)
    lo, hi = enc.lo, enc.hi
    while lo < 1 < hi:
        lo, hi = refine_simple_root(sqf, lo, hi, (hi - lo) / 2)
    if lo > 1:
        tau = (Fraction(1), Fraction(1)) if stripped else (1 / hi, 1 / lo)
        return PerronVerdict(PerronStatus.NOT_APPLICABLE, method, *tau, core, stripped, res, reason="tau <= 1")
    return PerronVerdict(PerronStatus.PERRON, method, 1 / hi, 1 / lo, core, stripped, res)

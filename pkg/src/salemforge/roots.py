"""Certified complex root isolation and Salem-structure classification.

Midpoint/radius ball arithmetic on top of mpmath, an Aberth-Ehrlich
simultaneous solver with per-root Newton polishing, and disk certificates
via the classical bound: the disk of radius deg * |p(z)/p'(z)| around z
contains at least one root of p.  Reciprocal polynomials get their
on-circle tags from the algebraic z <-> 1/z pairing, never from numeric
proximity alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .polyring import IntPoly, poly_gcd, _scaled_div

GUARD_BITS = 80


class IsolationError(RuntimeError):
    """Root isolation failed at the requested precision after retries."""


class NotSalemError(RuntimeError):
    """Root pattern violates the Salem structure; names the offending root."""


def _ulp(prec: int, *vals) -> mp.mpf:
    scale = max([mp.mpf(1)] + [abs(v) for v in vals])
    return scale * mp.mpf(2) ** (-prec + 4)


def _mantissa_bits(v) -> int:
    if isinstance(v, mp.mpc):
        return max(v.real._mpf_[3], v.imag._mpf_[3])
    if isinstance(v, mp.mpf):
        return v._mpf_[3]
    return 53


def _auto_prec(*vals) -> int:
    """Working precision wide enough that mpmath rounding cannot eat the
    operands' mantissas; mpmath rounds every operation to context prec."""
    return max([mp.mp.prec] + [_mantissa_bits(v) for v in vals]) + 16


def _str_full(v) -> str:
    """Decimal string keeping the entire mantissa (lossless round trip)."""
    dps = mp.libmp.prec_to_dps(max(_mantissa_bits(v), 53)) + 3
    return mp.nstr(v, dps)


def _str_outward(rad) -> str:
    """Radius as a short decimal string, padded so parsing never shrinks it."""
    if rad == 0:
        return "0.0"
    with mp.workprec(_auto_prec(rad)):
        return mp.nstr(rad * (1 + mp.mpf(2) ** -12), 12)


@dataclass(frozen=True)
class RealBall:
    """Certified real interval [mid - rad, mid + rad]."""

    mid: mp.mpf
    rad: mp.mpf

    @property
    def lo(self) -> mp.mpf:
        with mp.workprec(_auto_prec(self.mid, self.rad)):
            return self.mid - self.rad

    @property
    def hi(self) -> mp.mpf:
        with mp.workprec(_auto_prec(self.mid, self.rad)):
            return self.mid + self.rad

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def __add__(self, other):
        o = _as_real(other)
        with mp.workprec(_auto_prec(self.mid, o.mid)):
            if self.mid == 0 or o.mid == 0:   # exact: no rounding happened
                return RealBall(self.mid + o.mid, self.rad + o.rad)
            return RealBall(self.mid + o.mid,
                            self.rad + o.rad + _ulp(mp.mp.prec, self.mid, o.mid))

    __radd__ = __add__

    def __neg__(self):
        with mp.workprec(_auto_prec(self.mid)):
            return RealBall(-self.mid, self.rad)

    def __sub__(self, other):
        return self + (-_as_real(other))

    def __rsub__(self, other):
        return _as_real(other) + (-self)

    def __mul__(self, other):
        o = _as_real(other)
        with mp.workprec(_auto_prec(self.mid, o.mid)):
            rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
            return RealBall(self.mid * o.mid, rad + _ulp(mp.mp.prec, self.mid * o.mid))

    __rmul__ = __mul__

    def abs_ball(self) -> "RealBall":
        with mp.workprec(_auto_prec(self.mid, self.rad)):
            if self.contains_zero():
                hi = abs(self.mid) + self.rad
                return RealBall(hi / 2, hi / 2)
            return RealBall(abs(self.mid), self.rad)

    def to_json(self) -> dict:
        return {"mid": _str_full(self.mid), "radius": _str_outward(self.rad)}


def _as_real(x) -> RealBall:
    if isinstance(x, RealBall):
        return x
    return RealBall(mp.mpf(x), mp.mpf(0))


@dataclass(frozen=True)
class ComplexBall:
    """Certified complex disk: the true value lies within `radius` of the midpoint."""

    mid: mp.mpc
    radius: mp.mpf
    precision_bits: int

    @property
    def re_mid(self) -> mp.mpf:
        return self.mid.real

    @property
    def im_mid(self) -> mp.mpf:
        return self.mid.imag

    @classmethod
    def exact(cls, value, precision_bits: int) -> "ComplexBall":
        with mp.workprec(precision_bits + GUARD_BITS):
            return cls(mp.mpc(value), mp.mpf(0), precision_bits)

    def _wrap(self, mid, rad) -> "ComplexBall":
        return ComplexBall(mid, rad + _ulp(mp.mp.prec, abs(mid), rad), self.precision_bits)

    def __add__(self, other):
        o = _as_ball(other, self.precision_bits)
        with mp.workprec(self.precision_bits + GUARD_BITS):
            return self._wrap(self.mid + o.mid, self.radius + o.radius)

    __radd__ = __add__

    def __neg__(self):
        with mp.workprec(_auto_prec(self.mid)):
            return ComplexBall(-self.mid, self.radius, self.precision_bits)

    def __sub__(self, other):
        return self + (-_as_ball(other, self.precision_bits))

    def __rsub__(self, other):
        return _as_ball(other, self.precision_bits) + (-self)

    def __mul__(self, other):
        o = _as_ball(other, self.precision_bits)
        with mp.workprec(self.precision_bits + GUARD_BITS):
            rad = (abs(self.mid) * o.radius + abs(o.mid) * self.radius
                   + self.radius * o.radius)
            return self._wrap(self.mid * o.mid, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_ball(other, self.precision_bits)
        with mp.workprec(self.precision_bits + GUARD_BITS):
            denom = abs(o.mid) - o.radius
            if denom <= 0:
                raise ZeroDivisionError("divisor ball contains zero")
            q = self.mid / o.mid
            rad = (self.radius + abs(q) * o.radius) / denom
            return self._wrap(q, rad)

    def __rtruediv__(self, other):
        return _as_ball(other, self.precision_bits) / self

    def sqrt(self) -> "ComplexBall":
        """Principal square root; the ball must avoid zero."""
        with mp.workprec(self.precision_bits + GUARD_BITS):
            inner = abs(self.mid) - self.radius
            if inner <= 0:
                raise ZeroDivisionError("sqrt of a ball containing zero")
            rad = self.radius / (2 * mp.sqrt(inner))
            return self._wrap(mp.sqrt(self.mid), rad)

    def conjugate(self) -> "ComplexBall":
        with mp.workprec(_auto_prec(self.mid)):
            return ComplexBall(mp.conj(self.mid), self.radius, self.precision_bits)

    def abs_ball(self) -> RealBall:
        with mp.workprec(self.precision_bits + GUARD_BITS):
            return RealBall(abs(self.mid), self.radius + _ulp(mp.mp.prec, abs(self.mid)))

    def contains(self, value) -> bool:
        with mp.workprec(self.precision_bits + GUARD_BITS):
            return abs(self.mid - mp.mpc(value)) <= self.radius

    def overlaps(self, other: "ComplexBall") -> bool:
        with mp.workprec(self.precision_bits + GUARD_BITS):
            return abs(self.mid - other.mid) <= self.radius + other.radius

    def to_json(self) -> dict:
        return {
            "re": _str_full(self.mid.real),
            "im": _str_full(self.mid.imag),
            "radius": _str_outward(self.radius),
            "precision_bits": self.precision_bits,
        }


def _as_ball(x, prec: int) -> ComplexBall:
    if isinstance(x, ComplexBall):
        return x
    return ComplexBall.exact(x, prec)


def unit_circle_distance(z: ComplexBall) -> RealBall:
    """Certified interval containing |z| - 1."""
    a = z.abs_ball()
    return RealBall(a.mid - 1, a.rad)


# -- polynomial evaluation helpers ------------------------------------


def _horner(coeffs, z):
    acc = mp.mpf(0) if isinstance(z, mp.mpf) else mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _fujiwara_bound(p: IntPoly) -> float:
    n = p.degree
    an = abs(p.coeffs[-1])
    best = 0.5
    for k in range(1, n + 1):
        c = abs(p[n - k]) / an
        if c:
            best = max(best, float(mp.mpf(c) ** (mp.mpf(1) / k)))
    return 2.0 * best


def eval_ball(p: IntPoly, z: ComplexBall) -> ComplexBall:
    """p(z) as a ball: Horner midpoint plus a derivative-bound radius."""
    prec = z.precision_bits
    with mp.workprec(prec + GUARD_BITS):
        mid = _horner(p.coeffs, z.mid)
        r = abs(z.mid) + z.radius
        dbound = mp.mpf(0)
        rp = mp.mpf(1)
        for i, c in enumerate(p.coeffs[1:], start=1):
            if c:
                dbound += abs(c) * i * rp
            rp *= r
        rad = dbound * z.radius
        coeff_sum = sum(abs(c) for c in p.coeffs)
        rad += (4 * p.degree * coeff_sum * max(mp.mpf(1), r) ** p.degree
                * mp.mpf(2) ** (-prec - GUARD_BITS + 6))
        return ComplexBall(mid, rad + _ulp(mp.mp.prec, abs(mid)), prec)


# -- squarefree machinery ---------------------------------------------


def _exact_div(p: IntPoly, f: IntPoly) -> IntPoly:
    """Exact quotient p / f; f monic or made exact by scaling."""
    if f.is_monic():
        q, r = p.divmod(f)
    else:
        scaled = p * f.leading() ** (p.degree - f.degree + 1)
        q, r = _scaled_div(scaled, f)
        q = q.primitive_part()
        if p.is_monic() and not q.is_monic():
            q = -q
    assert r.is_zero(), "expected exact division"
    return q


def yun_squarefree(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun decomposition p = prod f_i^i for monic p; factors monic squarefree."""
    if not p.is_monic():
        raise ValueError("Yun decomposition implemented for monic input")
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    b = _exact_div(p, g)
    c = _exact_div(p.derivative(), g)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            out.append((f, i))
            b = _exact_div(b, f)
            c = _exact_div(d, f)
        else:
            c = d
        d = c - b.derivative()
        i += 1
    return out


# -- Aberth-Ehrlich isolation -----------------------------------------


def _aberth(p: IntPoly, prec: int, maxiter: int = 500):
    """Simultaneous iteration; returns approximate roots at working precision."""
    n = p.degree
    dp = p.derivative()
    with mp.workprec(prec):
        radius = mp.mpf(_fujiwara_bound(p)) * mp.mpf("0.65")
        zs = [radius * mp.exp(mp.mpc(0, 2 * mp.pi * (j + mp.mpf("0.353")) / n))
              for j in range(n)]
        tol = mp.mpf(2) ** (-prec + 16)
        for _ in range(maxiter):
            moved = mp.mpf(0)
            for j in range(n):
                pj = _horner(p.coeffs, zs[j])
                dj = _horner(dp.coeffs, zs[j])
                if dj == 0:
                    zs[j] += tol
                    continue
                w = pj / dj
                s = mp.mpc(0)
                for k in range(n):
                    if k != j:
                        diff = zs[j] - zs[k]
                        if diff == 0:
                            diff = tol
                        s += 1 / diff
                denom = 1 - w * s
                corr = w / denom if denom != 0 else w
                zs[j] -= corr
                moved = max(moved, abs(corr))
            if moved < tol:
                break
        for j in range(n):
            for _ in range(4):
                dj = _horner(dp.coeffs, zs[j])
                if dj == 0:
                    break
                zs[j] -= _horner(p.coeffs, zs[j]) / dj
        return zs


def _certify(p: IntPoly, zs, prec: int):
    """Disk radius deg*|p/p'| per root; None if the certificate degenerates."""
    n = p.degree
    dp = p.derivative()
    out = []
    with mp.workprec(prec + GUARD_BITS):
        for z in zs:
            dv = _horner(dp.coeffs, z)
            if dv == 0:
                return None
            out.append(n * abs(_horner(p.coeffs, z) / dv))
    return out


CLASSIFICATIONS = ("outside_circle", "inside_circle", "on_circle",
                   "real_gt_1", "real_in_01")


@dataclass(frozen=True)
class RootSet:
    poly: IntPoly
    roots: tuple[tuple[ComplexBall, int], ...]
    classification: tuple[str, ...]

    def balls(self):
        return [b for b, _ in self.roots]

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "roots": [{"ball": b.to_json(), "multiplicity": m, "class": c}
                      for (b, m), c in zip(self.roots, self.classification)],
        }


def _pairing_index(balls, target_of):
    """For each ball index, the unique ball containing target_of(mid), else None."""
    out = []
    for i, b in enumerate(balls):
        t = target_of(b)
        hits = [j for j, c in enumerate(balls) if c.contains(t)]
        out.append(hits[0] if len(hits) == 1 else None)
    return out


def _classify_tags(p: IntPoly, balls: list[ComplexBall], prec: int) -> list[str]:
    reciprocal = p.is_reciprocal()
    with mp.workprec(prec + GUARD_BITS):
        recip_partner = (_pairing_index(balls, lambda b: 1 / b.mid)
                         if reciprocal and p[0] != 0 else [None] * len(balls))
        conj_partner = _pairing_index(balls, lambda b: mp.conj(b.mid))
        tags = []
        for i, b in enumerate(balls):
            dist = unit_circle_distance(b)
            is_real = conj_partner[i] == i
            on_circle = (reciprocal and recip_partner[i] is not None
                         and recip_partner[i] == conj_partner[i]
                         and dist.contains_zero())
            if on_circle and not is_real:
                tags.append("on_circle")
            elif is_real and (b.mid.real - b.radius) > 1:
                tags.append("real_gt_1")
            elif is_real and 0 < (b.mid.real - b.radius) and (b.mid.real + b.radius) < 1:
                tags.append("real_in_01")
            elif dist.is_positive():
                tags.append("outside_circle")
            elif dist.is_negative():
                tags.append("inside_circle")
            elif on_circle:
                tags.append("on_circle")
            else:
                # not pinned by the pairing and the interval straddles 1
                tags.append("on_circle" if on_circle else "inside_circle")
        return tags


def isolate_roots(p: IntPoly, precision_bits: int = 256) -> RootSet:
    """All complex roots of p as disjoint certified balls with multiplicity.

    Square factors are removed by exact derivative-gcd first; each ball
    radius must reach 2^(-precision_bits/2), retried at doubled working
    precision if missed.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if not p.is_monic():
        raise ValueError("root isolation expects a monic polynomial")
    if p.degree == 0:
        return RootSet(p, (), ())
    pieces = yun_squarefree(p)

    target = mp.mpf(2) ** (-(precision_bits // 2))
    entries = []
    for fac, m in pieces:
        wp = precision_bits + GUARD_BITS
        for _ in range(4):
            zs = _aberth(fac, wp)
            radii = _certify(fac, zs, wp)
            if radii is not None and max(radii) <= target:
                with mp.workprec(wp):
                    ok = all(abs(zs[i] - zs[j]) > radii[i] + radii[j]
                             for i in range(len(zs))
                             for j in range(i + 1, len(zs)))
                if ok:
                    break
            wp *= 2
        else:
            raise IsolationError(
                f"could not isolate roots of degree-{fac.degree} factor at "
                f"{precision_bits} bits; retry with higher precision")
        for z, r in zip(zs, radii):
            entries.append((ComplexBall(z, r, precision_bits), m))

    with mp.workprec(precision_bits + GUARD_BITS):
        entries.sort(key=lambda e: (e[0].mid.real, e[0].mid.imag))
    tags = _classify_tags(p, [b for b, _ in entries], precision_bits)
    return RootSet(p, tuple(entries), tuple(tags))


# -- Salem classification ----------------------------------------------


@dataclass(frozen=True)
class SalemCertificate:
    poly: IntPoly
    eta: ComplexBall
    eta_reciprocal: ComplexBall
    circle_roots: tuple[ComplexBall, ...]
    precision_bits: int

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "eta": self.eta.to_json(),
            "eta_reciprocal": self.eta_reciprocal.to_json(),
            "n_circle_roots": len(self.circle_roots),
            "precision_bits": self.precision_bits,
        }


def classify_salem(rs: RootSet) -> SalemCertificate:
    """Certify the Salem root pattern of rs.poly or raise NotSalemError.

    Pattern: exactly one real root > 1, its reciprocal in (0, 1), and all
    remaining roots on the unit circle pinned by the reciprocal pairing.
    """
    p = rs.poly
    if not p.is_monic() or p.degree % 2 != 0 or not p.is_reciprocal():
        raise NotSalemError("polynomial is not monic reciprocal of even degree")
    if any(m != 1 for _, m in rs.roots):
        raise NotSalemError("polynomial has a multiple root")
    eta = recip = None
    circle = []
    for (ball, _), tag in zip(rs.roots, rs.classification):
        if tag == "real_gt_1":
            if eta is not None:
                raise NotSalemError(f"second root outside the circle at {ball.mid}")
            eta = ball
        elif tag == "real_in_01":
            if recip is not None:
                raise NotSalemError(f"second root in (0,1) at {ball.mid}")
            recip = ball
        elif tag == "on_circle":
            circle.append(ball)
        else:
            raise NotSalemError(f"root at {ball.mid} classified {tag}")
    if eta is None or recip is None:
        raise NotSalemError("no real root eta > 1 with reciprocal partner in (0,1)")
    if len(circle) != p.degree - 2:
        raise NotSalemError(f"expected {p.degree - 2} circle roots, got {len(circle)}")
    return SalemCertificate(poly=p, eta=eta, eta_reciprocal=recip,
                            circle_roots=tuple(circle),
                            precision_bits=eta.precision_bits)


def entropy_from_charpoly(p: IntPoly, precision_bits: int = 256) -> RealBall:
    """log of the largest root modulus, certified; exactly 0 when no root
    is certified outside the closed unit disk."""
    rs = isolate_roots(p, precision_bits)
    best = None
    any_outside = False
    with mp.workprec(precision_bits + GUARD_BITS):
        for (ball, _), tag in zip(rs.roots, rs.classification):
            d = unit_circle_distance(ball)
            if d.is_positive():
                any_outside = True
            a = ball.abs_ball()
            if best is None or a.mid > best.mid:
                best = a
        if not any_outside:
            return RealBall(mp.mpf(0), mp.mpf(0))
        lo, hi = mp.log(best.lo), mp.log(best.hi)
        return RealBall((lo + hi) / 2, (hi - lo) / 2 + _ulp(mp.mp.prec, hi))


# -- unit-circle root scan (reciprocal polynomials of any degree) -------
#
# For monic reciprocal p of degree 2m, G(t) := Re(e^(-imt) p(e^(it))) is a
# real trigonometric polynomial whose zeros in (0, pi) are exactly the
# arguments of the upper-half-plane circle roots.  Sign changes of G on a
# float grid locate them; mpmath Newton sharpens; the complex disk bound
# certifies.


def _g_value(p: IntPoly, m: int, theta):
    z = mp.exp(mp.mpc(0, theta))
    return (_horner(p.coeffs, z) * mp.exp(mp.mpc(0, -m * theta))).real


def _g_prime(p: IntPoly, m: int, theta):
    z = mp.exp(mp.mpc(0, theta))
    pv = _horner(p.coeffs, z)
    dv = _horner(p.derivative().coeffs, z)
    val = mp.exp(mp.mpc(0, -m * theta)) * (dv * mp.mpc(0, 1) * z - mp.mpc(0, m) * pv)
    return val.real


def circle_root_arguments(p: IntPoly, precision_bits: int,
                          expected: int | None = None) -> list[RealBall]:
    """Arguments theta in (0, pi) of the circle roots of reciprocal p,
    as certified real balls; conjugate roots at -theta are implied.

    `expected` forces a recount with a finer grid until that many sign
    changes are found (Salem candidates have m - 1 of them).
    """
    if p.degree % 2 != 0 or not p.is_reciprocal() or not p.is_monic():
        raise ValueError("circle scan expects a monic reciprocal even-degree input")
    m = p.degree // 2
    coeffs = np.array(p.coeffs, dtype=np.float64)

    grid_factor = 64
    brackets = []
    for _ in range(5):
        k = grid_factor * m
        thetas = np.linspace(0.0, np.pi, k + 2)[1:-1]
        z = np.exp(1j * thetas)
        vals = np.zeros_like(z)
        for c in coeffs[::-1]:
            vals = vals * z + c
        g = np.real(vals * np.exp(-1j * m * thetas))
        sign = np.sign(g)
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        brackets = [(thetas[i], thetas[i + 1]) for i in idx]
        if expected is None or len(brackets) == expected:
            break
        grid_factor *= 4
    if expected is not None and len(brackets) != expected:
        raise IsolationError(
            f"found {len(brackets)} circle-root brackets, expected {expected}")

    out = []
    wp = precision_bits + GUARD_BITS
    dp = p.derivative()
    with mp.workprec(wp):
        tol = mp.mpf(2) ** (-precision_bits - GUARD_BITS // 2)
        for lo, hi in brackets:
            a, b = mp.mpf(lo), mp.mpf(hi)
            ga = _g_value(p, m, a)
            # a few bisection steps to stabilize, then Newton
            for _ in range(10):
                mid = (a + b) / 2
                gm = _g_value(p, m, mid)
                if (gm > 0) == (ga > 0):
                    a, ga = mid, gm
                else:
                    b = mid
            t = (a + b) / 2
            for _ in range(80):
                gv = _g_value(p, m, t)
                gd = _g_prime(p, m, t)
                if gd == 0:
                    break
                step = gv / gd
                t -= step
                if abs(step) < tol:
                    break
            # certify via the complex disk bound at z = e^(i t)
            z = mp.exp(mp.mpc(0, t))
            dv = _horner(dp.coeffs, z)
            if dv == 0:
                raise IsolationError("derivative vanished during certification")
            rho = p.degree * abs(_horner(p.coeffs, z) / dv)
            out.append(RealBall(t, 2 * rho + _ulp(wp, t)))
    return out


def salem_eta(p: IntPoly, precision_bits: int) -> RealBall:
    """The unique real root > 1 of a Salem-pattern polynomial, certified.

    Works at any degree: bisection bracket on (1, Fujiwara bound), Newton
    refinement, then the complex disk certificate.
    """
    wp = precision_bits + GUARD_BITS
    dp = p.derivative()
    with mp.workprec(wp):
        a = mp.mpf(1) + mp.mpf(2) ** -16
        b = mp.mpf(_fujiwara_bound(p)) + 1
        fa = _horner(p.coeffs, a)
        fb = _horner(p.coeffs, b)
        if not (fa < 0 < fb):
            raise NotSalemError("no sign change on (1, bound): not a Salem pattern")
        for _ in range(60):
            midp = (a + b) / 2
            fm = _horner(p.coeffs, midp)
            if fm < 0:
                a = midp
            else:
                b = midp
        t = (a + b) / 2
        tol = mp.mpf(2) ** (-precision_bits - GUARD_BITS // 2)
        for _ in range(100):
            dv = _horner(dp.coeffs, t)
            if dv == 0:
                break
            step = _horner(p.coeffs, t) / dv
            t -= step
            if abs(step) < tol:
                break
        dv = _horner(dp.coeffs, t)
        rho = p.degree * abs(_horner(p.coeffs, t) / dv)
        return RealBall(t, rho + _ulp(wp, t))


def log_ball(x: RealBall, precision_bits: int) -> RealBall:
    """Certified log of a positive interval."""
    with mp.workprec(precision_bits + GUARD_BITS):
        if x.lo <= 0:
            raise ValueError("log of an interval touching zero")
        lo, hi = mp.log(x.lo), mp.log(x.hi)
        return RealBall((lo + hi) / 2, (hi - lo) / 2 + _ulp(mp.mp.prec, hi))


# -- trigonometric ball helpers (arguments live on the unit circle) ----


def cos_ball(theta: RealBall, precision_bits: int) -> RealBall:
    """cos over an interval; |cos'| <= 1 bounds the radius."""
    with mp.workprec(precision_bits + GUARD_BITS):
        return RealBall(mp.cos(theta.mid), theta.rad + _ulp(mp.mp.prec))


def arccos_ball(x: RealBall, precision_bits: int) -> RealBall:
    """arccos over an interval strictly inside (-1, 1)."""
    with mp.workprec(precision_bits + GUARD_BITS):
        edge = 1 - (abs(x.mid) + x.rad)
        if edge <= 0:
            raise ValueError("arccos interval touches the branch points")
        deriv = 1 / mp.sqrt(edge * (2 - edge))
        return RealBall(mp.acos(x.mid), x.rad * deriv + _ulp(mp.mp.prec))


def unit_exp_ball(theta: RealBall, precision_bits: int) -> ComplexBall:
    """e^(i theta) as a ball; arc length bounds the radius."""
    with mp.workprec(precision_bits + GUARD_BITS):
        mid = mp.exp(mp.mpc(0, theta.mid))
        return ComplexBall(mid, theta.rad + _ulp(mp.mp.prec), precision_bits)


def sqrt_ball(x: RealBall, precision_bits: int) -> RealBall:
    """Square root of a certified positive interval."""
    with mp.workprec(precision_bits + GUARD_BITS):
        if x.lo <= 0:
            raise ValueError("sqrt of an interval touching zero")
        rad = x.rad / (2 * mp.sqrt(x.lo))
        return RealBall(mp.sqrt(x.mid), rad + _ulp(mp.mp.prec))

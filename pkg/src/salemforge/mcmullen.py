"""Eigenvalue data of a McMullen pair at its Siegel fixed point.

For a unit-circle root delta = e^(i theta) of the Salem factor phi of
E_n (n = 1 mod 6), the linearized eigenvalues (alpha, beta) at the Siegel
point satisfy alpha*beta = delta and alpha + beta = s with
s = +/- delta(1+delta)/(1+delta+delta^2).  Writing w = s * delta^(-1/2)
gives the real quantity w = +/- 2cos(theta/2)/(1+2cos theta): the branch
is Siegel exactly when |w| < 2 (both eigenvalues on the circle) and
certified off-circle when |w| > 2.  Integrality of alpha and beta is
certified by two exact polynomial divisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import mpmath as mp

from .polyring import IntPoly, poly
from .coxeter import en_from_formula, salem_factor, salem_trace
from .roots import (GUARD_BITS, ComplexBall, IsolationError, RealBall,
                    arccos_ball, circle_root_arguments, cos_ball, eval_ball,
                    log_ball, salem_eta, sqrt_ball, unit_exp_ball)

import numpy as np


class PoleError(ValueError):
    """delta is a primitive cube root of unity: 1 + delta + delta^2 = 0."""


class NoSiegelRoot(RuntimeError):
    """No circle root produced a certified Siegel branch."""


class NotSalemInput(ValueError):
    """Input polynomial is not Salem-certified."""


@dataclass(frozen=True)
class CircleRoot:
    """Certified unit-circle root delta = e^(i theta) of a Salem factor."""

    theta: RealBall            # argument in (0, 2 pi)
    ball: ComplexBall          # e^(i theta)
    index: int                 # scan position; conjugates share |index|

    @classmethod
    def from_theta(cls, theta: RealBall, precision_bits: int, index: int) -> "CircleRoot":
        return cls(theta=theta, ball=unit_exp_ball(theta, precision_bits), index=index)

    def conjugate(self, precision_bits: int) -> "CircleRoot":
        with mp.workprec(precision_bits + GUARD_BITS):
            theta = RealBall(2 * mp.pi - self.theta.mid, self.theta.rad)
        return CircleRoot.from_theta(theta, precision_bits, -self.index)

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "delta": self.ball.to_json(),
                "index": self.index}


@dataclass(frozen=True)
class Branch:
    branch_sign: int
    alpha: ComplexBall
    beta: ComplexBall
    s: ComplexBall             # alpha + beta
    a_of_delta: ComplexBall    # coefficient in x^2 + a(delta) x + delta^2
    classification: str        # "siegel" | "nonsiegel"
    ratio_abs: RealBall        # certified |alpha / beta|

    def to_json(self) -> dict:
        return {
            "branch_sign": self.branch_sign,
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "s": self.s.to_json(),
            "a_of_delta": self.a_of_delta.to_json(),
            "classification": self.classification,
            "ratio_abs": self.ratio_abs.to_json(),
        }


def _w_interval(theta: RealBall, precision_bits: int) -> RealBall:
    """w = 2 cos(theta/2) / (1 + 2 cos theta), the real branch discriminant."""
    with mp.workprec(precision_bits + GUARD_BITS):
        half = RealBall(theta.mid / 2, theta.rad / 2)
        num = 2 * cos_ball(half, precision_bits)
        den = 1 + 2 * cos_ball(theta, precision_bits)
        if den.contains_zero():
            raise PoleError("1 + delta + delta^2 vanishes: delta is a cube root of unity")
        # interval division via endpoint bounds
        lo_d, hi_d = den.lo, den.hi
        cands = [num.lo / lo_d, num.lo / hi_d, num.hi / lo_d, num.hi / hi_d]
        lo, hi = min(cands), max(cands)
        return RealBall((lo + hi) / 2, (hi - lo) / 2 + mp.mpf(2) ** (-mp.mp.prec + 4))


def eigenvalue_branches(phi: IntPoly, delta: CircleRoot,
                        precision_bits: int) -> list[Branch]:
    """Both sign branches of t^2 - s t + delta = 0 with certified tags.

    alpha and beta are built from the argument representation, so Siegel
    branches are on-circle by construction; non-Siegel branches carry a
    certified |alpha/beta| != 1.
    """
    w = _w_interval(delta.theta, precision_bits)
    wa = w.abs_ball()
    if not (wa.hi < 2 or wa.lo > 2):
        raise IsolationError("branch discriminant not separated from 2; "
                             "retry with higher precision")
    out = []
    with mp.workprec(precision_bits + GUARD_BITS):
        half_theta = RealBall(delta.theta.mid / 2, delta.theta.rad / 2)
        root_half = unit_exp_ball(half_theta, precision_bits)  # delta^(1/2)
        for sign in (+1, -1):
            ws = RealBall(sign * w.mid, w.rad)
            s = _real_times_ball(ws, root_half, precision_bits)
            if wa.hi < 2:
                # psi = arccos(w_s / 2); alpha, beta = e^(i(theta/2 +/- psi))
                psi = arccos_ball(RealBall(ws.mid / 2, ws.rad / 2), precision_bits)
                alpha = unit_exp_ball(half_theta + psi, precision_bits)
                beta = unit_exp_ball(half_theta - psi, precision_bits)
                tag = "siegel"
                ratio = RealBall(mp.mpf(1), alpha.radius + beta.radius)
            else:
                # u real with |u| > 1: u = (w_s + sgn(w_s) sqrt(w_s^2 - 4)) / 2
                disc = sqrt_ball(ws * ws - 2 * 2, precision_bits)
                sgn = 1 if ws.mid > 0 else -1
                u = RealBall((ws.mid + sgn * disc.mid) / 2,
                             (ws.rad + disc.rad) / 2 + mp.mpf(2) ** (-mp.mp.prec + 4))
                alpha = _real_times_ball(u, root_half, precision_bits)
                beta = root_half / _as_cb(u, precision_bits)
                tag = "nonsiegel"
                uu = (u * u).abs_ball()
                ratio = uu
            a_delta = 2 * delta.ball - s * s
            out.append(Branch(branch_sign=sign, alpha=alpha, beta=beta, s=s,
                              a_of_delta=a_delta, classification=tag,
                              ratio_abs=ratio))
    return out


def _real_times_ball(r: RealBall, z: ComplexBall, prec: int) -> ComplexBall:
    return _as_cb(r, prec) * z


def _as_cb(r: RealBall, prec: int) -> ComplexBall:
    with mp.workprec(prec + GUARD_BITS):
        return ComplexBall(mp.mpc(r.mid), r.rad, prec)


def _check_salem_shape(phi: IntPoly) -> int:
    if phi.is_zero() or not phi.is_monic() or phi.degree % 2 != 0 \
            or not phi.is_reciprocal():
        raise NotSalemInput("not a monic reciprocal even-degree polynomial")
    return phi.degree // 2


def scan_siegel_roots(phi: IntPoly, precision_bits: int = 256
                      ) -> tuple[list[CircleRoot], list[CircleRoot]]:
    """Partition all circle roots of phi by branch classification.

    Returns (siegel, nonsiegel) lists, closed under conjugation.  Raises
    NoSiegelRoot when no certified Siegel branch exists (signals an
    invalid n or insufficient precision).
    """
    m = _check_salem_shape(phi)
    salem_eta(phi, 64)  # raises NotSalemError when the eta bracket is absent
    thetas = circle_root_arguments(phi, precision_bits, expected=m - 1)
    siegel, nonsiegel = [], []
    for i, th in enumerate(thetas):
        root = CircleRoot.from_theta(th, precision_bits, index=i + 1)
        branches = eigenvalue_branches(phi, root, precision_bits)
        tag = branches[0].classification
        bucket = siegel if tag == "siegel" else nonsiegel
        bucket.append(root)
        bucket.append(root.conjugate(precision_bits))
    if not siegel:
        raise NoSiegelRoot(f"no Siegel-compatible circle root among {m - 1} candidates")
    return siegel, nonsiegel


def find_witness_roots(phi: IntPoly, precision_bits: int
                       ) -> tuple[CircleRoot, CircleRoot]:
    """One certified Siegel root and one certified non-Siegel root of phi.

    Cheap float classification of scan brackets picks the candidates;
    only those two are refined to full precision.  Scales to the large
    Salem factors the MAU extension needs.
    """
    m = _check_salem_shape(phi)
    coeffs = np.array(phi.coeffs, dtype=np.float64)
    k = 64 * m
    grid = np.linspace(0.0, np.pi, k + 2)[1:-1]
    z = np.exp(1j * grid)
    vals = np.zeros_like(z)
    for c in coeffs[::-1]:
        vals = vals * z + c
    g = np.real(vals * np.exp(-1j * m * grid))
    sign = np.sign(g)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]

    def w_of(theta: float) -> float:
        den = 1.0 + 2.0 * np.cos(theta)
        if abs(den) < 1e-9:
            return np.inf
        return 2.0 * np.cos(theta / 2.0) / den

    siegel_cands, nonsiegel_cands = [], []
    for i in idx:
        t = 0.5 * (grid[i] + grid[i + 1])
        w = abs(w_of(t))
        if w < 1.98:
            siegel_cands.append((t, i))
        elif w > 2.02:
            nonsiegel_cands.append((t, i))

    def refine(cands, want_tag, index_base):
        for t, _ in cands:
            th = _refine_circle_root(phi, m, t, precision_bits)
            if th is None:
                continue
            root = CircleRoot.from_theta(th, precision_bits, index=index_base)
            branches = eigenvalue_branches(phi, root, precision_bits)
            if branches[0].classification == want_tag:
                return root
        return None

    s = refine(siegel_cands, "siegel", 1)
    ns = refine(nonsiegel_cands, "nonsiegel", 2)
    if s is None:
        raise NoSiegelRoot("no certified Siegel root found")
    if ns is None:
        raise NoSiegelRoot("no certified non-Siegel root found")
    return s, ns


def _refine_circle_root(phi: IntPoly, m: int, t0: float,
                        precision_bits: int) -> Optional[RealBall]:
    from .roots import _g_value, _g_prime, _horner, _ulp

    wp = precision_bits + GUARD_BITS
    dp = phi.derivative()
    with mp.workprec(wp):
        t = mp.mpf(t0)
        tol = mp.mpf(2) ** (-precision_bits - GUARD_BITS // 2)
        for _ in range(100):
            gd = _g_prime(phi, m, t)
            if gd == 0:
                return None
            step = _g_value(phi, m, t) / gd
            t -= step
            if abs(step) < tol:
                break
        z = mp.exp(mp.mpc(0, t))
        dv = _horner(dp.coeffs, z)
        if dv == 0:
            return None
        rho = phi.degree * abs(_horner(phi.coeffs, z) / dv)
        if rho > mp.mpf(2) ** (-(precision_bits // 2)):
            return None
        return RealBall(t, 2 * rho + _ulp(wp, t))


# -- exact integrality certificates ------------------------------------


@dataclass(frozen=True)
class IntegralityCertificate:
    """Exact-division witnesses that alpha + beta is an algebraic integer."""

    n: int
    a_poly: IntPoly
    remainder1: IntPoly
    c_poly: IntPoly
    a_at_minus2: int
    checks: tuple[tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a_poly": self.a_poly.to_json(),
            "remainder1": self.remainder1.to_json(),
            "c_poly": self.c_poly.to_json(),
            "a_at_minus2": str(self.a_at_minus2),
            "checks": [[name, ok] for name, ok in self.checks],
            "passed": self.passed,
        }


def integrality_certificate(n: int) -> IntegralityCertificate:
    """Exact certificates: E_n(x)(x-1) = (x^2+x+1) A(x) - (x+2) and
    E_n(x) = (x+2) C(x) - A(-2).  No floating point anywhere."""
    e_n = en_from_formula(n)
    lhs = e_n * poly(-1, 1)
    a_poly, rem1 = lhs.divmod(poly(1, 1, 1))
    check1 = rem1 == poly(-2, -1)  # remainder must be -(x+2)
    a_m2 = a_poly.eval_int(-2)
    check2 = e_n.eval_int(-2) == -a_m2
    c_poly, rem2 = (e_n + poly(a_m2)).divmod(poly(2, 1))
    check3 = rem2.is_zero()
    return IntegralityCertificate(
        n=n, a_poly=a_poly, remainder1=rem1, c_poly=c_poly, a_at_minus2=a_m2,
        checks=(
            ("remainder_is_minus_x_plus_2", check1),
            ("A_at_minus2_equals_minus_En_at_minus2", check2),
            ("x_plus_2_divides_En_plus_A_minus2", check3),
        ),
    )


def numeric_integrality_check(cert: IntegralityCertificate, delta: ComplexBall,
                              precision_bits: int) -> RealBall:
    """|A(delta)/(delta+2) - 1/(delta^2+delta+1)| as a certified ball."""
    a_val = eval_ball(cert.a_poly, delta)
    lhs = a_val / (delta + 2)
    rhs = 1 / (delta * delta + delta + 1)
    return (lhs - rhs).abs_ball()


# -- assembled pair data ------------------------------------------------


@dataclass(frozen=True)
class McMullenPairData:
    n: int
    phi: IntPoly
    delta: CircleRoot
    branch_sign: int
    alpha: ComplexBall
    beta: ComplexBall
    s: ComplexBall
    a_of_delta: ComplexBall
    siegel_root: bool
    delta_prime: Optional[CircleRoot]
    alpha_prime: Optional[ComplexBall]
    beta_prime: Optional[ComplexBall]
    entropy: RealBall
    certificate: IntegralityCertificate
    precision_bits: int
    alpha_arg_turns: RealBall = None  # arg(alpha) / 2 pi in [0, 1)
    beta_arg_turns: RealBall = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "phi": self.phi.to_json(),
            "delta": self.delta.to_json(),
            "branch_sign": self.branch_sign,
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "s": self.s.to_json(),
            "a_of_delta": self.a_of_delta.to_json(),
            "siegel_root": self.siegel_root,
            "delta_prime": self.delta_prime.to_json() if self.delta_prime else None,
            "alpha_prime": self.alpha_prime.to_json() if self.alpha_prime else None,
            "beta_prime": self.beta_prime.to_json() if self.beta_prime else None,
            "entropy": self.entropy.to_json(),
            "certificate": self.certificate.to_json(),
            "precision_bits": self.precision_bits,
            "alpha_arg_turns": self.alpha_arg_turns.to_json(),
            "beta_arg_turns": self.beta_arg_turns.to_json(),
        }


def _arg_turns(theta_component: RealBall, precision_bits: int) -> RealBall:
    """Reduce an angle in radians to a turn fraction in [0, 1)."""
    with mp.workprec(precision_bits + GUARD_BITS):
        t = theta_component.mid / (2 * mp.pi)
        t = t - mp.floor(t)
        return RealBall(t, theta_component.rad / (2 * mp.pi)
                        + mp.mpf(2) ** (-mp.mp.prec + 4))


def mcmullen_data(n: int, precision_bits: int = 256,
                  branch_sign: int = +1, full_scan: bool | None = None
                  ) -> McMullenPairData:
    """Full eigenvalue data of the pair for n = 1 mod 6 at a Siegel root.

    full_scan controls whether every circle root is classified (small
    degrees) or only the two needed witnesses are refined (large n).
    """
    if n % 6 != 1:
        raise ValueError(f"n must be 1 mod 6, got {n}")
    if n < 13:
        raise ValueError("n must be at least 13")
    fact = salem_factor(en_from_formula(n), n)
    phi = fact.salem_candidate
    if full_scan is None:
        full_scan = phi.degree <= 40
    if full_scan:
        siegel, nonsiegel = scan_siegel_roots(phi, precision_bits)
        if not nonsiegel:
            raise NoSiegelRoot("no non-Siegel witness root")
        delta, delta_prime = siegel[0], nonsiegel[0]
    else:
        delta, delta_prime = find_witness_roots(phi, precision_bits)

    branches = eigenvalue_branches(phi, delta, precision_bits)
    br = next(b for b in branches if b.branch_sign == branch_sign)
    if br.classification != "siegel":
        raise NoSiegelRoot("chosen delta lost Siegel certification at this precision")
    branches_p = eigenvalue_branches(phi, delta_prime, precision_bits)
    brp = next(b for b in branches_p if b.branch_sign == branch_sign)

    cert = integrality_certificate(n)
    if not cert.passed:
        raise RuntimeError(f"integrality certificate failed for n={n}")
    eta = salem_eta(phi, precision_bits)
    entropy = log_ball(eta, precision_bits)

    # argument bookkeeping: alpha = e^(i(theta/2 + psi)), beta = e^(i(theta/2 - psi))
    w = _w_interval(delta.theta, precision_bits)
    with mp.workprec(precision_bits + GUARD_BITS):
        ws = RealBall(branch_sign * w.mid, w.rad)
        psi = arccos_ball(RealBall(ws.mid / 2, ws.rad / 2), precision_bits)
        half = RealBall(delta.theta.mid / 2, delta.theta.rad / 2)
        alpha_arg = _arg_turns(half + psi, precision_bits)
        beta_arg = _arg_turns(half - psi, precision_bits)

    return McMullenPairData(
        n=n, phi=phi, delta=delta, branch_sign=branch_sign,
        alpha=br.alpha, beta=br.beta, s=br.s, a_of_delta=br.a_of_delta,
        siegel_root=True, delta_prime=delta_prime,
        alpha_prime=brp.alpha, beta_prime=brp.beta,
        entropy=entropy, certificate=cert, precision_bits=precision_bits,
        alpha_arg_turns=alpha_arg, beta_arg_turns=beta_arg,
    )

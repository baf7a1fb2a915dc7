"""Multiplicatively independent unit-circle algebraic integers.

The sequence is grown two entries at a time: pick the smallest k with
q = d(k) = 180k + 7 prime and strictly larger than the accumulated field
degree bound, take the eigenvalue pair (alpha, beta) of the Salem factor
of E_{n(k)} with n(k) = 360k + 19 at a Siegel root, and append it.  The
prime-degree certificates (q prime, q = deg r, q > bound) carry the
independence argument; an LLL-based integer-relation search over the
scaled-argument lattice provides numeric falsification evidence on top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

import mpmath as mp

from .polyring import IntPoly
from .coxeter import en_from_formula, euler_phi, salem_factor, salem_trace
from .mcmullen import (IntegralityCertificate, NoSiegelRoot,
                       integrality_certificate, mcmullen_data)
from .roots import GUARD_BITS, ComplexBall, RealBall


class PrecisionTooLow(RuntimeError):
    """Argument radii too coarse for the requested relation bound."""

    def __init__(self, message: str, required_bits: int):
        super().__init__(message)
        self.required_bits = required_bits


class DegreeCertificateFailure(RuntimeError):
    """deg r disagrees with the prime q = 180k + 7 for the chosen k."""


class WitnessFailure(RuntimeError):
    """A required Siegel or non-Siegel witness root could not be certified."""


class IndependenceFalsified(RuntimeError):
    """The relation search verified a candidate relation: an internal bug."""


# -- deterministic primality for desk-sized integers --------------------

_TRIAL_LIMIT = 1 << 20
_SPSP_BASES = (2, 3, 5, 7, 11, 13, 17)
_SPSP_VALID_BELOW = 341_550_071_728_321  # smallest spsp to all 7 bases


def _is_strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> tuple[bool, dict]:
    """Deterministic primality with a serializable witness record."""
    if n < 2:
        return False, {"method": "trivial", "detail": "n < 2"}
    p = 2
    while p * p <= n and p <= _TRIAL_LIMIT:
        if n % p == 0:
            return (n == p), {"method": "trial_division", "factor": p}
        p += 1 if p == 2 else 2
    if n < _TRIAL_LIMIT * _TRIAL_LIMIT:
        return True, {"method": "trial_division",
                      "detail": f"no factor <= isqrt({n})"}
    if n >= _SPSP_VALID_BELOW:
        raise ValueError(f"{n} exceeds the deterministic test range")
    for a in _SPSP_BASES:
        if n == a:
            return True, {"method": "strong_pseudoprime", "bases": list(_SPSP_BASES)}
        if not _is_strong_probable_prime(n, a):
            return False, {"method": "strong_pseudoprime", "witness_base": a}
    return True, {"method": "strong_pseudoprime", "bases": list(_SPSP_BASES)}


def d_of(k: int) -> int:
    return 180 * k + 7


def n_of(k: int) -> int:
    return 360 * k + 19


def dk_prime_search(k_min: int, count: int, scan_cap: int = 1_000_000) -> list[int]:
    """First `count` values k >= k_min with 180k + 7 prime."""
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    out = []
    k = k_min
    while len(out) < count:
        if k > k_min + scan_cap:
            raise RuntimeError("prime scan cap exceeded")
        if is_prime(d_of(k))[0]:
            out.append(k)
        k += 1
    return out


# -- exact-integer LLL over the scaled-argument lattice -----------------


def _gram_schmidt(basis: list[list[int]]):
    """mu[i][j] and squared norms B[i] of the orthogonalization, exact."""
    n = len(basis)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar: list[list[Fraction]] = []
    b_norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(x) for x in basis[i]]
        for j in range(i):
            num = sum(Fraction(x) * y for x, y in zip(basis[i], bstar[j]))
            mu[i][j] = num / b_norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        b_norms.append(sum(x * x for x in v))
    return mu, b_norms


def lll_reduce(rows: list[list[int]],
               delta: Fraction = Fraction(99, 100)) -> tuple[list[list[int]], list[Fraction]]:
    """Integer LLL with exact rational Gram-Schmidt; returns (basis, B*)."""
    if not Fraction(3, 4) <= delta < 1:
        raise ValueError("delta must lie in [3/4, 1)")
    b = [[int(x) for x in row] for row in rows]
    n = len(b)
    mu, bn = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, bn = _gram_schmidt(b)
        # Lovasz condition, exact rationals throughout
        if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            k += 1
        else:
            b[k - 1], b[k] = b[k], b[k - 1]
            mu, bn = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b, bn


# -- relation search ----------------------------------------------------

_AUDIT_NOTES = (
    "numeric relation search is falsification evidence, not proof",
    "independence is guaranteed by the prime-degree extension certificates; "
    "this search exists to catch implementation bugs",
)


@dataclass(frozen=True)
class RelationReport:
    """Outcome of the integer-relation search over argument turn fractions."""

    arguments: tuple[RealBall, ...]
    bound: int
    precision_bits: int
    outcome: str                      # "no_relation" | "candidate"
    exponents: Optional[tuple[int, ...]] = None
    residual: Optional[RealBall] = None
    gap: Optional[str] = None         # certified lower bound on any residual
    notes: tuple[str, ...] = _AUDIT_NOTES

    def to_json(self) -> dict:
        return {
            "arguments": [a.to_json() for a in self.arguments],
            "bound": self.bound,
            "precision_bits": self.precision_bits,
            "outcome": self.outcome,
            "exponents": list(self.exponents) if self.exponents else None,
            "residual": self.residual.to_json() if self.residual else None,
            "gap": self.gap,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelationReport":
        prec = int(data["precision_bits"])
        args = tuple(_ball_from_json(a, prec) for a in data["arguments"])
        res = data.get("residual")
        return cls(arguments=args, bound=int(data["bound"]),
                   precision_bits=prec, outcome=data["outcome"],
                   exponents=(tuple(data["exponents"])
                              if data.get("exponents") else None),
                   residual=_ball_from_json(res, prec) if res else None,
                   gap=data.get("gap"),
                   notes=tuple(data.get("notes", _AUDIT_NOTES)))


def _as_argument_ball(x) -> RealBall:
    if isinstance(x, RealBall):
        return x
    if isinstance(x, Fraction):
        return RealBall(mp.mpf(x.numerator) / x.denominator, mp.mpf(0))
    return RealBall(mp.mpf(x), mp.mpf(0))


def _residual_ball(args: list[RealBall], m: tuple[int, ...], wp: int) -> RealBall:
    """Distance of sum(m_i theta_i) from the nearest integer, as a ball."""
    with mp.workprec(wp):
        s = mp.fsum(mi * a.mid for mi, a in zip(m, args))
        r = mp.fsum(abs(mi) * a.rad for mi, a in zip(m, args))
        j = mp.nint(s)
        return RealBall(s - j, r + mp.mpf(2) ** (-wp + 4)).abs_ball()


def relation_search(arguments, bound: int, precision_bits: int) -> RelationReport:
    """LLL search for integer relations sum(m_i theta_i) in Z, |m_i| <= bound.

    Builds the lattice spanned by (e_i, round(2^p theta_i)) and (0, 2^p),
    reduces it, re-verifies short candidates at doubled working precision,
    and otherwise certifies a residual gap from the minimal Gram-Schmidt
    norm of the reduced basis.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    args = [_as_argument_ball(a) for a in arguments]
    if not args:
        raise ValueError("need at least one argument")
    n = len(args)
    with mp.workprec(2 * precision_bits + GUARD_BITS):
        for a in args:
            if not (0 <= a.mid < 1):
                raise ValueError("arguments must be turn fractions in [0, 1)")
        max_rad = max(a.rad for a in args)
        if max_rad > mp.mpf(2) ** (-precision_bits):
            needed = int(-mp.floor(mp.log(max_rad, 2)))
            raise PrecisionTooLow(
                f"argument radius 2^{mp.nstr(mp.log(max_rad, 2), 5)} exceeds "
                f"2^-{precision_bits}; recompute arguments at >= {needed} bits "
                f"or search at lower precision", needed)
        scale = mp.mpf(2) ** precision_bits
        t = [int(mp.nint(a.mid * scale)) for a in args]

    rows = [[1 if j == i else 0 for j in range(n)] + [t[i]] for i in range(n)]
    rows.append([0] * n + [1 << precision_bits])
    reduced, b_norms = lll_reduce(rows)

    cands = []
    for v in reduced:
        m = tuple(v[:n])
        if any(m) and all(abs(x) <= bound for x in m):
            cands.append(m)
    threshold = mp.mpf(2) ** (-(precision_bits // 4))
    for m in sorted(set(cands), key=lambda m: sum(x * x for x in m)):
        if next(x for x in m if x) < 0:
            m = tuple(-x for x in m)
        res = _residual_ball(args, m, 2 * precision_bits + GUARD_BITS)
        if res.hi < threshold:
            return RelationReport(arguments=tuple(args), bound=bound,
                                  precision_bits=precision_bits,
                                  outcome="candidate", exponents=m, residual=res)

    # gap certificate: any nonzero lattice vector has norm >= min |b*_i|,
    # so every |m_i| <= bound relation has residual above `gap`
    lam2 = min(b_norms)
    with mp.workprec(2 * precision_bits + GUARD_BITS):
        lam = mp.sqrt(mp.mpf(lam2.numerator) / lam2.denominator)
        slack = n * bound * (mp.mpf(1) / 2 + scale * max_rad)
        tail = lam * lam - n * bound * bound
        gap = (mp.sqrt(tail) - slack) / scale if tail > 0 else mp.mpf(-1)
        if gap <= 0:
            raise PrecisionTooLow(
                "reduced lattice too short to certify absence of relations "
                f"at bound {bound}; raise the search precision",
                2 * precision_bits)
        gap_str = mp.nstr(gap, 10)
    return RelationReport(arguments=tuple(args), bound=bound,
                          precision_bits=precision_bits,
                          outcome="no_relation", gap=gap_str)


# -- the sequence and its growth ----------------------------------------


@dataclass(frozen=True)
class MAUEntry:
    """One unit-circle value with its provenance and argument bookkeeping.

    minimal_poly is the Salem polynomial of the source pair (the minimal
    polynomial of the product alpha*beta); the entry itself generates a
    degree <= 2 extension of that field.
    """

    value: ComplexBall
    argument_turns: RealBall
    minimal_poly: IntPoly
    source_n: int
    role: str                         # "alpha" | "beta"

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "argument_turns": self.argument_turns.to_json(),
            "minimal_poly": self.minimal_poly.to_json(),
            "source_n": self.source_n,
            "role": self.role,
        }


@dataclass(frozen=True)
class ExtensionCertificate:
    k: int
    n: int
    q: int
    primality_witness: dict
    degree_bound_before: int
    q_exceeds_bound: bool
    deg_phi: int
    deg_r: int
    cyclotomic_degree: int
    siegel_witness_theta: RealBall
    nonsiegel_witness_theta: RealBall
    nonsiegel_ratio: RealBall         # certified |alpha'/beta'| != 1
    integrality: IntegralityCertificate
    note: str = ("smallest admissible k; geometric realizability of the "
                 "source surface is recorded, not enforced")

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "q": self.q,
            "primality_witness": self.primality_witness,
            "degree_bound_before": self.degree_bound_before,
            "q_exceeds_bound": self.q_exceeds_bound,
            "deg_phi": self.deg_phi, "deg_r": self.deg_r,
            "cyclotomic_degree": self.cyclotomic_degree,
            "siegel_witness_theta": self.siegel_witness_theta.to_json(),
            "nonsiegel_witness_theta": self.nonsiegel_witness_theta.to_json(),
            "nonsiegel_ratio": self.nonsiegel_ratio.to_json(),
            "integrality": self.integrality.to_json(),
            "note": self.note,
        }


@dataclass(frozen=True)
class MAUSequence:
    """Immutable certified sequence; extension returns a new value."""

    entries: tuple[MAUEntry, ...] = ()
    degree_bound: int = 1
    certificates: tuple[ExtensionCertificate, ...] = ()
    relation_audit: Optional[RelationReport] = None
    precision_bits: int = 512

    def __len__(self) -> int:
        return len(self.entries)

    def arguments(self) -> list[RealBall]:
        return [e.argument_turns for e in self.entries]

    def truncate(self, length: int) -> "MAUSequence":
        """Keep the first `length` entries; source certificates are retained."""
        if not 0 <= length <= len(self.entries):
            raise ValueError("length out of range")
        return replace(self, entries=self.entries[:length])

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "degree_bound": self.degree_bound,
            "certificates": [c.to_json() for c in self.certificates],
            "relation_audit": (self.relation_audit.to_json()
                               if self.relation_audit else None),
            "precision_bits": self.precision_bits,
        }

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")


def _ball_from_json(data: dict, prec: int) -> RealBall:
    with mp.workprec(max(2 * prec, 4 * len(data["mid"])) + GUARD_BITS):
        return RealBall(mp.mpf(data["mid"]), mp.mpf(data["radius"]))


def _cball_from_json(data: dict) -> ComplexBall:
    prec = int(data["precision_bits"])
    with mp.workprec(max(2 * prec, 4 * len(data["re"])) + GUARD_BITS):
        return ComplexBall(mp.mpc(mp.mpf(data["re"]), mp.mpf(data["im"])),
                           mp.mpf(data["radius"]), prec)


def load_arguments(path) -> tuple[list[RealBall], int]:
    """(argument balls, stored precision) from a serialized sequence file."""
    with open(path) as fh:
        data = json.load(fh)
    prec = int(data["precision_bits"])
    return [_ball_from_json(e["argument_turns"], prec)
            for e in data["entries"]], prec


def load_sequence(path) -> MAUSequence:
    """Rebuild a sequence from its JSON dump.

    Entries and the relation audit round-trip; extension certificates are
    not reconstructed (re-derive them by re-running the build if needed).
    """
    with open(path) as fh:
        data = json.load(fh)
    prec = int(data["precision_bits"])
    entries = tuple(
        MAUEntry(value=_cball_from_json(e["value"]),
                 argument_turns=_ball_from_json(e["argument_turns"], prec),
                 minimal_poly=IntPoly.from_json(e["minimal_poly"]),
                 source_n=int(e["source_n"]), role=e["role"])
        for e in data["entries"])
    audit = (RelationReport.from_json(data["relation_audit"])
             if data.get("relation_audit") else None)
    return MAUSequence(entries=entries, degree_bound=int(data["degree_bound"]),
                       certificates=(), relation_audit=audit,
                       precision_bits=prec)


def mau_extend(seq: MAUSequence, precision_bits: int = 512,
               relation_bound: int = 32) -> MAUSequence:
    """Append the (alpha, beta) pair of the next admissible prime degree.

    Selects the smallest k with q = 180k + 7 prime and q > seq.degree_bound,
    verifies deg phi = 360k + 14 and deg r = q exactly, certifies one Siegel
    and one non-Siegel root, and re-runs the joint relation audit.
    """
    k = 1
    while True:
        q = d_of(k)
        prime, witness = is_prime(q)
        if prime and q > seq.degree_bound:
            break
        k += 1
    n = n_of(k)

    fact = salem_factor(en_from_formula(n), n)
    phi = fact.salem_candidate
    cyc_deg = sum(euler_phi(d) * m for d, m in fact.cyclotomic_part)
    base = salem_factor(en_from_formula(19), 19)
    if cyc_deg != 5 or fact.cyclotomic_part != base.cyclotomic_part:
        raise DegreeCertificateFailure(
            f"cyclotomic part of E_{n} deviates from the residue-19 pattern")
    if phi.degree != n - 5:
        raise DegreeCertificateFailure(
            f"deg phi = {phi.degree}, expected {n - 5} for k={k}")
    r = salem_trace(phi)
    if r.degree != q:
        raise DegreeCertificateFailure(f"deg r = {r.degree} != q = {q}")

    try:
        data = mcmullen_data(n, precision_bits=precision_bits)
    except NoSiegelRoot as exc:
        raise WitnessFailure(str(exc)) from exc
    ratio = data.delta_prime and _nonsiegel_ratio(phi, data, precision_bits)
    if ratio is None or not (ratio.lo > 1 or ratio.hi < 1):
        raise WitnessFailure("no certified |alpha'/beta'| != 1 witness")

    cert = ExtensionCertificate(
        k=k, n=n, q=q, primality_witness=witness,
        degree_bound_before=seq.degree_bound,
        q_exceeds_bound=q > seq.degree_bound,
        deg_phi=phi.degree, deg_r=r.degree, cyclotomic_degree=cyc_deg,
        siegel_witness_theta=data.delta.theta,
        nonsiegel_witness_theta=data.delta_prime.theta,
        nonsiegel_ratio=ratio,
        integrality=data.certificate,
    )
    entries = seq.entries + (
        MAUEntry(value=data.alpha, argument_turns=data.alpha_arg_turns,
                 minimal_poly=phi, source_n=n, role="alpha"),
        MAUEntry(value=data.beta, argument_turns=data.beta_arg_turns,
                 minimal_poly=phi, source_n=n, role="beta"),
    )
    new_bound = seq.degree_bound * 2 * phi.degree
    audit = relation_search([e.argument_turns for e in entries],
                            relation_bound, precision_bits)
    if audit.outcome == "candidate":
        raise IndependenceFalsified(
            f"verified relation {audit.exponents} among certified-independent "
            f"arguments: implementation bug")
    return MAUSequence(entries=entries, degree_bound=new_bound,
                       certificates=seq.certificates + (cert,),
                       relation_audit=audit, precision_bits=precision_bits)


def _nonsiegel_ratio(phi: IntPoly, data, precision_bits: int) -> RealBall:
    from .mcmullen import eigenvalue_branches
    branches = eigenvalue_branches(phi, data.delta_prime, precision_bits)
    br = next(b for b in branches if b.branch_sign == data.branch_sign)
    return br.ratio_abs


def mau_build(length: int, precision_bits: int = 512,
              relation_bound: int = 32) -> MAUSequence:
    """Sequence of `length` certified entries (length even, >= 2)."""
    if length < 2 or length % 2 != 0:
        raise ValueError("length must be an even integer >= 2")
    seq = MAUSequence(precision_bits=precision_bits)
    for _ in range(length // 2):
        seq = mau_extend(seq, precision_bits, relation_bound)
    return seq


def mau_seed(ns: list[int], precision_bits: int = 512,
             relation_bound: int = 32) -> MAUSequence:
    """Sequence from explicitly chosen source indices n.

    Unlike mau_build, the q > degree_bound growth guarantee may fail and
    is recorded honestly; joint independence rests on the relation audit
    alone.  Useful for pairing small named sources with toric factors.
    """
    seq = MAUSequence(precision_bits=precision_bits)
    for n in ns:
        if (n - 19) % 360 != 0 and n % 6 != 1:
            raise ValueError(f"unsupported source index {n}")
        fact = salem_factor(en_from_formula(n), n)
        phi = fact.salem_candidate
        r = salem_trace(phi)
        q = r.degree
        prime, witness = is_prime(q)
        try:
            data = mcmullen_data(n, precision_bits=precision_bits)
        except NoSiegelRoot as exc:
            raise WitnessFailure(str(exc)) from exc
        ratio = _nonsiegel_ratio(phi, data, precision_bits)
        cert = ExtensionCertificate(
            k=(n - 19) // 360, n=n, q=q, primality_witness=witness,
            degree_bound_before=seq.degree_bound,
            q_exceeds_bound=prime and q > seq.degree_bound,
            deg_phi=phi.degree, deg_r=r.degree,
            cyclotomic_degree=sum(euler_phi(d) * m
                                  for d, m in fact.cyclotomic_part),
            siegel_witness_theta=data.delta.theta,
            nonsiegel_witness_theta=data.delta_prime.theta,
            nonsiegel_ratio=ratio,
            integrality=data.certificate,
            note="explicitly seeded source; growth guarantee not certified",
        )
        entries = seq.entries + (
            MAUEntry(value=data.alpha, argument_turns=data.alpha_arg_turns,
                     minimal_poly=phi, source_n=n, role="alpha"),
            MAUEntry(value=data.beta, argument_turns=data.beta_arg_turns,
                     minimal_poly=phi, source_n=n, role="beta"),
        )
        seq = MAUSequence(entries=entries,
                          degree_bound=seq.degree_bound * 2 * phi.degree,
                          certificates=seq.certificates + (cert,),
                          relation_audit=None,
                          precision_bits=precision_bits)
    audit = relation_search([e.argument_turns for e in seq.entries],
                            relation_bound, precision_bits)
    if audit.outcome == "candidate":
        raise IndependenceFalsified(
            f"verified relation {audit.exponents} in seeded sequence")
    return replace(seq, relation_audit=audit)

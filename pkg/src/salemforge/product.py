"""Fixed points of product automorphisms and their Siegel classification.

A product couples surface factors (each contributing the fixed points P
and Q of its birational model, with certified eigenvalue data at Q) with
at most one toric factor (one fixed point per maximal cone).  A fixed
point is an arithmetic Siegel candidate only at an all-Q address whose
concatenated eigenvalue arguments pass the joint relation audit; any P
in the address disqualifies it outright, since the eigenvalues there are
multiplicatively dependent.  Entropy adds over surface factors and is
zero on toric ones.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, replace
from typing import Optional, Union

import mpmath as mp

from .polyring import IntPoly
from .mau import (MAUSequence, RelationReport, relation_search,
                  PrecisionTooLow)
from .mcmullen import IntegralityCertificate, integrality_certificate
from .roots import GUARD_BITS, RealBall, log_ball, salem_eta
from .toric import (Fan, TorusElement, ToricFixedPoint, check_fan,
                    fixed_points as toric_fixed_points, load_fan)

SIEGEL = "SiegelArithmetic"
NONSIEGEL = "NonSiegel"
UNDETERMINED = "Undetermined"

_ANALYTIC_NOTE = ("arithmetic classification of the linearization data; "
                  "analytic linearizability at the Siegel points is an "
                  "inherited assumption, not recomputed")


class SpecError(ValueError):
    """Product description violates a structural invariant."""


@dataclass(frozen=True)
class McMullenFactor:
    """One surface factor: fixed points P and Q, eigenvalue data at Q."""

    n: int
    phi: IntPoly
    alpha_arg: RealBall          # turn fractions at Q
    beta_arg: RealBall
    integrality: IntegralityCertificate
    entry_indices: tuple[int, int]

    @property
    def fixed_point_labels(self) -> tuple[str, str]:
        return ("P", "Q")


@dataclass(frozen=True)
class ToricFactor:
    fan: Fan
    element: TorusElement
    entry_indices: tuple[int, ...]
    fixed: tuple[ToricFixedPoint, ...]


Factor = Union[McMullenFactor, ToricFactor]


@dataclass(frozen=True)
class ProductSpec:
    factors: tuple[Factor, ...]
    joint_mau: MAUSequence
    precision_bits: int

    def to_json(self) -> dict:
        out = []
        for f in self.factors:
            if isinstance(f, McMullenFactor):
                out.append({"type": "mcmullen", "n": f.n,
                            "entries": list(f.entry_indices)})
            else:
                out.append({"type": "toric", "fan": f.fan.to_json(),
                            "entries": list(f.entry_indices)})
        return {"factors": out, "precision_bits": self.precision_bits,
                "mau_length": len(self.joint_mau)}


def build_product_spec(descriptors: list, joint_mau: MAUSequence,
                       precision_bits: int | None = None) -> ProductSpec:
    """Assemble a spec, consuming the sequence entries in order.

    Each descriptor is ("mcmullen", n) or ("toric", fan-or-name); a
    surface factor consumes its (alpha, beta) pair, a toric factor of
    dimension d consumes d coordinate entries.  The entries must be used
    up exactly -- the construction requires one coherent sequence.
    """
    if precision_bits is None:
        precision_bits = joint_mau.precision_bits
    factors: list[Factor] = []
    cursor = 0
    toric_seen = 0
    for desc in descriptors:
        kind = desc[0]
        if kind == "mcmullen":
            n = int(desc[1])
            if cursor + 2 > len(joint_mau):
                raise SpecError("sequence exhausted before all factors filled")
            a, b = joint_mau.entries[cursor], joint_mau.entries[cursor + 1]
            if a.source_n != n or b.source_n != n or (a.role, b.role) != ("alpha", "beta"):
                raise SpecError(
                    f"entries {cursor},{cursor + 1} are not the (alpha, beta) "
                    f"pair of source {n}")
            factors.append(McMullenFactor(
                n=n, phi=a.minimal_poly, alpha_arg=a.argument_turns,
                beta_arg=b.argument_turns,
                integrality=integrality_certificate(n),
                entry_indices=(cursor, cursor + 1)))
            cursor += 2
        elif kind == "toric":
            toric_seen += 1
            if toric_seen > 1:
                raise SpecError("at most one toric factor is allowed")
            fan = desc[1] if isinstance(desc[1], Fan) else load_fan(desc[1])
            cert = check_fan(fan)
            if not cert.passed:
                raise SpecError("toric factor rejected: " + cert.failures[0])
            d = fan.dim
            if cursor + d > len(joint_mau):
                raise SpecError("sequence exhausted before all factors filled")
            idx = tuple(range(cursor, cursor + d))
            element = TorusElement.from_mau(joint_mau, list(idx))
            fixed = tuple(toric_fixed_points(
                fan, element, joint_mau.relation_audit, precision_bits))
            factors.append(ToricFactor(fan=fan, element=element,
                                       entry_indices=idx, fixed=fixed))
            cursor += d
        else:
            raise SpecError(f"unknown factor type {kind!r}")
    if cursor != len(joint_mau):
        raise SpecError(
            f"sequence has {len(joint_mau)} entries but factors consume "
            f"{cursor}; the coupling must be exact")
    return ProductSpec(factors=tuple(factors), joint_mau=joint_mau,
                       precision_bits=precision_bits)


@dataclass(frozen=True)
class FixedPoint:
    """One fixed point of the product with its classification record."""

    address: tuple            # "P"/"Q" per surface factor, cone index per toric
    eigenvalue_arguments: tuple[RealBall, ...]   # empty when any P is present
    contains_p: bool
    classification: str = UNDETERMINED
    evidence: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "address": list(self.address),
            "eigenvalue_arguments": [a.to_json()
                                     for a in self.eigenvalue_arguments],
            "contains_p": self.contains_p,
            "classification": self.classification,
            "evidence": self.evidence,
        }


def enumerate_fixed_points(spec: ProductSpec) -> list[FixedPoint]:
    """Cartesian product of the per-factor fixed-point sets, in address order."""
    choices = []
    for f in spec.factors:
        if isinstance(f, McMullenFactor):
            choices.append(["P", "Q"])
        else:
            choices.append(list(range(f.fan.n_cones)))
    out = []
    for address in itertools.product(*choices):
        args: list[RealBall] = []
        contains_p = False
        for f, comp in zip(spec.factors, address):
            if isinstance(f, McMullenFactor):
                if comp == "P":
                    contains_p = True
                else:
                    args.extend([f.alpha_arg, f.beta_arg])
            else:
                args.extend(f.fixed[comp].eigenvalue_arguments)
        if contains_p:
            args = []   # eigenvalue data at P is not modeled
        out.append(FixedPoint(address=tuple(address),
                              eigenvalue_arguments=tuple(args),
                              contains_p=contains_p))
    return out


def classify(fp: FixedPoint, bound: int = 32,
             precision_bits: int = 512) -> FixedPoint:
    """Attach a classification; Undetermined is the honest fallback.

    Any P component is immediately non-Siegel (dependent eigenvalues at
    P).  An all-Q address passes only if the joint relation audit over
    the concatenated eigenvalue arguments finds no relation; a verified
    relation is itself a dependence witness, hence non-Siegel.
    """
    if fp.contains_p:
        return replace(fp, classification=NONSIEGEL,
                       evidence={"reason": "address contains a P component",
                                 "note": _ANALYTIC_NOTE})
    if not fp.eigenvalue_arguments:
        return replace(fp, classification=SIEGEL,
                       evidence={"reason": "empty product, vacuous pass",
                                 "note": _ANALYTIC_NOTE})
    try:
        report = relation_search(list(fp.eigenvalue_arguments),
                                 bound, precision_bits)
    except PrecisionTooLow as exc:
        return replace(fp, classification=UNDETERMINED,
                       evidence={"reason": str(exc),
                                 "remediation": {
                                     "raise_precision_to": exc.required_bits},
                                 "note": _ANALYTIC_NOTE})
    if report.outcome == "no_relation":
        return replace(fp, classification=SIEGEL,
                       evidence={"relation_audit": report.to_json(),
                                 "on_circle": "by argument representation",
                                 "algebraic_integers": "certified per source",
                                 "note": _ANALYTIC_NOTE})
    return replace(fp, classification=NONSIEGEL,
                   evidence={"reason": "verified multiplicative relation",
                             "relation_audit": report.to_json(),
                             "note": _ANALYTIC_NOTE})


def siegel_count(spec: ProductSpec, bound: int = 32,
                 precision_bits: int | None = None) -> tuple[int, list[FixedPoint]]:
    """(number of arithmetic Siegel points, full classified report).

    Undetermined points appear in the report but are never counted.
    """
    if precision_bits is None:
        precision_bits = spec.precision_bits
    report = [classify(fp, bound, precision_bits)
              for fp in enumerate_fixed_points(spec)]
    count = sum(1 for fp in report if fp.classification == SIEGEL)
    return count, report


def product_entropy(spec: ProductSpec,
                    precision_bits: int | None = None) -> RealBall:
    """Sum of log(eta) over surface factors; toric factors contribute 0."""
    if precision_bits is None:
        precision_bits = spec.precision_bits
    mcm = [f for f in spec.factors if isinstance(f, McMullenFactor)]
    if not mcm:
        warnings.warn("no surface factor: entropy is exactly 0 and the "
                      "positivity claims do not apply")
        return RealBall(mp.mpf(0), mp.mpf(0))
    total = RealBall(mp.mpf(0), mp.mpf(0))
    for f in mcm:
        eta = salem_eta(f.phi, precision_bits)
        total = total + log_ball(eta, precision_bits)
    return total

"""The composite equivalences between totally acyclic complexes of
projectives and of injectives, with machine-checked round trips.

f_prime sends a complex of projectives to the complete injective
resolution of the Gorenstein-injective preenvelope of its degree-zero
syzygy; g_prime is the inverse composite.  Round trips are certified by
lifting the canonical stable identification of syzygies to a chain map
and producing an explicit homotopy inverse for it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import approx, functors, homotopy, linalg, modelcat, modules, solver
from .complexes import ChainMap, Complex, chain_map, compose
from .config import Options
from .errors import LiftError, ValidationError
from .homotopy import UNKNOWN, YES, Certificate
from .modelcat import GeneratorFamily
from .modules import ModuleMap


@dataclass(eq=False)
class PipelineResult:
    input: Complex
    stalk: Complex  # F(P) resp. G(I)
    replacement: approx.StalkReplacement
    object: Complex  # the replacement complex


def f_prime(P: Complex, fam: GeneratorFamily | None = None,
            options: Options = Options()) -> PipelineResult:
    """Complex of injectives: fibrant replacement of the syzygy stalk F(P)."""
    if not homotopy.is_exP(P, options):
        raise ValidationError("f_prime input must be an exact complex of projectives")
    FP = functors.apply_F(P)
    rep = approx.stalk_replacement(FP, "fibrant_co", fam, options)
    return PipelineResult(P, FP, rep, rep.object)


def g_prime(I: Complex, fam: GeneratorFamily | None = None,
            options: Options = Options()) -> PipelineResult:
    """Complex of projectives: cofibrant replacement of the cycle stalk G(I)."""
    if not homotopy.is_exI(I, options):
        raise ValidationError("g_prime input must be an exact complex of injectives")
    GI = functors.apply_G(I)
    rep = approx.stalk_replacement(GI, "cofibrant_ctr", fam, options)
    return PipelineResult(I, GI, rep, rep.object)


def _module_solve(rhs: np.ndarray, terms: list, source, target, p: int):
    """One-unknown intertwiner system: sum M @ u @ N == rhs, or None."""
    sys = solver.FoldedSystem(p, {0: (target.dim, source.dim)}, 0, 0)
    sys.require_module_map(0, source, target)
    sys.add_equation(rhs, [(M, 0, N) for M, N in terms])
    sol = sys.solve()
    return None if sol is None else sol[0]


def lift_stable_map(phi: ModuleMap, X: Complex, Y: Complex,
                    side: str = "omega",
                    options: Options = Options()) -> ChainMap:
    """Chain map f: X -> Y realizing phi up to the stable relation.

    side "omega": phi: omega(X) -> omega(Y); omega(f) - phi factors
    through a projective.  side "theta": phi: theta(X) -> theta(Y);
    theta(f) - phi factors through an injective.  The lift is searched
    with growing tail periods; LiftError on exhaustion.
    """
    p = X.algebra.p
    if side == "omega":
        SX, sx_map = functors.omega_data(X)  # projection X_0 ->> omega(X)
        SY, sy_map = functors.omega_data(Y)
        Pcov, cov = modules.projective_cover(SY)
        extra_shape = (Pcov.dim, SX.dim)
    elif side == "theta":
        SX, sx_map = functors.theta_data(X)  # inclusion theta(X) -> X_0
        SY, sy_map = functors.theta_data(Y)
        Env, env = modules.injective_envelope(SX)
        extra_shape = (SY.dim, Env.dim)
    else:
        raise ValueError(f"unknown stable side {side!r}")

    L = solver._common_period(X, Y)
    for m in range(1, options.homotopy_period_bound + 1):
        if X.bounded() or Y.bounded():
            B = X if X.bounded() else Y
            lo, hi, fold = min(B.lo - 1, 0), max(B.hi + 1, 0), 0
        else:
            P = m * L
            lo = min(X.lo, Y.lo, 0) - P
            hi = max(X.hi, Y.hi, 0) + P
            fold = P
        sys = solver.chain_map_system(X, Y, lo, hi, fold, {"aux": extra_shape})
        if side == "omega":
            sys.require_module_map("aux", SX, Pcov)
            sys.add_equation((phi.matrix @ sx_map.matrix) % p, [
                (sy_map.matrix, 0, linalg.eye(X.term(0).dim)),
                ((-cov.matrix) % p, "aux", sx_map.matrix),
            ])
        else:
            sys.require_module_map("aux", Env, SY)
            sys.add_equation((sy_map.matrix @ phi.matrix) % p, [
                (linalg.eye(Y.term(0).dim), 0, sx_map.matrix),
                ((-sy_map.matrix) % p, "aux", env.matrix),
            ])
        comps = sys.solve()
        if comps is None:
            if fold == 0:
                break
            continue
        neg, pos = sys.fold_blocks(comps)
        comps = {n: mat for n, mat in comps.items() if mat.size}
        f = chain_map(X, Y, comps, lo, hi, neg, pos)
        if side == "omega":
            diff = (functors.omega_map(f).matrix - phi.matrix) % p
            ok = homotopy.factors_through_projective(ModuleMap(SX, SY, diff))
        else:
            diff = (functors.theta_map(f).matrix - phi.matrix) % p
            ok = homotopy.factors_through_injective(ModuleMap(SX, SY, diff))
        if ok:
            return f
        if fold == 0:
            break
    raise LiftError("PERIODIC-CLOSURE-FAILED")


@dataclass(eq=False)
class RoundTripReport:
    input: Complex
    first: PipelineResult  # F' of the input (resp. G')
    second: PipelineResult  # G' of the first output (resp. F')
    comparison: ChainMap | None
    certificate: Certificate | None
    verdict: str
    composite_check: str  # is_weak_equivalence of counit . F(q), co-structure


def verify_round_trip(X: Complex, side: str = "P",
                      fam: GeneratorFamily | None = None,
                      options: Options = Options()) -> RoundTripReport:
    """Certify G'(F'(P)) ~ P (side "P") or F'(G'(I)) ~ I (side "I")."""
    p = X.algebra.p
    if side == "P":
        first = f_prime(X, fam, options)
        second = g_prime(first.object, fam, options)
        # canonical stable map: factor the preenvelope mono of omega(X)
        # through the precover epi of theta(I), then read it off on syzygies
        N = first.stalk.term(0)  # omega(X)
        iso1 = _cycles_identification(first)  # triple.mid -> theta(I)
        u = (iso1 @ first.replacement.triple.mono.matrix) % p  # N -> theta(I)
        tg = second.replacement.triple
        alpha = _module_solve(u, [(tg.epi.matrix, linalg.eye(N.dim))],
                              N, tg.mid, p)
        if alpha is None:
            return RoundTripReport(X, first, second, None, None, UNKNOWN, UNKNOWN)
        iso2 = second.replacement.witness  # omega(P2) -> M2
        phi_mat = (linalg.invert(iso2.matrix, p) @ alpha) % p
        phi = ModuleMap(N, functors.omega(second.object), phi_mat)
        lift_side = "omega"
    elif side == "I":
        first = g_prime(X, fam, options)
        second = f_prime(first.object, fam, options)
        # canonical stable map theta(X) -> theta(I2): extend the composite
        # M2 ~ omega(P2) -> Y' along the precover epi M2 ->> theta(X),
        # up to a correction through a projective
        Z = first.stalk.term(0)  # theta(X)
        tg = first.replacement.triple  # 0 -> W -> M2 -> Z -> 0
        iso2 = first.replacement.witness  # omega(P2) -> M2
        u2 = second.replacement.triple.mono.matrix  # omega(P2) -> Y'
        iso1 = _cycles_identification(second)  # Y' -> theta(I2)
        THY2 = functors.theta(second.object)
        target_mat = (iso1 @ u2 @ linalg.invert(iso2.matrix, p)) % p  # M2 -> theta(I2)
        Pcov, cov = modules.projective_cover(THY2)
        cbar = _solve_stable_extension(target_mat, tg.epi.matrix, cov.matrix,
                                       Z, tg.mid, THY2, Pcov, p)
        if cbar is None:
            return RoundTripReport(X, first, second, None, None, UNKNOWN, UNKNOWN)
        phi = ModuleMap(Z, THY2, cbar)
        lift_side = "theta"
    else:
        raise ValueError(f"unknown round-trip side {side!r}")

    try:
        comparison = lift_stable_map(phi, X, second.object, lift_side, options)
    except LiftError:
        return RoundTripReport(X, first, second, None, None, UNKNOWN, UNKNOWN)
    res = homotopy.homotopy_equivalence_certificate(comparison, options)

    composite_check = _composite_weak_equivalence(first, second, side, fam, options)
    return RoundTripReport(X, first, second, comparison, res.certificate,
                           res.verdict, composite_check)


def _cycles_identification(pipe: PipelineResult) -> np.ndarray:
    """Matrix of the iso triple.mid -> theta(object) for a fibrant pipeline."""
    p = pipe.input.algebra.p
    _, incl = functors.theta_data(pipe.object)
    iso = linalg.solve_matrix(incl.matrix, pipe.replacement.witness.matrix, p)
    if iso is None:
        raise ValidationError("preenvelope does not land in the degree-0 cycles")
    return iso


def _solve_stable_extension(target_mat, epi_mat, cov_mat, src, mid, tgt, Pcov, p):
    """c: src -> tgt with c . epi == target + cov . h for some h: mid -> Pcov."""
    sys = solver.FoldedSystem(p, {0: (tgt.dim, src.dim)}, 0, 0,
                              {"h": (Pcov.dim, mid.dim)})
    sys.require_module_map(0, src, tgt)
    sys.require_module_map("h", mid, Pcov)
    sys.add_equation(target_mat, [
        (linalg.eye(tgt.dim), 0, epi_mat),
        ((-cov_mat) % p, "h", linalg.eye(mid.dim)),
    ])
    sol = sys.solve()
    return None if sol is None else sol[0]


def _composite_weak_equivalence(first: PipelineResult, second: PipelineResult,
                                side: str, fam, options: Options) -> str:
    """Check the composite counit . F(q) as a co-structure weak equivalence."""
    if side == "P":
        I, gpipe = first.object, second
    else:
        I, gpipe = first.input, first
    q = gpipe.replacement.map  # cofibrant replacement of G(I)
    composite = compose(functors.counit(I), functors.apply_F(q))
    return modelcat.is_weak_equivalence(composite, "co", fam, options).verdict

"""Desk-scale run of every invariant, with optional deliberate mutations.

``run_selfcheck()`` returns a list of ``(name, passed, detail)`` rows.  The
two mutations exist to show that the suite notices real damage: one flips
the sign of the join product, the other uses the convention B_1 = +1/2.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from fractions import Fraction
from math import comb

from . import cinfty, cochains as co, cubical, einfty, identities, simplicial
from .cubical import CUBE_MODEL
from .io import load_sample, complex_from_document
from .scalars import F2, ZZ, bernoulli, prime_field
from .simplicial import SIMPLEX_MODEL

MUTATIONS = ("join-sign", "bernoulli-b1")


def bernoulli_recurrence(n: int) -> Fraction:
    """Independent oracle: ``sum_{k<=m} C(m+1, k) B_k = 0`` for m >= 1."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return b[n]


def _b1_plus(n: int) -> Fraction:
    return Fraction(1, 2) if n == 1 else bernoulli(n)


@contextmanager
def _flipped_join():
    originals = (simplicial.join_raw, cubical.cube_join_raw)

    def neg(f):
        return lambda a, b: {k: -v for k, v in f(a, b).items()}
    simplicial.join_raw = neg(originals[0])
    cubical.cube_join_raw = neg(originals[1])
    einfty.clear_caches()
    try:
        yield
    finally:
        simplicial.join_raw, cubical.cube_join_raw = originals
        einfty.clear_caches()


def _report_row(rep):
    detail = "" if rep.holds else f"{len(rep.failures)} failing case(s), first {rep.failures[0]}"
    return rep.name, rep.holds, detail


def _checks(bern, seed: int):
    """Yield ``(name, thunk)``; thunks return a Report or ``(bool, detail)``."""
    S, C = SIMPLEX_MODEL, CUBE_MODEL
    for f in (identities.coassociativity, identities.counit, identities.coproduct_chain_map):
        yield f.__name__ + "(simplex)", lambda f=f: f(S, 5)
        yield f.__name__ + "(cube)", lambda f=f: f(C, 3)
    for f in (identities.join_homotopy, identities.join_counit):
        yield f.__name__ + "(simplex)", lambda f=f: f(S, 4)
        yield f.__name__ + "(cube)", lambda f=f: f(C, 2)
    for r in (2, 3):
        yield f"psi_boundary(simplex, r={r})", lambda r=r: identities.psi_boundary_identities(S, r, 3, 3)
        yield f"psi_boundary(cube, r={r})", lambda r=r: identities.psi_boundary_identities(C, r, 3, 2)
        yield f"psi_base(simplex, r={r})", lambda r=r: identities.psi_base_case(S, r, 3)
    yield "psi2_vs_recursion(simplex)", lambda: identities.psi2_matches_recursion(S, 3, 4)

    def bern_table():
        bad = [n for n in range(13) if bernoulli(n) != bernoulli_recurrence(n)]
        return not bad, f"mismatch at n = {bad}" if bad else ""
    yield "bernoulli_through_B12", bern_table

    def rp2_dims():
        dims = co.cohomology(load_sample("rp2"), F2).dims
        return dims == [1, 1, 1], f"dims {dims}"
    yield "cohomology(rp2, f2)", rp2_dims

    def sq_checks():
        for name in ("circle", "sphere2", "rp2", "torus7"):
            H = co.cohomology(load_sample(name), F2)
            for d in range(H.complex.dimension + 1):
                for a in H.representatives(d):
                    if co.sq(H, 0, a) != H.coordinates(a):
                        return False, f"Sq^0 != id on {name} H^{d}"
                    if d <= H.complex.dimension // 2 and \
                            co.sq(H, d, a) != co._coords(H, co.cup_product(a, a)):
                        return False, f"Sq^{d} != cup square on {name}"
                    if not co.steenrod_square(d + 1, a).is_zero():
                        return False, f"Sq^{d + 1} nonzero on {name}"
        return True, ""
    yield "steenrod_squares(sample suite)", sq_checks

    def bockstein():
        for name in ("rp2", "torus7", "moore3"):
            cx = load_sample(name)
            HZ, H2 = co.cohomology(cx, ZZ), co.cohomology(cx, F2)
            for d in range(cx.dimension):
                got = co.rank_of(co.sq_matrix(H2, 1, d), 2)
                want = co.integral_bockstein_rank(HZ, d, 2)
                if got != want:
                    return False, f"{name} H^{d}: Sq^1 rank {got}, integral {want}"
        return True, ""
    yield "sq1_equals_integral_bockstein", bockstein

    def cartan_adem():
        for name in ("rp2", "torus7"):
            H = co.cohomology(load_sample(name), F2)
            for rep in (co.cartan_report(H), co.adem_report(H)):
                if not rep.holds:
                    return False, f"{rep.name} on {name}: {rep.failures[0]}"
        H3 = co.cohomology(load_sample("moore3"), prime_field(3))
        for rep in (co.cartan_report(H3), co.adem_report(H3)):
            if not rep.holds:
                return False, f"{rep.name} on moore3"
        return True, ""
    yield "cartan_and_adem", cartan_adem

    def odd_prime():
        F3 = prime_field(3)
        H = co.cohomology(load_sample("moore3"), F3)
        rng = random.Random(seed)
        for d in range(H.complex.dimension + 1):
            for a in H.representatives(d):
                if any(co.p_operation(H, 3, -1, 0, a)):
                    return False, "P^-1 nonzero"
                if co.p_operation(H, 3, 0, 0, a) != H.coordinates(a):
                    return False, f"P^0 != id in degree {d}"
                base = co.p_operation(H, 3, 0, 1, a)
                for _ in range(3):
                    b = a + co.random_coboundary(H.complex, d, F3, rng)
                    if co.p_operation(H, 3, 0, 1, b) != base:
                        return False, "beta P^0 depends on the representative"
        return True, ""
    yield "odd_prime_operations(moore3, p=3)", odd_prime

    def torus_agreement():
        simp = co.cohomology(load_sample("torus7"), F2).dims
        cube = co.cohomology(complex_from_document(cubical.periodic_grid([2, 2])), F2).dims
        return simp == cube, f"simplicial {simp}, cubical {cube}"
    yield "torus_simplicial_vs_cubical", torus_agreement

    def ls():
        N = 6
        d = cinfty.ls_interval(N, bernoulli_fn=bern)
        sp = d.space
        a, b, e = (cinfty.TensorSeries.generator(sp, g, N) for g in ("a", "b", "e"))
        sq0 = cinfty.check_square_zero(d)
        if not sq0["holds"]:
            return False, f"d^2 != 0 at weight {sq0['first_failing_weight']} on {sq0['generator']}"
        if not (cinfty.is_flat(a, d)["holds"] and cinfty.is_flat(b, d)["holds"]):
            return False, "a or b not flat"
        if cinfty.flow(e, a, 1, d) != b:
            return False, "flow of e does not reach b"
        return True, ""
    yield "lawrence_sullivan(N=6)", ls

    def cinf():
        A = cinfty.ls_cinfty_data(6, bernoulli_fn=bern)
        for i in range(1, 7):
            if not cinfty.ainf_relation_check(A, i).holds:
                return False, f"A-infinity relation fails at i = {i}"
            if not cinfty.cinf_shuffle_check(A, i).holds:
                return False, f"shuffle condition fails at k = {i}"
        back = cinfty.ainf_codiff_correspondence(cinfty.ainf_codiff_correspondence(A), "to_coproducts")
        return back == A, "" if back == A else "round trip is not the identity"
    yield "interval_cinfty_data", cinf

    def quillen():
        for name, C in quillen_samples().items():
            res = cinfty.check_square_zero(cinfty.quillen_construction(C, 6))
            if not res["holds"]:
                return False, f"{name}: d^2 != 0 at weight {res['first_failing_weight']}"
        return True, ""
    yield "quillen_samples", quillen


def quillen_samples() -> dict:
    Coalgebra = cinfty.Coalgebra
    return {
        "point": Coalgebra([("w", 0)], {}, {"w": {("w", "w"): 1}}),
        "sphere": Coalgebra([("w", 0), ("s", 2)], {},
                            {"w": {("w", "w"): 1}, "s": {("w", "s"): 1, ("s", "w"): 1}}),
        "circle": Coalgebra([("w", 0), ("x", 1)], {},
                            {"w": {("w", "w"): 1}, "x": {("w", "x"): 1, ("x", "w"): 1}}).symmetrized(),
    }


def run_selfcheck(mutation: str | None = None, seed: int = 7) -> list[tuple[str, bool, str]]:
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    bern = _b1_plus if mutation == "bernoulli-b1" else bernoulli
    rows = []

    def run():
        for name, thunk in _checks(bern, seed):
            out = thunk()
            if isinstance(out, co.Report):
                _, ok, detail = _report_row(out)
            else:
                ok, detail = out
            rows.append((name, bool(ok), "" if ok else detail))
    if mutation == "join-sign":
        with _flipped_join():
            run()
    else:
        run()
    return rows


def format_table(rows) -> str:
    width = max(len(r[0]) for r in rows)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name.ljust(width)}  {detail}".rstrip()
             for name, ok, detail in rows]
    return "\n".join(lines) + "\n"

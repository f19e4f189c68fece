"""Verification suites: every law of the machinery, checked on seeded probes.

Each suite walks a workspace (atlases, systems, transformations, cochains)
and emits one check record per law instance, with stable names so that two
runs over the same input and seed produce identical reports.  Suites never
raise on a failed identity; failures are recorded with a counterexample
pointer and surface through the report summary.
"""

from __future__ import annotations

import random

from .cochain import (Cochain, cech_delta, cup, exterior_d, extract_int,
                      inject_int, int_cech_delta, int_cup, is_global, total_D)
from .functorial import (choice_map, homotopy_alpha, homotopy_gamma,
                         homotopy_xi, order_compatible_choice,
                         order_compatible_system, phi_extend, pullback_system,
                         pullback_system_int, restrict_to_small, small_strings,
                         xi_composites)
from .homology import (compare_global_forms, compare_integer_cohomology,
                       integer_cohomology)
from .indexcomb import union_of
from .morphisms import (compose_systems, horizontal_compose, identity_system,
                        vertical_compose)
from .probes import (random_cochain, random_global_form, random_int_cochain,
                     random_invariant_form, random_spark)
from .report import FAIL, PASS, UNKNOWN, CheckRecord
from .spark import (character_product, character_pullback_witness,
                    compose_homotopies_horizontal, compose_homotopies_vertical,
                    homotopy_alpha_int, spark_decompose, spark_equivalent,
                    total_degree)

SUITES = ("complex", "cup", "functor", "homotopy", "spark", "appendix")


def _rec(name, law, ok, detail=""):
    return CheckRecord(name, law, PASS if ok else FAIL, detail)


def _rng(seed, *tags):
    return random.Random(":".join([str(seed)] + [str(t) for t in tags]))


# ------------------------------------------------------------ complex


def suite_complex(ws, seed="0", probes=25, max_deg=2, **_):
    out = []
    for aname, atlas in ws.atlases.items():
        rng = _rng(seed, "complex", aname)
        lengths = [1, 2, 3]
        bad = {"dd": None, "ee": None, "de": None, "DD": None, "ii": None}
        for _n in range(probes):
            p = rng.choice([0, 1, 2])
            q = rng.choice(list(range(atlas.dim + 1)))
            c = random_cochain(rng, atlas, p, max_deg, q)
            if bad["dd"] is None and not cech_delta(cech_delta(c)).is_zero():
                bad["dd"] = (p, q)
            if bad["ee"] is None and not exterior_d(exterior_d(c)).is_zero():
                bad["ee"] = (p, q)
            if bad["de"] is None and cech_delta(exterior_d(c)) != exterior_d(cech_delta(c)):
                bad["de"] = (p, q)
            if bad["DD"] is None and not total_D(total_D(c)).is_zero():
                bad["DD"] = (p, q)
            ic = random_int_cochain(rng, atlas, p)
            if bad["ii"] is None and not int_cech_delta(int_cech_delta(ic)).is_zero():
                bad["ii"] = (p, 0)
        n = f"{probes} probes"
        out.append(_rec(f"complex.delta-squared[{aname}]",
                        "the string differential squares to zero",
                        bad["dd"] is None, n if bad["dd"] is None else f"failed at bidegree {bad['dd']}"))
        out.append(_rec(f"complex.d-squared[{aname}]",
                        "the exterior derivative squares to zero",
                        bad["ee"] is None, n if bad["ee"] is None else f"failed at bidegree {bad['ee']}"))
        out.append(_rec(f"complex.delta-d-commute[{aname}]",
                        "string differential and exterior derivative commute",
                        bad["de"] is None, n if bad["de"] is None else f"failed at bidegree {bad['de']}"))
        out.append(_rec(f"complex.total-squared[{aname}]",
                        "the total differential squares to zero",
                        bad["DD"] is None, n if bad["DD"] is None else f"failed at bidegree {bad['DD']}"))
        out.append(_rec(f"complex.delta-squared-int[{aname}]",
                        "the integer string differential squares to zero",
                        bad["ii"] is None, n if bad["ii"] is None else "failed"))
    return out


# ---------------------------------------------------------------- cup


def suite_cup(ws, seed="0", probes=12, max_deg=1, **_):
    out = []
    for aname, atlas in ws.atlases.items():
        rng = _rng(seed, "cup", aname)
        leib = assoc = None
        for _n in range(probes):
            m = rng.choice([0, 1])
            j = rng.choice(list(range(atlas.dim + 1)))
            n_ = rng.choice([0, 1])
            k = rng.choice(list(range(atlas.dim + 1)))
            a = random_cochain(rng, atlas, m, max_deg, j)
            b = random_cochain(rng, atlas, n_, max_deg, k)
            lhs = total_D(cup(a, b))
            rhs = cup(total_D(a), b) + cup(a, total_D(b)).scale((-1) ** (j + m))
            if leib is None and lhs != rhs:
                leib = (m, j, n_, k)
            c = random_cochain(rng, atlas, rng.choice([0, 1]), max_deg,
                               rng.choice([0, 1]))
            if assoc is None and cup(cup(a, b), c) != cup(a, cup(b, c)):
                assoc = (m, j, n_, k)
        out.append(_rec(f"cup.leibniz[{aname}]",
                        "total differential is a derivation for the cup product",
                        leib is None,
                        f"{probes} probes" if leib is None else f"failed at {leib}"))
        out.append(_rec(f"cup.associative[{aname}]",
                        "cup product is associative",
                        assoc is None,
                        f"{probes} probes" if assoc is None else f"failed at {assoc}"))

        wedge_ok = True
        for _n in range(max(3, probes // 4)):
            q1 = rng.choice(list(range(atlas.dim + 1)))
            q2 = rng.choice(list(range(atlas.dim + 1)))
            g1 = random_global_form(rng, atlas, max_deg, q1)
            g2 = random_global_form(rng, atlas, max_deg, q2)
            prod = cup(g1, g2)
            expect = Cochain(atlas, {
                s: w for s, w in (((I,), g1.value((I,)).wedge(g2.value((I,))))
                                  for I in atlas.nonempty_subsets())
                if not w.is_zero()})
            if prod != expect:
                wedge_ok = False
                break
        out.append(_rec(f"cup.wedge-on-globals[{aname}]",
                        "on global families the cup product is the wedge",
                        wedge_ok))

        ints_ok = True
        for _n in range(max(3, probes // 4)):
            x = random_int_cochain(rng, atlas, rng.choice([0, 1]))
            y = random_int_cochain(rng, atlas, rng.choice([0, 1]))
            if cup(inject_int(x), inject_int(y)) != inject_int(int_cup(x, y)):
                ints_ok = False
                break
        out.append(_rec(f"cup.integers-multiply[{aname}]",
                        "on integer families the cup product multiplies values",
                        ints_ok))
    return out


# ------------------------------------------------------------- functor


def suite_functor(ws, seed="0", probes=12, max_deg=2, **_):
    out = []
    for sname, sys in ws.systems.items():
        rng = _rng(seed, "functor", sname)
        ordered = order_compatible_system(sys)
        cm_ok = cup_ok = int_ok = True
        for _n in range(probes):
            p = rng.choice([0, 1])
            q = rng.choice(list(range(sys.target.dim + 1)))
            c = random_cochain(rng, sys.target, p, max_deg, q)
            if cm_ok and pullback_system(sys, total_D(c)) != total_D(pullback_system(sys, c)):
                cm_ok = False
            if ordered:
                b = random_cochain(rng, sys.target, rng.choice([0, 1]), max_deg,
                                   rng.choice([0, 1]))
                if cup_ok and pullback_system(sys, cup(c, b)) != cup(
                        pullback_system(sys, c), pullback_system(sys, b)):
                    cup_ok = False
            ic = random_int_cochain(rng, sys.target, p)
            pulled = pullback_system(sys, inject_int(ic))
            if int_ok and extract_int(pulled) != pullback_system_int(sys, ic):
                int_ok = False
        out.append(_rec(f"functor.cochain-map[{sname}]",
                        "system pullback commutes with the total differential",
                        cm_ok, f"{probes} probes"))
        if ordered:
            out.append(_rec(f"functor.cup-preserved[{sname}]",
                            "order-compatible system pullback preserves the cup product",
                            cup_ok, f"{probes} probes"))
        out.append(_rec(f"functor.integers-preserved[{sname}]",
                        "system pullback keeps integer families integral",
                        int_ok))

    for aname, atlas in ws.atlases.items():
        rng = _rng(seed, "functor-id", aname)
        ident = identity_system(atlas)
        ok = True
        for _n in range(max(3, probes // 3)):
            c = random_cochain(rng, atlas, rng.choice([0, 1]), max_deg,
                               rng.choice([0, 1]))
            if pullback_system(ident, c) != c:
                ok = False
                break
        out.append(_rec(f"functor.identity[{aname}]",
                        "pullback along the identity system is the identity", ok))

    pairs = [(gn, fn) for gn, g in ws.systems.items()
             for fn, f in ws.systems.items() if g.source is f.target]
    for gn, fn in pairs:
        g, f = ws.systems[gn], ws.systems[fn]
        rng = _rng(seed, "functor-comp", gn, fn)
        gf = compose_systems(g, f)
        ok = True
        for _n in range(max(3, probes // 3)):
            c = random_cochain(rng, g.target, rng.choice([0, 1]), max_deg,
                               rng.choice([0, 1]))
            if pullback_system(gf, c) != pullback_system(f, pullback_system(g, c)):
                ok = False
                break
        out.append(_rec(f"functor.compose[{gn}*{fn}]",
                        "pullback of a composite is the composite of pullbacks in reverse order",
                        ok))

    for aname, atlas in ws.atlases.items():
        for how in ("min", "max"):
            rng = _rng(seed, "functor-phi", aname, how)
            phi = choice_map(atlas, how)
            ordered = order_compatible_choice(atlas, phi)
            cm_ok = cup_ok = sec_ok = True
            for _n in range(max(4, probes // 2)):
                c = _random_small_cochain(rng, atlas, max_deg)
                if c.is_zero():
                    continue
                ds = restrict_to_small(total_D(c))
                if cm_ok and total_D(phi_extend(atlas, phi, c)) != phi_extend(atlas, phi, ds):
                    cm_ok = False
                if sec_ok and restrict_to_small(phi_extend(atlas, phi, c)) != c:
                    sec_ok = False
                if ordered:
                    b = _random_small_cochain(rng, atlas, max_deg)
                    prod = restrict_to_small(cup(c, b))
                    if cup_ok and phi_extend(atlas, phi, prod) != cup(
                            phi_extend(atlas, phi, c), phi_extend(atlas, phi, b)):
                        cup_ok = False
            out.append(_rec(f"functor.choice-cochain-map[{aname},{how}]",
                            "choice-map extension intertwines the differentials",
                            cm_ok))
            if ordered:
                out.append(_rec(f"functor.choice-cup[{aname},{how}]",
                                "order-compatible choice extension preserves the cup product",
                                cup_ok))
            out.append(_rec(f"functor.choice-section[{aname},{how}]",
                            "restricting the extension to vertex strings gives back the input",
                            sec_ok))
    return out


def _random_small_cochain(rng, atlas, max_deg):
    p = rng.choice([0, 1])
    q = rng.choice(list(range(atlas.dim + 1)))
    data = {}
    for s in small_strings(atlas, p + 1):
        if rng.random() > 0.7:
            continue
        f = random_invariant_form(rng, atlas.chart(union_of(s)), max_deg, q)
        if not f.is_zero():
            data[s] = f
    return Cochain(atlas, data)


# ------------------------------------------------------------ homotopy


def suite_homotopy(ws, seed="0", probes=6, max_deg=2, **_):
    out = []
    for tname, nt in ws.transformations.items():
        rng = _rng(seed, "homotopy", tname)
        src = nt.sys1.target
        ok = True
        for _n in range(probes):
            p = rng.choice([0, 1, 2])
            q = rng.choice(list(range(src.dim + 1)))
            c = random_cochain(rng, src, p, max_deg, q)
            lhs = total_D(homotopy_alpha(nt, c)) + homotopy_alpha(nt, total_D(c))
            rhs = pullback_system(nt.sys2, c) - pullback_system(nt.sys1, c)
            if lhs != rhs:
                ok = False
                break
        out.append(_rec(f"homotopy.step-identity[{tname}]",
                        "boundary of the step homotopy is the difference of the two pullbacks",
                        ok, f"{probes} probes"))

        glob_ok = True
        int_ok = True
        for _n in range(max(3, probes // 2)):
            g = random_global_form(rng, src, max_deg)
            if not homotopy_alpha(nt, g).is_zero():
                glob_ok = False
            ic = random_int_cochain(rng, src, rng.choice([1, 2]))
            try:
                homotopy_alpha_int(nt, ic)
            except Exception:
                int_ok = False
        out.append(_rec(f"homotopy.kills-globals[{tname}]",
                        "the step homotopy vanishes on global families", glob_ok))
        out.append(_rec(f"homotopy.preserves-integers[{tname}]",
                        "the step homotopy keeps integer families integral", int_ok))

    vpairs = [(bn, an) for bn, b in ws.transformations.items()
              for an, a in ws.transformations.items()
              if b.sys1 is a.sys2 and bn != an]
    for bn, an in vpairs:
        beta, alpha = ws.transformations[bn], ws.transformations[an]
        rng = _rng(seed, "homotopy-v", bn, an)
        ba = vertical_compose(beta, alpha)
        ok = sum_ok = True
        for _n in range(probes):
            p = rng.choice([0, 1, 2])
            q = rng.choice(list(range(alpha.sys1.target.dim + 1)))
            c = random_cochain(rng, alpha.sys1.target, p, max_deg, q)
            lhs = total_D(homotopy_gamma(beta, alpha, c)) - homotopy_gamma(beta, alpha, total_D(c))
            rhs = homotopy_alpha(ba, c) - (homotopy_alpha(beta, c) + homotopy_alpha(alpha, c))
            if lhs != rhs:
                ok = False
                break
            h = compose_homotopies_vertical(beta, alpha, c)
            if total_D(h) + compose_homotopies_vertical(beta, alpha, total_D(c)) != \
                    pullback_system(beta.sys2, c) - pullback_system(alpha.sys1, c):
                sum_ok = False
                break
        out.append(_rec(f"homotopy.ladder-identity[{bn}*{an}]",
                        "boundary of the two-step homotopy compares the composite step to the sum of steps",
                        ok, f"{probes} probes"))
        out.append(_rec(f"homotopy.ladder-sum[{bn}*{an}]",
                        "the sum of step homotopies is a homotopy for the outer pullbacks",
                        sum_ok))

    hpairs = [(bn, an) for bn, b in ws.transformations.items()
              for an, a in ws.transformations.items()
              if a.sys1.target is b.sys1.source]
    for bn, an in hpairs:
        beta, alpha = ws.transformations[bn], ws.transformations[an]
        rng = _rng(seed, "homotopy-h", bn, an)
        comp_nt = horizontal_compose(beta, alpha)
        comps = xi_composites(beta, alpha)
        ok = bd_ok = True
        for _n in range(probes):
            p = rng.choice([0, 1, 2])
            q = rng.choice(list(range(beta.sys1.target.dim + 1)))
            c = random_cochain(rng, beta.sys1.target, p, max_deg, q)
            lhs = total_D(homotopy_xi(beta, alpha, c, comps)) - \
                homotopy_xi(beta, alpha, total_D(c), comps)
            rhs = homotopy_alpha(comp_nt, c) - (
                homotopy_alpha(alpha, pullback_system(beta.sys1, c))
                + pullback_system(alpha.sys2, homotopy_alpha(beta, c)))
            if lhs != rhs:
                ok = False
                break
            if not compose_homotopies_horizontal(beta, alpha, c).identity_holds():
                bd_ok = False
                break
        out.append(_rec(f"homotopy.square-identity[{bn}o{an}]",
                        "boundary of the interleaved homotopy compares the composite step to the two mixed terms",
                        ok, f"{probes} probes"))
        out.append(_rec(f"homotopy.square-boundary[{bn}o{an}]",
                        "the two mixed composite homotopies differ by the boundary of their composite",
                        bd_ok))
    return out


# --------------------------------------------------------------- spark


def suite_spark(ws, seed="0", probes=6, max_deg=2, bound=3, product_pairs=None, **_):
    out = []
    for aname, atlas in ws.atlases.items():
        rng = _rng(seed, "spark-triple", aname)
        disjoint = all((0, k) != (k, 0) for k in range(1, 4))
        for k in range(1, atlas.dim + 1):
            g = random_global_form(rng, atlas, max_deg, q=k)
            m = inject_int(random_int_cochain(rng, atlas, k))
            if (not g.is_zero() or not m.is_zero()) and g == m:
                disjoint = False
        out.append(_rec(f"spark.triple-disjoint[{aname}]",
                        "global and integer families share only zero in positive degree",
                        disjoint,
                        "support shape (0,k) versus (k,0) plus sampled members"))
        e_ok = i_ok = True
        for _n in range(probes):
            g = random_global_form(rng, atlas, max_deg)
            if not is_global(total_D(g)):
                e_ok = False
            ic = random_int_cochain(rng, atlas, rng.choice([0, 1]))
            di = extract_int(total_D(inject_int(ic)))
            if di is None or di != int_cech_delta(ic):
                i_ok = False
        out.append(_rec(f"spark.global-stable[{aname}]",
                        "the total differential keeps global families global", e_ok))
        out.append(_rec(f"spark.integer-stable[{aname}]",
                        "the total differential keeps integer families integral", i_ok))

        rng2 = _rng(seed, "spark-perturb", aname)
        rec_ok = True
        rec_n = max(3, probes // 2)
        for _n in range(rec_n):
            a = random_spark(rng2, atlas, max_deg)
            m = random_int_cochain(rng2, atlas, 0)
            res = spark_equivalent(a, a - inject_int(m), bound=bound)
            if not res.equivalent:
                rec_ok = False
        out.append(_rec(f"spark.shift-recovered[{aname}]",
                        "an integral shift of a spark is certified equivalent to it",
                        rec_ok, f"{rec_n} probes at coefficient degree {bound}"))

    for cname, coch in ws.cochains.items():
        if not isinstance(coch, Cochain):
            continue
        try:
            total_degree(coch)
        except Exception:
            continue
        dec = spark_decompose(coch)
        out.append(_rec(f"spark.decompose[{cname}]",
                        "differential splits into a closed global part and an integer part",
                        dec.is_spark,
                        f"degree {dec.degree}, global components {len(dec.e.data)}, "
                        f"integer components {len(dec.r.data)}"))

    if product_pairs is None:
        names = [n for n, c in ws.cochains.items()
                 if isinstance(c, Cochain) and _decomposes(c)]
        product_pairs = [(n1, n2) for n1 in names for n2 in names]
    for n1, n2 in product_pairs:
        a1, a2 = ws.cochains[n1], ws.cochains[n2]
        prod = character_product(a1, a2)
        out.append(_rec(f"spark.product-boundary[{n1}*{n2}]",
                        "the two product representatives differ by the stated exact boundary",
                        prod.boundary_identity_holds()))
        res = spark_equivalent(prod.rep, prod.alt, bound=bound)
        status = PASS if res.equivalent else UNKNOWN
        out.append(CheckRecord(f"spark.product-equivalent[{n1}*{n2}]",
                               "the two product representatives are spark-equivalent",
                               status, res.detail))
        k = total_degree(a1) or 0
        l = total_degree(a2) or 0
        rep21 = character_product(a2, a1).rep
        sign = (-1) ** ((k + 1) * (l + 1))
        resc = spark_equivalent(prod.rep, rep21.scale(sign), bound=bound)
        out.append(CheckRecord(f"spark.product-commutes[{n1}*{n2}]",
                               "the product is graded commutative up to equivalence",
                               PASS if resc.equivalent else UNKNOWN, resc.detail))

    for tname, nt in ws.transformations.items():
        rng = _rng(seed, "spark-char", tname)
        src = nt.sys1.target
        n_ok = 0
        total = max(probes, 10)
        ok = True
        for _n in range(total):
            a = random_spark(rng, src, max_deg)
            try:
                w = character_pullback_witness(nt, a)
            except Exception:
                ok = False
                break
            if not w.identity_holds():
                ok = False
                break
            n_ok += 1
        out.append(_rec(f"spark.pullback-witness[{tname}]",
                        "the two pullbacks of a spark differ by the homotopy witness exactly",
                        ok, f"{n_ok} sparks"))
    return out


def _decomposes(c):
    try:
        return spark_decompose(c).is_spark
    except Exception:
        return False


# ------------------------------------------------------------ appendix


def suite_appendix(ws, seed="0", max_deg=3, **_):
    out = []
    for aname, atlas in ws.atlases.items():
        for how in ("min", "max"):
            phi = choice_map(atlas, how)
            cmp_rows = compare_integer_cohomology(atlas, phi)
            inj = all(r.injective for r in cmp_rows)
            cmap = all(r.cochain_map for r in cmp_rows)
            groups = all(r.groups_equal for r in cmp_rows)
            iso = all(r.isomorphism for r in cmp_rows)
            gtxt = ", ".join(f"H{r.degree}={r.group_big}" for r in cmp_rows)
            out.append(_rec(f"appendix.injective[{aname},{how}]",
                            "the choice-map extension has full rank in every degree", inj))
            out.append(_rec(f"appendix.cochain-map-int[{aname},{how}]",
                            "the choice-map extension is a map of integer complexes", cmap))
            out.append(_rec(f"appendix.groups-equal[{aname},{how}]",
                            "vertex-string and full-string cohomology agree", groups, gtxt))
            out.append(_rec(f"appendix.induced-iso[{aname},{how}]",
                            "the induced map on integer cohomology is an isomorphism",
                            iso, gtxt))
            for q in range(atlas.dim + 1):
                g = compare_global_forms(atlas, phi, q, max_deg)
                out.append(_rec(
                    f"appendix.globals-bijective[{aname},{how},q={q}]",
                    "bounded global forms biject with their vertex-string counterparts",
                    g.bijective,
                    f"dimension {g.dim_big}" if g.bijective else
                    f"small {g.dim_small} vs big {g.dim_big}"))
    return out


# ----------------------------------------------------------- dispatch


_SUITE_FNS = {
    "complex": suite_complex,
    "cup": suite_cup,
    "functor": suite_functor,
    "homotopy": suite_homotopy,
    "spark": suite_spark,
    "appendix": suite_appendix,
}


def run_suite(ws, suite, **params):
    if suite == "all":
        return run_all(ws, **params)
    if suite not in _SUITE_FNS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    return _SUITE_FNS[suite](ws, **params)


def run_all(ws, **params):
    out = []
    for suite in SUITES:
        out.extend(_SUITE_FNS[suite](ws, **params))
    return out

"""Chart systems over a vertex set, with embeddings between charts.

An Atlas holds one chart for every nonempty subset I of its vertex set; the
chart for I uniformizes the intersection of the covering sets named by I,
so a larger index set means a smaller underlying set.  Whenever the
underlying set of chart S is contained in that of chart T there is an
embedding chart(S) -> chart(T); containment is guaranteed for T a subset of
S (reverse inclusion on indices) and may additionally be declared by simply
providing an arrow for any other pair.  Embeddings between fixed charts are
unique up to a unique group element of the target chart, which is what
``resolve_group_element`` computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .indexcomb import Subset, VertexSet, union_of
from .polyform import AffineElement, PolyForm, PolyMap
from .report import FAIL, PASS, CheckRecord


class MissingContainmentError(KeyError):
    """Raised when a required chart containment has no stored embedding."""

    def __init__(self, source: Subset, target: Subset):
        self.source = source
        self.target = target
        super().__init__(
            f"no embedding stored for chart {source} into chart {target}; "
            f"the atlas must declare this containment with an arrow"
        )


@dataclass(frozen=True)
class Chart:
    index: Subset
    dim: int
    group: tuple
    empty: bool = False
    contractible: bool = True

    def identity(self) -> AffineElement:
        return AffineElement.identity(self.dim)


@dataclass(frozen=True)
class Embedding:
    """Arrow chart(source) -> chart(target); underlying sets satisfy
    U_source contained in U_target."""

    source: Subset
    target: Subset
    pmap: PolyMap


class Atlas:
    def __init__(self, name: str, vset: VertexSet, dim: int, charts, arrows):
        self.name = name
        self.vset = vset
        self.dim = dim
        self.charts: dict[Subset, Chart] = dict(charts)
        self.arrows: dict[tuple[Subset, Subset], Embedding] = {}
        for arr in arrows:
            key = (arr.source, arr.target)
            if key in self.arrows:
                raise ValueError(f"duplicate arrow for pair {key}")
            self.arrows[key] = arr
        self._nonempty = [s for s in vset.all_subsets() if s in self.charts and not self.charts[s].empty]

    def chart(self, index: Subset) -> Chart:
        return self.charts[index]

    def group(self, index: Subset):
        return self.charts[index].group

    def is_empty(self, index: Subset) -> bool:
        c = self.charts.get(index)
        return c is None or c.empty

    def nonempty_subsets(self) -> list[Subset]:
        """All subsets with nonempty chart, in canonical order."""
        return list(self._nonempty)

    def has_arrow(self, source: Subset, target: Subset) -> bool:
        return source == target or (source, target) in self.arrows

    def arrow(self, source: Subset, target: Subset) -> PolyMap:
        """The stored embedding chart(source) -> chart(target)."""
        if source == target:
            return PolyMap.identity(self.dim)
        try:
            return self.arrows[(source, target)].pmap
        except KeyError:
            raise MissingContainmentError(source, target) from None

    def restrict(self, form: PolyForm, frm: Subset, to: Subset) -> PolyForm:
        """Restrict a form living on chart(frm) to chart(to)."""
        if to == frm:
            return form
        return form.pullback(self.arrow(to, frm))

    def canonical_strings(self, length: int) -> list[tuple[Subset, ...]]:
        """Strictly increasing strings of the given length whose union has a
        nonempty chart."""
        out = []
        for combo in combinations(self._nonempty, length):
            u = union_of(combo)
            if not self.is_empty(u):
                out.append(combo)
        return out

    def __repr__(self):
        return f"Atlas({self.name!r}, |V|={len(self.vset)}, dim={self.dim})"


def resolve_group_element(group, lam: PolyMap, lam_ref: PolyMap):
    """The unique group element h with lam = h o lam_ref, or None.

    Returns (h, count) where count is the number of matches found; a sound
    atlas always yields count 0 or 1.
    """
    found = None
    count = 0
    for h in group:
        if h.to_polymap().compose(lam_ref) == lam:
            found = h
            count += 1
    return found, count


def _grid_points(dim: int, count: int):
    """Deterministic rational sample points, pairwise distinct."""
    pts = []
    for t in range(count):
        coords = []
        for i in range(dim):
            # small rationals spread over (-1, 1), different stride per axis
            num = ((t + 1) * (2 * i + 3)) % (2 * count + 1) - count
            coords.append(Fraction(num, count + 1))
        pts.append(tuple(coords))
    # de-duplicate while keeping order
    seen = set()
    out = []
    for p in pts:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _check(records, name, law, ok, detail=""):
    records.append(CheckRecord(name, law, PASS if ok else FAIL, detail))


def validate_atlas(atlas: Atlas, seed: str = "0", probes: int = 8, max_deg: int = 3,
                   grid: int = 100, order_bound: int = 64) -> list[CheckRecord]:
    """Structural validation of an atlas; returns one record per check family."""
    from .probes import random_invariant_form  # local import to avoid a cycle

    records: list[CheckRecord] = []
    vset = atlas.vset
    all_subsets = vset.all_subsets()

    # chart cover: exactly one chart per nonempty subset, consistent dims
    missing = [s for s in all_subsets if s not in atlas.charts]
    extra = [s for s in atlas.charts if s not in set(all_subsets)]
    bad_dim = [s for s, c in atlas.charts.items() if c.dim != atlas.dim]
    _check(
        records,
        "chart-cover",
        "every nonempty index subset has exactly one chart of the atlas dimension",
        not missing and not extra and not bad_dim,
        f"missing={missing} extra={extra} bad_dim={bad_dim}" if missing or extra or bad_dim else "",
    )

    # declared-empty monotonicity: supersets of an empty index stay empty
    viol = []
    for s in all_subsets:
        if atlas.is_empty(s):
            for t in all_subsets:
                if s.issubset(t) and not atlas.is_empty(t):
                    viol.append((s, t))
    _check(
        records,
        "empty-monotone",
        "an index containing an empty-chart index has an empty chart",
        not viol,
        f"violations={viol[:4]}" if viol else "",
    )

    # contractibility is declared data; a good atlas requires it
    noncontract = [s for s, c in atlas.charts.items() if not c.empty and not c.contractible]
    _check(
        records,
        "charts-contractible",
        "every nonempty chart is declared contractible",
        not noncontract,
        f"charts={noncontract[:4]}" if noncontract else "",
    )

    # group axioms chart by chart
    bad = []
    for s in atlas.nonempty_subsets():
        grp = atlas.group(s)
        if len(set(grp)) != len(grp):
            bad.append((s, "duplicate elements"))
            continue
        if AffineElement.identity(atlas.dim) not in grp:
            bad.append((s, "no identity"))
            continue
        gset = set(grp)
        for g in grp:
            if g.dim != atlas.dim:
                bad.append((s, "dimension mismatch"))
                break
            if g.order(order_bound) is None:
                bad.append((s, f"element order exceeds {order_bound}"))
                break
            if g.inverse() not in gset:
                bad.append((s, "not closed under inverse"))
                break
        else:
            done = False
            for g in grp:
                for h in grp:
                    if g.compose(h) not in gset:
                        bad.append((s, "not closed under composition"))
                        done = True
                        break
                if done:
                    break
    _check(
        records,
        "groups-finite",
        "chart groups are finite groups of invertible affine maps acting effectively",
        not bad,
        f"problems={bad[:4]}" if bad else "",
    )

    # arrows for every reverse-inclusion pair of nonempty charts
    missing_arrows = []
    for s in atlas.nonempty_subsets():
        for t in atlas.nonempty_subsets():
            if t != s and t.issubset(s) and not atlas.has_arrow(s, t):
                missing_arrows.append((s, t))
    _check(
        records,
        "arrows-present",
        "an embedding is stored for every pair of nonempty charts with "
        "reverse-inclusive indices",
        not missing_arrows,
        f"missing={missing_arrows[:4]}" if missing_arrows else "",
    )

    # arrow sanity: endpoints exist, dims match
    bad_arrows = []
    for (s, t), arr in atlas.arrows.items():
        if atlas.is_empty(s) or atlas.is_empty(t):
            bad_arrows.append(((s, t), "endpoint chart empty"))
        elif arr.pmap.src_dim != atlas.dim or arr.pmap.dst_dim != atlas.dim:
            bad_arrows.append(((s, t), "dimension mismatch"))
    _check(
        records,
        "arrows-wellformed",
        "stored arrows connect nonempty charts and respect the atlas dimension",
        not bad_arrows,
        f"problems={bad_arrows[:4]}" if bad_arrows else "",
    )

    # injectivity: exact for affine maps, sampled on a rational grid otherwise
    not_inj = []
    for (s, t), arr in atlas.arrows.items():
        pm = arr.pmap
        parts = pm.affine_parts()
        if parts is not None:
            from .polyform import _mat_inv

            if _mat_inv(parts[0]) is None:
                not_inj.append((s, t))
        else:
            pts = _grid_points(atlas.dim, grid)
            images = [pm.apply(p) for p in pts]
            if len(set(images)) != len(images):
                not_inj.append((s, t))
    _check(
        records,
        "arrows-injective",
        "every embedding is injective (exactly for affine maps, on a rational "
        "sample grid otherwise)",
        not not_inj,
        f"arrows={not_inj[:4]}" if not_inj else "",
    )

    # equivariance: each source group element is carried to a unique target one
    not_equiv = []
    for (s, t), arr in atlas.arrows.items():
        for g in atlas.group(s):
            lam_g = arr.pmap.compose(g.to_polymap())
            h, count = resolve_group_element(atlas.group(t), lam_g, arr.pmap)
            if count != 1:
                not_equiv.append(((s, t), g, count))
    _check(
        records,
        "arrows-equivariant",
        "for each embedding L and source group element g there is exactly one "
        "target group element h with L o g = h o L",
        not not_equiv,
        f"failures={not_equiv[:3]}" if not_equiv else "",
    )

    # composite coherence: parallel routes differ by a unique group element
    chains = []
    for (s, t) in atlas.arrows:
        for (t2, r) in atlas.arrows:
            if t2 == t and atlas.has_arrow(s, r):
                chains.append((s, t, r))
    not_coherent = []
    for (s, t, r) in chains:
        composite = atlas.arrow(t, r).compose(atlas.arrow(s, t))
        h, count = resolve_group_element(atlas.group(r), composite, atlas.arrow(s, r))
        if count != 1:
            not_coherent.append((s, t, r, count))
    _check(
        records,
        "arrows-composites",
        "the composite of stored embeddings equals a unique group element times "
        "the stored direct embedding",
        not not_coherent,
        f"failures={not_coherent[:3]}" if not_coherent else "",
    )

    # restriction independence: parallel routes pull invariant forms back equally
    import random as _random

    rng = _random.Random(f"validate:{atlas.name}:{seed}")
    dependent = []
    for (s, t, r) in chains[: max(probes, len(chains))]:
        composite = atlas.arrow(t, r).compose(atlas.arrow(s, t))
        direct = atlas.arrow(s, r)
        for _ in range(max(1, probes // 4)):
            form = random_invariant_form(rng, atlas.chart(r), max_deg)
            if form.pullback(composite) != form.pullback(direct):
                dependent.append((s, t, r))
                break
    _check(
        records,
        "restriction-independent",
        "restriction of an invariant form does not depend on the choice of "
        "embedding route",
        not dependent,
        f"failures={dependent[:3]}" if dependent else "",
    )

    return records

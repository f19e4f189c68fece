"""Pullbacks, homotopies, and the vertex-string extension.

Includes the scoping facts for cup preservation: the bundled index and
choice maps are order monotone except for the max choice on the nested
atlases, and for that one the cup law genuinely fails while the cochain
map law still holds.
"""

import random

import pytest

from orbspark.cochain import cup, inject_int, total_D
from orbspark.functorial import (
    choice_map,
    homotopy_alpha,
    homotopy_gamma,
    is_small,
    order_compatible_choice,
    order_compatible_system,
    phi_extend,
    phi_extend_int,
    pullback_system,
    pullback_system_int,
    restrict_to_small,
    small_strings,
)
from orbspark.morphisms import identity_system, vertical_compose
from orbspark.probes import random_cochain, random_int_cochain
from orbspark.verify import _random_small_cochain


def test_pullback_is_a_cochain_map(mirror):
    flip = mirror.systems["flip"]
    rng = random.Random("pb")
    for _ in range(5):
        c = random_cochain(rng, flip.target, rng.choice([0, 1]), 2)
        assert pullback_system(flip, total_D(c)) == total_D(pullback_system(flip, c))


def test_pullback_along_identity_is_identity(s1):
    atlas = s1.atlases["circle"]
    ident = identity_system(atlas)
    rng = random.Random("pbid")
    for _ in range(4):
        c = random_cochain(rng, atlas, rng.choice([0, 1]), 2)
        assert pullback_system(ident, c) == c


def test_integer_pullback_matches_form_pullback(chain):
    g1 = chain.systems["g1"]
    rng = random.Random("pbint")
    for _ in range(4):
        ic = random_int_cochain(rng, g1.target, rng.choice([0, 1]))
        from orbspark.cochain import extract_int

        assert extract_int(pullback_system(g1, inject_int(ic))) == \
            pullback_system_int(g1, ic)


def test_step_homotopy_identity(mirror):
    nt = mirror.transformations["mirror"]
    rng = random.Random("hope")
    for _ in range(5):
        c = random_cochain(rng, nt.sys1.target, rng.choice([0, 1, 2]), 2)
        lhs = total_D(homotopy_alpha(nt, c)) + homotopy_alpha(nt, total_D(c))
        rhs = pullback_system(nt.sys2, c) - pullback_system(nt.sys1, c)
        assert lhs == rhs


def test_ladder_homotopy_identity(chain):
    beta, alpha = chain.transformations["beta"], chain.transformations["alpha"]
    ba = vertical_compose(beta, alpha)
    rng = random.Random("ladder")
    for _ in range(2):
        c = random_cochain(rng, alpha.sys1.target, rng.choice([1, 2]), 1)
        lhs = total_D(homotopy_gamma(beta, alpha, c)) - homotopy_gamma(beta, alpha, total_D(c))
        rhs = homotopy_alpha(ba, c) - (homotopy_alpha(beta, c) + homotopy_alpha(alpha, c))
        assert lhs == rhs


def test_homotopy_lowers_string_length(mirror):
    nt = mirror.transformations["mirror"]
    rng = random.Random("lower")
    c = random_cochain(rng, nt.sys1.target, 1, 2)
    h = homotopy_alpha(nt, c)
    assert all(len(s) == 1 for s in h.data)
    assert homotopy_alpha(nt, random_cochain(rng, nt.sys1.target, 0, 2)).is_zero() or \
        all(len(s) == 0 for s in homotopy_alpha(nt, random_cochain(rng, nt.sys1.target, 0, 2)).data)


# ------------------------------------------------- vertex-string complex


def test_small_strings_of_the_circle(s1):
    atlas = s1.atlases["circle"]
    assert len(small_strings(atlas, 1)) == 3
    assert len(small_strings(atlas, 2)) == 3
    assert len(small_strings(atlas, 3)) == 0  # triple chart is empty


def test_choice_map_picks_members(scenarios):
    for name, ws in scenarios.items():
        for atlas in ws.atlases.values():
            for how in ("min", "max"):
                phi = choice_map(atlas, how)
                for I, v in phi.items():
                    assert v.issubset(I) and len(v) == 1
    with pytest.raises(ValueError):
        choice_map(atlas, "median")


def test_extension_is_a_section(s1):
    atlas = s1.atlases["circle"]
    phi = choice_map(atlas, "min")
    rng = random.Random("sect")
    for _ in range(4):
        c = _random_small_cochain(rng, atlas, 2)
        ext = phi_extend(atlas, phi, c)
        assert restrict_to_small(ext) == c
        assert is_small(c) and not (ext.data and is_small(ext) and len(ext.data) > len(c.data))


def test_extension_is_a_cochain_map(scenarios):
    for name, ws in scenarios.items():
        for aname, atlas in ws.atlases.items():
            phi = choice_map(atlas, "min")
            rng = random.Random(f"phicm:{name}:{aname}")
            for _ in range(2):
                c = _random_small_cochain(rng, atlas, 1)
                lhs = total_D(phi_extend(atlas, phi, c))
                rhs = phi_extend(atlas, phi, restrict_to_small(total_D(c)))
                assert lhs == rhs, (name, aname)


def test_integer_extension_matches_form_extension(s1):
    atlas = s1.atlases["circle"]
    phi = choice_map(atlas, "max")
    rng = random.Random("phint")
    ic = random_int_cochain(rng, atlas, 1)
    small_ic = type(ic)(atlas, {s: v for s, v in ic.data.items()
                                if all(len(e) == 1 for e in s)})
    from orbspark.cochain import extract_int

    assert extract_int(phi_extend(atlas, phi, inject_int(small_ic))) == \
        phi_extend_int(atlas, phi, small_ic)


# ------------------------------------------------- order compatibility


def test_bundled_systems_are_order_compatible(scenarios):
    for name, ws in scenarios.items():
        for sname, sys in ws.systems.items():
            assert order_compatible_system(sys), f"{name}/{sname}"


def test_min_choice_is_always_order_compatible(scenarios):
    # the subset order is lexicographic on rank keys, so the first member
    # is monotone along it; the last member is not on nested atlases
    for name, ws in scenarios.items():
        for aname, atlas in ws.atlases.items():
            assert order_compatible_choice(atlas, choice_map(atlas, "min"))


def test_max_choice_compatibility_depends_on_the_atlas(scenarios):
    expected = {"circle": True, "mirror": True, "cone": True,
                "U": True, "V": False, "W": False}
    seen = {}
    for ws in scenarios.values():
        for aname, atlas in ws.atlases.items():
            seen[aname] = order_compatible_choice(atlas, choice_map(atlas, "max"))
    assert seen == expected


def test_order_compatible_extension_preserves_cup(s1):
    atlas = s1.atlases["circle"]
    for how in ("min", "max"):
        phi = choice_map(atlas, how)
        rng = random.Random(f"phicup:{how}")
        for _ in range(3):
            c = _random_small_cochain(rng, atlas, 1)
            b = _random_small_cochain(rng, atlas, 1)
            prod = restrict_to_small(cup(c, b))
            assert phi_extend(atlas, phi, prod) == \
                cup(phi_extend(atlas, phi, c), phi_extend(atlas, phi, b))


def test_incompatible_extension_breaks_cup_but_not_the_differential(chain):
    # on the nested atlas the max choice reverses the subset order; the
    # extension stays a cochain map but the cup law has counterexamples
    V = chain.atlases["V"]
    phi = choice_map(V, "max")
    assert not order_compatible_choice(V, phi)
    rng = random.Random("cupfail")
    broken = False
    for _ in range(10):
        c = _random_small_cochain(rng, V, 1)
        b = _random_small_cochain(rng, V, 1)
        lhs = total_D(phi_extend(V, phi, c))
        rhs = phi_extend(V, phi, restrict_to_small(total_D(c)))
        assert lhs == rhs  # differential law is unconditional
        prod = restrict_to_small(cup(c, b))
        if phi_extend(V, phi, prod) != cup(phi_extend(V, phi, c),
                                           phi_extend(V, phi, b)):
            broken = True
            break
    assert broken, "expected a cup counterexample for the non-monotone choice"

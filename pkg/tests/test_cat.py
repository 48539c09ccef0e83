import pytest

from hypergroups import (ExactSequence, Morphism, bilinearity_check, biproduct_check, check_image_full,
                         colimit_universal_check, enumerate_hom, exactness_check, hom_structure, identity,
                         limit_universal_check, quotient, universal_cokernel_check,
                         universal_kernel_check, zero, zero_object_check)
from hypergroups.cat import ExactnessError
from hypergroups.construct import DirectedDiagram, directed_colimit, filtered_limit, subcarrier, symmetric_group
from hypergroups.enumeration import all_up_to


@pytest.fixture(scope="module")
def tests3():
    return all_up_to(3)


@pytest.fixture
def f(V3, K2):
    return Morphism(V3, K2, [0, 0, 1], "f")


class TestHomStructure:
    def test_k2(self, K2):
        S = hom_structure(K2, K2)
        z, i = S.neutral, 1
        assert S.size == 2 and z == 0
        assert S.star[z][i] == 1 << i and S.star[i][i] == 0b11
        assert S.is_associative() and S.check_axioms().passed
        assert S.as_hypergroup() == K2

    def test_trivial_ends(self, T, V3):
        assert hom_structure(T, V3).size == 1 and hom_structure(V3, T).size == 1

    def test_hom_axioms_on_order_three(self, tests3):
        verdicts = {}
        empty = []
        for G in tests3:
            for H in tests3:
                S = hom_structure(G, H)
                rep = S.check_axioms()
                assert not {"i", "ii", "r-closed", "r-involution"} & set(rep.tags)
                for g in range(S.size):
                    assert S.star[S.neutral][g] == 1 << g
                assert S.inv[S.neutral] == S.neutral
                if "nonempty" in rep.tags:
                    empty.append((G.name, H.name, rep.witness("nonempty")))
                verdicts[(G.name, H.name)] = S.is_associative()
        # frozen from the exhaustive run: two structures have an empty star cell
        assert empty == [("H3_0", "H3_0", (2, 3)), ("H3_0", "H3_6", (1, 4))]
        assert sorted(k for k, v in verdicts.items() if not v) == [("H3_0", "H3_0"), ("H3_0", "H3_6")]

    def test_empty_cell_blocks_conversion(self, tests3):
        G = [g for g in tests3 if g.name == "H3_0"][0]
        with pytest.raises(ValueError):
            hom_structure(G, G).as_hypergroup()


class TestBilinearity:
    def test_examples(self, T, K2, V3):
        assert bilinearity_check(K2, K2, K2).passed
        assert bilinearity_check(T, V3, K2).passed
        assert bilinearity_check(V3, K2, K2).passed

    def test_order_two(self):
        objs = all_up_to(2)
        for F in objs:
            for G in objs:
                for H in objs:
                    assert bilinearity_check(F, G, H).passed


class TestImageFull:
    def test_examples(self, V3, K2):
        iota = subcarrier(V3, ["a"]).inclusion()
        assert check_image_full(iota) and check_image_full(identity(V3)) and check_image_full(zero(V3, K2))

    def test_all_full_abelian_order_three(self):
        objs = all_up_to(3, commutative_only=True)
        n = 0
        for G in objs:
            for H in objs:
                for h in enumerate_hom(G, H):
                    if h.full:
                        n += 1
                        assert check_image_full(h)
        assert n == 202


class TestUniversal:
    def test_kernel(self, f, V3, K2, tests3):
        assert universal_kernel_check(f, tests3).passed
        assert universal_kernel_check(zero(V3, K2), [V3]).passed
        assert universal_kernel_check(identity(V3), tests3).passed

    def test_cokernel(self, V3, T, tests3):
        iota = subcarrier(V3, ["a"]).inclusion()
        assert universal_cokernel_check(iota, tests3).passed
        assert universal_cokernel_check(identity(V3), tests3).passed
        assert universal_cokernel_check(zero(T, V3), tests3).passed

    def test_cokernel_skips_nonabelian(self, V3):
        rep = universal_cokernel_check(identity(V3), [symmetric_group(3)])
        assert rep.passed and rep.notes

    def test_biproduct_examples(self, T, K2, V3):
        assert biproduct_check(T, V3, [T, K2, V3]).passed
        assert biproduct_check(K2, K2, [T, K2, V3]).passed
        assert biproduct_check(K2, V3, [K2]).passed

    def test_coproduct_uniqueness_fails_on_larger_tests(self, K2, tests3):
        rep = biproduct_check(K2, K2, tests3)
        assert set(rep.tags) == {"coproduct-unique"}
        assert {w[0] for _, w in rep.violations} == {"H3_9"}

    def test_zero_object(self, T, V3, S3):
        assert zero_object_check([T, V3, S3]).passed


class TestExactness:
    def test_quotient_sequence(self, V3):
        iota = subcarrier(V3, ["a"]).inclusion()
        pi = quotient(V3, subcarrier(V3, ["a"])).projection
        assert exactness_check(ExactSequence([iota, pi], short=True)).passed

    def test_identity_then_terminal(self, V3, T):
        seq = ExactSequence([identity(V3), Morphism(V3, T, [0, 0, 0])], short=True)
        assert exactness_check(seq).passed

    def test_zero_then_identity(self, T, K2):
        seq = ExactSequence([zero(T, K2), identity(K2)], short=True)
        assert exactness_check(seq).passed

    def test_failure_witness(self, V3, K2, f):
        rep = exactness_check(ExactSequence([identity(V3), f]))
        assert "composite-zero" in rep.tags and "exact" in rep.tags

    def test_short_needs_full_first_arrow(self, V3, K2):
        g = Morphism(V3, K2, [0, 1, 1])
        with pytest.raises(ExactnessError):
            exactness_check(ExactSequence([g, identity(K2)], short=True))

    def test_composable(self, f):
        with pytest.raises(ValueError):
            exactness_check(ExactSequence([f, f]))


def test_cones_on_pullback(f, V3, K2):
    D = DirectedDiagram.from_arrows(["p", "q", "r"], {"p": V3, "q": V3, "r": K2},
                                    {("p", "r"): f, ("q", "r"): f})
    tests = all_up_to(2)
    L, psi = filtered_limit(D)
    assert limit_universal_check(D, L, psi, tests).passed
    C, psi = directed_colimit(D)
    assert colimit_universal_check(D, C, psi, tests).passed


def test_broken_cone_is_caught(f, V3, K2):
    D = DirectedDiagram.from_arrows(["p", "r"], {"p": V3, "r": K2}, {("p", "r"): f})
    L, psi = filtered_limit(D)
    bad = [psi[0], Morphism(L, K2, [0] * L.order)]
    assert "compatible" in limit_universal_check(D, L, bad, []).tags

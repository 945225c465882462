import itertools
import random
from fractions import Fraction

import pytest

from conftest import EUC, MIN, kt, random_tensor
from ktwebs.classify import (
    EUCLIDEAN_LABELS,
    MINKOWSKI_LABELS,
    ORBIT_CLASSES,
    SingularSetDescription,
    SingularVariant,
    atlas,
    classify,
    classify_label,
    representative,
    same_orbit,
    singular_set,
)
from ktwebs.core import SignatureError
from ktwebs.groups import DiscreteId, GeneratorId, apply_discrete, apply_finite

SV = SingularVariant


class TestRegistry:
    def test_rank_table(self):
        expected = dict(
            zip(EUCLIDEAN_LABELS, (6, 5, 4, 3, 1)),
        )
        expected.update(
            zip(MINKOWSKI_LABELS, (6, 6, 6, 5, 5, 4, 5, 5, 4, 3, 3, 3, 2, 1))
        )
        for label, cls in ORBIT_CLASSES.items():
            assert cls.expected_rank == expected[label]

    def test_characteristic_flags(self):
        non_char = {"E5", "M10", "M12", "M13", "M14"}
        for label, cls in ORBIT_CLASSES.items():
            assert cls.characteristic == (label not in non_char)

    def test_shared_sc_label(self):
        assert ORBIT_CLASSES["M3"].sc_labels == ("SC5", "SC10")
        assert ORBIT_CLASSES["M7"].sc_labels == ORBIT_CLASSES["M8"].sc_labels == ("SC4",)


class TestAtlas:
    def test_every_representative_classifies_to_its_label(self):
        for label, k in atlas():
            assert classify_label(k) == label

    def test_counts(self):
        assert len(representative("E4")) == 3
        assert len(representative("E2")) == 2
        assert len(representative("M4")) == 2
        assert len(representative("M5")) == 2
        assert len(representative("M9")) == 2
        assert len(atlas()) == 25

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            representative("E9")


class TestDecisionTree:
    @pytest.mark.parametrize(
        "coeffs,label",
        [
            ((0, 0, 1, 0, 0, 1), "E1"),
            ((0, 0, 0, 1, 0, 0), "E2"),
            ((0, 0, 0, 0, 1, 0), "E2"),
            ((0, 0, 0, 0, 0, 1), "E3"),
            ((1, 0, 0, 0, 0, 0), "E4"),
            ((0, 0, 1, 0, 0, 0), "E4"),
            ((2, 2, 0, 0, 0, 0), "E5"),
        ],
    )
    def test_euclidean_examples(self, coeffs, label):
        assert classify_label(kt(EUC, *coeffs)) == label

    @pytest.mark.parametrize(
        "coeffs,label",
        [
            ((0, 1, 0, 0, 0, 1), "M1"),
            ((0, 0, 1, 0, 0, 1), "M2"),
            ((0, -1, 0, 0, 0, 1), "M3"),
            ((1, 1, 1, 0, 0, 1), "M4"),
            ((-1, -1, -1, 0, 0, 1), "M5"),
            ((0, 0, 0, 0, 0, 1), "M6"),
            ((0, 0, 0, 1, 0, 0), "M7"),
            ((0, 0, 0, -1, 0, 0), "M7"),
            ((0, 0, 0, 0, 1, 0), "M8"),
            ((1, 1, 0, 1, 1, 0), "M9"),
            ((1, 1, -1, 1, 1, 0), "M9"),
            ((0, 0, 0, 1, 1, 0), "M10"),
            ((1, 0, 0, 0, 0, 0), "M11"),
            ((0, 0, 1, 0, 0, 0), "M12"),
            ((1, 1, 1, 0, 0, 0), "M13"),
            ((1, -1, 0, 0, 0, 0), "M14"),
        ],
    )
    def test_minkowski_examples(self, coeffs, label):
        assert classify_label(kt(MIN, *coeffs)) == label

    def test_zero_tensor(self):
        rep = classify(kt(EUC))
        assert rep.orbit.label == "E5" and rep.is_zero
        repm = classify(kt(MIN))
        assert repm.orbit.label == "M14" and repm.is_zero

    def test_totality_on_integer_grid(self):
        values = (-2, -1, 0, 1, 2)
        rng = random.Random(0)
        combos = list(itertools.product(values, repeat=3))
        for sig in (EUC, MIN):
            side = EUCLIDEAN_LABELS if sig is EUC else MINKOWSKI_LABELS
            for head in combos:
                for tail in (rng.choice(combos) for _ in range(8)):
                    label = classify_label(kt(sig, *head, *tail))
                    assert label in side

    def test_rank_matches_class_for_nonzero(self):
        rng = random.Random(1)
        for _ in range(150):
            sig = rng.choice((EUC, MIN))
            k = random_tensor(rng, sig)
            if k.is_zero:
                continue
            rep = classify(k)
            assert rep.rank == rep.orbit.expected_rank

    def test_zero_tensor_rank_drops(self):
        assert classify(kt(EUC)).rank == 1  # only the constant V5 row survives


class TestSameOrbit:
    def test_parabolic_pair(self):
        k1, k2 = representative("E2")
        assert same_orbit(k1, k2)

    def test_distinct_parabolic_webs(self):
        assert not same_orbit(representative("M7")[0], representative("M8")[0])

    def test_orbit_invariance_under_dilatation(self):
        rng = random.Random(2)
        k = random_tensor(rng, MIN)
        assert same_orbit(k, apply_finite(k, GeneratorId.V4, 2))

    def test_signature_mismatch(self):
        with pytest.raises(SignatureError):
            same_orbit(kt(EUC), kt(MIN))


class TestSingularSets:
    def test_e1_two_points(self):
        desc = singular_set(kt(EUC, 0, 0, 1, 0, 0, 1))
        assert desc.variant is SV.TWO_POINTS
        assert set(desc.points) == {(1, 1), (-1, -1)}
        assert desc.center == (0, 0)

    def test_e1_irrational_points_still_described(self):
        desc = singular_set(kt(EUC, 1, 0, 1, 0, 0, 1))
        assert desc.variant is SV.TWO_POINTS
        pts = desc.float_points()
        assert len(pts) == 2

    def test_e2_single_point(self):
        desc = singular_set(kt(EUC, 0, 0, 0, 1, 0, 0))
        assert desc.variant is SV.ONE_POINT
        assert desc.points == ((0, 0),)

    def test_e3_center(self):
        # gamma = 1, alpha = 1 with A - B = 1, C = 0 satisfies both
        # degeneracy equations, so this lies in the polar class
        k = kt(EUC, 1, 0, 0, 1, 0, 1)
        assert classify_label(k) == "E3"
        desc = singular_set(k)
        assert desc.variant is SV.ONE_POINT
        assert desc.points == ((0, -1),)

    def test_e4_empty_and_e5_plane(self):
        assert singular_set(kt(EUC, 1, 0, 0, 0, 0, 0)).variant is SV.EMPTY
        whole = singular_set(kt(EUC, 2, 2, 0, 0, 0, 0))
        assert whole.variant is SV.WHOLE_PLANE and whole.plane_sign == 0

    def test_m2_strip_exact_data(self):
        desc = singular_set(kt(MIN, 0, 0, 1, 0, 0, 1))
        assert desc.variant is SV.STRIP
        strip = desc.strips[0]
        assert strip.axis == "diff"
        assert strip.center == 0
        assert strip.halfwidth_sq == 2

    def test_m11_empty_m12_plane(self):
        assert singular_set(kt(MIN, 1, 0, 0, 0, 0, 0)).variant is SV.EMPTY
        desc = singular_set(kt(MIN, 0, 0, 1, 0, 0, 0))
        assert desc.variant is SV.WHOLE_PLANE and desc.plane_sign == -1

    @pytest.mark.parametrize(
        "label,variant",
        [
            ("M1", SV.EMPTY),
            ("M2", SV.STRIP),
            ("M3", SV.TWO_STRIPS_MINUS_INTERSECTION),
            ("M4", SV.LINE),
            ("M5", SV.STRIP_PLUS_ORTHOGONAL_LINE),
            ("M6", SV.TWO_ORTHOGONAL_LINES),
            ("M7", SV.TWO_OPPOSITE_QUADRANTS),
            ("M8", SV.TWO_OPPOSITE_QUADRANTS),
            ("M9", SV.HALF_PLANE),
            ("M10", SV.WHOLE_PLANE),
            ("M11", SV.EMPTY),
            ("M12", SV.WHOLE_PLANE),
            ("M13", SV.WHOLE_PLANE),
            ("M14", SV.WHOLE_PLANE),
            ("E1", SV.TWO_POINTS),
            ("E2", SV.ONE_POINT),
            ("E3", SV.ONE_POINT),
            ("E4", SV.EMPTY),
            ("E5", SV.WHOLE_PLANE),
        ],
    )
    def test_variant_per_class(self, label, variant):
        for k in representative(label):
            assert singular_set(k).variant is variant

    def test_description_json_round_trip(self):
        for _, k in atlas():
            desc = singular_set(k)
            assert SingularSetDescription.from_json(desc.to_json()) == desc

    def test_classification_report_consistency(self):
        rep = classify(kt(MIN, 0, 0, 1, 0, 0, 1))
        assert rep.orbit.label == "M2"
        assert rep.rank == 6
        assert rep.surface_flags.in_s1 is False
        assert rep.singular_set.variant is SV.STRIP


class TestRSwapAction:
    def test_swap_exchanges_m7_m8_and_fixes_the_rest(self):
        for label, k in atlas():
            if label.startswith("E"):
                continue
            swapped = classify_label(apply_discrete(k, DiscreteId.RSWAP))
            if label == "M7":
                assert swapped == "M8"
            elif label == "M8":
                assert swapped == "M7"
            else:
                assert swapped == label

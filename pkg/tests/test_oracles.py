"""Self-checks of the brute-force references on hand-verifiable inputs."""

import random

import pytest

from conftest import random_page
from oracles import TooLarge, brute_force_ld, brute_force_seg, ld, segmentations

H = ["Schönbrunn", "10", "Aberg", "103"]
G = ["Schönbrunn", "Aberg", "102", "103"]


def test_ld():
    assert ld("kitten", "sitting") == 3
    assert ld("", "abc") == 3 and ld("abc", "") == 3 and ld("", "") == 0
    assert ld(("a", "b"), ("b",)) == 1


def test_four_line_example():
    free = brute_force_ld(H, G)
    assert free.distance == 1
    assert free.best_assignment == {(0, 0), (1, 2), (2, 1), (3, 3)}
    ordered = brute_force_ld(H, G, restrict="reading_order")
    assert ordered.distance == 5
    assert ordered.best_assignment == {(0, 0), (2, 1), (3, 3)}
    assert ordered.matrix(4, 4)[2] == [0, 1, 0, 0]


def test_assignment_is_valid():
    rng = random.Random(3)
    for _ in range(50):
        h, g = random_page(rng), random_page(rng)
        for restrict in ("none", "reading_order"):
            a = sorted(brute_force_ld(h, g, restrict).best_assignment)
            ys, xs = [y for y, _ in a], [x for _, x in a]
            assert len(set(ys)) == len(ys) and len(set(xs)) == len(xs)
            if restrict == "reading_order":
                assert xs == sorted(xs)


def test_empty_hypothesis_costs_the_ground_truth_length():
    assert brute_force_ld([], ["abc", "de"]).distance == 5
    assert brute_force_seg([], ["abc", "de"]) == 5


def test_neighborhood_restricts_pairs():
    assert brute_force_ld(["ab"], ["ab"], neighborhood=lambda y, x: False).distance == 4


def test_guards():
    with pytest.raises(TooLarge):
        brute_force_ld(["a"] * 6, ["a"])
    with pytest.raises(TooLarge):
        brute_force_seg(["abcdefg", "abcdefg"], ["a"])
    with pytest.raises(TooLarge):
        list(segmentations(["a b c d e f g h i j k l m n o p"]))


def test_merge_example():
    assert brute_force_seg(["Kainz Josina Led."], ["Kainz Josina", "Led."], max_symbols=None) == 0


def test_segmentations_enumerates_splits_and_merges():
    found = {tuple(lines) for lines, _ in segmentations(["a b", "c"])}
    assert found == {("a b", "c"), ("a", "b", "c"), ("a b c",), ("a", "b c")}
    words = {tuple(lines) for lines, _ in segmentations([("a", "b")], words=True)}
    assert words == {(("a", "b"),), (("a",), ("b",))}


def test_without_spaces_segmentation_only_merges():
    rng = random.Random(5)
    for _ in range(100):
        h = random_page(rng, max_lines=3, alphabet="abc", max_len=4)
        g = random_page(rng, alphabet="abc")
        assert brute_force_seg(h, g) <= brute_force_ld(h, g, restrict="reading_order").distance
        if len(h) <= 1:
            assert brute_force_seg(h, g) == brute_force_ld(h, g, restrict="reading_order").distance

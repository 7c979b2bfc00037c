import collections
import dataclasses
import random

import pytest

from convchar import (
    FullyLoadedSpec,
    caterpillar,
    caterpillar_count,
    count_convex,
    fully_loaded,
    fully_loaded_count,
    fully_loaded_decomposition,
    is_fully_loaded,
    linearize,
    parse_newick,
    random_tree,
    replace_pendant_fully_loaded,
)


class TestCaterpillar:
    def test_spine_order_and_cherries(self):
        t = caterpillar(9)
        assert t.cherries() == [("a", "b"), ("h", "i")]
        sides = {frozenset(s.side_b) for s in t.splits()}
        sides |= {frozenset(s.side_a) for s in t.splits()}
        # Prefixes of the label order appear as splits: the spine respects it.
        for i in range(2, 8):
            assert frozenset("abcdefghi"[:i]) in sides
        assert len(caterpillar(12).cherries()) == 2

    def test_small_sizes(self):
        assert caterpillar(1).n == 1
        assert caterpillar(2).n == 2
        assert caterpillar(3) == parse_newick("(a,b,c);")
        assert caterpillar(4) == parse_newick("((a,b),(c,d));")

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            caterpillar(3, ["x", "x", "y"])

    def test_realizes_maximum(self):
        for k in (3, 4):
            for n in range(k, 18):
                assert count_convex(caterpillar(n), k) == caterpillar_count(n, k)


class TestFullyLoaded:
    def test_default_counts(self):
        for k in (3, 4, 5):
            for n in range(k, 20):
                t = fully_loaded(n, k)
                assert t.n == n
                assert count_convex(t, k) == fully_loaded_count(n, k)

    def test_two_chunk_tree_has_unit_count(self):
        for k in (3, 4, 5):
            t = fully_loaded(2 * (k - 1), k)
            assert count_convex(t, k) == 1

    def test_worked_example_spec(self, example7):
        # 3-star scaffold carrying {a,b,c}, {e,f,g} and the residue {d}
        # reproduces the worked-example tree exactly.
        spec = FullyLoadedSpec(
            n=7,
            k=4,
            scaffold=parse_newick("(a,d,e);"),
            residue_leaf="d",
            residue_size=1,
            parts=(("a", ("c", "a", "b")), ("d", ("d",)), ("e", ("e", "f", "g"))),
        )
        assert fully_loaded(7, 4, spec=spec).isomorphic_to(example7)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            FullyLoadedSpec(
                n=7,
                k=4,
                scaffold=parse_newick("(a,d,e);"),
                residue_leaf=None,
                residue_size=0,
                parts=(("a", ("a", "b", "c")), ("d", ("d",)), ("e", ("e", "f", "g"))),
            )
        with pytest.raises(ValueError):
            fully_loaded(3, 4)
        with pytest.raises(ValueError):
            fully_loaded(7, 1)

    def test_randomized_specs_all_agree(self):
        rng = random.Random(7)
        for (n, k) in ((10, 3), (13, 4), (17, 5)):
            labels = [f"t{i:02d}" for i in range(n)]
            want = fully_loaded_count(n, k)
            for _ in range(5):
                spec = FullyLoadedSpec.randomized(labels, k, rng)
                t = fully_loaded(n, k, spec=spec)
                assert count_convex(t, k) == want
                assert is_fully_loaded(t, k)


class TestIsFullyLoaded:
    def test_worked_example(self, example7):
        assert not is_fully_loaded(example7, 3)
        assert is_fully_loaded(example7, 4)
        assert is_fully_loaded(example7, 5)
        w4 = fully_loaded_decomposition(example7, 4)
        assert {frozenset(p) for _, p in w4.parts} == {
            frozenset("abc"),
            frozenset("efg"),
            frozenset("d"),
        }
        assert w4.residue_size == 1

    def test_caterpillar_nine_not_3_loaded(self):
        assert not is_fully_loaded(caterpillar(9), 3)

    def test_eight_taxon_3_loaded_has_four_cherries(self):
        t = fully_loaded(8, 3)
        assert len(t.cherries()) == 4
        assert len(t.bounded_split(3).side_b) in (3, 4)
        assert is_fully_loaded(t, 3)

    def test_generator_roundtrip(self):
        for k in (3, 4, 5):
            for n in range(k, 16):
                t = fully_loaded(n, k)
                w = fully_loaded_decomposition(t, k)
                assert w is not None
                assert w.residue_size == (n % (k - 1))

    def test_vacuous_small_trees(self):
        assert is_fully_loaded(parse_newick("(a,b);"), 4)
        assert is_fully_loaded(parse_newick("x;"), 3)


class TestRandomTree:
    def test_determinism(self):
        a = random_tree(10, seed=7)
        b = random_tree(10, seed=7)
        assert a.canonical_newick() == b.canonical_newick()
        assert random_tree(10, seed=8) != a

    def test_structure(self):
        for seed in range(20):
            t = random_tree(11, seed=seed)
            assert t.n == 11
            assert t.num_vertices() == 2 * 11 - 2
            assert len(t.splits()) == 2 * 11 - 3

    def test_uniform_over_quartet_topologies(self):
        counts = collections.Counter(
            random_tree(4, seed=s).canonical_newick() for s in range(30000)
        )
        assert len(counts) == 3
        for freq in counts.values():
            assert abs(freq / 30000 - 1 / 3) <= 0.02

    def test_needs_three_taxa(self):
        with pytest.raises(ValueError):
            random_tree(2, seed=0)


class TestLinearize:
    def _oriented(self, tree, c_taxa):
        for tp in tree.tripartitions():
            if frozenset(c_taxa) in tp.parts:
                others = [p for p in tp.parts if p != frozenset(c_taxa)]
                return dataclasses.replace(
                    tp, part_a=others[0], part_b=others[1], part_c=frozenset(c_taxa)
                )
        raise AssertionError("no such tripartition")

    def test_explicit_ten_taxon_example(self):
        t = parse_newick("(((a,b),c),((d,e),f),(((g,h),i),j));")
        tp = self._oriented(t, "ghij")
        out = linearize(t, tp)
        assert out.taxa == t.taxa
        # Every prefix of the sorted c-part now splits off together with the
        # a-side: the four taxa hang singly along the path.
        sides = {frozenset(s.side_b) for s in out.splits()}
        sides |= {frozenset(s.side_a) for s in out.splits()}
        for i in range(1, 4):
            assert frozenset("abc") | frozenset("ghij"[:i]) in sides
        assert len(out.cherries()) < len(t.cherries())

    def test_never_decreases_count_when_c_small(self):
        checked = 0
        seed = 0
        while checked < 25:
            t = random_tree(11, seed=seed)
            seed += 1
            for tp in t.tripartitions():
                small = [p for p in tp.parts if len(p) == 2]
                if not small:
                    continue
                others = [p for p in tp.parts if p != small[0]]
                if min(len(p) for p in others) < 2:
                    continue
                tpx = dataclasses.replace(
                    tp, part_a=others[0], part_b=others[1], part_c=small[0]
                )
                out = linearize(t, tpx)
                assert count_convex(out, 3) >= count_convex(t, 3)
                checked += 1
                break

    def test_preconditions(self):
        t = random_tree(8, seed=1)
        tp = t.tripartitions()[0]
        single = min(tp.parts, key=len)
        if len(single) == 1:
            with pytest.raises(ValueError):
                linearize(t, dataclasses.replace(tp, part_c=single, part_a=tp.part_a))
        with pytest.raises(ValueError):
            bad = dataclasses.replace(tp, part_c=frozenset({"nope"}))
            linearize(t, bad)


class TestReplacePendant:
    def test_never_increases_count(self):
        for seed in range(30):
            t = random_tree(12, seed=seed)
            sp = t.bounded_split(3)
            out = replace_pendant_fully_loaded(t, sp, 3)
            assert out.taxa == t.taxa
            assert count_convex(out, 3) <= count_convex(t, 3)

    def test_fixed_point_when_already_loaded(self):
        t = fully_loaded(12, 4)
        sp = t.bounded_split(4)
        out = replace_pendant_fully_loaded(t, sp, 4)
        assert count_convex(out, 4) == count_convex(t, 4)

    def test_size_guard(self):
        t = random_tree(12, seed=3)
        wide = next(sp for sp in t.splits() if len(sp.side_b) > 4)
        with pytest.raises(ValueError):
            replace_pendant_fully_loaded(t, wide, 3)

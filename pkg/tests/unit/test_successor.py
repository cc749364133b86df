"""Unit tests for relation checks and temporal successors."""

import itertools

import pytest


def _all_relations(m, n):
    """Every nonempty relation between the positions of two moments."""
    from gtl_cli.core.successor import ConvexRelation

    cells = list(itertools.product(range(len(m)), range(len(n))))
    for size in range(1, len(cells) + 1):
        for pairs in itertools.combinations(cells, size):
            yield ConvexRelation.from_pairs(len(m), len(n), pairs)


class TestStructuralChecks:
    """Test the order-theoretic checks."""

    def test_gap_in_image(self):
        """Test that an image with a hole is not convex."""
        from gtl_cli.core.relations import index_order, structural_checks

        checks = structural_checks([0], [0, 1, 2], [(0, 0), (0, 2)], index_order, index_order)
        assert not checks["image-convex"]
        assert checks["serial"]

    def test_not_serial(self):
        """Test that a source without image fails seriality."""
        from gtl_cli.core.relations import index_order, structural_checks

        checks = structural_checks([0, 1], [0], [(0, 0)], index_order, index_order)
        assert not checks["serial"]

    def test_identity(self):
        """Test that the identity on a chain passes everything."""
        from gtl_cli.core.relations import STRUCTURAL_CHECKS, index_order, structural_checks

        pairs = [(i, i) for i in range(3)]
        checks = structural_checks(range(3), range(3), pairs, index_order, index_order)
        assert list(checks) == list(STRUCTURAL_CHECKS)
        assert all(checks.values())

    def test_crossing_fails_confluence(self):
        """Test that an order-reversing relation fails the confluence checks."""
        from gtl_cli.core.relations import index_order, structural_checks

        checks = structural_checks(range(2), range(2), [(0, 1), (1, 0)], index_order, index_order)
        assert not checks["forth-up"] or not checks["forth-down"]


class TestConvexRelation:
    """Test the relation value type."""

    def test_from_intervals(self):
        """Test building from image intervals."""
        from gtl_cli.core.successor import ConvexRelation

        r = ConvexRelation.from_intervals(3, [(0, 1), (1, 2)])
        assert r.sorted_pairs() == [(0, 0), (0, 1), (1, 1), (1, 2)]
        assert r.intervals() == ((0, 1), (1, 2))

    def test_intervals_with_gap(self):
        """Test that gaps and empty images have no interval form."""
        from gtl_cli.core.successor import ConvexRelation

        assert ConvexRelation.from_pairs(1, 3, [(0, 0), (0, 2)]).intervals() is None
        assert ConvexRelation.from_pairs(2, 1, [(0, 0)]).intervals() is None


class TestCheckRelation:
    """Test checking a given relation."""

    def test_shape_mismatch(self):
        """Test a relation sized for other moments."""
        from gtl_cli.core.errors import RelationShapeError
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import enumerate_moments
        from gtl_cli.core.successor import ConvexRelation, check_relation

        m = enumerate_moments(closure(parse("p")))[2]
        with pytest.raises(RelationShapeError):
            check_relation(m, m, ConvexRelation.identity(3))

    def test_pair_outside(self):
        """Test a pair pointing past the chain."""
        from gtl_cli.core.errors import RelationShapeError
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import enumerate_moments
        from gtl_cli.core.successor import ConvexRelation, check_relation

        m = enumerate_moments(closure(parse("p")))[2]
        with pytest.raises(RelationShapeError):
            check_relation(m, m, ConvexRelation(2, 2, frozenset({(0, 0), (1, 5)})))

    def test_next_not_sensible(self):
        """Test that X p needs p in the related type."""
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import Moment
        from gtl_cli.core.successor import ConvexRelation, check_relation

        sigma = closure(parse("X p"))
        now = Moment(sigma, (sigma.mask_of([parse("X p")]),))
        later = Moment(sigma, (0,))
        verdict = check_relation(now, later, ConvexRelation.identity(1))
        assert not verdict.ok
        assert verdict.failures() == ["sensible"]


class TestTemporalSuccessors:
    """Test successor enumeration against every relation."""

    @pytest.mark.parametrize(
        "text",
        [
            "X p",
            "F p",
            "G p",
            "p & X p",
            "F p | p",
            "~p",
            "p -> q",
            "p <- q",
            "p -> X p",
            "X p <- p",
            pytest.param("X X p", marks=pytest.mark.slow),
            pytest.param("F X p", marks=pytest.mark.slow),
            pytest.param("G F p", marks=pytest.mark.slow),
        ],
    )
    def test_matches_brute_force(self, text):
        """Test that enumeration finds exactly the relations passing every check."""
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import enumerate_moments
        from gtl_cli.core.successor import check_relation, temporal_successors

        moments = enumerate_moments(closure(parse(text)))
        for m in moments:
            for n in moments:
                expected = {r.pairs for r in _all_relations(m, n) if check_relation(m, n, r).ok}
                found = [r.pairs for r in temporal_successors(m, n)]
                assert len(found) == len(set(found))
                assert set(found) == expected, f"{m} -> {n}"

    def test_lexicographic_order(self):
        """Test that relations come sorted by image endpoints."""
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import enumerate_moments
        from gtl_cli.core.successor import temporal_successors

        m = enumerate_moments(closure(parse("p")))[2]
        intervals = [r.intervals() for r in temporal_successors(m, m)]
        assert intervals == sorted(intervals)
        assert len(intervals) == 4

    def test_no_successor(self):
        """Test that G p with p leading to a moment without p has no successor."""
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import Moment
        from gtl_cli.core.successor import temporal_successors

        sigma = closure(parse("G p"))
        assert temporal_successors(Moment(sigma, (sigma.full_mask,)), Moment(sigma, (0,))) == []

    def test_different_closures(self):
        """Test that moments over different closures are rejected."""
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.moments import enumerate_moments
        from gtl_cli.core.successor import temporal_successors

        m = enumerate_moments(closure(parse("p")))[0]
        n = enumerate_moments(closure(parse("q")))[0]
        with pytest.raises(ValueError):
            temporal_successors(m, n)

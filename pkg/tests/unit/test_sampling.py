"""Unit tests for random sampling and exhaustive scans."""

from fractions import Fraction

import pytest


class TestRandomModels:
    """Test random model and formula generation."""

    def test_real_model_values(self):
        """Test denominators, ranges and state counts."""
        import numpy as np

        from gtl_cli.core.sampling import random_real_model

        rng = np.random.default_rng(0)
        for _ in range(50):
            m = random_real_model(["p", "q"], rng, max_states=4, denominator=8)
            assert 1 <= m.flow.state_count <= 4
            assert 0 <= m.flow.loopback < m.flow.state_count
            for row in m.valuation.values():
                assert all(0 <= v <= 1 and (v * 8).denominator == 1 for v in row)

    def test_bimodel_bounds(self):
        """Test world and state bounds."""
        import numpy as np

        from gtl_cli.core.sampling import random_bimodel

        rng = np.random.default_rng(1)
        for _ in range(50):
            m = random_bimodel(["p"], rng, max_worlds=3, max_states=2)
            assert 1 <= m.world_count <= 3
            assert 1 <= m.flow.state_count <= 2

    def test_formula_closure_bound(self):
        """Test that random formulas respect the closure bound."""
        import numpy as np

        from gtl_cli.core.formula import closure, variables
        from gtl_cli.core.sampling import random_formula

        rng = np.random.default_rng(2)
        for _ in range(200):
            f = random_formula(rng, ("p", "q"), max_closure=6)
            assert len(closure(f)) <= 6
            assert variables(f) <= {"p", "q"}

    def test_formula_arguments(self):
        """Test argument validation."""
        import numpy as np

        from gtl_cli.core.sampling import random_formula

        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            random_formula(rng, max_closure=0)
        with pytest.raises(ValueError):
            random_formula(rng, names=())

    def test_seeded(self):
        """Test that a seed fixes the output."""
        import numpy as np

        from gtl_cli.core.sampling import random_formula

        a = [random_formula(np.random.default_rng(9)) for _ in range(3)]
        b = [random_formula(np.random.default_rng(9)) for _ in range(3)]
        assert a == b


class TestSampleCheck:
    """Test counterexample search on real models."""

    def test_finds_counterexample(self):
        """Test that p | ~p fails on some sampled model."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.sampling import sample_check
        from gtl_cli.core.semantics import eval_real

        f = parse("p | ~p")
        found = sample_check(f, n=200, seed=0)
        assert found is not None
        assert found.value < 1
        assert eval_real(found.model, f, found.state) == found.value

    def test_valid_formula(self):
        """Test that prelinearity survives sampling."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.sampling import sample_check

        assert sample_check(parse("(p -> q) | (q -> p)"), n=200, seed=0) is None

    def test_zero_models(self):
        """Test that no models means no counterexample."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.sampling import sample_check

        assert sample_check(parse("bot"), n=0) is None

    def test_negative_count(self):
        """Test that a negative model count is rejected."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.sampling import sample_check

        with pytest.raises(ValueError):
            sample_check(parse("p"), n=-1)

    def test_bottom_value(self):
        """Test the value reported for bot, which needs no variables."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.sampling import sample_check

        found = sample_check(parse("bot"), n=1, seed=0)
        assert found.state == 0
        assert found.value == Fraction(0)


class TestScan:
    """Test exhaustive scans of small bi-relational models."""

    def test_model_count(self):
        """Test the number of one-variable models up to 2 worlds and 2 states."""
        from gtl_cli.core.scan import iter_bimodels

        # worlds w, states s: s loopbacks and (w + 1) ** s height rows
        expected = sum(s * (w + 1) ** s for w in (1, 2) for s in (1, 2))
        assert sum(1 for _ in iter_bimodels(["p"], 2, 2)) == expected

    def test_rejects_empty_bounds(self):
        """Test that bounds must be positive."""
        from gtl_cli.core.scan import iter_bimodels

        with pytest.raises(ValueError):
            next(iter_bimodels(["p"], 0, 1))

    def test_excluded_middle(self):
        """Test that p | ~p fails once there are two worlds."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.scan import scan_globally_true

        result = scan_globally_true(parse("p | ~p"), max_worlds=2, max_states=1)
        assert not result.globally_true
        assert result.counterexample.world_count == 2

    @pytest.mark.slow
    def test_no_finite_countermodel(self):
        """Test that F (p -> X p) holds on every model up to 3 worlds and 4 states."""
        from gtl_cli.core.formula import parse
        from gtl_cli.core.scan import scan_globally_true

        result = scan_globally_true(parse("F (p -> X p)"), max_worlds=3, max_states=4)
        assert result.globally_true
        assert result.checked == 1776

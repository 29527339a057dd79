"""
Unit тесты для пар слов, оценки ошибки и трудных входов.
"""
import itertools

import pytest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from groups.base import equal_words, is_identity
from groups.free import cyclic
from groups.wreath import WreathGroup
from harness.estimate import (
    MIN_TRIALS,
    ErrorReport,
    LabeledPair,
    estimate_error,
    estimate_error_async,
    run_trial,
    wilson_interval,
)
from harness.hard import (
    check_ray,
    disjointness_for,
    disjointness_instance,
    expand_tvw,
    grigorchuk_instance,
    grigorchuk_phi,
    grigorchuk_truth,
    lamp_pair,
)
from harness.pairs import PairKind, gen_word_pair, random_word
from streaming.errors import ConstructionError, GenerationTimeout, InvalidArgumentError, RayError
from streaming.exact import counter_recipe
from streaming.linear import free_group_spec
from streaming.nilpotent import heisenberg_spec
from streaming.rng import generator, spawn
from streaming.words import Letter, parse_word, word


def _disjoint(x: str, y: str) -> bool:
    return not any(a == b == '1' for a, b in zip(x, y))


class TestPairs:
    """Тесты для генератора пар"""

    def test_equal_pairs(self, free2, seed):
        for i in range(20):
            u, v, truth = gen_word_pair(free2, 'equal', 10, spawn(seed, i))
            assert truth
            assert u != v
            assert len(u) <= 10 and len(v) <= 10
            assert equal_words(free2, u, v)

    def test_unequal_pairs(self, free2, seed):
        for i in range(20):
            u, v, truth = gen_word_pair(free2, PairKind.UNEQUAL, 10, spawn(seed, i))
            assert not truth
            assert not equal_words(free2, u, v)

    def test_reproducible(self, heis, seed):
        assert gen_word_pair(heis, 'equal', 12, seed) == gen_word_pair(heis, 'equal', 12, seed)

    def test_unequal_in_trivial_group_times_out(self, seed):
        trivial = cyclic(1)
        with pytest.raises(GenerationTimeout):
            gen_word_pair(trivial, 'unequal', 4, seed, max_attempts=5)

    def test_disjointness_pairs(self, s3_wr_z, seed):
        u, v, truth = gen_word_pair(s3_wr_z, PairKind.DISJOINTNESS, 28, seed)
        assert v == ()
        assert len(u) == 28
        assert truth == is_identity(s3_wr_z, u)

    def test_disjointness_needs_wreath(self, free2, seed):
        with pytest.raises(ConstructionError):
            gen_word_pair(free2, 'adversarial-disjointness', 28, seed)

    def test_grigorchuk_pairs(self, grigorchuk, seed):
        u, v, truth = gen_word_pair(grigorchuk, 'adversarial-grigorchuk', 128, seed)
        assert v == ()
        assert len(u) <= 128

    def test_unknown_kind(self, free2, seed):
        with pytest.raises(ValueError):
            gen_word_pair(free2, 'random', 10, seed)

    def test_short_max_len(self, free2, seed):
        with pytest.raises(InvalidArgumentError):
            gen_word_pair(free2, 'equal', 1, seed)

    def test_random_word(self):
        letters = [Letter('a'), Letter('b')]
        w = random_word(letters, 7, generator(3))
        assert len(w) == 7
        assert set(w) <= set(letters)
        assert random_word([], 5, generator(3)) == ()


class TestWilson:
    """Тесты для доверительного интервала"""

    def test_zero_failures(self):
        low, high = wilson_interval(0, 100)
        assert low == 0.0
        assert 0 < high < 0.1

    def test_contains_estimate(self):
        low, high = wilson_interval(30, 100)
        assert low < 0.3 < high

    def test_no_trials(self):
        with pytest.raises(InvalidArgumentError):
            wilson_interval(0, 0)


class TestEstimate:
    """Тесты для оценки ошибки"""

    def test_run_trial(self, f2_spec, seed):
        pair = LabeledPair(word('a', 'b', 'b-'), word('a'), True)
        assert not run_trial(f2_spec, pair, 4, seed)
        wrong = LabeledPair(word('a'), word('a'), False)
        assert run_trial(f2_spec, wrong, 4, seed)

    def test_exact_counter_never_fails(self, integers, seed):
        report = estimate_error(counter_recipe(['a']), integers, 'unequal', 12, MIN_TRIALS, seed, pairs=20)
        assert report.failures == 0
        assert report.passed
        assert report.bound == 0.0
        assert report.kind == 'unequal'

    def test_equal_pairs_are_one_sided(self, f2_spec, free2, seed):
        report = estimate_error(f2_spec, free2, 'equal', 12, 100, seed, pairs=20, spec='F(2)')
        assert report.failures == 0
        assert report.spec == 'F(2)'
        assert report.estimate == 0.0

    def test_too_few_trials(self, f2_spec, free2, seed):
        with pytest.raises(InvalidArgumentError):
            estimate_error(f2_spec, free2, 'equal', 12, 10, seed)

    def test_report_frame(self):
        report = ErrorReport.from_counts('Z', 8, 'equal', 200, 0, 0.0)
        frame = report.to_frame()
        assert len(frame) == 1
        assert frame['passed'].iloc[0]
        assert frame['ci_high'].iloc[0] > 0

    def test_failing_report(self):
        report = ErrorReport.from_counts('Z', 8, 'equal', 200, 50, 0.01)
        assert not report.passed

    @pytest.mark.asyncio
    async def test_async_matches_sync(self, integers, seed):
        recipe = counter_recipe(['a'])
        sync = estimate_error(recipe, integers, 'equal', 10, 120, seed, pairs=10)
        threaded = await estimate_error_async(recipe, integers, 'equal', 10, 120, seed, pairs=10, workers=3)
        assert threaded.failures == sync.failures == 0
        assert threaded.trials == 120

    @pytest.mark.slow
    def test_free_group_unequal(self, f2_spec, free2, seed):
        report = estimate_error(f2_spec, free2, 'unequal', 16, 2000, seed)
        assert report.passed

    @pytest.mark.slow
    def test_heisenberg_unequal(self, heis, seed):
        from streaming.nilpotent import heisenberg_spec
        report = estimate_error(heisenberg_spec(c=2, prime_policy='poly'), heis, 'unequal', 16, 2000, seed)
        assert report.passed

    @pytest.mark.slow
    def test_finite_base_wreath(self, seed):
        from combinators.wreath import wreath_finite
        from groups.finite import symmetric_group_s3
        from streaming.exact import TableRecipe

        s3 = symmetric_group_s3()
        z2 = [[0, 1], [1, 0]]
        recipe = wreath_finite(TableRecipe(s3.table, s3.letter_indices()), z2, {Letter('a'): 1, Letter('a', True): 1})
        oracle = WreathGroup(s3, cyclic(2))
        report = estimate_error(recipe, oracle, 'unequal', 8, 2000, seed)
        assert report.failures == 0


class TestDisjointness:
    """Тесты для слов дизъюнктности"""

    def test_length(self, s3_wr_z):
        assert len(disjointness_for(s3_wr_z, '101', '010')) == 28

    def test_identity_iff_disjoint(self, s3_wr_z):
        for x, y in itertools.product(['00', '01', '10', '11'], repeat=2):
            w = disjointness_for(s3_wr_z, x, y)
            assert is_identity(s3_wr_z, w) == _disjoint(x, y)

    def test_longer_strings(self, s3_wr_z):
        assert is_identity(s3_wr_z, disjointness_for(s3_wr_z, '1010', '0101'))
        assert not is_identity(s3_wr_z, disjointness_for(s3_wr_z, '1011', '0001'))

    def test_lamp_pair(self, s3_wr_z):
        assert lamp_pair(s3_wr_z) == (Letter('r'), Letter('s'))

    def test_abelian_lamps(self, integers):
        with pytest.raises(ConstructionError):
            lamp_pair(WreathGroup(integers, integers))

    def test_commuting_letters(self, s3_wr_z):
        with pytest.raises(ConstructionError):
            disjointness_instance('1', '1', s3_wr_z, Letter('r'), Letter('r'))

    def test_ray_must_not_return(self, s3, integers):
        wreath = WreathGroup(s3, integers)
        with pytest.raises(RayError):
            disjointness_instance('101', '010', wreath, Letter('r'), Letter('s'), ray=word('a', 'a-'))
        with pytest.raises(RayError):
            check_ray(integers, parse_word("a a-"))

    def test_bad_strings(self, s3_wr_z):
        with pytest.raises(InvalidArgumentError):
            disjointness_for(s3_wr_z, '10', '1')
        with pytest.raises(InvalidArgumentError):
            disjointness_for(s3_wr_z, '1x', '10')


class TestGrigorchukWords:
    """Тесты для трудных слов группы Григорчука"""

    def test_single_bits(self, grigorchuk):
        assert grigorchuk_truth('1', '0', grigorchuk)
        assert grigorchuk_truth('0', '1', grigorchuk)
        assert not grigorchuk_truth('1', '1', grigorchuk)

    def test_identity_iff_disjoint(self, grigorchuk):
        for x, y in itertools.product(['00', '01', '10', '11'], repeat=2):
            assert grigorchuk_truth(x, y, grigorchuk) == _disjoint(x, y)

    def test_unexpanded_length(self):
        # 4^{k+1} не является верхней границей: при k = 1 слово длиннее 16
        assert len(grigorchuk_instance('11', '11', expand=False)) == 20

    def test_expanded_length_fits_pair_bound(self):
        assert len(grigorchuk_instance('11', '11')) <= 8 * 4 ** 3

    def test_phi_requires_power_of_two(self):
        with pytest.raises(InvalidArgumentError):
            grigorchuk_instance('101', '011')
        with pytest.raises(InvalidArgumentError):
            grigorchuk_phi([word('t')] * 3, 1)

    def test_phi_rejects_foreign_letters(self):
        with pytest.raises(InvalidArgumentError):
            grigorchuk_phi([word('a')], 0)


def _tvw_entry(gen, length: int):
    letters = [Letter(s, inv) for s in 'tvw' for inv in (False, True)]
    return random_word(letters, length, gen)


class TestPhiHomomorphism:
    """φ_k переводит покомпонентное произведение кортежей в произведение образов"""

    @pytest.mark.parametrize("k", [1, 2])
    def test_random_tuples(self, grigorchuk, seed, k):
        for i in range(20):
            gen = generator(spawn(seed, k, i))
            xs = [_tvw_entry(gen, 3) for _ in range(2 ** k)]
            ys = [_tvw_entry(gen, 3) for _ in range(2 ** k)]
            product = grigorchuk_phi([x + y for x, y in zip(xs, ys)], k)
            separate = grigorchuk_phi(xs, k) + grigorchuk_phi(ys, k)
            assert equal_words(grigorchuk, expand_tvw(product), expand_tvw(separate))

    def test_trivial_entries(self, grigorchuk):
        assert is_identity(grigorchuk, expand_tvw(grigorchuk_phi([(), ()], 1)))
        assert not is_identity(grigorchuk, expand_tvw(grigorchuk_phi([word('t'), ()], 1)))


class TestFingerprintRates:
    """Односторонность и частота коллизий листовых отпечатков"""

    @pytest.mark.parametrize("oracle_name, recipe_factory", [
        ('free2', lambda: free_group_spec(2, c=4)),
        ('heis', lambda: heisenberg_spec(c=2)),
    ])
    def test_equal_pairs_never_separated(self, request, oracle_name, recipe_factory, seed):
        oracle = request.getfixturevalue(oracle_name)
        report = estimate_error(recipe_factory(), oracle, 'equal', 128, 500, seed, pairs=100)
        assert report.failures == 0
        assert report.estimate == 0.0

    @pytest.mark.slow
    def test_equal_pairs_across_many_seeds(self, free2, heis, seed):
        for recipe, oracle in ((free_group_spec(2, c=4), free2), (heisenberg_spec(c=2), heis)):
            report = estimate_error(recipe, oracle, 'equal', 128, 5000, seed, pairs=1000)
            assert report.failures == 0

    @pytest.mark.slow
    def test_linear_c1_collision_rate(self, free2, seed):
        recipe = free_group_spec(2, c=1)
        report = estimate_error(recipe, free2, 'unequal', 64, 5000, seed)
        assert report.bound == 1 / 64
        assert report.passed

    def test_heisenberg_polylog_space(self, seed):
        spec = heisenberg_spec(c=2)
        n = 2 ** 16
        machine = spec.build(n, seed)
        assert machine.p < 2 ** 32
        assert spec.space_bits(n) <= 3 * machine.p.bit_length()
        assert spec.epsilon_bound(n) == 1 / 256

    @pytest.mark.slow
    def test_heisenberg_polylog_collision_rate(self, heis, seed):
        report = estimate_error(heisenberg_spec(c=2), heis, 'unequal', 2 ** 16, 5000, seed, max_len=64)
        assert report.passed

import random
from fractions import Fraction

import pytest

from extensor.exterior import ExteriorElement
from extensor.identity_suite import (Report, alternative_suite, scalar_of,
                                     desargues_suite, distributive_suite,
                                     meet_suite, modular_suite, rand_extensor,
                                     rand_tensor, run_suite, verify_capelli,
                                     verify_desargues)
from extensor.tensor_power import TensorPowerElement, diamond


class TestDesargues:
    def test_random_configuration(self):
        rep = verify_desargues((1, 0, 0), (0, 1, 0), (0, 0, 1),
                               (1, 1, 1), (1, 2, 3), (2, 1, 5))
        assert rep.equal

    def test_concurrent_lines_make_both_sides_vanish(self):
        rng = random.Random(0)
        o = (1, 2, 1)
        base = [(1, 0, 0), (0, 1, 0), (1, 1, 1)]
        primed = [tuple(x + 2 * y for x, y in zip(p, o)) for p in base]
        rep = verify_desargues(*base, *primed)
        assert rep.equal
        assert Fraction(rep.lhs) == 0

    def test_degenerate_triangle_vanishes(self):
        p1, p2 = (1, 0, 0), (0, 1, 0)
        p3 = (1, 2, 0)   # on the line of the first two
        rep = verify_desargues(p1, p2, p3, (1, 1, 1), (1, 2, 3), (2, 1, 5))
        assert rep.equal
        assert Fraction(rep.rhs) == 0

    def test_suite_runs_clean(self):
        reports = desargues_suite(11, trials=30)
        assert all(r.equal for r in reports)


class TestAlternativeLaws:
    def test_single_vector_case(self):
        # r = 1 reduces to one meet on both sides
        reports = alternative_suite(5, trials_per=2)
        assert all(r.equal for r in reports)

    def test_dual_covectors_give_the_determinant(self):
        # with B_j the star of e_j and a unimodular integral, each meet
        # a_i & B_j is the coordinate a_i[j], so the signed sum is the
        # permutation expansion of the bracket of the a's
        from itertools import permutations
        from extensor.cg_algebra import PeanoSpace, standard_basis
        from extensor.exterior import ExteriorElement, make_extensor
        from extensor.identity_suite import (rand_vector, scalar_of,
                                             verify_alternative_r)
        rng = random.Random(7)
        for n in (2, 3):
            ps = PeanoSpace.standard(n)
            star = standard_basis(n).star
            bexts = [star(ExteriorElement.monomial(n, (j,)))
                     for j in range(1, n + 1)]
            for _ in range(10):
                avecs = [rand_vector(rng, n) for _ in range(n)]
                rep = verify_alternative_r(avecs, bexts, ps)
                assert rep.equal
                det = Fraction(0)
                for perm in permutations(range(n)):
                    inv = sum(1 for i in range(n) for j in range(i + 1, n)
                              if perm[i] > perm[j])
                    prod = Fraction(1)
                    for i in range(n):
                        prod *= avecs[i][perm[i]]
                    det += (-1) ** inv * prod
                lhs = ps.meet_chain(make_extensor(avecs, n), *bexts)
                assert scalar_of(lhs) == det == ps.bracket(avecs)

    def test_modular_triples(self):
        reports = modular_suite(5, trials=20)
        assert all(r.equal for r in reports)

    def test_modular_fixed_instance(self):
        from extensor.identity_suite import verify_modular
        n = 4
        a = ExteriorElement.monomial(n, (1,))
        b = ExteriorElement.monomial(n, (2, 4))
        c = ExteriorElement.monomial(n, (1, 2, 3))
        rep = verify_modular(a, b, c)
        assert rep.equal
        # the skew product from fold 1 to fold 3 vanishes on the triple
        t = TensorPowerElement.from_elements([a, b, c])
        assert not diamond(1, 3, 1, t)

    def test_modular_with_equal_ends(self):
        from extensor.identity_suite import rand_extensor, verify_modular
        rng = random.Random(9)
        for _ in range(10):
            c = rand_extensor(rng, 4, rng.randint(1, 3))
            b = rand_extensor(rng, 4, rng.randint(1, 3))
            assert verify_modular(c, b, c).equal

    def test_distributive_families(self):
        reports = distributive_suite(5, trials_per=4)
        assert all(r.equal for r in reports)


class TestCapelli:
    def test_single_commutator_layout(self):
        rng = random.Random(1)
        for _ in range(10):
            assert verify_capelli(1, rand_tensor(rng, 3, 3)).equal

    def test_two_row_expansion(self):
        rng = random.Random(2)
        for _ in range(5):
            assert verify_capelli(2, rand_tensor(rng, 3, 5)).equal

    def test_unit_fold_kills_queues(self):
        rng = random.Random(3)
        n = 3
        folds = [ExteriorElement.unit(n),
                 rand_extensor(rng, n, 1), rand_extensor(rng, n, 1),
                 rand_extensor(rng, n, 2), rand_extensor(rng, n, 2)]
        t = TensorPowerElement.from_elements(folds)
        rep = verify_capelli(2, t)
        assert rep.equal and "unit-fold0" in rep.instance
        # the composite equals the bare permanent here
        d = lambda j, i, x: diamond(1, j, i, x)
        lhs = d(5, 1, d(4, 1, d(1, 3, d(1, 2, t))))
        per = d(4, 2, d(5, 3, t)) + d(4, 3, d(5, 2, t))
        assert lhs == per

    def test_wrong_layout_rejected(self):
        with pytest.raises(ValueError):
            verify_capelli(2, TensorPowerElement.unit(3, 3))


class TestSuitePlumbing:
    def test_fixed_seed_reproduces_reports(self):
        a = [r.to_dict() for r in run_suite("meet", 42)]
        b = [r.to_dict() for r in run_suite("meet", 42)]
        assert a == b

    def test_different_seeds_differ(self):
        a = [r.instance for r in meet_suite(1, trials=10)]
        b = [r.instance for r in meet_suite(2, trials=10)]
        assert a != b

    def test_all_suites_pass(self):
        for name in ("hodge", "recovery"):
            assert all(r.equal for r in run_suite(name, 3))

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("nonsense", 0)

    def test_report_line_format(self):
        rep = Report("x", "y", "0", "0", True)
        assert rep.line() == "PASS x [y]"
        rep2 = Report("x", "y", "0", "1", False)
        assert rep2.line().startswith("FAIL")

import math

import numpy as np
import pytest

from h2supply.instances import oracle_instances
from h2supply.solver import DomainTooLarge, domain_product, enumerate_oracle, solve_lp

from randinst import make_instance, random_lp


def test_no_integers_equals_lp():
    rng = np.random.default_rng(8)
    inst = random_lp(rng, n=5, m=4)
    while solve_lp(inst).status != "optimal":
        inst = random_lp(rng, n=5, m=4)
    ref = enumerate_oracle(inst)
    assert ref.objective == pytest.approx(solve_lp(inst).objective, rel=1e-9)
    assert ref.lp_count == 1


def test_two_binaries_enumerate_four_lps():
    inst = make_instance([1.0, 2.0, 0.5], [[1.0, 1.0, 1.0]], ["G"], [0.5], np.zeros(3), [1.0, 1.0, 4.0],
                         np.array([True, True, False]))
    ref = enumerate_oracle(inst, propagate=False)
    assert ref.lp_count == 4
    assert ref.objective == pytest.approx(0.25)


def test_domain_cap_refuses_with_product():
    inst = make_instance([1.0] * 4, [[1.0] * 4], ["G"], [1.0], np.zeros(4), np.full(4, 99.0), np.ones(4, bool))
    with pytest.raises(DomainTooLarge) as err:
        enumerate_oracle(inst, domain_cap=1e6)
    assert err.value.product == pytest.approx(100.0 ** 4)


def test_unbounded_integer_domain_refused():
    inst = make_instance([1.0], [[1.0]], ["G"], [1.0], [0.0], [math.inf], np.array([True]))
    with pytest.raises(DomainTooLarge):
        enumerate_oracle(inst)


def test_bundled_oracle_set():
    pairs = list(oracle_instances())
    assert len(pairs) >= 20
    assert len({name for name, _ in pairs}) == len(pairs)
    assert all(domain_product(inst) <= 1e5 for _, inst in pairs)

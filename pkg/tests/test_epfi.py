import math

import numpy as np
import pytest

from pseudolab import constructions as K
from pseudolab import epfi as E
from pseudolab import linalg as L
from pseudolab.resource import KeyedEnsemble


def test_pseudoresource_delta_formula():
    pair = E.from_pseudoresource(K.coherence_pseudoresource(3.0, np.random.default_rng(0), kappa=8))
    assert pair.certified_delta == pytest.approx(0.125, abs=1e-12)
    assert pair.provenance == "from_pseudoresource"
    assert E.STATISTICAL_SURROGATE in pair.caveats


def test_pseudoresource_requires_gap_above_two():
    with pytest.raises(E.HypothesisError):
        E.from_pseudoresource(K.coherence_pseudoresource(1.5, np.random.default_rng(0)))


def test_overclaimed_gap_is_rejected():
    pair = K.coherence_pseudoresource(2.5, np.random.default_rng(0))
    pair.claimed_eta = 3.5
    with pytest.raises(E.HypothesisError):
        E.from_pseudoresource(pair)


def test_pure_pe_reduced_states():
    pure = K.pure_pseudoentanglement(np.random.default_rng(1))
    pair = E.from_pure_pseudoentanglement(pure)
    assert pair.certified_delta == pytest.approx((2 - 1 / (2 * math.e)) / 4, abs=1e-12)
    assert pair.left.dims == (4, 1)
    for k in pair.right.keys:
        assert np.allclose(pair.right.density(k), np.eye(4) / 4, atol=1e-10)
    assert E.verify_pairwise_far(pair)[0] == pytest.approx(0.75, abs=1e-9)


def test_pure_pe_rejects_mixed_input():
    mixed = KeyedEnsemble(0, {"": np.eye(4) / 4}, (2, 2))
    with pytest.raises(L.InvalidStateError):
        E.PurePePair(mixed, mixed, 1.0)


def test_pauli_separation_witness():
    sep = K.pauli_separation_pair()
    min_delta, rep = E.verify_pairwise_far(sep)
    assert min_delta == pytest.approx(0.75, abs=1e-12)
    assert rep.status == "pass"
    assert E.statistical_hiding_advantage(sep, 1) <= 1e-12
    # two copies reveal the key-averaged Bell structure: the mixtures now differ
    assert E.statistical_hiding_advantage(sep, 2) > 0.1


def test_mixed_pe_bell_triples_against_products():
    left, right = K.bell_vs_product_mixed(3)
    pair = E.from_mixed_pseudoentanglement(E.MixedPePair(left, right, 2.5))
    assert pair.certified_delta == pytest.approx(0.5 / 6, abs=1e-12)
    assert E.PROXY_MEASURE in pair.caveats
    assert E.verify_pairwise_far(pair)[0] >= pair.certified_delta


def test_mixed_pe_impossible_gap_at_sixteen_dimensions():
    left, right = K.bell_vs_product_mixed(2)
    with pytest.raises(E.HypothesisError):
        E.from_mixed_pseudoentanglement(E.MixedPePair(left, right, 2.1))


def test_hiding_size_limit():
    sep = K.pauli_separation_pair()
    with pytest.raises(ValueError):
        E.statistical_hiding_advantage(sep, 7)

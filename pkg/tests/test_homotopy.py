"""Null-homotopy solving, the stable criterion, and homotopy equivalences."""

import numpy as np
import pytest

from singeq import complexes, fixtures, homotopy
from singeq.complexes import (chain_map_from_callable, identity_chain_map,
                              zero_chain_map)
from singeq.homotopy import NO, UNKNOWN, YES


def x_id(t_per):
    x = np.array([[0, 0], [1, 0]], dtype=np.int64)
    return chain_map_from_callable(t_per, t_per, 0, 0, lambda n: x, 1, 1)


class TestNullHomotopy:
    def test_x_id_is_null_homotopic_with_2_periodic_homotopy(self, t_per):
        res = homotopy.null_homotopy(x_id(t_per))
        assert res.verdict == YES
        assert homotopy.verify_null_homotopy(x_id(t_per), res.homotopy)
        # the found homotopy alternates: s_n = (n mod 2) id
        assert res.homotopy.neg is None or res.homotopy.neg[0] % 2 == 0

    def test_no_1_periodic_homotopy_for_x_id(self, t_per):
        assert homotopy.search_periodic_homotopy(x_id(t_per), 1) is None
        assert homotopy.search_periodic_homotopy(x_id(t_per), 2) is not None

    def test_identity_on_contractible(self, contractible):
        res = homotopy.null_homotopy(identity_chain_map(contractible))
        assert res.verdict == YES
        assert res.strategy == "bounded"

    def test_identity_on_t_per_is_not_null_homotopic(self, t_per):
        res = homotopy.null_homotopy(identity_chain_map(t_per))
        assert res.verdict == NO
        assert res.strategy == "stable"

    def test_zero_map(self, t_per):
        res = homotopy.null_homotopy(zero_chain_map(t_per, t_per))
        assert res.verdict == YES

    def test_certificates_reverify(self, t_per, contractible):
        for f in (x_id(t_per), identity_chain_map(contractible)):
            res = homotopy.null_homotopy(f)
            assert res.certificate is not None
            assert homotopy.verify_certificate(res.certificate)


class TestStableCriterion:
    def test_stably_zero_x_id(self, t_per):
        # omega(x.id) is x acting on k, which is zero
        assert homotopy.stably_zero(x_id(t_per))

    def test_identity_not_stably_zero(self, t_per):
        # id_k does not factor through a projective: k -> A -> k composites
        # all vanish over D2
        assert not homotopy.stably_zero(identity_chain_map(t_per))

    def test_membership_predicates(self, t_per, contractible, k):
        assert homotopy.is_exP(t_per) and homotopy.is_exI(t_per)
        assert homotopy.is_exP(contractible)
        from singeq import functors
        assert not homotopy.is_exP(functors.stalk(k))


class TestHomotopyEquivalence:
    def test_identity_certificate(self, t_per):
        res = homotopy.homotopy_equivalence_certificate(
            identity_chain_map(t_per))
        assert res.verdict == YES
        assert homotopy.verify_certificate(res.certificate)

    def test_zero_endomorphism_is_not_an_equivalence(self, t_per):
        res = homotopy.homotopy_equivalence_certificate(
            zero_chain_map(t_per, t_per))
        assert res.verdict != YES

    def test_non_quasi_iso_refuted_by_cone(self, t_per, k):
        from singeq import functors
        z = zero_chain_map(functors.stalk(k), t_per)
        res = homotopy.homotopy_equivalence_certificate(z)
        assert res.verdict == NO

    def test_contractible_to_zero(self, contractible, D2):
        z = zero_chain_map(contractible, complexes.zero_complex(D2))
        res = homotopy.homotopy_equivalence_certificate(z)
        assert res.verdict == YES

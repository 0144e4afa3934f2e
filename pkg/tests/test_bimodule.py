import pytest

from braidcat import bimodule
from braidcat.bimodule import SizeBound, tensor_u_dimension, verify_inverse_bimodule
from braidcat.algebra import build_nakayama
from braidcat.scalars import PrimeField


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inverse_bimodule_complex(n):
    for i in range(1, n + 1):
        check = verify_inverse_bimodule(i, n)
        assert check.passed, check.details
        assert check.details["homology_dim"] == n * (n + 1)


def test_over_a_prime_field():
    assert verify_inverse_bimodule(2, 3, PrimeField(32003)).passed


def test_size_bound():
    with pytest.raises(SizeBound):
        verify_inverse_bimodule(1, 6)


def test_tensor_dimension():
    dim, independent = tensor_u_dimension(build_nakayama(3), 1)
    assert independent and dim > 0


def test_detects_a_wrong_sign(monkeypatch):
    original = bimodule._Bimodules.d0

    # negate only the component leaving the W summand, so d0 d1 no longer vanishes
    def flipped(self, key):
        out = original(self, key)
        return {k: -v for k, v in out.items()} if key[0] == "W" else out

    monkeypatch.setattr(bimodule._Bimodules, "d0", flipped)
    assert not verify_inverse_bimodule(1, 3).passed

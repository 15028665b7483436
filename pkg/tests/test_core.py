"""Storage, metric, permutation symbols, PRNG, and the JSON codec."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ternalg as ta
from ternalg.core import InputError, CodecError


def test_new_hypermatrix_zero():
    t = ta.new_hypermatrix(3, [0] * 27)
    assert t.shape == (3, 3, 3)
    assert ta.norm(t) == 0.0
    assert ta.hermitian_inner(t, t) == 0


def test_new_hypermatrix_length_mismatch():
    with pytest.raises(InputError, match="expected 8 entries"):
        ta.new_hypermatrix(2, [1] * 7)


def test_new_hypermatrix_nonfinite():
    entries = [0.0] * 27
    entries[4] = float("inf")
    with pytest.raises(InputError, match="entry 5"):
        ta.new_hypermatrix(3, entries)


def test_new_hypermatrix_canonical_order():
    # flat position of T_ijk is (i-1)*9 + (j-1)*3 + (k-1)
    entries = list(range(27))
    t = ta.new_hypermatrix(3, entries)
    assert t[1, 0, 2] == 9 + 0 + 2
    assert t[2, 2, 2] == 26


def test_hypermatrix_is_readonly():
    t = ta.new_hypermatrix(2, list(range(8)))
    with pytest.raises(ValueError):
        t[0, 0, 0] = 5.0


def test_levi_civita_entries():
    eps = ta.levi_civita()
    assert eps[0, 1, 2] == 1
    assert eps[1, 0, 2] == -1
    assert np.count_nonzero(eps) == 6
    assert np.einsum("ijk,ijk->", eps, eps) == 6


def test_levi_civita_from_entries_roundtrip():
    eps = ta.levi_civita()
    rebuilt = ta.new_hypermatrix(3, eps.ravel())
    assert np.array_equal(rebuilt, eps)
    assert np.count_nonzero(rebuilt) == 6


def test_tau_entries():
    tau = ta.tau()
    assert tau[2, 0, 1] == 1          # tau_312
    assert tau[0, 2, 1] == -1         # tau_132
    assert tau[0, 1, 2] == ta.QBAR    # tau_123
    assert np.count_nonzero(tau) == 6


def test_tau_cyclic_laws():
    # even permutations of (1,2,3): tau_ijk = q tau_jki; odd: qbar
    tau = ta.tau()
    even = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    for perm in itertools.permutations(range(3)):
        i, j, k = perm
        factor = ta.Q if perm in even else ta.QBAR
        assert abs(tau[i, j, k] - factor * tau[j, k, i]) < 1e-15


def test_tau_skew_in_first_two():
    tau = ta.tau()
    for i, j, k in itertools.product(range(3), repeat=3):
        assert tau[i, j, k] == -tau[j, i, k]


@pytest.mark.parametrize("direction", [1, 2, 3])
def test_slice_zero(direction):
    z = ta.new_hypermatrix(3, [0] * 27)
    assert np.array_equal(ta.slice_matrix(z, direction, 2), np.zeros((3, 3)))


def test_slice_tau_direction3():
    # (r,s) -> tau_rs1: entries (2,3) = q and (3,2) = -q only
    sl = ta.slice_matrix(ta.tau(), 3, 1)
    expected = np.zeros((3, 3), dtype=complex)
    expected[1, 2] = ta.Q
    expected[2, 1] = -ta.Q
    np.testing.assert_allclose(sl, expected, atol=1e-15)


def test_slice_levi_civita_direction1():
    sl = ta.slice_matrix(ta.levi_civita(), 1, 1)
    expected = np.zeros((3, 3))
    expected[1, 2] = 1
    expected[2, 1] = -1
    np.testing.assert_allclose(sl, expected, atol=0)


def test_slice_out_of_range():
    with pytest.raises(InputError):
        ta.slice_matrix(ta.levi_civita(), 1, 4)
    with pytest.raises(InputError):
        ta.slice_matrix(ta.levi_civita(), 4, 1)


@pytest.mark.parametrize("direction", [1, 2, 3])
def test_slice_reassembly(direction):
    from ternalg.core import assemble_slices

    t = ta.random_hypermatrix(3, 321)
    slices = [ta.slice_matrix(t, direction, m) for m in (1, 2, 3)]
    assert np.array_equal(assemble_slices(direction, slices), t)


def test_hermitian_inner_levi_civita():
    eps = ta.levi_civita()
    assert ta.hermitian_inner(eps, eps) == 6


def test_hermitian_inner_dim_mismatch():
    with pytest.raises(InputError, match="dimension mismatch"):
        ta.hermitian_inner(ta.random_hypermatrix(2, 0), ta.random_hypermatrix(3, 0))


_cx = st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e6)


@settings(max_examples=25, deadline=None)
@given(st.lists(_cx, min_size=8, max_size=8), st.lists(_cx, min_size=8, max_size=8))
def test_hermitian_inner_conjugate_symmetric(xs, ys):
    t = ta.new_hypermatrix(2, xs)
    u = ta.new_hypermatrix(2, ys)
    h1 = ta.hermitian_inner(t, u)
    h2 = ta.hermitian_inner(u, t)
    assert abs(h1 - h2.conjugate()) <= 1e-9 * (1 + abs(h1))


@settings(max_examples=25, deadline=None)
@given(st.lists(_cx, min_size=8, max_size=8), st.lists(_cx, min_size=8, max_size=8),
       _cx)
def test_hermitian_inner_linear_first_argument(xs, ys, lam):
    t = ta.new_hypermatrix(2, xs)
    u = ta.new_hypermatrix(2, ys)
    lhs = ta.hermitian_inner(lam * t, u)
    rhs = lam * ta.hermitian_inner(t, u)
    assert abs(lhs - rhs) <= 1e-6 * (1 + abs(rhs))


@settings(max_examples=25, deadline=None)
@given(st.lists(_cx, min_size=8, max_size=8))
def test_hermitian_inner_positive(xs):
    t = ta.new_hypermatrix(2, xs)
    val = ta.hermitian_inner(t, t)
    assert abs(val.imag) <= 1e-12 * max(val.real, 1.0)
    assert val.real >= 0
    if any(x != 0 for x in xs):
        assert val.real > 0


class TestPortableRng:
    """The generator is part of the data contract: fixed algorithm,
    fixed constants, same stream everywhere."""

    @staticmethod
    def _reference_stream(seed, count):
        mask = (1 << 64) - 1
        z = (seed + 0x9E3779B97F4A7C15) & mask
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        z ^= z >> 31
        x = z or 0x9E3779B97F4A7C15
        out = []
        for _ in range(count):
            x ^= x >> 12
            x = (x ^ (x << 25)) & mask
            x ^= x >> 27
            out.append((x * 0x2545F4914F6CDD1D) & mask)
        return out

    def test_matches_documented_algorithm(self):
        from ternalg._rng import PortableRng

        for seed in (0, 1, 12345, 2**63):
            rng = PortableRng(seed)
            assert [rng.next_u64() for _ in range(5)] == \
                self._reference_stream(seed, 5)

    def test_uniform_mapping(self):
        from ternalg._rng import PortableRng

        words = self._reference_stream(7, 4)
        rng = PortableRng(7)
        for w in words[:2]:
            assert rng.uniform() == (w >> 11) * 2.0**-53
        for w in words[2:]:
            assert rng.uniform_signed() == 2.0 * ((w >> 11) * 2.0**-53) - 1.0


def test_random_hypermatrix_deterministic():
    a = ta.random_hypermatrix(3, 7)
    b = ta.random_hypermatrix(3, 7)
    assert np.array_equal(a, b)


def test_random_hypermatrix_seed_sensitivity():
    a = ta.random_hypermatrix(3, 0)
    b = ta.random_hypermatrix(3, 1)
    assert a[0, 0, 0] != b[0, 0, 0]


@pytest.mark.parametrize("seed", [0, 3, 99])
def test_random_hypermatrix_range(seed):
    t = ta.random_hypermatrix(3, seed)
    assert t.size == 27
    assert np.abs(t.real).max() <= 1.0
    assert np.abs(t.imag).max() <= 1.0


def test_codec_roundtrip_seeded(tmp_path):
    t = ta.random_hypermatrix(3, 7)
    path = tmp_path / "t.json"
    ta.write_hypermatrix(path, t)
    assert np.array_equal(ta.read_hypermatrix(path), t)


_any_float = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(_any_float, _any_float), min_size=8, max_size=8))
def test_codec_roundtrip_bit_exact(tmp_path_factory, pairs):
    # full double range, including huge and subnormal values
    path = tmp_path_factory.mktemp("codec") / "t.json"
    t = ta.new_hypermatrix(2, [complex(re, im) for re, im in pairs])
    ta.write_hypermatrix(path, t)
    back = ta.read_hypermatrix(path)
    assert np.array_equal(back, t)


def test_codec_wrong_entry_count(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 3, "entries": ' +
                    str([[1.0, 0.0]] * 26).replace("'", '"') + "}")
    with pytest.raises(CodecError, match="expected 27 entries"):
        ta.read_hypermatrix(path)


def test_codec_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 3,\n  "entries": [[1, 0')
    with pytest.raises(CodecError, match="line 2"):
        ta.read_hypermatrix(path)


def test_codec_nonfinite(tmp_path):
    path = tmp_path / "bad.json"
    entries = [[0.0, 0.0]] * 8
    text = '{"dim": 2, "entries": %s}' % str(entries).replace(
        "[0.0, 0.0]", "[Infinity, 0.0]", 1)
    path.write_text(text)
    with pytest.raises(CodecError, match="non-finite"):
        ta.read_hypermatrix(path)


def test_codec_missing_field(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"entries": []}')
    with pytest.raises(CodecError, match="dim"):
        ta.read_hypermatrix(path)


def test_codec_malformed_pair(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 1, "entries": [[1.0]]}')
    with pytest.raises(CodecError, match="entry 1"):
        ta.read_hypermatrix(path)


def test_isclose_cx():
    assert ta.isclose_cx(1.0 + 0j, 1.0 + 1e-13j)
    assert not ta.isclose_cx(1.0 + 0j, 1.0 + 1e-9j)
    assert ta.isclose_cx(1e6 + 0j, 1e6 * (1 + 1e-11) + 0j)
    assert ta.isclose_cx(0j, 5e-8 + 0j, atol=1e-7)

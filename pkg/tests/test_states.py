import json

import numpy as np
import pytest

from bewitness import linalg, pauli, states


def test_target_coefficient_table():
    rho = states.rho_be()
    lam = rho.lambdas
    assert abs(lam[0] - 0.25) < 1e-15
    for k in range(1, 16):
        assert abs(abs(lam[k]) - 1 / 12) < 1e-15
    neg = tuple(int(i) + 1 for i in np.nonzero(lam < 0)[0])
    assert neg == states.NEGATIVE_INDICES == (7, 9, 11, 12, 16)


def test_target_spectrum_and_ppt():
    rep = states.ppt_check(states.rho_be())
    want = np.array([1 / 6] * 6 + [0.0] * 10)
    assert np.max(np.abs(rep.spectrum_state - want)) < 1e-10
    assert np.max(np.abs(rep.spectrum_pt - want)) < 1e-10
    assert rep.is_ppt
    assert abs(rep.ccnr - 1.5) < 1e-12


def test_ccnr_fast_path_matches_realignment():
    """sum|lambda| against the dense realignment trace norm."""
    basis = pauli.pauli_basis(2)
    rng = np.random.default_rng(5)
    for _ in range(100):
        lam = rng.normal(size=16) * 0.05
        lam[0] = 0.25
        st = states.BlochDiagonalState(n_copies=1, lambdas=lam)
        dense = states.ccnr(states.bloch_densify(lam, basis), basis)
        assert abs(st.ccnr_fast() - dense) < 1e-10


def test_realignment_entries_are_traces():
    """Spot checks of R[k,k'] = tr(op G_k (x) G_k') against literal traces."""
    basis = pauli.pauli_basis(1)
    rng = np.random.default_rng(6)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    r = states.realignment(m, basis)
    for k in rng.integers(0, 4, size=8):
        for l in rng.integers(0, 4, size=2):
            want = np.trace(m @ np.kron(basis[k], basis[l]))
            assert abs(r[k, l] - want) < 1e-12


def test_realignment_computational_preserves_singular_values():
    rng = np.random.default_rng(9)
    m = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    m = 0.5 * (m + m.conj().T)
    basis = pauli.pauli_basis(2)
    sv_basis = linalg.singular_values(states.realignment(m, basis))
    sv_comp = linalg.singular_values(states.realignment_computational(m, 4, 4))
    assert np.max(np.abs(sv_basis - sv_comp)) < 1e-10


def test_separable_product_states_pass_ccnr():
    rng = np.random.default_rng(17)
    for _ in range(25):
        ga = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        gb = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        ra = ga @ ga.conj().T
        rb = gb @ gb.conj().T
        op = np.kron(ra / np.trace(ra).real, rb / np.trace(rb).real)
        assert states.ccnr(op) <= 1 + 1e-9


def test_singlet_fails_both_criteria():
    psi = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
    rep = states.ppt_report(np.outer(psi, psi), 2, 2)
    assert abs(rep.min_eig_pt + 0.5) < 1e-12
    assert not rep.is_ppt
    assert abs(rep.ccnr - 2.0) < 1e-12


def test_tensor_power_ccnr_multiplicative():
    rho = states.rho_be()
    pair = states.tensor_power(rho, 2)
    assert abs(pair.ccnr_fast() - 2.25) < 1e-12
    rep = states.ppt_check(pair)
    assert rep.is_ppt and not rep.per_copy_certified


def test_three_copies_certified_per_copy():
    trip = states.tensor_power(states.rho_be(), 3)
    rep = states.ppt_check(trip)
    assert rep.per_copy_certified
    assert rep.is_ppt
    assert abs(rep.ccnr - 1.5**3) < 1e-12


def test_three_copy_non_power_rejected():
    trip = states.tensor_power(states.rho_be(), 3)
    lam = trip.lambdas.copy()
    lam[5] += 1e-3
    bent = states.BlochDiagonalState(n_copies=3, lambdas=lam)
    with pytest.raises(ValueError, match="tensor power"):
        states.ppt_check(bent)


def test_mix_with_white_noise_affine_in_ccnr():
    rho = states.rho_be()
    for v in (0.0, 0.25, 0.5, 0.75, 1.0):
        mixed = states.mix_with_white_noise(rho, v)
        assert abs(mixed.ccnr_fast() - (0.25 + v * 1.25)) < 1e-12
    assert abs(states.mix_with_white_noise(rho, 0.6).ccnr_fast() - 1.0) < 1e-12
    with pytest.raises(ValueError):
        states.mix_with_white_noise(rho, 1.5)


def test_mixture_stays_ppt():
    mixed = states.mix_with_white_noise(states.rho_be(), 0.6)
    assert states.ppt_check(mixed).is_ppt


def test_state_validation():
    with pytest.raises(ValueError, match="16"):
        states.BlochDiagonalState(n_copies=1, lambdas=np.zeros(15))
    lam = np.zeros(16)
    lam[0] = 0.3
    with pytest.raises(ValueError, match="1/4"):
        states.BlochDiagonalState(n_copies=1, lambdas=lam)
    with pytest.raises(ValueError):
        states.BlochDiagonalState(n_copies=0, lambdas=np.zeros(1))


def test_densify_copy_cap():
    trip = states.tensor_power(states.rho_be(), 3)
    with pytest.raises(ValueError, match="at most"):
        states.densify(trip)


def test_sign_pattern_zero_counts_positive():
    lam = np.zeros(16)
    lam[0] = 0.25
    lam[3] = -0.1
    st = states.BlochDiagonalState(n_copies=1, lambdas=lam)
    pattern = st.sign_pattern()
    assert pattern[0] == 1 and pattern[3] == -1 and pattern[5] == 1


def test_serialization_roundtrip(tmp_path):
    rho = states.rho_be()
    data = states.state_to_dict(rho)
    again = states.state_from_dict(data)
    assert again.n_copies == 1
    assert np.array_equal(again.lambdas, rho.lambdas)

    path = tmp_path / "state.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    loaded = states.load_state(str(path))
    assert np.array_equal(loaded.lambdas, rho.lambdas)


def test_serialization_rejects_wrong_convention_tag():
    data = states.state_to_dict(states.rho_be())
    data["convention"] = "k=4j+i+1"
    with pytest.raises(states.ConventionError, match="convention"):
        states.state_from_dict(data)


def test_convention_check_accepts_builtin():
    states.check_be_convention(states.rho_be())


def test_convention_check_rejects_swapped_digits():
    # the digit swap is a local unitary: same spectrum, different table
    swapped = states.rho_be(swap_digits=True)
    with pytest.raises(states.ConventionError, match="layout"):
        states.check_be_convention(swapped)
    rep = states.ppt_check(swapped)
    want = np.array([1 / 6] * 6 + [0.0] * 10)
    assert np.max(np.abs(rep.spectrum_state - want)) < 1e-10


def test_maximally_mixed_diagnostics():
    mm = states.mix_with_white_noise(states.rho_be(), 0.0)
    assert abs(mm.ccnr_fast() - 0.25) < 1e-15
    assert states.ppt_check(mm).is_ppt

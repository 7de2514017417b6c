import io

import numpy as np
import pytest

from abelfourier.groups import COMPACT, DISCRETE, GroupSpec
from abelfourier.transform import (
    FREQUENCY,
    TIME,
    MeasuredFunction,
    SideError,
    character_function,
    delta,
    dft_matrix,
    double_transform,
    forward,
    inverse,
    l2_norm,
    parseval_defect,
    read_csv,
    reflect,
    write_csv,
)


def random_function(rng, spec, side=TIME):
    vals = rng.standard_normal(spec.size) + 1j * rng.standard_normal(spec.size)
    return MeasuredFunction(spec, side, vals)


def random_spec(rng, max_factor=9, max_factors=3):
    orders = tuple(
        int(rng.integers(2, max_factor)) for _ in range(int(rng.integers(1, max_factors + 1)))
    )
    view = COMPACT if rng.integers(2) else DISCRETE
    return GroupSpec(orders=orders, view=view, mass=float(rng.uniform(0.25, 4.0)))


def test_measured_function_validation():
    spec = GroupSpec(orders=(4,))
    with pytest.raises(ValueError):
        MeasuredFunction(spec, "sideways", np.zeros(4, dtype=np.complex128))
    with pytest.raises(ValueError):
        MeasuredFunction(spec, TIME, np.zeros(3, dtype=np.complex128))
    with pytest.raises(ValueError):
        MeasuredFunction(spec, TIME, np.array([np.nan, 0, 0, 0]))


def test_side_errors():
    spec = GroupSpec(orders=(4,))
    f = delta(spec)
    with pytest.raises(SideError):
        inverse(f)
    with pytest.raises(SideError):
        forward(forward(f))


def test_delta_transform_is_flat():
    # discrete atoms 1: deltahat is identically 1
    spec = GroupSpec(orders=(5,), view=DISCRETE, mass=1.0)
    fhat = forward(delta(spec))
    assert np.allclose(fhat.values, 1.0)


def test_character_transform_is_point_mass():
    # compact mass alpha: charhat is alpha at that character, 0 elsewhere
    spec = GroupSpec(orders=(3, 4), view=COMPACT, mass=2.0)
    chi = (2, 3)
    fhat = forward(character_function(spec, chi))
    expected = np.zeros(spec.size, dtype=np.complex128)
    expected[spec.index_of(chi)] = spec.mass
    assert np.allclose(fhat.values, expected, atol=1e-12)


def test_direct_and_fft_agree():
    rng = np.random.default_rng(21)
    for _ in range(50):
        spec = random_spec(rng)
        f = random_function(rng, spec)
        a = forward(f, method="direct").values
        b = forward(f, method="fft").values
        assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, np.max(np.abs(a)))


def test_linearity():
    rng = np.random.default_rng(5)
    spec = GroupSpec(orders=(3, 5), view=COMPACT, mass=1.5)
    f, g = random_function(rng, spec), random_function(rng, spec)
    a, b = 1.3 - 0.4j, -2.0 + 0.7j
    combo = MeasuredFunction(spec, TIME, a * f.values + b * g.values)
    lhs = forward(combo).values
    rhs = a * forward(f).values + b * forward(g).values
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_inverse_of_forward_is_identity():
    rng = np.random.default_rng(9)
    for _ in range(50):
        spec = random_spec(rng)
        f = random_function(rng, spec)
        back = inverse(forward(f))
        assert np.max(np.abs(back.values - f.values)) < 1e-10


def test_parseval_random():
    rng = np.random.default_rng(13)
    for _ in range(100):
        spec = random_spec(rng)
        f = random_function(rng, spec)
        assert parseval_defect(f) < 1e-10 * max(1.0, l2_norm(f))


def test_double_transform_is_reflection():
    rng = np.random.default_rng(17)
    for _ in range(50):
        spec = random_spec(rng)
        f = random_function(rng, spec)
        twice = double_transform(f)
        refl = reflect(f)
        assert np.max(np.abs(twice.values - refl.values)) < 1e-10


def test_reflect_involution():
    rng = np.random.default_rng(23)
    spec = GroupSpec(orders=(4, 3, 2))
    f = random_function(rng, spec)
    assert np.array_equal(reflect(reflect(f)).values, f.values)


def test_reflect_matches_negation():
    spec = GroupSpec(orders=(4, 3))
    rng = np.random.default_rng(29)
    f = random_function(rng, spec)
    g = reflect(f)
    for x in spec.elements():
        assert g.values[spec.index_of(x)] == f.values[spec.index_of(spec.negate(x))]


def test_dft_matrix_unitary_scaled():
    spec = GroupSpec(orders=(3, 4))
    mat = dft_matrix(spec)
    gram = mat.conj().T @ mat
    assert np.allclose(gram, spec.size * np.eye(spec.size), atol=1e-10)


def test_atoms_by_side():
    spec = GroupSpec(orders=(4,), view=COMPACT, mass=1.0)
    f = delta(spec)
    assert f.atom == spec.primal_atom
    assert forward(f).atom == spec.dual_atom


def test_csv_roundtrip():
    rng = np.random.default_rng(31)
    for view in (COMPACT, DISCRETE):
        spec = GroupSpec(orders=(3, 2), view=view, mass=0.5)
        f = random_function(rng, spec)
        text = write_csv(f)
        g = read_csv(text)
        assert g.spec == spec
        assert g.side == TIME
        assert np.array_equal(g.values, f.values)


def test_csv_header_contents():
    spec = GroupSpec(orders=(2,), view=DISCRETE, mass=1.0)
    text = write_csv(delta(spec))
    lines = text.splitlines()
    assert lines[0] == "cyclic:2;view=discrete;mass=1,time"
    assert lines[1] == "index_tuple,re,im"


def test_csv_rejects_malformed():
    with pytest.raises(ValueError):
        read_csv("nope\nindex_tuple,re,im\n")
    spec = GroupSpec(orders=(3,))
    text = write_csv(delta(spec))
    truncated = "\n".join(text.splitlines()[:-1]) + "\n"
    with pytest.raises(ValueError):
        read_csv(truncated)


def test_csv_stream_write():
    spec = GroupSpec(orders=(2,))
    buf = io.StringIO()
    write_csv(delta(spec), stream=buf)
    assert read_csv(buf.getvalue()).spec == spec

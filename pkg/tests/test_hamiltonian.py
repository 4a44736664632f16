import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

from canham import (
    HamiltonianBlock,
    PiecewiseHamiltonian,
    SampledHamiltonian,
    ValidationError,
    read_hamiltonian_csv,
    write_text_atomic,
)


def random_piecewise(rng, n_blocks):
    """Blocks with positive-definite entries on a random half-integer grid."""
    edges = np.concatenate([[0.0], np.cumsum(rng.uniform(0.2, 1.5, n_blocks))])
    blocks = []
    for i in range(n_blocks):
        h11 = rng.uniform(0.3, 3.0)
        h22 = rng.uniform(0.3, 3.0)
        h12 = rng.uniform(-1.0, 1.0) * 0.99 * np.sqrt(h11 * h22)
        blocks.append(HamiltonianBlock(edges[i], edges[i + 1], h11, h12, h22))
    return PiecewiseHamiltonian(tuple(blocks))


def test_block_properties():
    b = HamiltonianBlock(0.0, 0.5, 2.0, 0.5, 1.0)
    assert b.det == pytest.approx(2.0 - 0.25)
    assert b.length == pytest.approx(0.5)
    assert_allclose(b.matrix, [[2.0, 0.5], [0.5, 1.0]])


def test_block_validation():
    with pytest.raises(ValidationError, match="length"):
        HamiltonianBlock(1.0, 1.0, 1.0, 0.0, 1.0)
    with pytest.raises(ValidationError, match="positive definite"):
        HamiltonianBlock(0.0, 1.0, -1.0, 0.0, 1.0)
    with pytest.raises(ValidationError, match="positive definite"):
        # det = 1*1 - 1.5^2 < 0
        HamiltonianBlock(0.0, 1.0, 1.0, 1.5, 1.0)


def test_piecewise_structure_checks():
    with pytest.raises(ValidationError, match="at least one block"):
        PiecewiseHamiltonian(())
    with pytest.raises(ValidationError, match="start at t = 0"):
        PiecewiseHamiltonian((HamiltonianBlock(0.5, 1.0, 1.0, 0.0, 1.0),))
    with pytest.raises(ValidationError, match="gap"):
        PiecewiseHamiltonian(
            (
                HamiltonianBlock(0.0, 0.5, 1.0, 0.0, 1.0),
                HamiltonianBlock(0.75, 1.0, 1.0, 0.0, 1.0),
            )
        )


def test_piecewise_accepts_bare_tuples():
    ham = PiecewiseHamiltonian(((0.0, 0.5, 1.0, 0.0, 1.0), (0.5, 2.0, 2.0, 0.0, 0.5)))
    assert isinstance(ham.blocks[1], HamiltonianBlock)
    assert ham.total_time == pytest.approx(2.0)
    assert ham.is_det_normalized()


def test_block_at_lookup():
    ham = PiecewiseHamiltonian(((0.0, 0.5, 1.0, 0.0, 1.0), (0.5, 1.0, 2.0, 0.0, 0.5)))
    assert ham.block_at(0.25).h11 == 1.0
    assert ham.block_at(0.75).h11 == 2.0
    # endpoints resolve to the block opening there; the final endpoint
    # belongs to the last block
    assert ham.block_at(0.5).h11 == 2.0
    assert ham.block_at(1.0).h11 == 2.0
    with pytest.raises(ValidationError, match="coverage"):
        ham.block_at(1.5)


def test_piecewise_csv_roundtrip_bytes():
    """17-significant-digit floats survive a write/read/write cycle exactly."""
    rng = np.random.default_rng(7)
    for _ in range(25):
        ham = random_piecewise(rng, rng.integers(1, 8))
        text = ham.to_csv()
        again = PiecewiseHamiltonian.from_csv(text)
        assert again.to_csv() == text
        for b1, b2 in zip(ham.blocks, again.blocks):
            assert b1 == b2


def test_piecewise_csv_write_read(tmp_path):
    ham = PiecewiseHamiltonian(((0.0, 0.5, 1.0, 0.0, 1.0),))
    path = str(tmp_path / "h.csv")
    ham.write_csv(path)
    assert PiecewiseHamiltonian.from_csv(path).blocks == ham.blocks


def test_piecewise_csv_errors():
    with pytest.raises(ValidationError, match="header"):
        PiecewiseHamiltonian.from_csv("a,b,c\n1,2,3\n")
    bad_width = "t_lo,t_hi,h11,h12,h22\n0,0.5,1,0\n"
    with pytest.raises(ValidationError, match="line 2"):
        PiecewiseHamiltonian.from_csv(bad_width)
    bad_float = "t_lo,t_hi,h11,h12,h22\n0,0.5,1,0,1\n0.5,1,x,0,1\n"
    with pytest.raises(ValidationError, match="line 3"):
        PiecewiseHamiltonian.from_csv(bad_float)


def test_sampled_validation():
    t = np.linspace(0.0, 1.0, 5)
    ones = np.ones(5)
    with pytest.raises(ValidationError, match="mismatched"):
        SampledHamiltonian(t, ones[:4], ones, ones)
    with pytest.raises(ValidationError, match="strictly increasing"):
        SampledHamiltonian(np.array([0.0, 0.5, 0.5]), ones[:3], 0 * ones[:3], ones[:3])
    with pytest.raises(ValidationError, match="positive definite"):
        SampledHamiltonian(t, ones, 1.5 * ones, ones)


def test_sampled_csv_roundtrip():
    rng = np.random.default_rng(21)
    t = np.sort(rng.uniform(0.0, 5.0, 12))
    h11 = rng.uniform(0.5, 2.0, 12)
    h12 = rng.uniform(-0.4, 0.4, 12)
    h22 = (1.0 + h12**2) / h11
    sam = SampledHamiltonian(t, h11, h12, h22)
    text = sam.to_csv()
    again = SampledHamiltonian.from_csv(text)
    assert again.to_csv() == text
    assert_allclose(again.t, t)
    with pytest.raises(ValidationError, match="header"):
        SampledHamiltonian.from_csv("x,y\n1,2\n")
    with pytest.raises(ValidationError, match="line 2"):
        SampledHamiltonian.from_csv("t,h11,h12,h22\n0,1,0\n")


def test_as_piecewise_blocks():
    t = np.array([0.0, 1.0, 3.0])
    h11 = np.array([1.0, 2.0, 4.0])
    h12 = np.array([0.0, 0.5, 0.5])
    sam = SampledHamiltonian(t, h11, h12, (1.0 + h12**2) / h11)
    ham = sam.as_piecewise()
    assert len(ham.blocks) == 2
    assert ham.blocks[0].h11 == pytest.approx(1.5)
    assert ham.blocks[0].h12 == pytest.approx(0.25)
    assert ham.blocks[1].h11 == pytest.approx(3.0)
    assert ham.is_det_normalized(1e-12)


def test_as_piecewise_extends_to_origin():
    sam = SampledHamiltonian([0.5, 1.0], [2.0, 2.0], [0.0, 0.0], [0.5, 0.5])
    ham = sam.as_piecewise()
    assert ham.blocks[0].t_lo == 0.0
    assert ham.blocks[0].t_hi == pytest.approx(0.5)
    assert ham.blocks[0].h11 == pytest.approx(2.0)
    with pytest.raises(ValidationError, match="two samples"):
        SampledHamiltonian([0.0], [1.0], [0.0], [1.0]).as_piecewise()
    with pytest.raises(ValidationError, match="negative"):
        SampledHamiltonian([-0.5, 1.0], [1.0, 1.0], [0.0, 0.0], [1.0, 1.0]).as_piecewise()


def test_read_hamiltonian_csv_dispatch(tmp_path):
    pw = PiecewiseHamiltonian(((0.0, 0.5, 1.0, 0.0, 1.0),))
    sam = SampledHamiltonian([0.0, 1.0], [1.0, 1.0], [0.0, 0.0], [1.0, 1.0])
    assert isinstance(read_hamiltonian_csv(pw.to_csv()), PiecewiseHamiltonian)
    assert isinstance(read_hamiltonian_csv(sam.to_csv()), SampledHamiltonian)
    p = tmp_path / "h.csv"
    p.write_text(pw.to_csv())
    assert isinstance(read_hamiltonian_csv(str(p)), PiecewiseHamiltonian)
    with pytest.raises(ValidationError, match="header"):
        read_hamiltonian_csv("a,b\n1,2\n")
    with pytest.raises(ValidationError, match="no such file"):
        read_hamiltonian_csv(str(tmp_path / "missing.csv"))


def test_write_text_atomic(tmp_path):
    path = str(tmp_path / "out.txt")
    write_text_atomic(path, "first\n")
    write_text_atomic(path, "second\n")
    with open(path) as fh:
        assert fh.read() == "second\n"
    # no stray temp files are left behind
    assert os.listdir(tmp_path) == ["out.txt"]

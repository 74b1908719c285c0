import numpy as np
import pytest

from conftest import random_rgb, small_config
from wdfp.errors import BadMagicError, LengthMismatchError, UnsupportedVersionError
from wdfp.matcher import cosine
from wdfp.pipelines import Fingerprint, Method, extract
from wdfp.store import HEADER_SIZE, file_size, read_fingerprint, write_fingerprint


def make_fingerprint(seed=0, m=32, levels=2):
    rng = np.random.default_rng(seed)
    return Fingerprint(
        method=Method.GRAY_WDLAW,
        values=rng.standard_normal(sum(3 * (m >> j) ** 2 for j in range(1, levels + 1))),
        m=m,
        levels=levels,
        wavelet="db4",
        sigma_n2=3.24,
    )


def test_header_is_29_bytes():
    # 4 magic + 2 version + 1 method + 4 m + 1 J + 1 filter id + 8 sigma + 8 length.
    assert HEADER_SIZE == 29


def test_file_size_formula(tmp_path):
    fp = make_fingerprint()
    path = tmp_path / "f.wdfp"
    write_fingerprint(fp, path)
    assert path.stat().st_size == HEADER_SIZE + 4 * fp.length
    assert path.stat().st_size == file_size(Method.GRAY_WDLAW, 32, 2)


def test_round_trip_metadata_and_payload(tmp_path):
    fp = make_fingerprint(seed=1)
    path = tmp_path / "f.wdfp"
    write_fingerprint(fp, path)
    back = read_fingerprint(path)
    assert back.method == fp.method
    assert back.m == fp.m and back.levels == fp.levels
    assert back.wavelet == fp.wavelet and back.sigma_n2 == fp.sigma_n2
    assert np.array_equal(back.values, fp.values.astype(np.float32))


def test_canonical_serialization(tmp_path):
    fp = make_fingerprint(seed=2)
    p1, p2 = tmp_path / "a.wdfp", tmp_path / "b.wdfp"
    write_fingerprint(fp, p1)
    write_fingerprint(read_fingerprint(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_cosine_precision_contract(tmp_path):
    img_a, img_b = random_rgb(32, seed=3), random_rgb(32, seed=4)
    cfg = small_config()
    fa = extract(Method.GRAY_WDLAW, img_a, cfg)
    fb = extract(Method.GRAY_WDLAW, img_b, cfg)
    write_fingerprint(fa, tmp_path / "a.wdfp")
    write_fingerprint(fb, tmp_path / "b.wdfp")
    full = cosine(fa, fb)
    narrowed = cosine(read_fingerprint(tmp_path / "a.wdfp"), read_fingerprint(tmp_path / "b.wdfp"))
    assert abs(full - narrowed) < 1e-5


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.wdfp"
    path.write_bytes(b"XXXX" + b"\x00" * 40)
    with pytest.raises(BadMagicError):
        read_fingerprint(path)


def test_unsupported_version(tmp_path):
    fp = make_fingerprint()
    path = tmp_path / "f.wdfp"
    write_fingerprint(fp, path)
    raw = bytearray(path.read_bytes())
    raw[4:6] = (99).to_bytes(2, "little")
    path.write_bytes(bytes(raw))
    with pytest.raises(UnsupportedVersionError):
        read_fingerprint(path)


def test_truncated_payload(tmp_path):
    fp = make_fingerprint()
    path = tmp_path / "f.wdfp"
    write_fingerprint(fp, path)
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(LengthMismatchError):
        read_fingerprint(path)


def test_declared_length_must_match_formula(tmp_path):
    fp = make_fingerprint()
    path = tmp_path / "f.wdfp"
    write_fingerprint(fp, path)
    raw = bytearray(path.read_bytes())
    raw[21:29] = (123).to_bytes(8, "little")
    path.write_bytes(bytes(raw))
    with pytest.raises(LengthMismatchError):
        read_fingerprint(path)


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        write_fingerprint(make_fingerprint(), tmp_path / "no" / "such" / "dir" / "f.wdfp")

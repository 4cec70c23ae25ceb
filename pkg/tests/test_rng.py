"""Tests for deterministic random streams."""

from src.engine.rng import BOOTSTRAP_STREAM, SUBSAMPLE_STREAM, derive_seed, random_seed, substream


class TestStreams:
    """Test substream and seed derivation."""

    def test_same_keys_same_stream(self):
        a = substream(42, BOOTSTRAP_STREAM, 0).integers(0, 1000, size=10)
        b = substream(42, BOOTSTRAP_STREAM, 0).integers(0, 1000, size=10)
        assert list(a) == list(b)

    def test_keys_separate_streams(self):
        a = substream(42, BOOTSTRAP_STREAM, 0).random(5)
        b = substream(42, BOOTSTRAP_STREAM, 1).random(5)
        c = substream(42, SUBSAMPLE_STREAM, 0).random(5)
        assert list(a) != list(b)
        assert list(a) != list(c)

    def test_derive_seed(self):
        seed = derive_seed(7, SUBSAMPLE_STREAM, 20, 3)

        assert seed == derive_seed(7, SUBSAMPLE_STREAM, 20, 3)
        assert seed != derive_seed(7, SUBSAMPLE_STREAM, 20, 4)
        assert 0 <= seed < 2**64

    def test_large_master_seed(self):
        substream(2**64 - 1, BOOTSTRAP_STREAM, 0).random()

    def test_random_seed_range(self):
        assert 0 <= random_seed() < 2**64

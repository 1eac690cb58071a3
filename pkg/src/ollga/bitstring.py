"""Packed bit strings and the generalized OneMax objective."""

from __future__ import annotations

from typing import Callable

import numpy as np

WORD_BITS = 64


class DimensionError(ValueError):
    """Raised when bit strings of different lengths are combined."""


def _pack(bits: np.ndarray) -> np.ndarray:
    packed = np.packbits(np.asarray(bits, dtype=bool), bitorder="little")
    n_words = -(-len(bits) // WORD_BITS)
    buf = np.zeros(n_words * 8, dtype=np.uint8)
    buf[: len(packed)] = packed
    return buf.view("<u8").copy()


def _tail_mask(n: int) -> np.uint64:
    rem = n % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


class BitString:
    """Immutable fixed-length bit string stored as little-endian 64-bit words.

    Padding bits of the last word are always zero, so word-wise XOR and
    popcount give exact Hamming distances.
    """

    __slots__ = ("_words", "_n")

    def __init__(self, words: np.ndarray, n: int):
        if n < 1:
            raise ValueError(f"length must be positive, got {n}")
        words = np.asarray(words, dtype=np.uint64)
        if words.shape != (-(-n // WORD_BITS),):
            raise DimensionError(f"{len(words)} words cannot hold exactly {n} bits")
        words = words.copy()
        words[-1] &= _tail_mask(n)
        words.flags.writeable = False
        self._words = words
        self._n = n

    @classmethod
    def from_bits(cls, bits) -> "BitString":
        arr = np.asarray(bits)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("bits must be a non-empty 1-d sequence")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("bits must be 0 or 1")
        return cls(_pack(arr.astype(bool)), len(arr))

    @classmethod
    def from_string(cls, s: str) -> "BitString":
        return cls.from_bits([int(ch) for ch in s])

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(np.zeros(-(-n // WORD_BITS), dtype=np.uint64), n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls.zeros(n).complement()

    @property
    def n(self) -> int:
        return self._n

    @property
    def words(self) -> np.ndarray:
        return self._words

    def __len__(self) -> int:
        return self._n

    def to_bits(self) -> np.ndarray:
        raw = np.unpackbits(self._words.view(np.uint8), bitorder="little")
        return raw[: self._n].copy()

    def __getitem__(self, i: int) -> int:
        if not -self._n <= i < self._n:
            raise IndexError(i)
        i %= self._n
        return int((self._words[i // WORD_BITS] >> np.uint64(i % WORD_BITS)) & np.uint64(1))

    def complement(self) -> "BitString":
        return BitString(~self._words, self._n)

    def flip(self, positions) -> "BitString":
        """Return a copy with the given (distinct) positions flipped."""
        mask = np.zeros(self._n, dtype=bool)
        mask[np.asarray(positions, dtype=np.intp)] = True
        return BitString(self._words ^ _pack(mask), self._n)

    def hamming(self, other: "BitString") -> int:
        _check_same_length(self, other)
        return int(np.bitwise_count(self._words ^ other._words).sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._n == other._n and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self._n, self._words.tobytes()))

    def __repr__(self) -> str:
        bits = "".join(map(str, self.to_bits()[:32]))
        tail = "..." if self._n > 32 else ""
        return f"BitString(n={self._n}, {bits}{tail})"


def _check_same_length(a: BitString, b: BitString) -> None:
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} != {b.n}")


def random_bitstring(n: int, rng: np.random.Generator) -> BitString:
    """Uniformly random bit string of length ``n``."""
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    return BitString.from_bits(rng.integers(0, 2, size=n, dtype=np.uint8))


class OneMaxInstance:
    """OneMax with a hidden target; counts every fitness query.

    ``transform`` optionally composes a strictly increasing map with the
    agreement count, which comparison-based algorithms must not notice.
    ``best_seen`` always tracks the raw agreement count, so the optimum is
    detected regardless of the transform.
    """

    def __init__(self, target: BitString, transform: Callable[[int], float] | None = None):
        self.target = target
        self.n = target.n
        self.transform = transform
        self.eval_count = 0
        self.best_seen = -1
        self.last_value = -1

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, transform=None) -> "OneMaxInstance":
        return cls(random_bitstring(n, rng), transform=transform)

    def agreement(self, x: BitString) -> int:
        """Uncharged agreement count, for analysis only."""
        _check_same_length(x, self.target)
        return self.n - x.hamming(self.target)

    def evaluate(self, x: BitString):
        value = self.agreement(x)
        self.eval_count += 1
        self.last_value = value
        if value > self.best_seen:
            self.best_seen = value
        if self.transform is not None:
            return self.transform(value)
        return value

    @property
    def solved(self) -> bool:
        return self.best_seen == self.n

    @property
    def last_was_optimal(self) -> bool:
        return self.last_value == self.n

    def __repr__(self) -> str:
        return f"OneMaxInstance(n={self.n}, evals={self.eval_count}, best={self.best_seen})"


def evaluate(inst: OneMaxInstance, x: BitString):
    """Charged fitness query: number of positions where ``x`` agrees with the target."""
    return inst.evaluate(x)

"""Truth tables for n-bit Boolean functions and the classical point oracle.

A function f: {0,1}^n -> {0,1} is materialized as its full truth table,
stored as a packed little-endian bitset indexed by the integer encoding of
the input string (bit x of the bitset is f(x)).  Tables are immutable and
safe to share across threads; all randomness comes from caller-supplied
generators.
"""

import enum
from dataclasses import dataclass

import numpy as np

# Largest bit-width for which tables are materialized (2**24 bits = 2 MiB).
N_MAX = 24


class FunctionClass(enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"


@dataclass(frozen=True)
class FunctionProfile:
    """Shape summary of a table: minority count m, minority bit, class.

    m is normalized to the minority count (m <= 2**(n-1)).  For constant
    tables minority_bit reports the single output value; for balanced
    tables it is 0 by convention, keeping the profile total and
    deterministic.
    """

    m: int
    minority_bit: int
    function_class: FunctionClass


class TruthTable:
    """Complete specification of an n-bit Boolean function."""

    __slots__ = ("n", "_packed")

    def __init__(self, n, packed):
        if not 1 <= n <= N_MAX:
            raise ValueError(f"bit-width n={n} outside [1, N_MAX={N_MAX}]")
        if len(packed) != -(-(1 << n) // 8):
            raise ValueError("packed bitset has the wrong length for n")
        super().__setattr__("n", n)
        super().__setattr__("_packed", bytes(packed))

    def __setattr__(self, name, value):
        raise AttributeError("TruthTable is immutable")

    @property
    def size(self):
        """Number of inputs, 2**n."""
        return 1 << self.n

    @classmethod
    def from_bits(cls, n, bits):
        """Build a table from an iterable of 2**n output bits."""
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        if arr.shape != ((1 << n),):
            raise ValueError(f"expected {1 << n} output bits, got {arr.shape}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("outputs must be 0 or 1")
        return cls(n, np.packbits(arr, bitorder="little").tobytes())

    def bits(self):
        """Outputs as a fresh uint8 array of length 2**n."""
        raw = np.frombuffer(self._packed, dtype=np.uint8)
        return np.unpackbits(raw, count=self.size, bitorder="little")

    def evaluate(self, x):
        """The classical oracle: one point query f(x)."""
        if not 0 <= x < self.size:
            raise ValueError(f"input {x} outside [0, 2**n) with n={self.n}")
        return (self._packed[x >> 3] >> (x & 7)) & 1

    __call__ = evaluate

    @property
    def ones_count(self):
        return int.from_bytes(self._packed, "little").bit_count()

    def __eq__(self, other):
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and self._packed == other._packed
        )

    def __hash__(self):
        return hash((self.n, self._packed))

    def __repr__(self):
        shown = "".join(str(self.evaluate(x)) for x in range(min(self.size, 16)))
        tail = "..." if self.size > 16 else ""
        return f"TruthTable(n={self.n}, outputs={shown}{tail})"

    def to_text(self):
        """Serialize to the 2-line text format (`n=<int>` then the bits)."""
        return f"n={self.n}\n" + "".join(str(self.evaluate(x)) for x in range(self.size)) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = text.splitlines()
        if len(lines) < 2 or not lines[0].startswith("n="):
            raise ValueError("function file must start with 'n=<int>' then one bit line")
        try:
            n = int(lines[0][2:])
        except ValueError:
            raise ValueError(f"unparseable bit-width line: {lines[0]!r}") from None
        row = lines[1].strip()
        if not 1 <= n <= N_MAX:
            raise ValueError(f"bit-width n={n} outside [1, N_MAX={N_MAX}]")
        if len(row) != (1 << n) or set(row) - {"0", "1"}:
            raise ValueError(f"expected {1 << n} characters of 0/1")
        return cls.from_bits(n, (int(c) for c in row))


def make_fm(n, m, majority_bit=0, ones_positions=None, rng=None):
    """Build a table outputting majority_bit on all but m inputs.

    The m exceptional ("minority") positions are given explicitly or drawn
    uniformly without replacement from ``rng``.  m may range over the full
    [0, 2**n]; m = 0 gives a constant table, m = 2**(n-1) a balanced one.
    """
    if not 1 <= n <= N_MAX:
        raise ValueError(f"bit-width n={n} outside [1, N_MAX={N_MAX}]")
    size = 1 << n
    if not 0 <= m <= size:
        raise ValueError(f"m={m} outside [0, 2**n={size}]")
    if majority_bit not in (0, 1):
        raise ValueError("majority_bit must be 0 or 1")
    if ones_positions is not None:
        positions = sorted(set(int(p) for p in ones_positions))
        if len(positions) != m:
            raise ValueError(f"need exactly m={m} distinct positions, got {len(positions)}")
        if positions and not (0 <= positions[0] and positions[-1] < size):
            raise ValueError("positions must lie in [0, 2**n)")
    elif m == 0:
        positions = []
    else:
        if rng is None:
            raise ValueError("an rng is required when ones_positions is omitted")
        positions = rng.choice(size, size=m, replace=False)
    bits = np.full(size, majority_bit, dtype=np.uint8)
    if m:
        bits[np.asarray(positions, dtype=np.int64)] = 1 - majority_bit
    return TruthTable.from_bits(n, bits)


def random_function(n, rng):
    """Draw a table uniformly from the 2**(2**n) functions on n bits."""
    if not 1 <= n <= N_MAX:
        raise ValueError(f"bit-width n={n} outside [1, N_MAX={N_MAX}]")
    return TruthTable.from_bits(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))


def profile(tt):
    """Classify a table as constant / balanced / unbalanced with minority count."""
    ones = tt.ones_count
    zeros = tt.size - ones
    m = min(ones, zeros)
    if m == 0:
        cls = FunctionClass.CONSTANT
        minority_bit = 1 if ones else 0  # the single output value
    elif ones == zeros:
        cls = FunctionClass.BALANCED
        minority_bit = 0
    else:
        cls = FunctionClass.UNBALANCED
        minority_bit = 1 if ones < zeros else 0
    return FunctionProfile(m=m, minority_bit=minority_bit, function_class=cls)


def evaluate(tt, x):
    """Module-level form of the point oracle."""
    return tt.evaluate(x)

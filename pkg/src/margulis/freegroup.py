"""Exact combinatorics of the rank-2 free group on x and y.

Letters are the integers 0..3 in the rank order x < x^-1 < y < y^-1
(written ``x X y Y``), so a letter's inverse is its rank XOR 1.  Word
enumeration packs a word into an unsigned integer, two bits per letter
behind a sentinel bit; the default cap, radius 14 with 9,565,937 words,
fits in memory as uint32 arrays.

All operations are pure functions on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

LETTER_NAMES = ("x", "X", "y", "Y")
_NAME_TO_LETTER = {name: i for i, name in enumerate(LETTER_NAMES)}

#: Largest enumerable ball radius; 2*(3^14 - 1) + 1 words is the point where
#: packed uint32 layers still take under 40 MB.
ENUMERATION_CAP = 14


def inverse_letter(letter: int) -> int:
    return letter ^ 1


@dataclass(frozen=True)
class ReducedWord:
    """A word over x, x^-1, y, y^-1 with no adjacent cancelling pair.

    The empty tuple is the identity.  Construction validates reducedness;
    use :func:`reduce` to build a word from an arbitrary letter sequence.
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ls = self.letters
        for i, letter in enumerate(ls):
            if not 0 <= letter <= 3:
                raise ValueError(f"letter {letter!r} outside 0..3")
            if i > 0 and ls[i - 1] == letter ^ 1:
                raise ValueError(
                    f"word {ls!r} is not reduced at position {i} "
                    f"({LETTER_NAMES[ls[i-1]]}{LETTER_NAMES[letter]} cancels)"
                )

    @classmethod
    def from_string(cls, text: str) -> "ReducedWord":
        """Parse e.g. ``'xyX'`` (uppercase marks an inverse); '1' or '' is the identity."""
        if text in ("", "1"):
            return cls()
        try:
            letters = tuple(_NAME_TO_LETTER[ch] for ch in text)
        except KeyError as exc:
            raise ValueError(f"unknown letter {exc.args[0]!r}; expected one of xXyY") from exc
        return cls(letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(LETTER_NAMES[letter] for letter in self.letters)

    def __repr__(self) -> str:
        return f"ReducedWord({str(self)!r})"

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return concat(self, other)

    def inverse(self) -> "ReducedWord":
        return invert(self)

    def __pow__(self, n: int) -> "ReducedWord":
        if n < 0:
            return invert(self) ** (-n)
        result = ReducedWord()
        for _ in range(n):
            result = concat(result, self)
        return result


def reduce(letters: Union[ReducedWord, str, Iterable[int]]) -> ReducedWord:
    """The unique reduced word equal to the given letter sequence.

    Accepts a ReducedWord (returned as is), a string over xXyY, or any
    iterable of letters 0..3.  Length never increases.
    """
    if isinstance(letters, ReducedWord):
        return letters
    if isinstance(letters, str):
        seq: Iterable[int] = (_parse_letter(ch) for ch in letters)
    else:
        seq = letters
    stack: list[int] = []
    for letter in seq:
        if not 0 <= letter <= 3:
            raise ValueError(f"letter {letter!r} outside 0..3")
        if stack and stack[-1] == letter ^ 1:
            stack.pop()
        else:
            stack.append(letter)
    return ReducedWord(tuple(stack))


def _parse_letter(ch: str) -> int:
    try:
        return _NAME_TO_LETTER[ch]
    except KeyError as exc:
        raise ValueError(f"unknown letter {ch!r}; expected one of xXyY") from exc


def concat(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    """Reduced product a*b; cancellation can only happen at the seam."""
    left, right = a.letters, b.letters
    i, j = len(left), 0
    while i > 0 and j < len(right) and left[i - 1] == right[j] ^ 1:
        i -= 1
        j += 1
    return ReducedWord(left[:i] + right[j:])


def invert(a: ReducedWord) -> ReducedWord:
    """The inverse word: reversed sequence with each letter inverted."""
    return ReducedWord(tuple(letter ^ 1 for letter in reversed(a.letters)))


def cyclic_reduce(t: ReducedWord) -> tuple[ReducedWord, ReducedWord]:
    """Split t = conjugator * core * conjugator^-1 with core cyclically reduced.

    The core's first and last letters are not mutually inverse, so powers of
    the core concatenate without cancellation.
    """
    ls = t.letters
    i, j = 0, len(ls) - 1
    while j - i >= 1 and ls[i] == ls[j] ^ 1:
        i += 1
        j -= 1
    return ReducedWord(ls[:i]), ReducedWord(ls[i : j + 1])


def count_cyclic_powers(t: ReducedWord, k: int) -> int:
    """How many integers n (of any sign, including 0) have |reduced(t^n)| <= k.

    For t = v * c * v^-1 with cyclically reduced core c, the reduced form of
    t^n is v * c^n * v^-1, of length 2|v| + |n|*|c| for n != 0; the count is
    therefore 1 + 2*max(0, floor((k - 2|v|)/|c|)), which never exceeds 2k+1.
    Small powers are cross-checked against explicit reduction.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if t.is_identity:
        return 1
    conjugator, core = cyclic_reduce(t)
    c, m = len(conjugator), len(core)
    max_n = max(0, (k - 2 * c) // m)

    power = ReducedWord()
    for n in range(1, min(8, max_n + 1) + 1):
        power = concat(power, t)
        if len(power) != 2 * c + n * m:
            raise AssertionError(
                f"cyclic decomposition disagrees with explicit reduction for {t}^{n}"
            )
    return 1 + 2 * max_n


# Letters allowed after a given last letter (everything but its inverse),
# in ascending rank order.
_ALLOWED_NEXT = np.array(
    [[m for m in range(4) if m != letter ^ 1] for letter in range(4)],
    dtype=np.uint32,
)


def _decode(code: int) -> tuple[int, ...]:
    length = (int(code).bit_length() - 1) // 2
    return tuple((code >> (2 * i)) & 3 for i in range(length))


class WordBall:
    """All reduced words of length <= radius, in (length, lex) order.

    Words are stored as packed codes, one uint32 array per length; iteration
    decodes lazily.  Layer k holds exactly 4*3^(k-1) words for k >= 1.
    """

    __slots__ = ("radius", "_layers")

    def __init__(self, radius: int, layers: list[np.ndarray]):
        self.radius = radius
        self._layers = layers

    @property
    def size(self) -> int:
        return sum(int(layer.size) for layer in self._layers)

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(int(layer.size) for layer in self._layers)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[ReducedWord]:
        for layer in self._layers:
            for code in layer:
                yield ReducedWord(_decode(int(code)))

    def __repr__(self) -> str:
        return f"WordBall(radius={self.radius}, size={self.size})"


def enumerate_ball(n: int, cap: int = ENUMERATION_CAP) -> WordBall:
    """The set of all reduced words of length <= n, without duplicates.

    Enumeration is deterministic: lexicographic by length, then by letter
    rank.  Radii above the cap are refused as a memory guard.
    """
    if n < 0:
        raise ValueError("radius must be nonnegative")
    if n > cap:
        raise ValueError(
            f"radius {n} exceeds the enumeration cap {cap}: "
            f"the ball would hold 2*(3^{n} - 1) + 1 = {2 * (3 ** n - 1) + 1} words; "
            "raise cap explicitly if you really have the memory"
        )
    layers = [np.array([1], dtype=np.uint32)]  # the empty word
    for k in range(1, n + 1):
        shift = np.uint32(2 * (k - 1))
        if k == 1:
            children = np.uint32(1 << 2) | np.arange(4, dtype=np.uint32)
        else:
            parents = layers[k - 1]
            last = (parents >> np.uint32(2 * (k - 2))) & np.uint32(3)
            steps = (_ALLOWED_NEXT[last] + np.uint32(3)) << shift
            children = (np.repeat(parents, 3).reshape(-1, 3) + steps).ravel()
        layers.append(children)
    return WordBall(n, layers)

"""Parameterized strings and their prev-encodings.

A parameterized string (p-string) is drawn from two disjoint alphabets: static
symbols, which must match literally, and parameter symbols, which match up to a
consistent renaming.  The prev-encoding replaces every parameter occurrence by
the distance to its previous occurrence (0 for the first one) and leaves static
symbols alone; two p-strings match iff their prev-encodings are equal.

Internally a prev-encoded string ("pv-string") is a tuple of ints:

* a parameter distance v >= 0 is stored as the int v itself,
* a static symbol is stored as a negative id assigned by the Alphabet.

All positions reported by this package are 1-based, matching the usual
convention for string indexing in the matching literature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class AlphabetError(ValueError):
    """A symbol could not be classified as static or parameter."""


class InvalidPvString(ValueError):
    """A purported prev-encoding violates the back-reference rules."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Static:
    """A static symbol; matches only itself."""

    symbol: str

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class Num:
    """A parameter back-reference distance (0 = first occurrence)."""

    value: int

    def __str__(self) -> str:
        return str(self.value)


PvSymbol = Union[Static, Num]


class Alphabet:
    """A static/parameter partition of the input symbols.

    Static symbols are interned to negative int codes in sorted symbol order,
    so equal alphabets always produce identical encodings.
    """

    __slots__ = ("sigma", "pi", "_codes")

    def __init__(self, sigma: Iterable[str], pi: Iterable[str]):
        self.sigma: tuple[str, ...] = tuple(sorted(set(sigma)))
        self.pi: frozenset[str] = frozenset(pi)
        clash = set(self.sigma) & self.pi
        if clash:
            raise AlphabetError(f"symbols in both alphabets: {sorted(clash)!r}")
        self._codes = {s: -(i + 1) for i, s in enumerate(self.sigma)}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Alphabet)
            and self.sigma == other.sigma
            and self.pi == other.pi
        )

    def __hash__(self) -> int:
        return hash((self.sigma, self.pi))

    def __repr__(self) -> str:
        return f"Alphabet(sigma={''.join(self.sigma)!r}, pi={''.join(sorted(self.pi))!r})"

    def is_static(self, sym: str) -> bool:
        return sym in self._codes

    def is_param(self, sym: str) -> bool:
        return sym in self.pi

    def static_code(self, sym: str) -> int:
        try:
            return self._codes[sym]
        except KeyError:
            raise AlphabetError(f"{sym!r} is not a static symbol") from None

    def static_symbol(self, code: int) -> str:
        return self.sigma[-code - 1]

    def encode_prev(self, raw: Sequence[str]) -> tuple[int, ...]:
        """prev-encode a raw symbol sequence to internal int codes."""
        out = []
        last: dict[str, int] = {}
        codes = self._codes
        pi = self.pi
        for i, sym in enumerate(raw):
            c = codes.get(sym)
            if c is not None:
                out.append(c)
            elif sym in pi:
                j = last.get(sym)
                out.append(0 if j is None else i - j)
                last[sym] = i
            else:
                raise AlphabetError(
                    f"symbol {sym!r} at position {i + 1} is in neither alphabet"
                )
        return tuple(out)

    @classmethod
    def from_text(cls, raw: Sequence[str], sigma: Iterable[str]) -> "Alphabet":
        """Build an alphabet where every non-static symbol of `raw` is a parameter."""
        sig = set(sigma)
        return cls(sig, {s for s in raw if s not in sig})


def _symbol_of_code(code: int, alphabet: Alphabet) -> PvSymbol:
    return Num(code) if code >= 0 else Static(alphabet.static_symbol(code))


def _code_of_symbol(sym: PvSymbol, alphabet: Alphabet) -> int:
    if isinstance(sym, Num):
        if sym.value < 0:
            raise InvalidPvString(f"negative distance {sym.value}")
        return sym.value
    return alphabet.static_code(sym.symbol)


def _format_tokens(tokens: Sequence[str]) -> str:
    if all(len(t) == 1 for t in tokens):
        return "".join(tokens)
    return " ".join(tokens)


class PString:
    """A parameterized string: raw symbols plus their alphabet."""

    __slots__ = ("raw", "alphabet", "_prev")

    def __init__(self, raw: Sequence[str], alphabet: Alphabet):
        self.raw: tuple[str, ...] = tuple(raw)
        self.alphabet = alphabet
        self._prev: "PvString | None" = None

    def __len__(self) -> int:
        return len(self.raw)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PString)
            and self.raw == other.raw
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return hash((self.raw, self.alphabet))

    def __str__(self) -> str:
        return _format_tokens(self.raw)

    def __repr__(self) -> str:
        return f"PString({str(self)!r})"

    def prev(self) -> "PvString":
        if self._prev is None:
            self._prev = PvString._from_codes(
                self.alphabet.encode_prev(self.raw), self.alphabet
            )
        return self._prev


class PvString:
    """A prev-encoded string over a given alphabet.

    Supports 0-based Python indexing; `factor(i, j)` gives the 1-based
    inclusive window as plain symbols (re-encode it to get a pv-string again).
    """

    __slots__ = ("codes", "alphabet")

    def __init__(self, symbols: Iterable[PvSymbol], alphabet: Alphabet):
        codes = tuple(_code_of_symbol(s, alphabet) for s in symbols)
        _check_codes(codes)
        self.codes = codes
        self.alphabet = alphabet

    @classmethod
    def _from_codes(cls, codes: tuple[int, ...], alphabet: Alphabet) -> "PvString":
        pv = object.__new__(cls)
        pv.codes = codes
        pv.alphabet = alphabet
        return pv

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[PvSymbol]:
        return iter(self.symbols())

    def __getitem__(self, i: int) -> PvSymbol:
        return _symbol_of_code(self.codes[i], self.alphabet)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PvString)
            and self.codes == other.codes
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return hash((self.codes, self.alphabet))

    def symbols(self) -> tuple[PvSymbol, ...]:
        return tuple(_symbol_of_code(c, self.alphabet) for c in self.codes)

    def factor(self, i: int, j: int) -> tuple[PvSymbol, ...]:
        """Symbols at 1-based positions i..j inclusive (not re-encoded)."""
        return tuple(_symbol_of_code(c, self.alphabet) for c in self.codes[i - 1 : j])

    def window(self, i: int, j: int) -> "PvString":
        """The factor at 1-based positions i..j inclusive, re-encoded."""
        return PvString._from_codes(
            _re_encode_codes(self.codes[i - 1 : j]), self.alphabet
        )

    def __str__(self) -> str:
        return _format_tokens(
            [str(c) if c >= 0 else self.alphabet.static_symbol(c) for c in self.codes]
        )

    def __repr__(self) -> str:
        return f"PvString({str(self)!r})"


def _check_codes(codes: Sequence[int]) -> None:
    """Raise InvalidPvString unless `codes` is a well-formed prev-encoding."""
    for i, c in enumerate(codes):
        if c <= 0:
            continue
        j = i - c
        if j < 0:
            raise InvalidPvString(
                f"position {i + 1} points before the string", position=i + 1
            )
        if codes[j] < 0:
            raise InvalidPvString(
                f"position {i + 1} points at a static symbol", position=i + 1
            )
        # the referenced occurrence must be the *previous* one: no position
        # strictly between j and i may point back at j as well
        for m in range(j + 1, i):
            if codes[m] > 0 and m - codes[m] == j:
                raise InvalidPvString(
                    f"position {i + 1} skips a closer occurrence at {m + 1}",
                    position=i + 1,
                )


def prev_encode(s: PString) -> PvString:
    """The prev-encoding of a p-string (parameters become back-distances)."""
    return s.prev()


def prev_decode(x: PvString, pool: Sequence[str] | None = None) -> PString:
    """Reconstruct a p-string whose prev-encoding is `x`.

    Fresh parameter names are drawn from `pool` (default: p0, p1, ... skipping
    any collision with the static alphabet).  Raises InvalidPvString for
    ill-formed input and AlphabetError if the pool is unusable.
    """
    codes = x.codes
    sigma = set(x.alphabet.sigma)
    if pool is not None:
        for name in pool:
            if name in sigma:
                raise AlphabetError(f"pool name {name!r} collides with a static symbol")

    def fresh_names() -> Iterator[str]:
        if pool is not None:
            yield from pool
            return
        i = 0
        while True:
            name = f"p{i}"
            if name not in sigma:
                yield name
            i += 1

    names = fresh_names()
    raw: list[str] = []
    used: list[str] = []
    for i, c in enumerate(codes):
        if c < 0:
            raw.append(x.alphabet.static_symbol(c))
        elif c == 0:
            try:
                name = next(names)
            except StopIteration:
                raise AlphabetError("parameter name pool exhausted") from None
            used.append(name)
            raw.append(name)
        else:
            j = i - c
            if j < 0 or codes[j] < 0:
                raise InvalidPvString(
                    f"position {i + 1} has no parameter to refer back to",
                    position=i + 1,
                )
            raw.append(raw[j])
    out = PString(raw, Alphabet(x.alphabet.sigma, used))
    got = out.prev().codes
    if got != codes:
        bad = next(i for i, (a, b) in enumerate(zip(got, codes)) if a != b)
        raise InvalidPvString(
            f"position {bad + 1} skips a closer occurrence", position=bad + 1
        )
    return out


def is_valid_pv(codes: Sequence[int]) -> bool:
    """True iff the int codes form a well-formed prev-encoding."""
    try:
        _check_codes(codes)
        return True
    except InvalidPvString:
        return False


def _z(code: int, j: int) -> int:
    """Internal z_adjust on int codes: zero out back-references past j."""
    return 0 if code > j else code


def z_adjust(a: PvSymbol, j: int) -> PvSymbol:
    """Replace a back-distance that escapes a length-j context by 0.

    Static symbols and distances <= j pass through unchanged.
    """
    if isinstance(a, Num) and a.value > j:
        return Num(0)
    return a


def _re_encode_codes(codes: Sequence[int]) -> tuple[int, ...]:
    return tuple(0 if c > j else c for j, c in enumerate(codes))


def re_encode(
    x: PvString | Sequence[PvSymbol], alphabet: Alphabet | None = None
) -> PvString:
    """Re-encode a factor of a pv-string so it stands alone.

    Position i keeps its symbol unless it is a distance pointing before the
    factor, which becomes 0.  The result is itself a valid pv-string.  For a
    plain symbol sequence, pass the source alphabet to keep static symbol
    identities stable; otherwise one is inferred from the symbols present.
    """
    if isinstance(x, PvString):
        return PvString._from_codes(_re_encode_codes(x.codes), x.alphabet)
    symbols = tuple(x)
    if alphabet is None:
        alphabet = _infer_alphabet(symbols)
    codes = _re_encode_codes(tuple(_code_of_symbol(s, alphabet) for s in symbols))
    out = PvString._from_codes(codes, alphabet)
    _check_codes(out.codes)
    return out


def _infer_alphabet(symbols: Sequence[PvSymbol]) -> Alphabet:
    return Alphabet({s.symbol for s in symbols if isinstance(s, Static)}, ())


def _pv_reverse_codes(codes: Sequence[int]) -> tuple[int, ...]:
    # Position j of the reversed sequence refers *forward* to j + codes[j]; in a
    # valid pv-string those forward targets are distinct, so a single map from
    # target position back to j rewrites every distance in one pass.
    rev = codes[::-1]
    fwd: dict[int, int] = {}
    out = []
    for i, c in enumerate(rev, start=1):
        if c < 0:
            out.append(c)
        else:
            j = fwd.get(i)
            out.append(0 if j is None else i - j)
        if c > 0:
            fwd[i + c] = i
    return tuple(out)


def pv_reverse(x: PvString) -> PvString:
    """The prev-encoding of the reversal: pv_reverse(prev(S)) = prev(reverse(S))."""
    out = PvString._from_codes(_pv_reverse_codes(x.codes), x.alphabet)
    return out


def prec_less(a: int, b: int) -> bool:
    """Strict label order on distances: 1 < 2 < 3 < ... < 0 (0 is greatest)."""
    if a < 0 or b < 0:
        raise ValueError("prec_less compares non-negative distances only")
    if a == b:
        return False
    return b == 0 or (a != 0 and a < b)


def prec_min(values: Iterable[int]) -> int:
    """Least distance under prec_less; raises ValueError on an empty set."""
    best: int | None = None
    for v in values:
        if best is None or prec_less(v, best):
            best = v
    if best is None:
        raise ValueError("prec_min of an empty set")
    return best


def prec_max(values: Iterable[int]) -> int:
    """Greatest distance under prec_less; raises ValueError on an empty set."""
    best: int | None = None
    for v in values:
        if best is None or prec_less(best, v):
            best = v
    if best is None:
        raise ValueError("prec_max of an empty set")
    return best


def p_match(s1: PString, s2: PString) -> bool:
    """True iff the two p-strings are equal up to renaming parameters."""
    if s1.alphabet != s2.alphabet:
        raise AlphabetError("p_match requires both strings over the same alphabet")
    return s1.prev().codes == s2.prev().codes


def pattern_codes(p: PString | PvString, alphabet: Alphabet) -> tuple[int, ...]:
    """prev-codes of a pattern checked for compatibility with a text alphabet.

    The pattern may use its own parameter names, but static symbols must come
    from the same static alphabet or the encodings are not comparable.
    """
    pv = p.prev() if isinstance(p, PString) else p
    if pv.alphabet.sigma != alphabet.sigma:
        raise AlphabetError("pattern and text use different static alphabets")
    return pv.codes


def label_sort_key(code: int, alphabet: Alphabet):
    """Deterministic edge-label order: statics by symbol, then 1,2,..., then 0."""
    if code < 0:
        return (0, alphabet.static_symbol(code), 0)
    return (1, "", (1, 0) if code == 0 else (0, code))

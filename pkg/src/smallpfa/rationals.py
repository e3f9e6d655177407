"""Exact scalars and the decimal digit words fed into the matrix gadgets.

All scalars are :class:`fractions.Fraction`. Digit words are plain strings of
the characters ``0``-``9``; the gadget constructors only accept the digits
``1`` and ``2`` in even-length blocks (``11`` and ``12``).
"""

from fractions import Fraction

__all__ = [
    "Fraction",
    "fractional_value",
    "pow10_neg",
    "recode_binary",
    "check_gadget_word",
    "parse_rational",
    "format_rational",
]


def pow10_neg(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"exponent must be nonnegative, got {n}")
    return Fraction(1, 10**n)


def fractional_value(u: str) -> Fraction:
    """Value of ``0.u`` read as a decimal fraction.

    >>> fractional_value("432100")
    Fraction(4321, 10000)
    """
    if not u:
        return Fraction(0)
    if not u.isdigit():
        raise ValueError(f"not a digit word: {u!r}")
    return Fraction(int(u), 10 ** len(u))


def recode_binary(word, alphabet) -> str:
    """Replace the first letter of ``alphabet`` by ``11`` and the second by ``12``."""
    alphabet = list(alphabet)
    if len(alphabet) != 2:
        raise ValueError(f"need a 2-letter alphabet, got {alphabet!r}")
    table = {alphabet[0]: "11", alphabet[1]: "12"}
    try:
        return "".join(table[c] for c in word)
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]!r} not in alphabet {alphabet!r}") from None


def check_gadget_word(u: str) -> None:
    # gadgets rely on the {11,12} block structure to avoid trailing zeros
    if len(u) % 2:
        raise ValueError(f"gadget word must have even length: {u!r}")
    for i in range(0, len(u), 2):
        if u[i : i + 2] not in ("11", "12"):
            raise ValueError(f"gadget word must consist of 11/12 blocks: {u!r}")


def parse_rational(text) -> Fraction:
    """Accept ``"p/q"``, ``"p"``, ints, or Fractions; floats are refused."""
    if isinstance(text, float):
        raise TypeError("floats are not exact; pass a string 'p/q'")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"

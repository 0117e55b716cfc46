"""The pairing bijection <n, j> = 2^n (2j + 1) - 1 of N x N onto N."""

# first coordinates above this would produce integers of more than 2**27 bits
MAX_EXPONENT = 1 << 27


def pair_nat(n: int, j: int) -> int:
    if n < 0 or j < 0:
        raise ValueError("pairing is defined on naturals only")
    if n > MAX_EXPONENT:
        raise OverflowError(f"<n, j> with n of {n.bit_length()} bits is too large to represent")
    return (1 << n) * (2 * j + 1) - 1


def unpair_nat(x: int) -> tuple[int, int]:
    """Inverse of :func:`pair_nat`."""
    if x < 0:
        raise ValueError("pairing is defined on naturals only")
    y = x + 1
    n = (y & -y).bit_length() - 1
    return n, (y >> n) // 2


def encode_list(xs) -> int:
    """Code a list of length >= 1 as <len, <x1, <x2, ... x_len>>>."""
    xs = list(xs)
    if not xs:
        raise ValueError("cannot code the empty list")
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = pair_nat(x, acc)
    return pair_nat(len(xs), acc)


def decode_list(code: int, length: int | None = None) -> list[int] | None:
    """Partial inverse of :func:`encode_list`; None when ``code`` codes no list.

    With ``length`` given, only lists of that length are accepted.
    """
    n, rest = unpair_nat(code)
    if n == 0 or (length is not None and n != length):
        return None
    out = []
    for _ in range(n - 1):
        head, rest = unpair_nat(rest)
        out.append(head)
    out.append(rest)
    return out

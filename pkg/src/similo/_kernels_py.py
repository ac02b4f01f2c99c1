"""Pure-Python edit-distance kernel, used when the compiled extension is absent."""

BACKEND = "python"


def levenshtein(a: str, b: str) -> int:
    """Unit-cost Levenshtein distance between two strings."""
    if a == b:
        return 0
    # Shared prefixes/suffixes never contribute to the distance; stripping
    # them keeps the DP small for near-identical inputs such as XPaths.
    lo = 0
    hi_a, hi_b = len(a), len(b)
    while lo < hi_a and lo < hi_b and a[lo] == b[lo]:
        lo += 1
    while hi_a > lo and hi_b > lo and a[hi_a - 1] == b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    a = a[lo:hi_a]
    b = b[lo:hi_b]
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a

    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        append = current.append
        for j, cb in enumerate(b, start=1):
            append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]

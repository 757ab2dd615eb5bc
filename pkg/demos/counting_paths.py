"""
Counting walks exactly
======================

Closed forms for the number of walks, checked against brute enumeration.
"""

from walkident.walks import (
    avoids, closed_form_T, count_avoiding, count_paths, count_touching,
    end_at, enumerate_paths, oracle_count, touches,
)

# walks of 8 steps ending two steps to the left
print("P(8, 2) =", count_paths(8, 2), "oracle:", oracle_count(8, [end_at(2)]))

# walks that touch position 4 on the way to 2: the reflection gives P(12, 6)
print("S(12, 2, 4) =", count_touching(12, 2, 4),
      "oracle:", oracle_count(12, [end_at(2), touches(4)]),
      "P(12, 6) =", count_paths(12, 6))

# walks that never go below zero; for m = 0 these are Catalan numbers
print("T(2n, 0, -1):", [count_avoiding(2 * n, 0, -1) for n in range(8)])
print("the two of length 4:", enumerate_paths(4, [end_at(0), avoids(-1)]))

# the closed forms for barriers at -1 ... -4 against the oracle
for depth in (1, 2, 3, 4):
    row = [closed_form_T(10, m, depth) for m in range(0, 11, 2)]
    assert row == [oracle_count(10, [end_at(m), avoids(-depth)]) for m in range(0, 11, 2)]
    print(f"T(10, m, -{depth}) for m = 0, 2, ..., 10:", row)

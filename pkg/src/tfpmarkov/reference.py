"""Published reference tables: kernel basis of K4-tilde, PF basis, lift lists.

Vectors are flat coefficient lists in tensor order (position = sum x_i 2^(i-1)).
Each move is listed once; its global sign is the one in the source tables.
"""

KERNEL_BASIS_K4_TILDE = [
    (1, 0, -1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1, 0),
    (0, 1, 0, -1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1),
    (1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1, 0, 0),
    (0, 0, 1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1),
    (1, -1, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, -1, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1),
    (1, 0, -1, 0, 0, -1, 0, 1, -1, 0, 1, 0, 0, 1, 0, -1),
    (0, 1, 0, -1, -1, 0, 1, 0, 0, -1, 0, 1, 1, 0, -1, 0),
    (1, -1, 0, 0, 0, 0, -1, 1, -1, 1, 0, 0, 0, 0, 1, -1),
    (0, 0, 1, -1, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0),
    (1, 0, 0, -1, -1, 0, 0, 1, -1, 0, 0, 1, 1, 0, 0, -1),
    (0, 1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1, 0),
    (2, -1, -1, 0, -1, 0, 0, 1, -2, 1, 1, 0, 1, 0, 0, -1),
    (1, -2, 0, 1, 0, 1, -1, 0, -1, 2, 0, -1, 0, -1, 1, 0),
    (1, 0, -2, 1, 0, -1, 1, 0, -1, 0, 2, -1, 0, 1, -1, 0),
    (0, 1, 1, -2, -1, 0, 0, 1, 0, -1, -1, 2, 1, 0, 0, -1),
    (1, 0, 0, -1, -2, 1, 1, 0, -1, 0, 0, 1, 2, -1, -1, 0),
    (0, 1, -1, 0, 1, -2, 0, 1, 0, -1, 1, 0, -1, 2, 0, -1),
    (0, 1, -1, 0, -1, 0, 2, -1, 0, -1, 1, 0, 1, 0, -2, 1),
    (1, 0, 0, -1, 0, -1, -1, 2, -1, 0, 0, 1, 0, 1, 1, -2),
]

# 2x2x2 sign tableaus: first line positions 0,1 | 2,3; second line 4,5 | 6,7.
PF_BASIS_CUBES = [
    "+- 00 / -+ 00",
    "00 +- / 00 -+",
    "+0 -0 / -0 +0",
    "0+ 0- / 0- 0+",
    "+- -+ / 00 00",
    "00 00 / +- -+",
    "+0 0- / -0 0+",
    "0+ -0 / 0- +0",
    "+- 00 / 00 -+",
    "00 -+ / +- 00",
    "+0 -0 / 0- 0+",
    "0- 0+ / +0 -0",
    "+- +- / -+ -+",
    "+- -+ / +- -+",
    "++ -- / -- ++",
    "+- -+ / -+ +-",
]

LIFTS = {
    (1, -1, -1, 1, 0, 0, 0, 0): [
        (1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 0, 0, 0, 0),
        (1, -1, 0, 0, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1),
        (1, -1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0),
        (0, 0, 1, -1, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1, 0, 0),
        (0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, 0, 0, 1, -1),
        (0, 1, 0, -1, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1, 0),
        (1, 0, -1, 0, -1, 0, 1, 0, 0, -1, 0, 1, 1, 0, -1, 0),
        (0, 1, 0, -1, 0, -1, 0, 1, -1, 0, 1, 0, 0, 1, 0, -1),
        (1, 0, -1, 0, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1),
    ],
    (1, 0, -1, 0, 0, -1, 0, 1): [
        (1, 0, -1, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, -1, 0, 1),
        (0, 0, 0, 0, 1, -1, -1, 1, 1, 0, -1, 0, -1, 0, 1, 0),
        (0, 1, 0, -1, 0, -1, 0, 1, 1, -1, -1, 1, 0, 0, 0, 0),
        (1, -1, -1, 1, 0, 0, 0, 0, 0, 1, 0, -1, 0, -1, 0, 1),
        (1, 0, -1, 0, -1, 0, 1, 0, 0, 0, 0, 0, 1, -1, -1, 1),
    ],
    (1, -1, -1, 1, 1, -1, -1, 1): [
        (0, 1, 0, -1, -1, 0, 1, 0, -1, 0, 1, 0, 0, 1, 0, -1),
        (1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1),
        (1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1),
        (0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0),
        (2, -2, -1, 1, 0, 0, -1, 1, -1, 1, 0, 0, 1, -1, 0, 0),
        (1, -1, -2, 2, 1, -1, 0, 0, 0, 0, 1, -1, 0, 0, -1, 1),
        (2, -1, -2, 1, 0, -1, 0, 1, -1, 0, 1, 0, 1, 0, -1, 0),
        (1, -2, -1, 2, 1, 0, -1, 0, 0, 1, 0, -1, 0, -1, 0, 1),
        (0, 0, 1, -1, -2, 2, 1, -1, -1, 1, 0, 0, 1, -1, 0, 0),
        (1, -1, 0, 0, 1, -1, -2, 2, 0, 0, -1, 1, 0, 0, 1, -1),
        (0, 1, 0, -1, -2, 1, 2, -1, -1, 0, 1, 0, 1, 0, -1, 0),
        (1, 0, -1, 0, 1, -2, -1, 2, 0, -1, 0, 1, 0, 1, 0, -1),
        (1, -1, 0, 0, -1, 1, 0, 0, -2, 2, 1, -1, 0, 0, 1, -1),
        (0, 0, 1, -1, 0, 0, -1, 1, 1, -1, -2, 2, 1, -1, 0, 0),
        (1, 0, -1, 0, -1, 0, 1, 0, -2, 1, 2, -1, 0, 1, 0, -1),
        (0, 1, 0, -1, 0, -1, 0, 1, 1, -2, -1, 2, 1, 0, -1, 0),
        (1, -1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 2, -2, -1, 1),
        (0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, -1, 1, 2, -2),
        (1, 0, -1, 0, -1, 0, 1, 0, 0, -1, 0, 1, 2, -1, -2, 1),
        (0, 1, 0, -1, 0, -1, 0, 1, -1, 0, 1, 0, -1, 2, 1, -2),
    ],
    (1, -1, -1, 1, -1, 1, 1, -1): [
        (1, -1, -1, 1, -1, 1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, -1, 1, 1, -1),
        (1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 1, -1),
        (0, 0, 0, 0, 1, -1, -1, 1, -1, 1, 1, -1, 0, 0, 0, 0),
        (1, -1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 0, 0, 1, -1),
        (0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, 1, -1, 0, 0),
        (1, 0, -1, 0, -1, 0, 1, 0, 0, -1, 0, 1, 0, 1, 0, -1),
        (0, 1, 0, -1, 0, -1, 0, 1, -1, 0, 1, 0, 1, 0, -1, 0),
        (2, -2, -1, 1, -1, 1, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1),
        (1, -1, -2, 2, 0, 0, 1, -1, 0, 0, 1, -1, -1, 1, 0, 0),
        (2, -1, -2, 1, -1, 0, 1, 0, -1, 0, 1, 0, 0, 1, 0, -1),
        (1, -2, -1, 2, 0, 1, 0, -1, 0, 1, 0, -1, -1, 0, 1, 0),
        (1, -1, 0, 0, -2, 2, 1, -1, 0, 0, -1, 1, 1, -1, 0, 0),
        (0, 0, 1, -1, 1, -1, -2, 2, -1, 1, 0, 0, 0, 0, 1, -1),
        (1, 0, -1, 0, -2, 1, 2, -1, 0, -1, 0, 1, 1, 0, -1, 0),
        (0, 1, 0, -1, 1, -2, -1, 2, -1, 0, 1, 0, 0, 1, 0, -1),
        (1, -1, 0, 0, 0, 0, -1, 1, -2, 2, 1, -1, 1, -1, 0, 0),
        (0, 0, 1, -1, -1, 1, 0, 0, 1, -1, -2, 2, 0, 0, 1, -1),
        (1, 0, -1, 0, 0, -1, 0, 1, -2, 1, 2, -1, 1, 0, -1, 0),
        (0, 1, 0, -1, -1, 0, 1, 0, 1, -2, -1, 2, 0, 1, 0, -1),
        (0, 0, 1, -1, -1, 1, 0, 0, -1, 1, 0, 0, 2, -2, -1, 1),
        (1, -1, 0, 0, 0, 0, -1, 1, 0, 0, -1, 1, -1, 1, 2, -2),
        (0, 1, 0, -1, -1, 0, 1, 0, -1, 0, 1, 0, 2, -1, -2, 1),
        (1, 0, -1, 0, 0, -1, 0, 1, 0, -1, 0, 1, -1, 2, 1, -2),
        (2, -1, -1, 0, -2, 1, 1, 0, -1, 0, 0, 1, 1, 0, 0, -1),
        (1, -2, 0, 1, -1, 2, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0),
        (1, 0, -2, 1, -1, 0, 2, -1, 0, -1, 1, 0, 0, 1, -1, 0),
        (0, 1, 1, -2, 0, -1, -1, 2, -1, 0, 0, 1, 1, 0, 0, -1),
        (1, 0, 0, -1, -1, 0, 0, 1, -2, 1, 1, 0, 2, -1, -1, 0),
        (0, 1, -1, 0, 0, -1, 1, 0, 1, -2, 0, 1, -1, 2, 0, -1),
        (0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 2, -1, 1, 0, -2, 1),
        (1, 0, 0, -1, -1, 0, 0, 1, 0, -1, -1, 2, 0, 1, 1, -2),
        (2, -1, -1, 0, -1, 0, 0, 1, -1, 0, 0, 1, 0, 1, 1, -2),
        (1, -2, 0, 1, 0, 1, -1, 0, 0, 1, -1, 0, -1, 0, 2, -1),
        (0, 1, 1, -2, -1, 0, 0, 1, -1, 0, 0, 1, 2, -1, -1, 0),
        (1, 0, -2, 1, 0, -1, 1, 0, 0, -1, 1, 0, -1, 2, 0, -1),
        (1, 0, 0, -1, -2, 1, 1, 0, 0, -1, -1, 2, 1, 0, 0, -1),
        (0, 1, -1, 0, 1, -2, 0, 1, -1, 0, 2, -1, 0, 1, -1, 0),
        (0, 1, -1, 0, -1, 0, 2, -1, 1, -2, 0, 1, 0, 1, -1, 0),
        (1, 0, 0, -1, 0, -1, -1, 2, -2, 1, 1, 0, 1, 0, 0, -1),
    ],
}

MARKOV_DEGREES_K3N = {1: 2, 2: 4, 3: 6}

# Column certificates (tableau rows, node order x1x2x3x4) for sums of the two
# fundamental holes of K4-tilde: h1+h2, 2h1, 2h2 equal B times these indicators.
HOLE_IDENTITIES = {
    (1, 1): ("0000", "0011", "0101", "0110", "1000", "1011", "1101", "1110"),
    (2, 0): ("0000", "0001", "0110", "0111", "1010", "1011", "1100", "1101"),
    (0, 2): ("0010", "0011", "0100", "0101", "1000", "1001", "1110", "1111"),
}

# Hole-family directions as listed (tableau rows).
HOLE_DIRECTIONS = (
    ("0000", "1100", "1010", "0110", "0001", "1101", "1011", "0111"),
    ("1000", "0100", "0010", "1110", "1001", "0101", "0011", "1111"),
)

# Reduction of the degree-6 constant-column kernel lift by four quadratic
# steps.  Rows are x1 x2 x3 y1 followed by the constant part; lowercase
# letters are parameters and uppercase their complements.
KERNEL_REDUCTION_CHAIN = (
    ("abc0e", "abc0e", "ABC0e", "Abc1e", "aBc1e", "abC1e"),
    ("Abc0e", "abc0e", "aBC0e", "Abc1e", "aBc1e", "abC1e"),
    ("Abc0e", "aBc0e", "abC0e", "Abc1e", "aBc1e", "abC1e"),
    ("Abc0e", "aBc0e", "abC0e", "abc1e", "aBc1e", "AbC1e"),
    ("Abc0e", "aBc0e", "abC0e", "abc1e", "abc1e", "ABC1e"),
)

# Rows of the projected-fiber inequality system in (y000, y001, y010, y100):
# lower bounds on the four coordinates, two-sided bounds on three pair sums,
# upper bounds on three triple sums, a lower bound on 2y000+y001+y010+y100.
PF_INEQUALITY_ROWS = (
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 1, 0, 0), (-1, -1, 0, 0),
    (1, 0, 1, 0), (-1, 0, -1, 0),
    (1, 0, 0, 1), (-1, 0, 0, -1),
    (-1, -1, -1, 0), (-1, -1, 0, -1), (-1, 0, -1, -1),
    (2, 1, 1, 1),
)

# Triangle part of the first fundamental hole (tensor order).
HOLE1_TRIANGLE = (1, 0, 0, 1, 0, 1, 1, 0)

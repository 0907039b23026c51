"""Shared test polynomials: (text, variables)."""

SMALL = [
    ("x^3 - 3*x", "x"),
    ("x^4 - x^2", "x"),
    ("x + x^2*y", "x,y"),
    ("(x*y-1)^2 + x^2", "x,y"),
    ("x^2 + y^2", "x,y"),
    ("x^4 + y^4 - x*y", "x,y"),
    ("x^2*y^2 + x", "x,y"),
    ("x^3 + y^3 - 3*x*y", "x,y"),
    ("x*y^2 + x^2 + y", "x,y"),
    ("x^2*y + y^3 + x", "x,y"),
    ("x + y + z", "x,y,z"),
    ("x^2 + y^2 + z^2", "x,y,z"),
    ("x*y + y*z + x", "x,y,z"),
]

MEDIUM = [
    ("x*y*z + x", "x,y,z"),
    ("x^2*y + z^2 + y", "x,y,z"),
    ("x*y*z - 1 + x^2", "x,y,z"),
]

# n = 3, d = 4: roughly 25 s each
LARGE = [
    ("x^2*y*z + x", "x,y,z"),
    ("x^2*y^2 + z^2 + x", "x,y,z"),
]

FULL = SMALL + MEDIUM + LARGE

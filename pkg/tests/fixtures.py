"""Generator-pair fixtures shared by the tests (angle texts as accepted by parse_angle)."""

R3 = "(1+sqrt(5))/(2*sqrt(3))"
R5 = "sqrt((1+sqrt(5))/(2*sqrt(5)))"

FINITE = {
    ("pi", "pi*1/2", "pi*1/4"): (24, "octahedral"),
    ("pi*1/2", "pi*1/2", "pi*1/2"): (24, "octahedral"),
    ("pi*2/3", "pi*2/3", "acos(1/3)"): (12, "tetrahedral"),
    ("pi", "pi*2/3", "acos(sqrt(2/3))"): (24, "octahedral"),
    ("pi", "pi*2/3", f"acos({R3})"): (60, "icosahedral"),
    ("pi*1/2", "pi*2/3", "acos(sqrt(1/3))"): (24, "octahedral"),
    ("pi", "pi*2/5", f"acos({R5})"): (60, "icosahedral"),
    ("pi", "pi*4/5", f"acos({R5})"): (60, "icosahedral"),
    ("pi", "pi", "pi*1/4"): (8, "dihedral"),
}

# the tetrahedral pair that one acceptance criterion lists with order 24
TETRAHEDRAL_HALF_TURN = ("pi", "pi*2/3", "acos(sqrt(1/3))")

# rational rotation angles with axis angle pi/2 or pi/4
DENSE_RATIONAL = [
    ("pi*1/2", "pi*1/2", "pi*1/4"),
    ("pi", "pi*1/4", "pi*1/4"),
    ("pi*1/2", "pi*1/4", "pi*1/2"),
    ("pi*1/2", "pi*2/5", "pi*1/2"),
    ("pi*1/2", "pi*2/7", "pi*1/2"),
    ("pi*1/2", "pi*2/3", "pi*1/2"),
]

# rational rotation angles, algebraic axis angle
DENSE_ALGEBRAIC = [
    ("pi", "pi*1/3", "acos(sqrt(1/3))"),
    ("pi", "pi*1/3", "acos(sqrt(2/3))"),
    ("pi", "pi*1/3", f"acos({R3})"),
    ("pi*1/2", "pi*2/3", "acos(sqrt(2/3))"),
    ("pi*1/2", "pi*2/3", f"acos({R3})"),
    ("pi", "pi*1/5", f"acos({R5})"),
    ("pi", "pi*3/5", f"acos({R5})"),
    ("pi*1/2", "pi*2/5", f"acos({R5})"),
    ("pi*1/2", "pi*4/5", f"acos({R5})"),
    ("pi*1/3", "pi*2/3", "acos(sqrt(5)/3)"),
]

AXIS_INFINITE = [
    ("pi", "pi", "acos(1/3)"),
    ("pi", "acos(1/3)", "pi*1/2"),
]

DENSE_IRRATIONAL = [
    ("pi", "acos(1/3)", "pi*1/3"),
    ("pi*1/3", "acos(1/3)", "pi*1/2"),
]

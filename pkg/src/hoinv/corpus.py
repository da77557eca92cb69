"""Built-in instance corpus: the fixtures shipped in fixtures/ and used by
the selftest.  Keys are instance names, values are TOML texts."""

CORPUS: dict[str, str] = {
    "z3_f3": """\
field = "F3"

[group]
kind = "permutation"
generators = ["a"]

[group.images]
a = [1, 2, 0]

[representation]
preset = "regular"

[limits]
q_max = 3
p_max = 2
""",
    "z3_f3_trivial": """\
field = "F3"

[group]
kind = "permutation"
generators = ["a"]

[group.images]
a = [1, 2, 0]

[representation]
preset = "trivial"

[limits]
q_max = 3
p_max = 2
""",
    "z4_f2": """\
field = "F2"

[group]
kind = "permutation"
generators = ["a"]

[group.images]
a = [1, 2, 3, 0]

[representation]
preset = "regular"

[limits]
q_max = 4
p_max = 2
""",
    "z2z2_f2": """\
field = "F2"

[group]
kind = "permutation"
generators = ["x", "y"]

[group.images]
x = [1, 0, 3, 2]
y = [2, 3, 0, 1]

[representation]
preset = "regular"

[limits]
q_max = 3
p_max = 2
""",
    "s3_q": """\
field = "Q"

[group]
kind = "permutation"
generators = ["s", "t"]

[group.images]
s = [1, 0, 2]
t = [1, 2, 0]

[representation]
preset = "regular"

[limits]
q_max = 2
p_max = 2
""",
    "s3_f3": """\
field = "F3"

[group]
kind = "permutation"
generators = ["s", "t"]

[group.images]
s = [1, 0, 2]
t = [1, 2, 0]

[representation]
preset = "regular"

[limits]
q_max = 3
p_max = 2
""",
    "s3_f2_trivial": """\
field = "F2"

[group]
kind = "permutation"
generators = ["s", "t"]

[group.images]
s = [1, 0, 2]
t = [1, 2, 0]

[representation]
preset = "trivial"

[limits]
q_max = 3
p_max = 2
""",
    "free2_q": """\
field = "Q"

[group]
kind = "presentation"
generators = ["a", "b"]
relators = []

[limits]
q_max = 3
trunc = 5
""",
    "commutator_q": """\
field = "Q"

[group]
kind = "presentation"
generators = ["a", "b"]
relators = ["[a,b]"]

[representation]
dimension = 2

[representation.matrices]
a = [[1, 1], [0, 1]]
b = [[1, 0], [0, 1]]

[limits]
q_max = 3
trunc = 4
""",
    "jordan2_subgroup_f2": """\
field = "F2"

[group]
kind = "presentation"
generators = ["a"]
relators = []

[representation]
dimension = 2

[representation.matrices]
a = [[1, 1], [0, 1]]

[subgroup]
generators = ["a^2"]

[limits]
q_max = 2
""",
    "jordan3_subgroup_q": """\
field = "Q"

[group]
kind = "presentation"
generators = ["a"]
relators = []

[representation]
dimension = 3

[representation.matrices]
a = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]

[subgroup]
generators = ["a^2"]

[limits]
q_max = 3
""",
    "z4_pres_f2": """\
field = "F2"

[group]
kind = "presentation"
generators = ["a"]
relators = ["a^4"]

[limits]
q_max = 3
trunc = 5
""",
    "s3_pres_f3": """\
field = "F3"

[group]
kind = "presentation"
generators = ["s", "t"]
relators = ["s^2", "t^3", "(s t)^2"]

[limits]
q_max = 2
trunc = 3
""",
}

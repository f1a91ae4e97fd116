# Integer homology through the Smith normal form.
from cogkit.homology import invariant_factors_by_minors, smith_normal_form

M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
print(smith_normal_form(M))          # invariant factors and rank
print(invariant_factors_by_minors(M))  # the same numbers, from gcds of minors

# entries are Python ints, so nothing overflows
big = [[2 ** 70, 3 ** 50], [5 ** 40, 7 ** 30]]
print(smith_normal_form(big))

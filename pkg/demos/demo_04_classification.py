#!/usr/bin/env python3
# Classification: generic position of a subspace, rewriting into left-module
# form, the (l, 2) verdict table, and the strata of P^3.

from fractions import Fraction

from partabel import (
    QQ, Signature, SubspacePresentation, classify_l2, classify_p3,
    genericity_check, grassmann_chart, partition_of, rewrite_left_module,
)
from partabel.freeproduct import AlgebraElement, commutator, word_from_str
from partabel.quotient import make_relation

F = Fraction

# V = span{p1 - q1, p2 - q2} in k^3 * k^3: both projections surjective, so
# irreducible representations of the partial abelianization have dim <= 3
sig = Signature(3, 3)
V = SubspacePresentation(sig, QQ, ((F(1), F(0), F(-1), F(0)),
                                   (F(0), F(1), F(0), F(-1))))
print("genericity:", genericity_check(V))

# any element rewrites as sum r_t * b_t with r_t in the subalgebra generated
# by V and b_t in {1, q1, q2}; the decomposition expands back exactly
e = AlgebraElement.from_word(sig, QQ, word_from_str("q1.p1.q2.p2"))
dec = rewrite_left_module(e, V)
print("rewrite of q1.p1.q2.p2 has", len(dec.terms), "terms over",
      dec.summand_count(), "B-slots; exact round-trip:",
      (dec.expand() - e).is_zero())

# the (l, 2) verdict table is decided by the equality partition of V ^ Abar
sig42 = Signature(4, 2)
cases = {
    "inside Abar":          [(1, 0, 0, 0), (0, 1, 2, 0)],
    "partition {12}{34}":   [(1, 1, 0, 0), (0, 0, 1, 1)],
    "partition {123}{4}":   [(1, 1, 1, 0), (1, 0, 0, 1)],
}
for name, vecs in cases.items():
    W = SubspacePresentation(sig42, QQ, tuple(tuple(F(c) for c in v) for v in vecs))
    v = classify_l2(W)
    print(f"{name:22s} -> {v.tag:14s} blocks {partition_of(W).blocks}")

# the chart into P^3: the commutator of the two basis vectors is exactly
# the relation element of the image point
Vc, pt = grassmann_chart(QQ, (F(1), F(1), F(2)))
t1, t2 = Vc.elements()
X = make_relation(QQ, point=pt).element
print("\nchart point:", pt, " [t1, t2] == X:", (commutator(t1, t2) - X).is_zero())

# stratification of P^3: quadric points, lines, special points, and the
# known infinite-dimensional point
for x in [(1, 0, 0, 0), (1, 2, 0, 0), (1, 2, 2, 4), (1, 0, 0, -1), (1, 2, 3, 7)]:
    v = classify_p3(QQ, tuple(F(c) for c in x))
    print(f"{str(x):18s} -> {v.tag}")
